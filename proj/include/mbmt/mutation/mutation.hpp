#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mbmt/tioa/model.hpp"

namespace mbmt::mutation {

enum class OperatorId { Ms, Mt, Mo, Minv, Msl, Mc, Mi, Mgc, Mgoc, Mgov, Mvu };

// All operators in generation order.
const std::vector<OperatorId>& all_operators();

// Lowercase CLI name: "ms", "mt", ..., "mvu".
std::string operator_name(OperatorId op);

// Parses "all" or a comma-separated list of names. Throws
// std::invalid_argument on an unknown name. The result follows generation
// order regardless of the order given.
std::vector<OperatorId> parse_operators(std::string_view text);

struct Mutant {
  std::string id;  // "<op>:<index>", index counted per operator from 0
  OperatorId op;
  std::string edit;
  tioa::Tioa model;
};

// Every first-order mutant of `m` for the selected operators, in operator
// order then element order. Universal and sink locations and their edges
// are left alone; mutants equal to `m` are skipped.
std::vector<Mutant> generate_mutants(const tioa::Tioa& m, const std::vector<OperatorId>& ops);

// Writes <id>.model per mutant and an index.tsv of "id<TAB>edit" lines.
void export_mutants(const std::vector<Mutant>& mutants, const std::filesystem::path& dir);

// File name of a mutant's model inside an export directory.
std::string mutant_file_name(std::string_view id);

}  // namespace mbmt::mutation
