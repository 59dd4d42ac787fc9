#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mbmt/tioa/model.hpp"

namespace mbmt::tioa {

// Parses a JSON model document and validates it. Throws ModelError carrying
// every diagnostic found.
Tioa parse_model(std::string_view text);

// Canonical form: fixed field order, two-space indentation, trailing newline.
std::string serialize_model(const Tioa& model);

Tioa load_model(const std::filesystem::path& path);
void save_model(const Tioa& model, const std::filesystem::path& path);

}  // namespace mbmt::tioa
