#include "mbmt/mutation/mutation.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>

#include "mbmt/tioa/io.hpp"

namespace mbmt::mutation {

using namespace tioa;

const std::vector<OperatorId>& all_operators() {
  static const std::vector<OperatorId> ops = {
      OperatorId::Ms,  OperatorId::Mt, OperatorId::Mo,  OperatorId::Minv,
      OperatorId::Msl, OperatorId::Mc, OperatorId::Mi,  OperatorId::Mgc,
      OperatorId::Mgoc, OperatorId::Mgov, OperatorId::Mvu};
  return ops;
}

std::string operator_name(OperatorId op) {
  switch (op) {
    case OperatorId::Ms: return "ms";
    case OperatorId::Mt: return "mt";
    case OperatorId::Mo: return "mo";
    case OperatorId::Minv: return "minv";
    case OperatorId::Msl: return "msl";
    case OperatorId::Mc: return "mc";
    case OperatorId::Mi: return "mi";
    case OperatorId::Mgc: return "mgc";
    case OperatorId::Mgoc: return "mgoc";
    case OperatorId::Mgov: return "mgov";
    case OperatorId::Mvu: return "mvu";
  }
  return "?";
}

std::vector<OperatorId> parse_operators(std::string_view text) {
  if (text == "all") return all_operators();
  std::set<OperatorId> chosen;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view name = text.substr(start, end - start);
    const auto& ops = all_operators();
    const auto it = std::find_if(ops.begin(), ops.end(),
                                 [&](OperatorId op) { return operator_name(op) == name; });
    if (it == ops.end()) throw std::invalid_argument("unknown operator '" + std::string(name) + "'");
    chosen.insert(*it);
    start = end + 1;
  }
  return {chosen.begin(), chosen.end()};
}

namespace {

std::string dir_mark(Direction d) { return d == Direction::Input ? "?" : "!"; }

bool frozen(const Tioa& m, const std::string& location) {
  const auto idx = m.location_index(location);
  if (!idx) return false;
  const LocationKind k = m.locations[*idx].kind;
  return k == LocationKind::Universal || k == LocationKind::Sink;
}

std::string fresh_location(const Tioa& m, const std::string& base) {
  if (!m.location_index(base)) return base;
  for (int n = 1;; ++n) {
    const std::string id = base + std::to_string(n);
    if (!m.location_index(id)) return id;
  }
}

void collapse(Guard& g) {
  Guard out;
  for (const Constraint& c : g) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  g = std::move(out);
}

class Generator {
 public:
  Generator(const Tioa& m, std::vector<Mutant>& out) : m_(m), out_(out) {}

  void run(OperatorId op) {
    op_ = op;
    index_ = 0;
    switch (op) {
      case OperatorId::Ms: relocate(true); break;
      case OperatorId::Mt: relocate(false); break;
      case OperatorId::Mo: relabel(m_.outputs, Direction::Output); break;
      case OperatorId::Minv: loosen_invariants(); break;
      case OperatorId::Msl: sink_targets(); break;
      case OperatorId::Mc: flip_resets(); break;
      case OperatorId::Mi: relabel(m_.inputs, Direction::Input); break;
      case OperatorId::Mgc: guard_constants(); break;
      case OperatorId::Mgoc: guard_operators(true); break;
      case OperatorId::Mgov: guard_operators(false); break;
      case OperatorId::Mvu: updates(); break;
    }
  }

 private:
  std::string edge_label(std::size_t i) const {
    return "edge " + std::to_string(i) + " (" + m_.edges[i].to_string() + ")";
  }

  void emit(Tioa model, std::string edit) {
    if (model == m_) return;
    out_.push_back({operator_name(op_) + ":" + std::to_string(index_++), op_, std::move(edit),
                    std::move(model)});
  }

  // Calls f(i, edge) for every mutable edge.
  void each_edge(const std::function<void(std::size_t, const Edge&)>& f) {
    for (std::size_t i = 0; i < m_.edges.size(); ++i) {
      if (!frozen(m_, m_.edges[i].source)) f(i, m_.edges[i]);
    }
  }

  void relocate(bool source) {
    each_edge([&](std::size_t i, const Edge& e) {
      const std::string& old = source ? e.source : e.target;
      for (const Location& l : m_.locations) {
        if (l.id == old || frozen(m_, l.id)) continue;
        Tioa mut = m_;
        (source ? mut.edges[i].source : mut.edges[i].target) = l.id;
        emit(std::move(mut), edge_label(i) + ": " + (source ? "source" : "target") +
                                 " changed from " + old + " to " + l.id);
      }
    });
  }

  void relabel(const std::vector<std::string>& actions, Direction dir) {
    each_edge([&](std::size_t i, const Edge& e) {
      for (const std::string& a : actions) {
        if (a == e.action) continue;
        Tioa mut = m_;
        mut.edges[i].action = a;
        mut.edges[i].direction = dir;
        emit(std::move(mut), edge_label(i) + ": action changed from " + e.action +
                                 dir_mark(e.direction) + " to " + a + dir_mark(dir));
      }
    });
  }

  void loosen_invariants() {
    for (std::size_t q = 0; q < m_.locations.size(); ++q) {
      const Location& l = m_.locations[q];
      if (frozen(m_, l.id)) continue;
      for (std::size_t k = 0; k < l.invariant.size(); ++k) {
        Tioa mut = m_;
        Constraint& c = mut.locations[q].invariant[k];
        c.constant += 1;
        const std::string edit = "invariant of " + l.id + " loosened from " +
                                 l.invariant[k].to_string() + " to " + c.to_string();
        collapse(mut.locations[q].invariant);
        emit(std::move(mut), edit);
      }
    }
  }

  void sink_targets() {
    const std::string sink = fresh_location(m_, "Sink");
    each_edge([&](std::size_t i, const Edge& e) {
      Tioa mut = m_;
      mut.locations.push_back({sink, LocationKind::Sink, {}});
      mut.edges[i].target = sink;
      emit(std::move(mut), edge_label(i) + ": target changed from " + e.target +
                               " to new sink location " + sink);
    });
  }

  void flip_resets() {
    each_edge([&](std::size_t i, const Edge& e) {
      for (const std::string& clock : m_.clocks) {
        Tioa mut = m_;
        auto& resets = mut.edges[i].resets;
        const auto it = std::find(resets.begin(), resets.end(), clock);
        const bool had = it != resets.end();
        if (had) resets.erase(it);
        else resets.push_back(clock);
        emit(std::move(mut), edge_label(i) + ": reset of " + clock + (had ? " removed" : " added"));
      }
      (void)e;
    });
  }

  void guard_constants() {
    each_edge([&](std::size_t i, const Edge& e) {
      for (std::size_t k = 0; k < e.guard.size(); ++k) {
        for (const int delta : {-1, +1}) {
          Tioa mut = m_;
          Constraint& c = mut.edges[i].guard[k];
          c.constant += delta;
          const std::string now = c.to_string();
          collapse(mut.edges[i].guard);
          emit(std::move(mut), edge_label(i) + ": guard constraint " + e.guard[k].to_string() +
                                   " changed to " + now);
        }
      }
    });
  }

  void guard_operators(bool clocks) {
    static const std::vector<Op> clock_ops = {Op::Le, Op::Gt};
    static const std::vector<Op> var_ops = {Op::Lt, Op::Le, Op::Eq, Op::Ne, Op::Ge, Op::Gt};
    each_edge([&](std::size_t i, const Edge& e) {
      for (std::size_t k = 0; k < e.guard.size(); ++k) {
        if (m_.is_clock(e.guard[k].operand) != clocks) continue;
        for (Op op : clocks ? clock_ops : var_ops) {
          if (op == e.guard[k].op) continue;
          Tioa mut = m_;
          Constraint& c = mut.edges[i].guard[k];
          c.op = op;
          const std::string now = c.to_string();
          collapse(mut.edges[i].guard);
          emit(std::move(mut), edge_label(i) + ": guard constraint " + e.guard[k].to_string() +
                                   " changed to " + now);
        }
      }
    });
  }

  void updates() {
    each_edge([&](std::size_t i, const Edge& e) {
      for (const VarDecl& v : m_.variables) {
        const auto old = e.update.find(v.name);
        for (std::int32_t value = v.min; value <= v.max; ++value) {
          if (old != e.update.end() && old->second == value) continue;
          Tioa mut = m_;
          mut.edges[i].update[v.name] = value;
          const std::string was =
              old == e.update.end() ? "no update" : "(" + v.name + ", " + std::to_string(old->second) + ")";
          emit(std::move(mut), edge_label(i) + ": update of " + v.name + " changed from " + was +
                                   " to (" + v.name + ", " + std::to_string(value) + ")");
        }
      }
    });
  }

  const Tioa& m_;
  std::vector<Mutant>& out_;
  OperatorId op_ = OperatorId::Ms;
  std::size_t index_ = 0;
};

}  // namespace

std::vector<Mutant> generate_mutants(const Tioa& m, const std::vector<OperatorId>& ops) {
  std::vector<Mutant> out;
  Generator gen(m, out);
  for (OperatorId op : all_operators()) {
    if (std::find(ops.begin(), ops.end(), op) != ops.end()) gen.run(op);
  }
  return out;
}

std::string mutant_file_name(std::string_view id) { return std::string(id) + ".model"; }

void export_mutants(const std::vector<Mutant>& mutants, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream index(dir / "index.tsv", std::ios::binary);
  if (!index) throw std::runtime_error("cannot write " + (dir / "index.tsv").string());
  for (const Mutant& mu : mutants) {
    save_model(mu.model, dir / mutant_file_name(mu.id));
    index << mu.id << '\t' << mu.edit << '\n';
  }
  if (!index) throw std::runtime_error("write failed: " + (dir / "index.tsv").string());
}

}  // namespace mbmt::mutation
