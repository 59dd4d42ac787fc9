#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "json.hpp"
#include "mbmt/tioa/io.hpp"

namespace mbmt::testkit {

using nlohmann::json;

// Independent enumeration straight from the operator definitions, working
// on the JSON form of the model. Each mutant is identified by its canonical
// dump so that the comparison ignores ids and descriptions.
class Oracle {
 public:
  explicit Oracle(const tioa::Tioa& m) : src_(json::parse(tioa::serialize_model(m))) {}

  std::map<std::string, std::set<std::string>> all() {
    std::map<std::string, std::set<std::string>> out;
    const json& edges = src_["edges"];
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (const json& loc : src_["locations"]) {
        for (const char* end : {"source", "target"}) {
          if (loc["id"] == edges[i][end]) continue;
          json m = src_;
          m["edges"][i][end] = loc["id"];
          add(out[end == std::string("source") ? "ms" : "mt"], m);
        }
      }
      for (const char* kind : {"outputs", "inputs"}) {
        for (const json& a : src_[kind]) {
          if (a == edges[i]["action"]) continue;
          json m = src_;
          m["edges"][i]["action"] = a;
          m["edges"][i]["direction"] = kind == std::string("outputs") ? "output" : "input";
          add(out[kind == std::string("outputs") ? "mo" : "mi"], m);
        }
      }
      {
        json m = src_;
        m["locations"].push_back({{"id", "Sink"}, {"kind", "sink"}, {"invariant", json::array()}});
        m["edges"][i]["target"] = "Sink";
        add(out["msl"], m);
      }
      for (const json& clock : src_["clocks"]) {
        json m = src_;
        json& resets = m["edges"][i]["resets"];
        auto it = std::find(resets.begin(), resets.end(), clock);
        if (it != resets.end()) resets.erase(it);
        else resets.push_back(clock);
        add(out["mc"], m);
      }
      const json& guard = edges[i]["guard"];
      for (std::size_t k = 0; k < guard.size(); ++k) {
        for (int delta : {-1, 1}) {
          json m = src_;
          m["edges"][i]["guard"][k]["constant"] = guard[k]["constant"].get<int>() + delta;
          add(out["mgc"], m);
        }
        const bool clock = is_clock(guard[k]["operand"]);
        const std::vector<std::string> ops =
            clock ? std::vector<std::string>{"<=", ">"}
                  : std::vector<std::string>{"<", "<=", "==", "!=", ">=", ">"};
        for (const std::string& op : ops) {
          if (guard[k]["op"] == op) continue;
          json m = src_;
          m["edges"][i]["guard"][k]["op"] = op;
          add(out[clock ? "mgoc" : "mgov"], m);
        }
      }
      for (const json& v : src_["variables"]) {
        for (int value = v["min"]; value <= v["max"].get<int>(); ++value) {
          json m = src_;
          m["edges"][i]["update"][v["name"].get<std::string>()] = value;
          add(out["mvu"], m);
        }
      }
    }
    const json& locs = src_["locations"];
    for (std::size_t q = 0; q < locs.size(); ++q) {
      for (std::size_t k = 0; k < locs[q]["invariant"].size(); ++k) {
        json m = src_;
        json& c = m["locations"][q]["invariant"][k];
        c["constant"] = c["constant"].get<int>() + 1;
        add(out["minv"], m);
      }
    }
    return out;
  }

 private:
  bool is_clock(const json& name) const {
    const json& cs = src_["clocks"];
    return std::find(cs.begin(), cs.end(), name) != cs.end();
  }

  static void dedupe(json& guard) {
    json out = json::array();
    for (const json& c : guard)
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    guard = out;
  }

  void add(std::set<std::string>& bucket, json m) {
    for (json& e : m["edges"]) dedupe(e["guard"]);
    for (json& l : m["locations"]) dedupe(l["invariant"]);
    if (m != src_) bucket.insert(m.dump());
  }

  json src_;
};

}  // namespace mbmt::testkit
