#pragma once

// Experiment configuration: one JSON document naming the two presented
// classes, the deciders S1 and S2, limits and output paths.
//
//   {
//     "c1": {"kind": "constant", "member": "EMPTY"},
//     "c2": {"kind": "constant", "member": "ALL"},
//     "s1": "ALL",
//     "s2": "EMPTY",
//     "limits": {"maxN": 2000, "maxSize": 4, "indexBound": 5},
//     "outputs": {"profile": "profile.csv", "report": "report.json"}
//   }
//
// Deciders:      "NAME" (builtin) | {"program": "x.ram", "clock": c}
//                | {"base": <decider>, "patch": [{"values": [...], "accept": b}]}
// Presentations: {"kind": "empty"} | {"kind": "constant", "member": <decider>}
//                | {"kind": "list", "members": [<decider>, ...]} | {"kind": "dlin"}
//                | {"kind": "reducible" | "complete", "target": <decider>, "nonMember": [...]}
// Relative paths resolve against the directory holding the config file.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "udiag/assembler.hpp"
#include "udiag/diagonal.hpp"
#include "udiag/io.hpp"

namespace udiag {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  Natural max_n = 2000;
  Natural max_size = 4;
  Natural index_bound = 5;
};

struct ExperimentConfig {
  DiagConfig diag;
  Limits limits;
  std::optional<std::filesystem::path> profile_out;
  std::optional<std::filesystem::path> report_out;
  std::optional<std::filesystem::path> witnesses_out;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program load_program(const std::filesystem::path& path) { return assemble(read_file(path)); }

namespace detail {

inline Decider decider_from_json(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) return builtin(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("decider must be a builtin name or an object");
  if (j.contains("program")) {
    const std::filesystem::path path = base / j.at("program").get<std::string>();
    const Natural clock = j.value("clock", Natural{1});
    return clocked_decider(ClockedMachine(load_program(path), clock), path.filename().string());
  }
  if (j.contains("base")) {
    PatchTable patch;
    for (const json& e : j.value("patch", json::array())) {
      patch[structure_from_json(e.at("values"))] = e.at("accept").get<bool>();
    }
    return finite_variant(decider_from_json(j.at("base"), base), std::move(patch));
  }
  throw ConfigError("decider object needs 'program' or 'base'");
}

inline Presentation presentation_from_json(const json& j, const std::filesystem::path& base) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "empty") return Presentation::empty();
  if (kind == "constant") return constant_presentation(decider_from_json(j.at("member"), base));
  if (kind == "list") {
    std::vector<Decider> members;
    for (const json& m : j.at("members")) members.push_back(decider_from_json(m, base));
    return cyclic_presentation(std::move(members), j.value("name", std::string("list")));
  }
  if (kind == "dlin") return dlin_presentation();
  if (kind == "reducible" || kind == "complete") {
    Decider target = decider_from_json(j.at("target"), base);
    Structure non_member = structure_from_json(j.at("nonMember"));
    return kind == "reducible" ? reducible_presentation(std::move(target), std::move(non_member))
                               : complete_presentation(std::move(target), std::move(non_member));
  }
  throw ConfigError("unknown presentation kind '" + kind + "'");
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& j, const std::filesystem::path& base) {
  try {
    ExperimentConfig cfg{DiagConfig{detail::presentation_from_json(j.at("c1"), base),
                                    detail::presentation_from_json(j.at("c2"), base),
                                    detail::decider_from_json(j.at("s1"), base),
                                    detail::decider_from_json(j.at("s2"), base)},
                         {}, {}, {}, {}};
    if (j.contains("limits")) {
      const json& l = j.at("limits");
      cfg.limits.max_n = l.value("maxN", cfg.limits.max_n);
      cfg.limits.max_size = l.value("maxSize", cfg.limits.max_size);
      cfg.limits.index_bound = l.value("indexBound", cfg.limits.index_bound);
    }
    if (cfg.limits.max_n < 1 || cfg.limits.max_size < 1 || cfg.limits.index_bound < 1) {
      throw ConfigError("limits must be at least 1");
    }
    if (j.contains("outputs")) {
      const json& o = j.at("outputs");
      if (o.contains("profile")) cfg.profile_out = base / o.at("profile").get<std::string>();
      if (o.contains("report")) cfg.report_out = base / o.at("report").get<std::string>();
      if (o.contains("witnesses")) cfg.witnesses_out = base / o.at("witnesses").get<std::string>();
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

}  // namespace udiag
