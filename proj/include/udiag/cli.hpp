#pragma once

// Command-line front end. run_cli() is the whole program; tools/udiag.cpp
// only forwards argv and the standard streams.
//
// Exit codes for `run`: 0 Accept/Output, 1 Reject, 2 BudgetExhausted,
// BoundViolation or InvalidOutput, 3 unreadable or unparsable input.
// `verify`, `f-profile` and `demo` exit 0 iff every check passes; 3 on
// configuration errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "udiag/assembler.hpp"
#include "udiag/config.hpp"
#include "udiag/demos.hpp"
#include "udiag/diagonal.hpp"
#include "udiag/godel.hpp"
#include "udiag/io.hpp"
#include "udiag/ram.hpp"

namespace udiag {

namespace cli_detail {

inline constexpr int kExitParse = 3;

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

inline bool is_json_path(const std::filesystem::path& p) { return p.extension() == ".json"; }

inline void print_summary(std::ostream& out, const Report& r) {
  const ProfileVerdict& pv = r.profile_verdict;
  auto word = [](bool b) { return b ? "pass" : "FAIL"; };
  out << "profile  n<=" << r.max_n << "  max f=" << pv.max_f << "  anchor " << word(pv.anchor) << ", ticks=2n "
      << word(pv.tick_exact) << ", monotone " << word(pv.monotone) << ", consecutive " << word(pv.consecutive)
      << ", well-founded " << word(pv.well_founded) << " (" << pv.recursion_calls << " calls, "
      << pv.recursion_violations << " violations)\n";
  const WitnessVerdict& wv = r.witness_verdict;
  out << "witness  construction records=" << wv.construction_records
      << " invalid=" << wv.invalid_construction_records;
  if (wv.family1_vacuous) out << "  family 1 vacuous (empty class)";
  if (wv.family2_vacuous) out << "  family 2 vacuous (empty class)";
  out << "\n";
  for (const IndexWitness& e : wv.entries) {
    out << "  C" << e.family << "[" << e.index << "]: ";
    if (e.search) {
      out << "differs at " << to_string(e.search->z) << " (" << e.search->condition << ")";
    } else {
      out << "no disagreement up to size " << r.max_size;
    }
    out << "  logged=" << e.construction_records << "  " << word(e.pass) << "\n";
  }
  out << "witness  " << word(wv.pass) << "\n";
  const ReductionVerdict& rv = r.reduction_verdict;
  out << "reduction checked=" << rv.checked << " mismatches=" << rv.mismatches << "  " << word(rv.pass) << "\n";
  out << "overall  " << word(r.pass()) << "\n";
}

inline std::string witnesses_csv(const std::vector<WitnessRecord>& records) {
  std::string out = "origin,n,family,j,condition,fParity,z\n";
  for (const WitnessRecord& w : records) {
    out += std::string(w.origin == WitnessOrigin::kConstruction ? "construction" : "search") + ',' +
           std::to_string(w.n) + ',' + std::to_string(w.family) + ',' + std::to_string(w.j) + ',' + w.condition +
           ',' + (w.f_even ? "even" : "odd") + ',' + '"' + to_string(w.z) + '"' + '\n';
  }
  return out;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Uniform diagonalization toolkit for unary structures"};
  app.require_subcommand(1);

  std::string program_path, input_path, config_path, out_path, kind;
  Natural clock = 1;
  bool nondet = false;
  std::optional<Natural> max_n, max_size, index_bound;
  Natural bound = 3;

  auto* run = app.add_subcommand("run", "run a .ram program on a structure file under a clock");
  run->add_option("program", program_path, ".ram program")->required();
  run->add_option("input", input_path, "structure file")->required();
  run->add_option("--clock,-c", clock, "clock c: budget c*n, value bound c*(n+1)")->check(CLI::PositiveNumber);
  run->add_flag("--nondet", nondet, "accept iff some GUESS assignment accepts");

  auto add_limits = [&](CLI::App* sub) {
    sub->add_option("--max-n", max_n, "largest n for the f-profile");
    sub->add_option("--max-size", max_size, "largest structure size for exhaustive checks");
    sub->add_option("--index-bound", index_bound, "largest presentation index examined");
    sub->add_option("--out", out_path, "output file");
  };

  auto* profile = app.add_subcommand("f-profile", "compute f(0..maxN), write CSV (or JSON for *.json)");
  profile->add_option("--config", config_path, "experiment config (JSON)")->required();
  add_limits(profile);

  auto* verify = app.add_subcommand("verify", "run all verdicts and write the JSON report");
  verify->add_option("--config", config_path, "experiment config (JSON)")->required();
  add_limits(verify);

  auto* witnesses = app.add_subcommand("witnesses", "list logged and searched disagreement witnesses");
  witnesses->add_option("--config", config_path, "experiment config (JSON)")->required();
  add_limits(witnesses);

  auto* enumerate = app.add_subcommand("enumerate", "list structures or decoded programs");
  enumerate->add_option("kind", kind, "structures | programs")->required()->check(CLI::IsMember({"structures", "programs"}));
  enumerate->add_option("--bound,-b", bound, "largest size (structures) or index (programs)");

  auto* demo = app.add_subcommand("demo", "Ladner-style instantiation with toy stand-ins");
  add_limits(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto limits_from = [&](Limits l) {
    if (max_n) l.max_n = *max_n;
    if (max_size) l.max_size = *max_size;
    if (index_bound) l.index_bound = *index_bound;
    return l;
  };

  try {
    if (*run) {
      Program p = load_program(program_path);
      Structure w = parse_structure(read_file(input_path));
      const Natural budget = clock_budget(clock, w), vbound = clock_bound(clock, w);
      if (nondet || !p.is_deterministic()) {
        if (!p.is_decider()) {
          err << "nondeterministic runs need a decider program\n";
          return kExitParse;
        }
        NondetResult r = explore_nondet(p, w, budget, vbound);
        out << (r.accepted ? "Accept" : "Reject");
        if (r.accepted) out << " ticks=" << r.accepting_ticks;
        out << " branches=" << r.branches << "\n";
        return r.accepted ? 0 : 1;
      }
      RunOutcome r = run_det(p, w, budget, vbound);
      out << outcome_name(r.kind) << " ticks=" << r.ticks << "\n";
      if (r.output) out << format_structure(*r.output);
      switch (r.kind) {
        case Outcome::kAccept:
        case Outcome::kOutput: return 0;
        case Outcome::kReject: return 1;
        default: return 2;
      }
    }

    if (*enumerate) {
      if (kind == "structures") {
        if (bound == 0) throw ConfigError("bound must be at least 1");
        for (const Structure& s : structures_up_to(bound)) out << to_string(s) << "\n";
      } else {
        for (Natural i = 0; i <= bound; ++i) {
          out << "; index " << i << "\n" << disassemble(godel_decode(GodelIndex(i)));
        }
      }
      return 0;
    }

    if (*demo) {
      Limits l = limits_from(Limits{8000, 5, 2});
      out << "C1 = clocked deterministic machines, C2 = sets complete for CONST-ZERO,\n"
             "A1 = CONST-ZERO, A2 = EMPTY\n";
      Report r = verify_udt(ladner_demo_config(), l.max_size, l.max_n, l.index_bound);
      Natural prev = 1;
      for (const FRecord& rec : r.profile) {
        if (rec.f != prev) out << "f steps to " << rec.f << " at n=" << rec.n << "\n";
        prev = rec.f;
      }
      for (const WitnessRecord& w : r.witness_log) {
        if (w.n != 0 && r.profile[w.n - 1].f == r.profile[w.n].f) continue;
        out << "F(" << w.n << ") diagonalizes C" << w.family << "[" << w.j << "] at " << to_string(w.z)
            << " (condition " << w.condition << ")\n";
      }
      print_summary(out, r);
      if (!out_path.empty()) write_text(out_path, report_to_json(r).dump(2) + "\n");
      return r.pass() ? 0 : 1;
    }

    ExperimentConfig cfg = load_config(config_path);
    const Limits l = limits_from(cfg.limits);

    if (*profile) {
      Diagonalizer diag(cfg.diag);
      std::vector<FRecord> prof = diag.profile(l.max_n);
      ProfileVerdict v = check_profile(prof, diag.recursion());
      std::optional<std::filesystem::path> dest = cfg.profile_out;
      if (!out_path.empty()) dest = out_path;
      if (dest && is_json_path(*dest)) {
        json arr = json::array();
        for (const FRecord& r : prof) arr.push_back(frecord_to_json(r));
        write_text(*dest, arr.dump(2) + "\n");
      } else if (dest) {
        write_text(*dest, profile_to_csv(prof));
      } else {
        out << profile_to_csv(prof);
      }
      if (!v.pass()) {
        err << "f-profile check failed: anchor=" << v.anchor << " tickExact=" << v.tick_exact
            << " monotone=" << v.monotone << " consecutive=" << v.consecutive << " wellFounded=" << v.well_founded
            << "\n";
        return 1;
      }
      return 0;
    }

    if (*verify) {
      Report r = verify_udt(cfg.diag, l.max_size, l.max_n, l.index_bound);
      print_summary(out, r);
      std::optional<std::filesystem::path> dest = cfg.report_out;
      if (!out_path.empty()) dest = out_path;
      if (dest) write_text(*dest, report_to_json(r).dump(2) + "\n");
      return r.pass() ? 0 : 1;
    }

    if (*witnesses) {
      Diagonalizer diag(cfg.diag);
      diag.profile(l.max_n);
      std::vector<WitnessRecord> records = diag.witness_log();
      for (int family : {1, 2}) {
        for (Natural i = 0; i <= l.index_bound; ++i) {
          if (auto w = diag.find_disagreement(family, i, l.max_size)) records.push_back(*w);
        }
      }
      std::optional<std::filesystem::path> dest = cfg.witnesses_out;
      if (!out_path.empty()) dest = out_path;
      if (dest && is_json_path(*dest)) {
        json arr = json::array();
        for (const WitnessRecord& w : records) arr.push_back(witness_to_json(w));
        write_text(*dest, arr.dump(2) + "\n");
      } else if (dest) {
        write_text(*dest, witnesses_csv(records));
      } else {
        out << witnesses_csv(records);
      }
      return 0;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}

}  // namespace udiag
