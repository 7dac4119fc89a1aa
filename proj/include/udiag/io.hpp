#pragma once

// Machine-readable outputs: f-profile CSV and JSON, witness records and the
// verification report. Every writer has a matching reader.
//
// Profile CSV columns (fixed order): n,f,k,witnessFound,ticks
// witnessFound is 0 or 1.

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "udiag/diagonal.hpp"

namespace udiag {

using json = nlohmann::json;

inline constexpr const char* kProfileCsvHeader = "n,f,k,witnessFound,ticks";

inline json structure_to_json(const Structure& w) { return json{{"size", w.size()}, {"values", w.values()}}; }

inline Structure structure_from_json(const json& j) {
  if (j.is_array()) return Structure(j.get<std::vector<Natural>>());
  auto values = j.at("values").get<std::vector<Natural>>();
  if (j.contains("size") && j.at("size").get<Natural>() != values.size()) {
    throw std::invalid_argument("structure: size does not match value count");
  }
  return Structure(std::move(values));
}

inline json witness_to_json(const WitnessRecord& w) {
  return json{{"n", w.n},
              {"j", w.j},
              {"family", w.family},
              {"z", structure_to_json(w.z)},
              {"condition", std::string(1, w.condition)},
              {"fParity", w.f_even ? "even" : "odd"},
              {"origin", w.origin == WitnessOrigin::kConstruction ? "construction" : "search"}};
}

inline WitnessRecord witness_from_json(const json& j) {
  WitnessRecord w;
  w.n = j.at("n").get<Natural>();
  w.j = j.at("j").get<Natural>();
  w.family = j.at("family").get<int>();
  w.z = structure_from_json(j.at("z"));
  const auto cond = j.at("condition").get<std::string>();
  if (cond.size() != 1 || cond[0] < 'a' || cond[0] > 'd') throw std::invalid_argument("bad condition " + cond);
  w.condition = cond[0];
  w.f_even = j.at("fParity").get<std::string>() == "even";
  w.origin = j.at("origin").get<std::string>() == "construction" ? WitnessOrigin::kConstruction
                                                                   : WitnessOrigin::kSearch;
  return w;
}

inline json frecord_to_json(const FRecord& r) {
  json j{{"n", r.n},
         {"f", r.f},
         {"k", r.k},
         {"phase1LastIndex", r.phase1_last_index},
         {"witnessFound", r.witness_found},
         {"totalTicks", r.total_ticks},
         {"phase1Used", r.phase1_used},
         {"phase2Used", r.phase2_used},
         {"phase2Evaluated", r.phase2_evaluated}};
  j["witness"] = r.witness ? witness_to_json(*r.witness) : json(nullptr);
  return j;
}

inline FRecord frecord_from_json(const json& j) {
  FRecord r;
  r.n = j.at("n").get<Natural>();
  r.f = j.at("f").get<Natural>();
  r.k = j.at("k").get<Natural>();
  r.phase1_last_index = j.at("phase1LastIndex").get<Natural>();
  r.witness_found = j.at("witnessFound").get<bool>();
  r.total_ticks = j.at("totalTicks").get<Natural>();
  r.phase1_used = j.value("phase1Used", Natural{0});
  r.phase2_used = j.value("phase2Used", Natural{0});
  r.phase2_evaluated = j.value("phase2Evaluated", Natural{0});
  if (j.contains("witness") && !j.at("witness").is_null()) r.witness = witness_from_json(j.at("witness"));
  return r;
}

// -- profile CSV --------------------------------------------------------------------

inline std::string profile_to_csv(const std::vector<FRecord>& profile) {
  std::string out = kProfileCsvHeader;
  out += '\n';
  for (const FRecord& r : profile) {
    out += std::to_string(r.n) + ',' + std::to_string(r.f) + ',' + std::to_string(r.k) + ',' +
           (r.witness_found ? "1" : "0") + ',' + std::to_string(r.total_ticks) + '\n';
  }
  return out;
}

/// Reads the CSV columns back; fields not carried by the CSV stay default.
inline std::vector<FRecord> profile_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kProfileCsvHeader) {
    throw std::invalid_argument("profile csv: missing header '" + std::string(kProfileCsvHeader) + "'");
  }
  std::vector<FRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<Natural> cells;
    while (std::getline(row, cell, ',')) cells.push_back(std::stoull(cell));
    if (cells.size() != 5 || cells[3] > 1) throw std::invalid_argument("profile csv: bad row '" + line + "'");
    FRecord r;
    r.n = cells[0];
    r.f = cells[1];
    r.k = cells[2];
    r.witness_found = cells[3] == 1;
    r.total_ticks = cells[4];
    out.push_back(r);
  }
  return out;
}

inline std::vector<FRecord> profile_from_csv(const std::string& text) {
  std::istringstream in(text);
  return profile_from_csv(in);
}

// -- report ---------------------------------------------------------------------------

inline json profile_verdict_to_json(const ProfileVerdict& v) {
  return json{{"anchor", v.anchor},
              {"tickExact", v.tick_exact},
              {"monotone", v.monotone},
              {"consecutive", v.consecutive},
              {"stepRule", v.step_rule},
              {"wellFounded", v.well_founded},
              {"recursionCalls", v.recursion_calls},
              {"recursionViolations", v.recursion_violations},
              {"maxF", v.max_f},
              {"pass", v.pass()}};
}

inline ProfileVerdict profile_verdict_from_json(const json& j) {
  ProfileVerdict v;
  v.anchor = j.at("anchor").get<bool>();
  v.tick_exact = j.at("tickExact").get<bool>();
  v.monotone = j.at("monotone").get<bool>();
  v.consecutive = j.at("consecutive").get<bool>();
  v.step_rule = j.at("stepRule").get<bool>();
  v.well_founded = j.at("wellFounded").get<bool>();
  v.recursion_calls = j.at("recursionCalls").get<Natural>();
  v.recursion_violations = j.at("recursionViolations").get<Natural>();
  v.max_f = j.at("maxF").get<Natural>();
  return v;
}

inline json report_to_json(const Report& r) {
  json profile = json::array();
  for (const FRecord& rec : r.profile) profile.push_back(frecord_to_json(rec));
  json log = json::array();
  for (const WitnessRecord& w : r.witness_log) log.push_back(witness_to_json(w));

  json entries = json::array();
  for (const IndexWitness& e : r.witness_verdict.entries) {
    entries.push_back(json{{"family", e.family},
                           {"index", e.index},
                           {"search", e.search ? witness_to_json(*e.search) : json(nullptr)},
                           {"searchValid", e.search_valid},
                           {"constructionRecords", e.construction_records},
                           {"pass", e.pass}});
  }
  const WitnessVerdict& wv = r.witness_verdict;
  const ReductionVerdict& rv = r.reduction_verdict;
  return json{
      {"maxN", r.max_n},
      {"maxSize", r.max_size},
      {"indexBound", r.index_bound},
      {"pass", r.pass()},
      {"profileVerdict", profile_verdict_to_json(r.profile_verdict)},
      {"witnessVerdict",
       {{"family1Vacuous", wv.family1_vacuous},
        {"family2Vacuous", wv.family2_vacuous},
        {"constructionRecords", wv.construction_records},
        {"invalidConstructionRecords", wv.invalid_construction_records},
        {"entries", entries},
        {"pass", wv.pass}}},
      {"reductionVerdict",
       {{"checked", rv.checked},
        {"mismatches", rv.mismatches},
        {"firstMismatch", rv.first_mismatch ? structure_to_json(*rv.first_mismatch) : json(nullptr)},
        {"pass", rv.pass}}},
      {"witnessLog", log},
      {"profile", profile},
  };
}

inline Report report_from_json(const json& j) {
  Report r;
  r.max_n = j.at("maxN").get<Natural>();
  r.max_size = j.at("maxSize").get<Natural>();
  r.index_bound = j.at("indexBound").get<Natural>();
  r.profile_verdict = profile_verdict_from_json(j.at("profileVerdict"));
  for (const json& rec : j.at("profile")) r.profile.push_back(frecord_from_json(rec));
  for (const json& w : j.at("witnessLog")) r.witness_log.push_back(witness_from_json(w));

  const json& wj = j.at("witnessVerdict");
  WitnessVerdict& wv = r.witness_verdict;
  wv.family1_vacuous = wj.at("family1Vacuous").get<bool>();
  wv.family2_vacuous = wj.at("family2Vacuous").get<bool>();
  wv.construction_records = wj.at("constructionRecords").get<Natural>();
  wv.invalid_construction_records = wj.at("invalidConstructionRecords").get<Natural>();
  wv.pass = wj.at("pass").get<bool>();
  for (const json& e : wj.at("entries")) {
    IndexWitness iw;
    iw.family = e.at("family").get<int>();
    iw.index = e.at("index").get<Natural>();
    if (!e.at("search").is_null()) iw.search = witness_from_json(e.at("search"));
    iw.search_valid = e.at("searchValid").get<bool>();
    iw.construction_records = e.at("constructionRecords").get<Natural>();
    iw.pass = e.at("pass").get<bool>();
    wv.entries.push_back(std::move(iw));
  }

  const json& rj = j.at("reductionVerdict");
  ReductionVerdict& rv = r.reduction_verdict;
  rv.checked = rj.at("checked").get<Natural>();
  rv.mismatches = rj.at("mismatches").get<Natural>();
  if (!rj.at("firstMismatch").is_null()) rv.first_mismatch = structure_from_json(rj.at("firstMismatch"));
  rv.pass = rj.at("pass").get<bool>();
  return r;
}

}  // namespace udiag
