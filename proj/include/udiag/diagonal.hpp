#pragma once

// Uniform diagonalization over two presented classes.
//
// Given presentations C1, C2 and deciders S1, S2 for A1, A2, the set
//
//   A = (A1 ∩ {x : f(|x|) even}) ∪ (A2 ∩ {x : f(|x|) odd})
//
// is decided by K, and R(x) = <x, parity of f(|x|)> reduces A to A1 (+) A2.
// The function f is computed by F under an explicit tick ledger:
//
//   f(0) = 1, charged 0 ticks.
//   n >= 1, phase 1 (n ticks): evaluate f(0), f(1), ... charging 2i for f(i)
//     while the charge fits; k is the last value obtained. Pad to n.
//   phase 2 (n ticks): with j = floor(k/2), family 1 if k is even and 2 if
//     odd, walk z = first, next, ... charging, in order, M_j(z), S1(z), S2(z)
//     and 2|z| for f(|z|). Stop at the first charge that does not fit. A z
//     that is fully charged is tested against conditions (a)-(d); a hit
//     makes f(n) = k+1, otherwise f(n) = k. Pad to n.
//
// So F(n) is charged exactly 2n ticks. A charge equal to the remaining budget
// fits. Recursive evaluations of f are counted and checked to use arguments
// strictly below the caller's n.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udiag/presentation.hpp"
#include "udiag/structure.hpp"

namespace udiag {

struct DiagConfig {
  Presentation c1;
  Presentation c2;
  Decider s1;
  Decider s2;

  const Presentation& family(int fam) const { return fam == 1 ? c1 : c2; }
};

enum class WitnessOrigin : std::uint8_t { kConstruction, kSearch };

struct WitnessRecord {
  Natural n = 0;  // input of F whose phase 2 found z; 0 for search records
  Natural j = 0;
  int family = 1;
  Structure z = first_structure();
  char condition = 'a';
  bool f_even = false;  // parity of f(|z|)
  WitnessOrigin origin = WitnessOrigin::kConstruction;

  bool operator==(const WitnessRecord&) const = default;
};

struct FRecord {
  Natural n = 0;
  Natural f = 1;
  Natural k = 1;
  Natural phase1_last_index = 0;
  bool witness_found = false;
  Natural total_ticks = 0;
  Natural phase1_used = 0;  // ticks charged in phase 1 before padding
  Natural phase2_used = 0;  // ticks charged in phase 2 before padding
  Natural phase2_evaluated = 0;
  std::optional<WitnessRecord> witness;
};

struct RecursionStats {
  Natural calls = 0;
  Natural violations = 0;
};

/// Which of conditions (a)-(d) z satisfies, i.e. how K(z) != M(z), if at all.
inline std::optional<char> classify_condition(bool m_accepts, bool f_even, bool s1_accepts, bool s2_accepts) {
  if (m_accepts) {
    if (!f_even && !s2_accepts) return 'a';
    if (f_even && !s1_accepts) return 'b';
  } else {
    if (!f_even && s2_accepts) return 'c';
    if (f_even && s1_accepts) return 'd';
  }
  return std::nullopt;
}

/// Largest m with 0 + 2 + ... + 2m = m(m+1) <= n.
inline Natural phase1_last_index(Natural n) {
  Natural m = 0;
  while ((m + 1) * (m + 2) <= n) ++m;
  return m;
}

class TickLedger {
 public:
  explicit TickLedger(Natural budget) : budget_(budget) {}

  bool charge(Natural t) {
    if (t > remaining()) return false;
    used_ += t;
    return true;
  }
  void pad() { padding_ = budget_ - used_; }

  Natural budget() const { return budget_; }
  Natural used() const { return used_; }
  Natural remaining() const { return budget_ - used_; }
  Natural total() const { return used_ + padding_; }

 private:
  Natural budget_;
  Natural used_ = 0;
  Natural padding_ = 0;
};

struct SearchResult {
  std::optional<WitnessRecord> witness;
  Natural ticks = 0;
  Natural evaluated = 0;
};

/// F, K and R for one configuration. Not thread-safe: the memo table and the
/// witness log are per instance.
class Diagonalizer {
 public:
  explicit Diagonalizer(DiagConfig cfg, bool memoize = true) : cfg_(std::move(cfg)), memoize_(memoize) {}

  const DiagConfig& config() const { return cfg_; }

  FRecord compute_f(Natural n) {
    if (memoize_ && n < memo_.size() && memo_[n]) return *memo_[n];
    FRecord rec = compute_uncached(n);
    if (memoize_) {
      if (memo_.size() <= n) memo_.resize(n + 1);
      memo_[n] = rec;
    }
    return rec;
  }

  Natural f(Natural n) {
    if (memoize_ && n < memo_.size() && memo_[n]) return memo_[n]->f;
    return compute_f(n).f;
  }

  std::vector<FRecord> profile(Natural max_n) {
    std::vector<FRecord> out;
    out.reserve(max_n + 1);
    for (Natural n = 0; n <= max_n; ++n) out.push_back(compute_f(n));
    return out;
  }

  /// Phase-2 search as a standalone operation with an explicit budget.
  std::optional<WitnessRecord> find_witness(Natural j, int family, Natural budget) {
    return search(j, family, budget, budget, 0).witness;
  }

  /// K: membership in A.
  bool decide_A(const Structure& x) {
    return f(x.size()) % 2 == 0 ? cfg_.s1.accepts(x) : cfg_.s2.accepts(x);
  }

  /// R: the reduction of A to A1 (+) A2.
  Structure reduce_R(const Structure& x) { return encode_pair(x, f(x.size()) % 2 == 0 ? 0 : 1); }

  /// First z (global order, size <= max_size) on which K and the index-th
  /// member of the family disagree.
  std::optional<WitnessRecord> find_disagreement(int family, Natural index, Natural max_size) {
    const Presentation& pres = cfg_.family(family);
    if (pres.is_empty()) return std::nullopt;
    Decider m = pres.member(GodelIndex(index));
    for (const Structure& z : structures_up_to(max_size)) {
      const bool f_even = f(z.size()) % 2 == 0;
      const bool s1 = cfg_.s1.accepts(z), s2 = cfg_.s2.accepts(z);
      const bool k = f_even ? s1 : s2;
      const bool mz = m.accepts(z);
      if (k != mz) {
        auto cond = classify_condition(mz, f_even, s1, s2);
        return WitnessRecord{0, index, family, z, *cond, f_even, WitnessOrigin::kSearch};
      }
    }
    return std::nullopt;
  }

  const std::vector<WitnessRecord>& witness_log() const { return log_; }
  const RecursionStats& recursion() const { return stats_; }

 private:
  Natural eval_f(Natural i, Natural caller) {
    ++stats_.calls;
    if (i >= caller) ++stats_.violations;
    if (i >= caller) {
      // Would not terminate without memoization; report instead of recursing.
      throw std::logic_error("f(" + std::to_string(i) + ") requested while computing f(" +
                             std::to_string(caller) + ")");
    }
    return f(i);
  }

  FRecord compute_uncached(Natural n) {
    FRecord rec;
    rec.n = n;
    if (n == 0) return rec;

    TickLedger phase1(n);
    Natural k = 1;
    Natural last = 0;
    for (Natural i = 0; phase1.charge(2 * i); ++i) {
      k = eval_f(i, n);
      last = i;
    }
    rec.phase1_used = phase1.used();
    phase1.pad();
    rec.k = k;
    rec.phase1_last_index = last;

    TickLedger phase2(n);
    const int family = k % 2 == 0 ? 1 : 2;
    const Natural j = k / 2;
    SearchResult found = search(j, family, n, n, n);
    phase2.charge(found.ticks);
    rec.phase2_used = phase2.used();
    rec.phase2_evaluated = found.evaluated;
    phase2.pad();

    rec.witness_found = found.witness.has_value();
    rec.f = k + (rec.witness_found ? 1 : 0);
    rec.total_ticks = phase1.total() + phase2.total();
    if (found.witness) {
      rec.witness = found.witness;
      if (logged_.insert(n).second) log_.push_back(*found.witness);
    }
    return rec;
  }

  SearchResult search(Natural j, int family, Natural budget, Natural caller, Natural n) {
    SearchResult res;
    const Presentation& pres = cfg_.family(family);
    if (pres.is_empty() || budget == 0) return res;
    Decider m = pres.member(GodelIndex(j));
    TickLedger ledger(budget);
    for (Structure z = first_structure();; z = next_structure(z)) {
      Decision mz = m(z);
      if (!ledger.charge(mz.cost)) break;
      Decision s1 = cfg_.s1(z);
      if (!ledger.charge(s1.cost)) break;
      Decision s2 = cfg_.s2(z);
      if (!ledger.charge(s2.cost)) break;
      if (!ledger.charge(2 * z.size())) break;
      const bool f_even = eval_f(z.size(), caller) % 2 == 0;
      ++res.evaluated;
      if (auto cond = classify_condition(mz.accept, f_even, s1.accept, s2.accept)) {
        res.witness = WitnessRecord{n, j, family, z, *cond, f_even, WitnessOrigin::kConstruction};
        break;
      }
    }
    res.ticks = ledger.used();
    return res;
  }

  DiagConfig cfg_;
  bool memoize_;
  std::vector<std::optional<FRecord>> memo_;
  std::vector<WitnessRecord> log_;
  std::set<Natural> logged_;
  RecursionStats stats_;
};

// -- independent re-validation ----------------------------------------------------

/// Recomputes M_j(z), f(|z|), S1(z), S2(z) from scratch with a fresh
/// Diagonalizer and checks the record's condition letter, its parity and
/// that K(z) != M_j(z).
inline bool revalidate_witness(const DiagConfig& cfg, const WitnessRecord& w) {
  const Presentation& pres = cfg.family(w.family);
  if (pres.is_empty()) return false;
  Diagonalizer fresh(cfg);
  const bool f_even = fresh.f(w.z.size()) % 2 == 0;
  const bool m = pres.member(GodelIndex(w.j)).accepts(w.z);
  const bool s1 = cfg.s1.accepts(w.z), s2 = cfg.s2.accepts(w.z);
  const bool k = f_even ? s1 : s2;
  auto cond = classify_condition(m, f_even, s1, s2);
  return cond && *cond == w.condition && f_even == w.f_even && k != m && fresh.decide_A(w.z) == k;
}

// -- verification -------------------------------------------------------------------

struct ProfileVerdict {
  bool anchor = false;       // f(0) = 1
  bool tick_exact = false;   // every record charged 2n
  bool monotone = false;     // f(n+1) - f(n) in {0, 1}
  bool consecutive = false;  // range is {1, ..., max}
  bool step_rule = false;    // f(n) in {k, k+1}
  bool well_founded = false;
  Natural recursion_calls = 0;
  Natural recursion_violations = 0;
  Natural max_f = 0;

  bool pass() const { return anchor && tick_exact && monotone && consecutive && step_rule && well_founded; }
};

struct IndexWitness {
  int family = 1;
  Natural index = 0;
  std::optional<WitnessRecord> search;  // first disagreement within max_size
  bool search_valid = true;
  Natural construction_records = 0;     // records logged by F for this index
  bool pass = true;
};

struct WitnessVerdict {
  bool family1_vacuous = false;
  bool family2_vacuous = false;
  std::vector<IndexWitness> entries;
  Natural construction_records = 0;
  Natural invalid_construction_records = 0;
  bool pass = false;
};

struct ReductionVerdict {
  Natural checked = 0;
  Natural mismatches = 0;
  std::optional<Structure> first_mismatch;
  bool pass = false;
};

struct Report {
  Natural max_n = 0;
  Natural max_size = 0;
  Natural index_bound = 0;
  std::vector<FRecord> profile;
  ProfileVerdict profile_verdict;
  std::vector<WitnessRecord> witness_log;
  WitnessVerdict witness_verdict;
  ReductionVerdict reduction_verdict;

  bool pass() const { return profile_verdict.pass() && witness_verdict.pass && reduction_verdict.pass; }
};

inline ProfileVerdict check_profile(const std::vector<FRecord>& profile, const RecursionStats& stats) {
  ProfileVerdict v;
  v.recursion_calls = stats.calls;
  v.recursion_violations = stats.violations;
  v.well_founded = stats.violations == 0;
  if (profile.empty()) return v;
  v.anchor = profile.front().n == 0 && profile.front().f == 1;
  v.tick_exact = v.monotone = v.step_rule = true;
  std::set<Natural> range;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const FRecord& r = profile[i];
    v.tick_exact &= r.n == i && r.total_ticks == 2 * r.n;
    v.step_rule &= r.f == r.k || r.f == r.k + 1;
    if (i > 0) {
      const Natural prev = profile[i - 1].f;
      v.monotone &= r.f == prev || r.f == prev + 1;
    }
    range.insert(r.f);
    v.max_f = std::max(v.max_f, r.f);
  }
  v.consecutive = !range.empty() && *range.begin() == 1 && *range.rbegin() == range.size();
  return v;
}

/// Checks, at desk scale, what the construction guarantees:
///  (i)   the f-profile up to max_n is anchored, exactly clocked, monotone
///        and consecutive, with well-founded recursion;
///  (ii)  for every index <= index_bound of both classes, the first
///        disagreement with K among structures of size <= max_size (if
///        any), cross-checked against the records F logged;
///  (iii) K(x) == [R(x) in A1 (+) A2] for every x of size <= max_size.
inline Report verify_udt(const DiagConfig& cfg, Natural max_size, Natural max_n, Natural index_bound) {
  if (max_size == 0) throw std::invalid_argument("verify: max size must be at least 1");
  Report rep;
  rep.max_n = max_n;
  rep.max_size = max_size;
  rep.index_bound = index_bound;

  Diagonalizer diag(cfg);
  rep.profile = diag.profile(max_n);
  rep.witness_log = diag.witness_log();

  WitnessVerdict& wv = rep.witness_verdict;
  wv.family1_vacuous = cfg.c1.is_empty();
  wv.family2_vacuous = cfg.c2.is_empty();
  wv.construction_records = rep.witness_log.size();
  for (const WitnessRecord& w : rep.witness_log) {
    if (!revalidate_witness(cfg, w)) ++wv.invalid_construction_records;
  }
  bool entries_ok = true;
  for (int family : {1, 2}) {
    if (cfg.family(family).is_empty()) continue;
    for (Natural i = 0; i <= index_bound; ++i) {
      IndexWitness e;
      e.family = family;
      e.index = i;
      e.search = diag.find_disagreement(family, i, max_size);
      if (e.search) e.search_valid = revalidate_witness(cfg, *e.search);
      for (const WitnessRecord& w : rep.witness_log) {
        if (w.family != family || w.j != i) continue;
        ++e.construction_records;
        // A logged witness within range must be matched by the search, which
        // returns the earliest disagreement.
        if (w.z.size() <= max_size && (!e.search || w.z < e.search->z)) e.pass = false;
      }
      e.pass = e.pass && e.search_valid;
      entries_ok &= e.pass;
      wv.entries.push_back(std::move(e));
    }
  }
  wv.pass = entries_ok && wv.invalid_construction_records == 0;

  rep.profile_verdict = check_profile(rep.profile, diag.recursion());

  ReductionVerdict& rv = rep.reduction_verdict;
  for (const Structure& x : structures_up_to(max_size)) {
    ++rv.checked;
    const bool in_a = diag.decide_A(x);
    const bool in_sum = oplus_member(diag.reduce_R(x), [&](const Structure& w) { return cfg.s1.accepts(w); },
                                     [&](const Structure& w) { return cfg.s2.accepts(w); });
    if (in_a != in_sum) {
      if (!rv.first_mismatch) rv.first_mismatch = x;
      ++rv.mismatches;
    }
  }
  rv.pass = rv.mismatches == 0;
  return rep;
}

}  // namespace udiag
