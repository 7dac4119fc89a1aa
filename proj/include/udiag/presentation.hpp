#pragma once

// Total deciders with a cost model, and recursive presentations of classes
// of languages: index -> total decider.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udiag/assembler.hpp"
#include "udiag/godel.hpp"
#include "udiag/ram.hpp"
#include "udiag/structure.hpp"

namespace udiag {

class UnknownBuiltin : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidTarget : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Decision {
  bool accept = false;
  Natural cost = 0;  // ticks charged when the decider is simulated under a budget
};

/// A total procedure Structure -> {accept, reject} with a deterministic cost.
/// Cheap to copy; the underlying procedure is shared.
class Decider {
 public:
  using Fn = std::function<Decision(const Structure&)>;

  Decider(std::string name, Fn fn) : name_(std::move(name)), fn_(std::make_shared<Fn>(std::move(fn))) {}

  Decision operator()(const Structure& w) const { return (*fn_)(w); }
  bool accepts(const Structure& w) const { return (*fn_)(w).accept; }
  Natural cost(const Structure& w) const { return (*fn_)(w).cost; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::shared_ptr<const Fn> fn_;
};

// -- builtins ------------------------------------------------------------------
// Every builtin charges 1 + |w| ticks.

namespace builtins {

inline Decider make(std::string name, std::function<bool(const Structure&)> pred) {
  return Decider(std::move(name), [pred = std::move(pred)](const Structure& w) {
    return Decision{pred(w), 1 + w.size()};
  });
}

inline Decider empty() {
  return make("EMPTY", [](const Structure&) { return false; });
}
inline Decider all() {
  return make("ALL", [](const Structure&) { return true; });
}
inline Decider parity_size() {
  return make("PARITY-SIZE", [](const Structure& w) { return w.size() % 2 == 0; });
}
inline Decider const_zero() {
  return make("CONST-ZERO", [](const Structure& w) {
    for (Natural v : w.values()) {
      if (v != 0) return false;
    }
    return true;
  });
}
inline Decider threshold(Natural t) {
  return make("THRESHOLD(" + std::to_string(t) + ")", [t](const Structure& w) { return w.size() >= t; });
}

}  // namespace builtins

/// Looks up a builtin by name: EMPTY, ALL, PARITY-SIZE, CONST-ZERO or
/// THRESHOLD(t).
inline Decider builtin(const std::string& name) {
  if (name == "EMPTY") return builtins::empty();
  if (name == "ALL") return builtins::all();
  if (name == "PARITY-SIZE") return builtins::parity_size();
  if (name == "CONST-ZERO") return builtins::const_zero();
  const std::string prefix = "THRESHOLD(";
  if (name.size() > prefix.size() + 1 && name.compare(0, prefix.size(), prefix) == 0 && name.back() == ')') {
    auto t = detail::parse_natural(std::string_view(name).substr(prefix.size(), name.size() - prefix.size() - 1));
    if (t) return builtins::threshold(*t);
  }
  throw UnknownBuiltin("unknown builtin decider '" + name + "'");
}

// -- RAM-backed deciders -------------------------------------------------------

/// L_c(M) as a Decider. Cost is the number of ticks actually executed for a
/// deterministic program (at most c|w|) and the full budget c|w| otherwise.
inline Decider clocked_decider(ClockedMachine m, std::string name = "clocked") {
  return Decider(std::move(name), [m = std::move(m)](const Structure& w) {
    const Natural budget = clock_budget(m.clock(), w);
    const Natural bound = clock_bound(m.clock(), w);
    if (m.program().is_deterministic()) {
      RunOutcome r = run_det(m.program(), w, budget, bound);
      return Decision{r.accepted(), r.ticks};
    }
    return Decision{run_nondet(m.program(), w, budget, bound), budget};
  });
}

// -- finite variants -----------------------------------------------------------

using PatchTable = std::map<Structure, bool>;

/// d with the answers on finitely many structures overridden. Every query
/// pays one extra tick for the table lookup.
inline Decider finite_variant(Decider d, PatchTable patch) {
  std::string name = d.name() + "+patch(" + std::to_string(patch.size()) + ")";
  return Decider(std::move(name), [d = std::move(d), patch = std::move(patch)](const Structure& w) {
    Decision base = d(w);
    if (auto it = patch.find(w); it != patch.end()) base.accept = it->second;
    base.cost += 1;
    return base;
  });
}

// -- presentations ---------------------------------------------------------------

/// An effective enumeration of total deciders. The empty presentation has no
/// members and presents the empty class.
class Presentation {
 public:
  using Fn = std::function<Decider(const GodelIndex&)>;

  Presentation(std::string name, Fn fn) : name_(std::move(name)), fn_(std::make_shared<Fn>(std::move(fn))) {}

  static Presentation empty(std::string name = "empty") { return Presentation(std::move(name)); }

  bool is_empty() const { return fn_ == nullptr; }
  const std::string& name() const { return name_; }

  Decider member(const GodelIndex& i) const {
    if (!fn_) throw std::out_of_range("presentation '" + name_ + "' has no members");
    return (*fn_)(i);
  }

 private:
  explicit Presentation(std::string name) : name_(std::move(name)) {}

  std::string name_;
  std::shared_ptr<const Fn> fn_;
};

/// Every index maps to d.
inline Presentation constant_presentation(Decider d) {
  std::string name = "constant(" + d.name() + ")";
  return Presentation(std::move(name), [d = std::move(d)](const GodelIndex&) { return d; });
}

/// Index i maps to members[i mod size].
inline Presentation cyclic_presentation(std::vector<Decider> members, std::string name = "cyclic") {
  if (members.empty()) return Presentation::empty(std::move(name));
  return Presentation(std::move(name), [members = std::move(members)](const GodelIndex& i) {
    BigNat k = i.value() % members.size();
    return members[k.convert_to<std::size_t>()];
  });
}

/// Canonical deterministic decider for a decoded program: GUESS becomes
/// LOADC r,0 and a transducer becomes REJECT.
inline Program as_deterministic_decider(const Program& p) {
  if (!p.is_decider()) return Program({ins::reject()});
  return determinize(p);
}

/// Canonical deterministic transducer for a decoded program, or nullopt if
/// the program is a decider.
inline std::optional<Program> as_deterministic_transducer(const Program& p) {
  if (!p.is_transducer()) return std::nullopt;
  return determinize(p);
}

/// Index splits as <program, clock>; a zero clock is read as 1.
inline ClockedMachine dlin_member_machine(const GodelIndex& i) {
  auto [prog, clock] = unpair_index(i);
  Natural c = to_natural_saturating(clock.value());
  return ClockedMachine(as_deterministic_decider(godel_decode(prog)), c == 0 ? 1 : c);
}

/// All clocked deterministic machines (M, c): a presentation of the
/// linear-time deterministic class.
inline Presentation dlin_presentation() {
  return Presentation("DLIN", [](const GodelIndex& i) {
    return clocked_decider(dlin_member_machine(i), "dlin#" + i.str());
  });
}

/// Result of running a clocked transducer with fallback: the produced
/// structure (nonMember on any failure) and the ticks spent.
struct Transduction {
  Structure output;
  Natural ticks = 0;
  bool ok = false;
};

inline Transduction clocked_transduce(const std::optional<Program>& t, Natural clock, const Structure& x,
                                      const Structure& non_member) {
  if (!t) return {non_member, 0, false};
  RunOutcome r = run_det(*t, x, clock_budget(clock, x), clock_bound(clock, x));
  if (r.kind == Outcome::kOutput) return {std::move(*r.output), r.ticks, true};
  return {non_member, r.ticks, false};
}

/// A clocked transducer T_c paired with the fixed fallback structure.
struct ClockedReduction {
  std::optional<Program> transducer;
  Natural clock = 1;

  Transduction apply(const Structure& x, const Structure& non_member) const {
    return clocked_transduce(transducer, clock, x, non_member);
  }
};

/// Index splits as <transducer, clock>; a zero clock is read as 1.
inline ClockedReduction reduction_from_indices(const GodelIndex& program, const GodelIndex& clock) {
  Natural c = to_natural_saturating(clock.value());
  return {as_deterministic_transducer(godel_decode(program)), c == 0 ? 1 : c};
}

inline void require_non_member(const Decider& b, const Structure& non_member) {
  if (b.accepts(non_member)) {
    throw InvalidTarget("fallback structure " + to_string(non_member) + " is accepted by " + b.name());
  }
}

/// Decides {x : b(T_c(x))}: a member of the class of languages reducible to
/// b by clocked transducers.
inline Decider reducible_member(const Decider& b, const Structure& non_member, ClockedReduction red,
                                std::string name) {
  return Decider(std::move(name), [b, non_member, red = std::move(red)](const Structure& x) {
    Transduction t = red.apply(x, non_member);
    Decision d = b(t.output);
    return Decision{d.accept, t.ticks + d.cost};
  });
}

/// All languages reducible to b by clocked transducers. Index splits as
/// <transducer, clock>. Transducer failures map x to nonMember.
inline Presentation reducible_presentation(Decider b, Structure non_member) {
  require_non_member(b, non_member);
  std::string name = "reducible-to(" + b.name() + ")";
  return Presentation(std::move(name), [b = std::move(b), non_member = std::move(non_member)](const GodelIndex& i) {
    auto [prog, clock] = unpair_index(i);
    return reducible_member(b, non_member, reduction_from_indices(prog, clock), "reducible#" + i.str());
  });
}

// -- complete class -------------------------------------------------------------
//
// A triple (T, G, c) proposes candidate(x) = b(T_c(x)) together with a claimed
// reduction G_c from b to the candidate. On input x the member spends a
// consistency budget of |x| ticks checking b(y) == candidate(G_c(y)) for
// y = first, next, ... . If a violation turns up it answers b(x); otherwise it
// answers candidate(x).

struct CompleteTriple {
  ClockedReduction candidate;  // T
  ClockedReduction claimed;    // G
};

inline CompleteTriple complete_triple_from_index(const GodelIndex& i) {
  auto [t, g, clock] = untriple_index(i);
  return {reduction_from_indices(t, clock), reduction_from_indices(g, clock)};
}

struct ConsistencyCheck {
  bool violation = false;
  std::optional<Structure> violating;  // the y that exposed G, if any
  Natural ticks = 0;                   // ticks consumed by the phase
  Natural checked = 0;                 // fully evaluated y's
};

/// The consistency phase with a budget. Sub-computations per y run in the
/// order b(y), G_c(y), T_c(G_c(y)), b(T_c(G_c(y))); one that does not fit
/// the remaining budget ends the phase without a violation.
inline ConsistencyCheck check_consistency(const Decider& b, const Structure& non_member, const CompleteTriple& triple,
                                          Natural budget) {
  ConsistencyCheck res;
  Natural remaining = budget;
  auto charge = [&](Natural cost) {
    if (cost > remaining) {
      res.ticks = budget;
      return false;
    }
    remaining -= cost;
    return true;
  };
  for (Structure y = first_structure();; y = next_structure(y)) {
    Decision by = b(y);
    if (!charge(by.cost)) return res;
    Transduction gy = triple.claimed.apply(y, non_member);
    if (!charge(gy.ticks)) return res;
    Transduction tgy = triple.candidate.apply(gy.output, non_member);
    if (!charge(tgy.ticks)) return res;
    Decision btgy = b(tgy.output);
    if (!charge(btgy.cost)) return res;
    ++res.checked;
    if (by.cost + gy.ticks + tgy.ticks + btgy.cost == 0) {
      throw std::logic_error("consistency check: target decider charges no ticks");
    }
    if (by.accept != btgy.accept) {
      res.violation = true;
      res.violating = y;
      res.ticks = budget - remaining;
      return res;
    }
  }
}

inline Decider complete_member(const Decider& b, const Structure& non_member, CompleteTriple triple,
                               std::string name) {
  return Decider(std::move(name), [b, non_member, triple = std::move(triple)](const Structure& x) {
    ConsistencyCheck chk = check_consistency(b, non_member, triple, x.size());
    if (chk.violation) {
      Decision d = b(x);
      return Decision{d.accept, chk.ticks + d.cost};
    }
    Transduction t = triple.candidate.apply(x, non_member);
    Decision d = b(t.output);
    return Decision{d.accept, chk.ticks + t.ticks + d.cost};
  });
}

/// Sets complete for the class reducible to b: every correct (T, G, c)
/// yields its candidate, every incorrect one a finite variant of b. Index
/// splits as <T, <G, c>>.
inline Presentation complete_presentation(Decider b, Structure non_member) {
  require_non_member(b, non_member);
  std::string name = "complete-for(" + b.name() + ")";
  return Presentation(std::move(name), [b = std::move(b), non_member = std::move(non_member)](const GodelIndex& i) {
    return complete_member(b, non_member, complete_triple_from_index(i), "complete#" + i.str());
  });
}

}  // namespace udiag
