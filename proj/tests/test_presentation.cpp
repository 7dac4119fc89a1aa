#include <gtest/gtest.h>

#include "test_support.hpp"

namespace udiag {
namespace {

using testing::constant_transducer;
using testing::identity_transducer;

TEST(Builtins, AnswersAndCost) {
  const Structure w({1, 0, 0});
  EXPECT_FALSE(builtins::empty().accepts(w));
  EXPECT_TRUE(builtins::all().accepts(w));
  EXPECT_FALSE(builtins::parity_size().accepts(w));
  EXPECT_FALSE(builtins::const_zero().accepts(w));
  EXPECT_TRUE(builtins::const_zero().accepts(Structure::zeros(3)));
  EXPECT_TRUE(builtins::threshold(3).accepts(w));
  EXPECT_FALSE(builtins::threshold(4).accepts(w));
  EXPECT_EQ(builtins::all().cost(w), 4u);
}

TEST(Builtins, LookupByName) {
  EXPECT_EQ(builtin("THRESHOLD(7)").name(), "THRESHOLD(7)");
  EXPECT_TRUE(builtin("PARITY-SIZE").accepts(Structure({0, 0})));
  EXPECT_THROW(builtin("NOPE"), UnknownBuiltin);
  EXPECT_THROW(builtin("THRESHOLD(x)"), UnknownBuiltin);
}

TEST(ClockedDecider, CostIsTicksRun) {
  Decider d = clocked_decider(ClockedMachine(testing::first_zero_tester(), 5));
  EXPECT_EQ(d(Structure({0, 1})).cost, 3u);
  Decider loop = clocked_decider(ClockedMachine(testing::loop_program(), 2));
  EXPECT_EQ(loop(Structure({0, 1})).cost, 4u);
  EXPECT_FALSE(loop.accepts(Structure({0, 1})));
}

TEST(FiniteVariant, DiffersExactlyOnPatchKeys) {
  for (const Decider& base : {builtins::parity_size(), builtins::const_zero(), builtins::empty()}) {
    PatchTable patch;
    Natural idx = 0;
    for (const Structure& w : structures_up_to(3)) {
      if (idx++ % 4 == 1) patch[w] = !base.accepts(w);
    }
    Decider v = finite_variant(base, patch);
    std::set<Structure> differ;
    for (const Structure& w : structures_up_to(3)) {
      if (v.accepts(w) != base.accepts(w)) differ.insert(w);
      EXPECT_EQ(v.cost(w), base.cost(w) + 1);
    }
    std::set<Structure> keys;
    for (const auto& [w, _] : patch) keys.insert(w);
    EXPECT_EQ(differ, keys) << base.name();
  }
}

TEST(Presentation, EmptyHasNoMembers) {
  Presentation p = Presentation::empty();
  EXPECT_TRUE(p.is_empty());
  EXPECT_THROW(p.member(GodelIndex(0)), std::out_of_range);
  EXPECT_TRUE(cyclic_presentation({}).is_empty());
}

TEST(Presentation, CyclicWrapsAround) {
  Presentation p = cyclic_presentation({builtins::empty(), builtins::all()});
  EXPECT_EQ(p.member(GodelIndex(0)).name(), "EMPTY");
  EXPECT_EQ(p.member(GodelIndex(3)).name(), "ALL");
  EXPECT_EQ(p.member(GodelIndex(BigNat(1) << 100)).name(), "EMPTY");
}

TEST(Dlin, MembersAreClockedDeterministicMachines) {
  Presentation dlin = dlin_presentation();
  Decider fz = dlin.member(pair_index(godel_encode(testing::first_zero_tester()), GodelIndex(4)));
  for (const Structure& w : structures_up_to(3)) EXPECT_EQ(fz.accepts(w), w[0] == 0);

  // index 0: program REJECT, clock 0 read as 1
  Decider zero = dlin.member(GodelIndex(0));
  for (const Structure& w : structures_up_to(3)) EXPECT_FALSE(zero.accepts(w));

  // a transducer index is canonicalised to REJECT
  Decider tr = dlin.member(pair_index(godel_encode(identity_transducer()), GodelIndex(20)));
  for (const Structure& w : structures_up_to(2)) EXPECT_FALSE(tr.accepts(w));

  // GUESS is read as LOADC r,0: the guess-zero scan then only looks at f(0)
  Decider gz = dlin.member(pair_index(godel_encode(testing::guess_zero_program()), GodelIndex(20)));
  for (const Structure& w : structures_up_to(3)) EXPECT_EQ(gz.accepts(w), w[0] == 0);
}

TEST(Dlin, EveryMemberIsTotalOnSmallIndices) {
  Presentation dlin = dlin_presentation();
  for (Natural i = 0; i < 300; ++i) {
    Decider d = dlin.member(GodelIndex(i));
    for (const Structure& w : structures_up_to(2)) {
      Decision r = d(w);
      EXPECT_LE(r.cost, clock_budget(dlin_member_machine(GodelIndex(i)).clock(), w));
    }
  }
}

TEST(Reducible, IdentityMemberEqualsTarget) {
  const Structure non_member({0, 1});
  Presentation red = reducible_presentation(builtins::const_zero(), non_member);
  Decider m = red.member(pair_index(godel_encode(identity_transducer()), GodelIndex(13)));
  for (const Structure& w : structures_up_to(4)) EXPECT_EQ(m.accepts(w), builtins::const_zero().accepts(w)) << w;
}

TEST(Reducible, FailingTransducerMapsToNonMember) {
  const Structure non_member({0, 1});
  // clock 1 is far too small for the identity copy
  Presentation red = reducible_presentation(builtins::const_zero(), non_member);
  Decider m = red.member(pair_index(godel_encode(identity_transducer()), GodelIndex(1)));
  for (const Structure& w : structures_up_to(3)) EXPECT_FALSE(m.accepts(w));
}

TEST(Reducible, RejectsAcceptedFallback) {
  EXPECT_THROW(reducible_presentation(builtins::all(), Structure({0})), InvalidTarget);
  EXPECT_THROW(complete_presentation(builtins::const_zero(), Structure({0})), InvalidTarget);
}

// -- complete presentation: the three worked examples ---------------------------

// Example A: b = ALL patched to reject ([2],[0,1]); T = G = the constant
// transducer onto that non-member, clock 4.
//   b(y) costs 2 + |y|.
//   The constant transducer needs LOADC, OUTSIZE and one LOADC/LOADC/OUT
//   triple: 5 ticks. On |y| = 1 the budget 4 runs out (4 ticks charged, the
//   fallback is the same structure); on |y| = 2 it fits (5 ticks).
//   y1 = ([1],[0]): b(y1) = accept (3) + G (4) + T(nonMember) (5) + b(nonMember)
//   = reject (4). Violation at y1 after 16 ticks, so n0 = 16. The candidate
//   b(T(x)) is always b(nonMember) = reject.
struct ExampleA {
  Structure non_member{std::vector<Natural>{0, 1}};
  Decider b = finite_variant(builtins::all(), PatchTable{{Structure({0, 1}), false}});
  CompleteTriple triple{{constant_transducer(Structure({0, 1})), 4}, {constant_transducer(Structure({0, 1})), 4}};
  static constexpr Natural kSwitch = 16;
};

TEST(Complete, ExampleAConsistencyBoundary) {
  ExampleA ex;
  ConsistencyCheck below = check_consistency(ex.b, ex.non_member, ex.triple, ExampleA::kSwitch - 1);
  EXPECT_FALSE(below.violation);
  EXPECT_EQ(below.ticks, ExampleA::kSwitch - 1);
  ConsistencyCheck at = check_consistency(ex.b, ex.non_member, ex.triple, ExampleA::kSwitch);
  ASSERT_TRUE(at.violation);
  EXPECT_EQ(*at.violating, Structure({0}));
  EXPECT_EQ(at.ticks, ExampleA::kSwitch);
}

TEST(Complete, ExampleASwitchesToTarget) {
  ExampleA ex;
  Decider m = complete_member(ex.b, ex.non_member, ex.triple, "A");
  for (const Structure& x : structures_up_to(4)) EXPECT_FALSE(m.accepts(x)) << x;
  for (Natural n = 5; n < ExampleA::kSwitch; ++n) EXPECT_FALSE(m.accepts(Structure::zeros(n))) << n;
  for (Natural n = ExampleA::kSwitch; n < ExampleA::kSwitch + 6; ++n) {
    EXPECT_TRUE(m.accepts(Structure::zeros(n))) << n;
    EXPECT_EQ(m.accepts(Structure::zeros(n)), ex.b.accepts(Structure::zeros(n)));
  }
}

// Example B: b = PARITY-SIZE, nonMember = ([1],[0]), T = [JMP 0] (a decider,
// so every transduction fails at 0 ticks onto nonMember), G = identity,
// clock 13. Identity costs 7|y| + 6 <= 13|y|.
//   y1 = ([1],[0]):  b = reject (2) + G (13) + T (0) + b(nonMember) = reject (2) = 17
//   y2 = ([2],[0,0]): b = accept (3) + G (20) + T (0) + b(nonMember) = reject (2)
//   Violation at y2 after 17 + 25 = 42 ticks, so n0 = 42. The candidate is EMPTY.
struct ExampleB {
  Structure non_member{std::vector<Natural>{0}};
  Decider b = builtins::parity_size();
  static constexpr Natural kClock = 13;
  static constexpr Natural kSwitch = 42;
  GodelIndex index() const {
    return triple_index(godel_encode(testing::loop_program()), godel_encode(identity_transducer()),
                        GodelIndex(kClock));
  }
};

TEST(Complete, ExampleBConsistencyBoundary) {
  ExampleB ex;
  CompleteTriple triple = complete_triple_from_index(ex.index());
  EXPECT_FALSE(triple.candidate.transducer.has_value());
  ASSERT_TRUE(triple.claimed.transducer.has_value());
  EXPECT_EQ(triple.claimed.clock, ExampleB::kClock);

  ConsistencyCheck below = check_consistency(ex.b, ex.non_member, triple, ExampleB::kSwitch - 1);
  EXPECT_FALSE(below.violation);
  EXPECT_EQ(below.checked, 1u);
  ConsistencyCheck at = check_consistency(ex.b, ex.non_member, triple, ExampleB::kSwitch);
  ASSERT_TRUE(at.violation);
  EXPECT_EQ(*at.violating, Structure({0, 0}));
  EXPECT_EQ(at.ticks, ExampleB::kSwitch);
}

TEST(Complete, ExampleBSwitchesToTarget) {
  ExampleB ex;
  Decider m = complete_presentation(ex.b, ex.non_member).member(ex.index());
  for (const Structure& x : structures_up_to(4)) EXPECT_FALSE(m.accepts(x)) << x;
  for (Natural n = 5; n < ExampleB::kSwitch; ++n) EXPECT_FALSE(m.accepts(Structure::zeros(n))) << n;
  for (Natural n = ExampleB::kSwitch; n < ExampleB::kSwitch + 6; ++n) {
    EXPECT_EQ(m.accepts(Structure::zeros(n)), n % 2 == 0) << n;
  }
}

// Example C: T = G = identity with clock 13. Every check passes, so the
// member is the candidate b(T(x)) = b(x).
TEST(Complete, ExampleCIsTheCandidate) {
  const Structure non_member({0});
  GodelIndex idx = triple_index(godel_encode(identity_transducer()), godel_encode(identity_transducer()),
                                GodelIndex(13));
  Decider m = complete_presentation(builtins::parity_size(), non_member).member(idx);
  for (const Structure& x : structures_up_to(4)) EXPECT_EQ(m.accepts(x), x.size() % 2 == 0) << x;
  CompleteTriple triple = complete_triple_from_index(idx);
  EXPECT_FALSE(check_consistency(builtins::parity_size(), non_member, triple, 2000).violation);
}

// Dichotomy: for every triple, the member equals the candidate below the
// first violating budget and b from there on.
TEST(Complete, DichotomyOverSmallTriples) {
  const Structure non_member({0, 1});
  const Decider b = builtins::const_zero();
  std::vector<std::optional<Program>> transducers = {
      std::nullopt, identity_transducer(), testing::append_one_transducer(), constant_transducer(Structure({0, 1})),
      constant_transducer(Structure::zeros(2)), constant_transducer(Structure({0}))};
  const std::vector<Structure> probes = [] {
    std::vector<Structure> v = enumerate_structures(3);
    for (Natural n = 4; n <= 40; n += 3) v.push_back(Structure::zeros(n));
    v.push_back(Structure({3, 0, 0, 0}));
    return v;
  }();
  for (const auto& t : transducers) {
    for (const auto& g : transducers) {
      for (Natural c : {1, 8, 16}) {
        CompleteTriple triple{{t, c}, {g, c}};
        std::optional<Natural> n0;
        for (Natural budget = 0; budget <= 40 && !n0; ++budget) {
          if (check_consistency(b, non_member, triple, budget).violation) n0 = budget;
        }
        Decider m = complete_member(b, non_member, triple, "probe");
        for (const Structure& x : probes) {
          const bool candidate = b.accepts(triple.candidate.apply(x, non_member).output);
          const bool expected = n0 && x.size() >= *n0 ? b.accepts(x) : candidate;
          EXPECT_EQ(m.accepts(x), expected) << x;
        }
      }
    }
  }
}

}  // namespace
}  // namespace udiag
