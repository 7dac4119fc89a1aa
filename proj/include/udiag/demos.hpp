#pragma once

// Packaged instantiations of the construction.

#include "udiag/diagonal.hpp"

namespace udiag {

/// C1 presents only EMPTY and S1 = ALL; C2 presents only ALL and S2 = EMPTY.
/// Both hypotheses hold (ALL is not EMPTY, EMPTY is not ALL), and K accepts x
/// exactly when f(|x|) is even.
inline DiagConfig toy_config() {
  return DiagConfig{constant_presentation(builtins::empty()), constant_presentation(builtins::all()),
                    builtins::all(), builtins::empty()};
}

/// Fallback structure used by the Ladner-style demo: CONST-ZERO rejects it.
inline Structure ladner_demo_non_member() { return Structure({0, 1}); }

/// Ladner-style instantiation with toy stand-ins: C1 is the clocked
/// deterministic class, C2 the class of sets complete for the stand-in
/// problem B = CONST-ZERO, A1 = B and A2 = EMPTY.
inline DiagConfig ladner_demo_config() {
  return DiagConfig{dlin_presentation(), complete_presentation(builtins::const_zero(), ladner_demo_non_member()),
                    builtins::const_zero(), builtins::empty()};
}

}  // namespace udiag
