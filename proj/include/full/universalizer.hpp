#pragma once

#include <vector>

#include "full/syntax.hpp"

namespace full {

/// Sets and mapping used to build the universal law of a maxim.
struct UniversalizationRecord {
  std::vector<Term> t_phi2;  // agent, then constants of the purpose
  std::vector<Term> t_phi1;  // constants of the behavior not in t_phi2
  Substitution sigma;
  std::vector<Term> hoisted;  // behavior-bound variables moved into the outer block
  Formula ul_formula;
};

/// UL(M) = forall T'phi2. Wills(a', phi2') -> exists T'phi1. phi1'.
/// Throws Error when the behavior has no single Does node.
UniversalizationRecord universalize(const Maxim& m);

}  // namespace full
