// Surface-level axiom builders: the equality axioms eq1-eq4(φ) and the PA
// schemata PA1-PA7(φ). Schematic axioms (eq4, PA7) take a declared finite
// family of one-hole equation templates; the ∧ in the usual induction axiom
// is curried away since the fragment has no conjunction.
#pragma once

#include <string>
#include <vector>

#include "bes/formula.hpp"

namespace bes {

struct TheoryPresentation {
  std::string name;
  std::vector<FormulaPtr> axioms;  // all closed
};

FormulaPtr eq_axiom(int i);                   // 1..3
FormulaPtr eq4_axiom(const AtomSchema& phi);  // ∀x,y(x=y → (φ(x) → φ(y)))
FormulaPtr pa_axiom(int i);                   // 1..6
// φ(0) → (∀x(φ(x) → φ(S(x))) → ∀x φ(x))
FormulaPtr pa7_axiom(const AtomSchema& phi);

TheoryPresentation peano_arithmetic(const std::vector<AtomSchema>& phis);

}  // namespace bes
