// Direct transcription of the support clauses, with the extension
// quantification as a literal loop and no tables or caching. Exponentially
// slower than ToyEngine; kept as the independent oracle for its results and
// as the serial side of the benchmark.
#pragma once

#include "bes/toy.hpp"

namespace bes::toy {

unsigned reference_closure(const ToyUniverse& u, BaseMask b);
bool reference_supports(const ToyUniverse& u, BaseMask b, const FormulaPtr& f);
bool reference_entails(const ToyUniverse& u, BaseMask b, const std::vector<FormulaPtr>& delta,
                       const FormulaPtr& f);

}  // namespace bes::toy
