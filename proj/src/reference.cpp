#include "bes/reference.hpp"

#include <stdexcept>

namespace bes::toy {

unsigned reference_closure(const ToyUniverse& u, BaseMask b) {
  unsigned state = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < u.rule_count(); ++r) {
      if (!(b >> r & 1)) continue;
      auto [concl, pm] = u.rule_parts(r);
      if ((state & pm) == pm && !(state >> concl & 1)) {
        state |= 1u << concl;
        changed = true;
      }
    }
  }
  return state;
}

bool reference_supports(const ToyUniverse& u, BaseMask b, const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom: {
      auto idx = u.atom_index(f->atom.prop);
      if (!f->atom.is_prop() || !idx)
        throw std::invalid_argument("formula outside toy fragment: " + render(f));
      return reference_closure(u, b) >> *idx & 1;
    }
    case FormulaKind::Bot:
      return reference_closure(u, b) == (1u << u.k()) - 1;
    case FormulaKind::Impl: {
      const BaseMask top = (BaseMask(1) << u.rule_count()) - 1;
      for (BaseMask c = b;; c = (c + 1) | b) {
        if (reference_supports(u, c, f->lhs) && !reference_supports(u, c, f->rhs)) return false;
        if (c == top) return true;
      }
    }
    case FormulaKind::Forall:
      break;
  }
  throw std::invalid_argument("formula outside toy fragment: " + render(f));
}

bool reference_entails(const ToyUniverse& u, BaseMask b, const std::vector<FormulaPtr>& delta,
                       const FormulaPtr& f) {
  if (delta.empty())
    throw std::invalid_argument("(Inf) takes a non-empty finite set of closed formulas");
  const BaseMask top = (BaseMask(1) << u.rule_count()) - 1;
  for (BaseMask c = b;; c = (c + 1) | b) {
    bool all = true;
    for (const auto& d : delta) all = all && reference_supports(u, c, d);
    if (all && !reference_supports(u, c, f)) return false;
    if (c == top) return true;
  }
}

}  // namespace bes::toy
