#include "bes/theory.hpp"

#include <stdexcept>

namespace bes {

namespace {

TermPtr vx() { return Term::var("x"); }
TermPtr vy() { return Term::var("y"); }
TermPtr vz() { return Term::var("z"); }

FormulaPtr eq(const TermPtr& a, const TermPtr& b) {
  return Formula::atomic(Atom::equation(a, b));
}

FormulaPtr forall_xy(FormulaPtr body) {
  return Formula::forall("x", Formula::forall("y", std::move(body)));
}

}  // namespace

FormulaPtr eq_axiom(int i) {
  switch (i) {
    case 1:  // ∀x(x=x)
      return Formula::forall("x", eq(vx(), vx()));
    case 2:  // ∀x,y(x=y → y=x)
      return forall_xy(Formula::impl(eq(vx(), vy()), eq(vy(), vx())));
    case 3:  // ∀x,y,z(x=y → (y=z → x=z))
      return Formula::forall(
          "x", Formula::forall(
                   "y", Formula::forall(
                            "z", Formula::impl(eq(vx(), vy()),
                                               Formula::impl(eq(vy(), vz()), eq(vx(), vz()))))));
    default:
      throw std::invalid_argument("eq_axiom index must be 1..3");
  }
}

FormulaPtr eq4_axiom(const AtomSchema& phi) {
  return forall_xy(
      Formula::impl(eq(vx(), vy()), Formula::impl(phi.formula(vx()), phi.formula(vy()))));
}

FormulaPtr pa_axiom(int i) {
  switch (i) {
    case 1:  // ∀x ¬(S(x)=0)
      return Formula::forall("x", Formula::neg(eq(Term::succ(vx()), Term::zero())));
    case 2:  // ∀x,y(S(x)=S(y) → x=y)
      return forall_xy(
          Formula::impl(eq(Term::succ(vx()), Term::succ(vy())), eq(vx(), vy())));
    case 3:  // ∀x(x+0=x)
      return Formula::forall("x", eq(Term::add(vx(), Term::zero()), vx()));
    case 4:  // ∀x,y(x+S(y)=S(x+y))
      return forall_xy(
          eq(Term::add(vx(), Term::succ(vy())), Term::succ(Term::add(vx(), vy()))));
    case 5:  // ∀x(x*0=0)
      return Formula::forall("x", eq(Term::mul(vx(), Term::zero()), Term::zero()));
    case 6:  // ∀x,y(x*S(y)=x*y+x)
      return forall_xy(
          eq(Term::mul(vx(), Term::succ(vy())), Term::add(Term::mul(vx(), vy()), vx())));
    default:
      throw std::invalid_argument("pa_axiom index must be 1..6");
  }
}

FormulaPtr pa7_axiom(const AtomSchema& phi) {
  FormulaPtr base = phi.formula(Term::zero());
  FormulaPtr step =
      Formula::forall("x", Formula::impl(phi.formula(vx()), phi.formula(Term::succ(vx()))));
  FormulaPtr all = Formula::forall("x", phi.formula(vx()));
  return Formula::impl(std::move(base), Formula::impl(std::move(step), std::move(all)));
}

TheoryPresentation peano_arithmetic(const std::vector<AtomSchema>& phis) {
  TheoryPresentation pa;
  pa.name = "PA";
  for (int i = 1; i <= 3; ++i) pa.axioms.push_back(eq_axiom(i));
  for (const auto& phi : phis) pa.axioms.push_back(eq4_axiom(phi));
  for (int i = 1; i <= 6; ++i) pa.axioms.push_back(pa_axiom(i));
  for (const auto& phi : phis) pa.axioms.push_back(pa7_axiom(phi));
  for (const auto& f : pa.axioms)
    if (!is_closed(f)) throw std::logic_error("open axiom " + render(f));
  return pa;
}

}  // namespace bes
