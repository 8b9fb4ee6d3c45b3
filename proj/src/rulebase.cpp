#include "bes/rulebase.hpp"

#include <algorithm>
#include <stdexcept>

namespace bes {

namespace {

void pattern_vars(const TermPtr& t, std::vector<std::string>& out) { free_vars(t, out); }

void pattern_vars(const Atom& a, std::vector<std::string>& out) {
  if (a.is_prop()) return;
  pattern_vars(a.lhs, out);
  pattern_vars(a.rhs, out);
}

}  // namespace

std::vector<std::string> RuleSchema::metavariables() const {
  std::vector<std::string> vs;
  for (const auto& p : premises) pattern_vars(p, vs);
  if (conclusion) pattern_vars(*conclusion, vs);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

const RuleSchema* Base::find_schema(const std::string& schema_name) const {
  for (const auto& s : schemas)
    if (s.name == schema_name) return &s;
  return nullptr;
}

namespace {

TermPtr mv(const char* name) { return Term::var(name); }

RuleSchema axiom(const std::string& name, Atom conclusion) {
  return RuleSchema{name, {}, std::move(conclusion)};
}

RuleSchema rule(const std::string& name, std::vector<Atom> premises, Atom conclusion) {
  return RuleSchema{name, std::move(premises), std::move(conclusion)};
}

std::vector<RuleSchema> eq_schemas() {
  TermPtr x = mv("x"), y = mv("y"), z = mv("z");
  return {
      axiom("eq1", Atom::equation(x, x)),
      rule("eq2", {Atom::equation(y, x)}, Atom::equation(x, y)),
      rule("eq3", {Atom::equation(x, y), Atom::equation(y, z)}, Atom::equation(x, z)),
  };
}

std::vector<RuleSchema> pa_schemas() {
  TermPtr x = mv("x"), y = mv("y");
  return {
      RuleSchema{"pa1", {Atom::equation(Term::succ(x), Term::zero())}, std::nullopt},
      rule("pa2", {Atom::equation(Term::succ(x), Term::succ(y))}, Atom::equation(x, y)),
      axiom("pa3", Atom::equation(Term::add(x, Term::zero()), x)),
      axiom("pa4", Atom::equation(Term::add(x, Term::succ(y)),
                                  Term::succ(Term::add(x, y)))),
      axiom("pa5", Atom::equation(Term::mul(x, Term::zero()), Term::zero())),
      axiom("pa6", Atom::equation(Term::mul(x, Term::succ(y)),
                                  Term::add(Term::mul(x, y), x))),
  };
}

std::vector<RuleSchema> congruence_schemas() {
  TermPtr x = mv("x"), y = mv("y"), z = mv("z");
  Atom xy = Atom::equation(x, y);
  return {
      rule("cg1", {xy}, Atom::equation(Term::succ(x), Term::succ(y))),
      rule("cg2", {xy}, Atom::equation(Term::add(x, z), Term::add(y, z))),
      rule("cg3", {xy}, Atom::equation(Term::add(z, x), Term::add(z, y))),
      rule("cg4", {xy}, Atom::equation(Term::mul(x, z), Term::mul(y, z))),
      rule("cg5", {xy}, Atom::equation(Term::mul(z, x), Term::mul(z, y))),
  };
}

}  // namespace

Base builtin_base(BaseKind kind, int num_constants) {
  Base b;
  b.kind = kind;
  b.weight_sound = true;
  switch (kind) {
    case BaseKind::EQ:
      b.name = "EQ";
      b.sig = Signature::basic();
      b.schemas = eq_schemas();
      return b;
    case BaseKind::A:
    case BaseKind::A_PLUS: {
      b.name = kind == BaseKind::A ? "A" : "A_PLUS";
      b.sig = Signature::basic();
      b.schemas = eq_schemas();
      auto pa = pa_schemas();
      b.schemas.insert(b.schemas.end(), pa.begin(), pa.end());
      if (kind == BaseKind::A_PLUS) {
        auto cg = congruence_schemas();
        b.schemas.insert(b.schemas.end(), cg.begin(), cg.end());
      }
      return b;
    }
    case BaseKind::A_EXT: {
      if (num_constants < 1)
        throw std::invalid_argument("A_EXT requires at least one extra constant");
      b = builtin_base(BaseKind::A_PLUS);
      b.kind = BaseKind::A_EXT;
      b.name = "A_EXT(" + std::to_string(num_constants) + ")";
      b.sig = Signature::extended(num_constants);
      for (int i = 1; i <= num_constants; ++i)
        b.schemas.push_back(
            axiom("const" + std::to_string(i),
                  Atom::equation(Term::zero(), Term::constant(i))));
      return b;
    }
    case BaseKind::Custom:
      throw std::invalid_argument("no builtin custom base");
  }
  throw std::invalid_argument("unknown base kind");
}

std::optional<BaseKind> base_kind_from_name(const std::string& name) {
  if (name == "EQ") return BaseKind::EQ;
  if (name == "A") return BaseKind::A;
  if (name == "A_PLUS") return BaseKind::A_PLUS;
  if (name == "A_EXT") return BaseKind::A_EXT;
  return std::nullopt;
}

namespace {

TermPtr apply_subst(const TermPtr& pattern, const Substitution& subst) {
  switch (pattern->kind) {
    case TermKind::Var: {
      auto it = subst.find(pattern->name);
      if (it == subst.end())
        throw std::invalid_argument("missing binding for metavariable '" + pattern->name + "'");
      return it->second;
    }
    case TermKind::Zero:
    case TermKind::Const:
      return pattern;
    case TermKind::Succ:
      return Term::succ(apply_subst(pattern->left, subst));
    case TermKind::Add:
      return Term::add(apply_subst(pattern->left, subst), apply_subst(pattern->right, subst));
    case TermKind::Mul:
      return Term::mul(apply_subst(pattern->left, subst), apply_subst(pattern->right, subst));
  }
  return pattern;
}

Atom apply_subst(const Atom& pattern, const Substitution& subst) {
  if (pattern.is_prop()) return pattern;
  return Atom::equation(apply_subst(pattern.lhs, subst), apply_subst(pattern.rhs, subst));
}

}  // namespace

RuleInstance instantiate(const RuleSchema& schema, const Substitution& subst,
                         const std::optional<Atom>& conclusion_choice) {
  for (const auto& [name, value] : subst)
    if (!is_closed(value))
      throw std::invalid_argument("substitution for '" + name + "' is not closed");
  if (schema.concludes_any() != conclusion_choice.has_value())
    throw std::invalid_argument(
        schema.concludes_any()
            ? "schema '" + schema.name + "' concludes ANY: a conclusion choice is required"
            : "schema '" + schema.name + "' does not conclude ANY");
  RuleInstance inst;
  for (const auto& p : schema.premises) inst.premises.push_back(apply_subst(p, subst));
  if (schema.concludes_any()) {
    if (!is_closed(*conclusion_choice))
      throw std::invalid_argument("conclusion choice must be closed");
    inst.conclusion = *conclusion_choice;
  } else {
    inst.conclusion = apply_subst(*schema.conclusion, subst);
  }
  return inst;
}

bool match_term(const TermPtr& pattern, const TermPtr& closed, Substitution& bindings) {
  switch (pattern->kind) {
    case TermKind::Var: {
      auto it = bindings.find(pattern->name);
      if (it != bindings.end()) return equal(it->second, closed);
      bindings.emplace(pattern->name, closed);
      return true;
    }
    case TermKind::Zero:
      return closed->kind == TermKind::Zero;
    case TermKind::Const:
      return closed->kind == TermKind::Const && closed->index == pattern->index;
    case TermKind::Succ:
      return closed->kind == TermKind::Succ && match_term(pattern->left, closed->left, bindings);
    case TermKind::Add:
    case TermKind::Mul:
      return closed->kind == pattern->kind &&
             match_term(pattern->left, closed->left, bindings) &&
             match_term(pattern->right, closed->right, bindings);
  }
  return false;
}

bool match_atom(const Atom& pattern, const Atom& closed, Substitution& bindings) {
  if (pattern.is_prop() || closed.is_prop())
    return pattern.is_prop() && closed.is_prop() && pattern.prop == closed.prop;
  return match_term(pattern.lhs, closed.lhs, bindings) &&
         match_term(pattern.rhs, closed.rhs, bindings);
}

}  // namespace bes
