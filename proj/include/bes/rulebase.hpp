// Atomic rule schemas and bases. A base is a finite set of schemas standing
// for the infinite set of their closed instances ("x, y range over closed
// terms"). A schema may conclude ANY, matching every closed atom.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bes/formula.hpp"

namespace bes {

struct RuleSchema {
  std::string name;
  std::vector<Atom> premises;      // patterns; Var nodes are metavariables
  std::optional<Atom> conclusion;  // nullopt means ANY

  bool concludes_any() const { return !conclusion.has_value(); }
  // All metavariables occurring in premises or conclusion, sorted.
  std::vector<std::string> metavariables() const;
};

enum class BaseKind { EQ, A, A_PLUS, A_EXT, Custom };

struct Base {
  std::string name;
  Signature sig;
  std::vector<RuleSchema> schemas;
  BaseKind kind = BaseKind::Custom;
  // Every schema except an ANY-conclusion one takes weight-balanced premises
  // to a weight-balanced conclusion. True for the builtin bases, established
  // by the per-schema audit; custom bases must earn it via audit_base.
  bool weight_sound = false;

  const RuleSchema* find_schema(const std::string& name) const;
  bool has_congruence() const { return kind == BaseKind::A_PLUS || kind == BaseKind::A_EXT; }
};

// EQ: eq1 |- x=x; eq2 y=x |- x=y; eq3 x=y, y=z |- x=z.
// A: EQ plus pa1 S(x)=0 |- ANY; pa2 S(x)=S(y) |- x=y; pa3 |- x+0=x;
//    pa4 |- x+S(y)=S(x+y); pa5 |- x*0=0; pa6 |- x*S(y)=x*y+x.
// A_PLUS: A plus congruence cg1..cg5 for S, + (both sides), * (both sides).
// A_EXT(k): A_PLUS over the signature extended with c1..ck, plus |- 0=ci.
Base builtin_base(BaseKind kind, int num_constants = 0);
std::optional<BaseKind> base_kind_from_name(const std::string& name);

using Substitution = std::map<std::string, TermPtr>;

struct RuleInstance {
  std::vector<Atom> premises;
  Atom conclusion;
};

// Closes the schema under subst; subst must cover every metavariable with a
// closed term. conclusion_choice is required exactly when the schema
// concludes ANY. Throws std::invalid_argument on violations.
RuleInstance instantiate(const RuleSchema& schema, const Substitution& subst,
                         const std::optional<Atom>& conclusion_choice = std::nullopt);

// One-way matching of a closed atom against a pattern; extends bindings or
// returns false (bindings may be partially extended on failure).
bool match_atom(const Atom& pattern, const Atom& closed, Substitution& bindings);
bool match_term(const TermPtr& pattern, const TermPtr& closed, Substitution& bindings);

}  // namespace bes
