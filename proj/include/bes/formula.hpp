// Atoms and formulas of the {=, ->, forall, bot} fragment. An atom is either
// an equation between terms or a named 0-ary atom (used by toy universes).
// Negation is surface sugar: ~f parses to f -> bot and has no node of its own.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bes/term.hpp"

namespace bes {

struct Atom {
  std::string prop;  // nonempty: 0-ary atom; lhs/rhs unset
  TermPtr lhs, rhs;  // equation when prop is empty

  static Atom equation(TermPtr l, TermPtr r);
  static Atom proposition(const std::string& name);

  bool is_prop() const { return !prop.empty(); }
};

int compare(const Atom& a, const Atom& b);
bool equal(const Atom& a, const Atom& b);
bool is_closed(const Atom& a);
bool well_formed(const Atom& a, const Signature& sig);
std::string render(const Atom& a);
Atom substitute(const Atom& a, const std::string& var, const TermPtr& t);

struct AtomLess {
  bool operator()(const Atom& a, const Atom& b) const { return compare(a, b) < 0; }
};

enum class FormulaKind { Atom, Impl, Forall, Bot };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  FormulaKind kind;
  Atom atom;            // Atom only
  FormulaPtr lhs, rhs;  // Impl
  std::string var;      // Forall
  FormulaPtr body;      // Forall

  static FormulaPtr atomic(Atom a);
  static FormulaPtr impl(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(const std::string& var, FormulaPtr body);
  static FormulaPtr bot();
  // f -> bot
  static FormulaPtr neg(FormulaPtr f);
};

int compare(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool is_closed(const FormulaPtr& f);
void free_vars(const FormulaPtr& f, std::vector<std::string>& out);
std::string render(const FormulaPtr& f);

// Capture cannot occur for closed t. For open t the substitution refuses to
// push under a binder that would capture a variable of t.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t);

// 0 for atoms and bot; 1 + max of sides for ->; implication nesting only
// (the toy fragment has no quantifiers).
int implication_depth(const FormulaPtr& f);

// An atomic equation with one distinguished hole variable, e.g. x+0 = x.
// The schemas fed to the omega/induction checkers and to PA7/eq4 instances.
struct AtomSchema {
  TermPtr lhs, rhs;
  std::string var;

  Atom instantiate(const TermPtr& t) const;
  FormulaPtr formula(const TermPtr& t) const { return Formula::atomic(instantiate(t)); }
};

// Parses text as an equation whose free variables are all `var` (the hole may
// be absent from one side, as in x*0 = 0).
AtomSchema parse_atom_schema(const std::string& text, const Signature& sig,
                             const std::string& var = "x");

}  // namespace bes
