#include "bes/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include "bes/parse.hpp"

namespace bes {

Atom Atom::equation(TermPtr l, TermPtr r) {
  Atom a;
  a.lhs = std::move(l);
  a.rhs = std::move(r);
  return a;
}

Atom Atom::proposition(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  Atom a;
  a.prop = name;
  return a;
}

int compare(const Atom& a, const Atom& b) {
  if (a.is_prop() != b.is_prop()) return a.is_prop() ? -1 : 1;
  if (a.is_prop()) return a.prop.compare(b.prop) < 0 ? -1 : (a.prop == b.prop ? 0 : 1);
  int c = compare(a.lhs, b.lhs);
  return c != 0 ? c : compare(a.rhs, b.rhs);
}

bool equal(const Atom& a, const Atom& b) { return compare(a, b) == 0; }

bool is_closed(const Atom& a) {
  return a.is_prop() || (is_closed(a.lhs) && is_closed(a.rhs));
}

bool well_formed(const Atom& a, const Signature& sig) {
  return a.is_prop() || (well_formed(a.lhs, sig) && well_formed(a.rhs, sig));
}

std::string render(const Atom& a) {
  if (a.is_prop()) return a.prop;
  return render(a.lhs) + " = " + render(a.rhs);
}

Atom substitute(const Atom& a, const std::string& var, const TermPtr& t) {
  if (a.is_prop()) return a;
  return Atom::equation(substitute(a.lhs, var, t), substitute(a.rhs, var, t));
}

namespace {

FormulaPtr make(FormulaKind kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}

}  // namespace

FormulaPtr Formula::atomic(Atom a) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Atom;
  f->atom = std::move(a);
  return f;
}

FormulaPtr Formula::impl(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Impl;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr Formula::forall(const std::string& var, FormulaPtr body) {
  if (var.empty()) throw std::invalid_argument("empty quantifier variable");
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::Forall;
  f->var = var;
  f->body = std::move(body);
  return f;
}

FormulaPtr Formula::bot() {
  static const FormulaPtr instance = make(FormulaKind::Bot);
  return instance;
}

FormulaPtr Formula::neg(FormulaPtr f) { return impl(std::move(f), bot()); }

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Atom:
      return compare(a->atom, b->atom);
    case FormulaKind::Impl: {
      int c = compare(a->lhs, b->lhs);
      return c != 0 ? c : compare(a->rhs, b->rhs);
    }
    case FormulaKind::Forall: {
      int c = a->var.compare(b->var);
      if (c != 0) return c < 0 ? -1 : 1;
      return compare(a->body, b->body);
    }
  }
  return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

namespace {

void free_vars_into(const FormulaPtr& f, std::vector<std::string>& bound,
                    std::vector<std::string>& out) {
  switch (f->kind) {
    case FormulaKind::Bot:
      return;
    case FormulaKind::Atom: {
      if (f->atom.is_prop()) return;
      std::vector<std::string> vs;
      free_vars(f->atom.lhs, vs);
      free_vars(f->atom.rhs, vs);
      for (const auto& v : vs)
        if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
            std::find(out.begin(), out.end(), v) == out.end())
          out.push_back(v);
      return;
    }
    case FormulaKind::Impl:
      free_vars_into(f->lhs, bound, out);
      free_vars_into(f->rhs, bound, out);
      return;
    case FormulaKind::Forall:
      bound.push_back(f->var);
      free_vars_into(f->body, bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

void free_vars(const FormulaPtr& f, std::vector<std::string>& out) {
  std::vector<std::string> bound;
  free_vars_into(f, bound, out);
}

bool is_closed(const FormulaPtr& f) {
  std::vector<std::string> vs;
  free_vars(f, vs);
  return vs.empty();
}

namespace {

// Precedence levels: 0 forall, 1 implication, 2 negation, 3 primary.
void render_into(const FormulaPtr& f, int level, std::string& out) {
  switch (f->kind) {
    case FormulaKind::Bot:
      out += "bot";
      return;
    case FormulaKind::Atom:
      out += render(f->atom);
      return;
    case FormulaKind::Impl: {
      if (f->rhs->kind == FormulaKind::Bot) {  // ~ sugar
        out += '~';
        render_into(f->lhs, 2, out);
        return;
      }
      bool parens = level > 1;
      if (parens) out += '(';
      render_into(f->lhs, 2, out);  // -> is right-associative
      out += " -> ";
      render_into(f->rhs, 1, out);
      if (parens) out += ')';
      return;
    }
    case FormulaKind::Forall: {
      bool parens = level > 0;
      if (parens) out += '(';
      out += "forall ";
      out += f->var;
      out += ". ";
      render_into(f->body, 0, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string render(const FormulaPtr& f) {
  std::string out;
  render_into(f, 0, out);
  return out;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t) {
  switch (f->kind) {
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Atom:
      return Formula::atomic(substitute(f->atom, var, t));
    case FormulaKind::Impl: {
      FormulaPtr l = substitute(f->lhs, var, t);
      FormulaPtr r = substitute(f->rhs, var, t);
      if (l == f->lhs && r == f->rhs) return f;
      return Formula::impl(l, r);
    }
    case FormulaKind::Forall: {
      if (f->var == var) return f;  // bound occurrences untouched
      std::vector<std::string> tv;
      free_vars(t, tv);
      if (std::find(tv.begin(), tv.end(), f->var) != tv.end())
        throw std::invalid_argument("substitution would capture variable '" + f->var + "'");
      FormulaPtr b = substitute(f->body, var, t);
      if (b == f->body) return f;
      return Formula::forall(f->var, b);
    }
  }
  return f;
}

int implication_depth(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Impl:
      return 1 + std::max(implication_depth(f->lhs), implication_depth(f->rhs));
    case FormulaKind::Forall:
      return implication_depth(f->body);
  }
  return 0;
}

Atom AtomSchema::instantiate(const TermPtr& t) const {
  return Atom::equation(substitute(lhs, var, t), substitute(rhs, var, t));
}

AtomSchema parse_atom_schema(const std::string& text, const Signature& sig,
                             const std::string& var) {
  FormulaPtr f = parse_formula(text, sig);
  if (f->kind != FormulaKind::Atom || f->atom.is_prop())
    throw std::invalid_argument("atom schema must be an equation: " + text);
  std::vector<std::string> vs;
  free_vars(f, vs);
  for (const auto& v : vs)
    if (v != var)
      throw std::invalid_argument("atom schema may only use variable '" + var + "', found '" +
                                  v + "'");
  return AtomSchema{f->atom.lhs, f->atom.rhs, var};
}

}  // namespace bes
