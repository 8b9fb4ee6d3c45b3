#include "bes/weight_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace bes {

Poly Poly::constant(long long c) {
  Poly p;
  if (c != 0) p.terms[{}] = c;
  return p;
}

Poly Poly::variable(const std::string& v) {
  Poly p;
  p.terms[{{v, 1}}] = 1;
  return p;
}

bool Poly::contains(const std::string& v) const {
  for (const auto& [mono, coeff] : terms)
    for (const auto& [var, exp] : mono)
      if (var == v) return true;
  return false;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [mono, coeff] : b.terms) {
    long long& c = out.terms[mono];
    c += coeff;
    if (c == 0) out.terms.erase(mono);
  }
  return out;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [mono, coeff] : b.terms) {
    long long& c = out.terms[mono];
    c -= coeff;
    if (c == 0) out.terms.erase(mono);
  }
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      // merge sorted factor lists
      Poly::Monomial mono;
      auto ia = ma.begin();
      auto ib = mb.begin();
      while (ia != ma.end() || ib != mb.end()) {
        if (ib == mb.end() || (ia != ma.end() && ia->first < ib->first))
          mono.push_back(*ia++);
        else if (ia == ma.end() || ib->first < ia->first)
          mono.push_back(*ib++);
        else {
          mono.emplace_back(ia->first, ia->second + ib->second);
          ++ia;
          ++ib;
        }
      }
      long long& c = out.terms[mono];
      c += ca * cb;
      if (c == 0) out.terms.erase(mono);
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }

std::string to_string(const Poly& p) {
  if (p.terms.empty()) return "0";
  std::string out;
  for (const auto& [mono, coeff] : p.terms) {
    if (!out.empty()) out += coeff >= 0 ? " + " : " - ";
    else if (coeff < 0) out += "-";
    long long mag = coeff >= 0 ? coeff : -coeff;
    std::string factors;
    for (const auto& [var, exp] : mono) {
      if (!factors.empty()) factors += "*";
      factors += var;
      if (exp > 1) factors += "^" + std::to_string(exp);
    }
    if (factors.empty())
      out += std::to_string(mag);
    else if (mag == 1)
      out += factors;
    else
      out += std::to_string(mag) + "*" + factors;
  }
  return out;
}

Poly substitute(const Poly& p, const std::string& v, const Poly& q) {
  Poly out;
  for (const auto& [mono, coeff] : p.terms) {
    Poly piece = Poly::constant(coeff);
    for (const auto& [var, exp] : mono) {
      Poly factor = var == v ? q : Poly::variable(var);
      for (unsigned i = 0; i < exp; ++i) piece = piece * factor;
    }
    out = out + piece;
  }
  return out;
}

Poly weight_poly(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Zero: return Poly::constant(0);
    case TermKind::Const: return Poly::constant(0);
    case TermKind::Succ: return weight_poly(t->left) + Poly::constant(1);
    case TermKind::Add: return weight_poly(t->left) + weight_poly(t->right);
    case TermKind::Mul: return weight_poly(t->left) * weight_poly(t->right);
    case TermKind::Var: return Poly::variable(t->name);
  }
  throw std::logic_error("unreachable");
}

namespace {

// E can never be 0 under natural assignments: every coefficient shares a sign
// and the constant term is strictly of that sign.
bool never_zero(const Poly& e) {
  if (e.terms.empty()) return false;
  bool all_nonneg = true, all_nonpos = true;
  long long constant = 0;
  for (const auto& [mono, coeff] : e.terms) {
    if (mono.empty()) constant = coeff;
    all_nonneg = all_nonneg && coeff > 0;
    all_nonpos = all_nonpos && coeff < 0;
  }
  return (all_nonneg && constant > 0) || (all_nonpos && constant < 0);
}

// If e is ±(v - Q) for some variable v not occurring in Q, yields (v, Q).
std::optional<std::pair<std::string, Poly>> solvable(const Poly& e) {
  for (const auto& [mono, coeff] : e.terms) {
    if (mono.size() != 1 || mono[0].second != 1) continue;
    if (coeff != 1 && coeff != -1) continue;
    const std::string& v = mono[0].first;
    Poly rest = e;
    rest.terms.erase(mono);
    if (rest.contains(v)) continue;
    // coeff*v + rest = 0  =>  v = -rest/coeff
    Poly q = Poly::constant(0) - rest;
    if (coeff == -1) q = Poly::constant(0) - q;
    return std::make_pair(v, q);
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(SchemaAudit a) {
  switch (a) {
    case SchemaAudit::Preserving: return "Preserving";
    case SchemaAudit::Vacuous: return "Vacuous";
    default: return "Inconclusive";
  }
}

SchemaAuditResult audit_schema(const RuleSchema& schema) {
  SchemaAuditResult out;
  out.schema = schema.name;

  std::vector<Poly> premise_diffs;
  for (const auto& p : schema.premises) {
    if (p.is_prop()) {
      out.verdict = SchemaAudit::Inconclusive;
      out.detail = "0-ary premise has no weight";
      return out;
    }
    premise_diffs.push_back(weight_poly(p.lhs) - weight_poly(p.rhs));
  }
  for (const auto& e : premise_diffs) {
    if (never_zero(e)) {
      out.verdict = SchemaAudit::Vacuous;
      out.detail = "premise difference " + to_string(e) + " is never 0 over naturals";
      return out;
    }
  }

  if (schema.concludes_any()) {
    out.verdict = SchemaAudit::Inconclusive;
    out.detail = "ANY conclusion is unconstrained";
    return out;
  }
  if (schema.conclusion->is_prop()) {
    out.verdict = SchemaAudit::Preserving;
    out.detail = "0-ary conclusion carries no weight claim";
    return out;
  }

  Poly diff = weight_poly(schema.conclusion->lhs) - weight_poly(schema.conclusion->rhs);
  std::vector<Poly> pending = premise_diffs;
  bool progress = true;
  while (!diff.is_zero() && progress) {
    progress = false;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      auto sol = solvable(pending[i]);
      if (!sol) continue;
      diff = substitute(diff, sol->first, sol->second);
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto& e : pending) e = substitute(e, sol->first, sol->second);
      progress = true;
      break;
    }
  }
  if (diff.is_zero()) {
    out.verdict = SchemaAudit::Preserving;
    out.detail = "conclusion difference reduces to 0";
  } else {
    out.verdict = SchemaAudit::Inconclusive;
    out.detail = "residual difference " + to_string(diff);
  }
  return out;
}

std::vector<SchemaAuditResult> audit_base(const Base& base) {
  std::vector<SchemaAuditResult> out;
  out.reserve(base.schemas.size());
  for (const auto& s : base.schemas) out.push_back(audit_schema(s));
  return out;
}

bool audit_weight_sound(const Base& base) {
  for (const auto& r : audit_base(base))
    if (r.verdict == SchemaAudit::Inconclusive) return false;
  return true;
}

}  // namespace bes
