// Symbolic per-schema weight audit. The weight of a pattern term is a
// polynomial over the metavariables' weights; a schema preserves weight
// balance when the conclusion's lhs-rhs difference vanishes under the
// premise-implied equalities. This mechanizes the induction step of the
// weight-invariance lemma, schema by schema.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bes/rulebase.hpp"

namespace bes {

// Integer-coefficient multivariate polynomial; monomials are sorted
// (variable, exponent) lists. Zero coefficients are never stored.
struct Poly {
  using Monomial = std::vector<std::pair<std::string, unsigned>>;
  std::map<Monomial, long long> terms;

  static Poly constant(long long c);
  static Poly variable(const std::string& v);
  bool is_zero() const { return terms.empty(); }
  bool contains(const std::string& v) const;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
bool operator==(const Poly& a, const Poly& b);
std::string to_string(const Poly& p);

// v := q everywhere.
Poly substitute(const Poly& p, const std::string& v, const Poly& q);

// Weight polynomial of a pattern term: variables stand for metavariable
// weights; constants weigh 0.
Poly weight_poly(const TermPtr& t);

enum class SchemaAudit {
  Preserving,    // balanced premises force a balanced conclusion
  Vacuous,       // some premise can never be balanced (e.g. pa1's S(x)=0)
  Inconclusive,  // the elimination heuristic could not settle it
};

const char* to_string(SchemaAudit a);

struct SchemaAuditResult {
  std::string schema;
  SchemaAudit verdict = SchemaAudit::Inconclusive;
  std::string detail;
};

SchemaAuditResult audit_schema(const RuleSchema& schema);
std::vector<SchemaAuditResult> audit_base(const Base& base);

// True iff every schema audits Preserving or Vacuous.
bool audit_weight_sound(const Base& base);

}  // namespace bes
