// The weight function on closed terms, numeral normalization with derivation
// certificates, the closed-equation decision oracle, and the ⊥-refutation
// report. Everything here is pure; certificates are built bottom-up from
// schema instances and always re-checkable with check_derivation.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include <nlohmann/json.hpp>

#include "bes/derivation.hpp"
#include "bes/derive.hpp"
#include "bes/formula.hpp"

namespace bes {

// w(0)=0, w(S t)=w(t)+1, w(t1+t2)=w(t1)+w(t2), w(t1*t2)=w(t1)*w(t2), w(ci)=0.
// Throws std::invalid_argument on open terms, std::overflow_error past 2^64.
std::uint64_t weight(const TermPtr& t);

// Standard denotation (constants read as 0). Independent oracle for weight:
// the two recursions coincide on every closed term.
std::uint64_t eval_value(const TermPtr& t);

// Equation with equal weights on both sides; false for 0-ary atoms.
bool weight_balanced(const Atom& a);

struct Normalization {
  std::uint64_t value = 0;
  Derivation certificate;  // proves t = numeral(value), no open leaves
};

// Certificate-producing normalization. Requires a congruence-closed base
// (A_PLUS or A_EXT): with Fig.-2-verbatim rules alone there is no way to
// rewrite under S or on the left of +, so base A is rejected.
Normalization normalize_to_numeral(const TermPtr& t, const Base& base);

struct EquationVerdict {
  bool truth = false;
  std::optional<Derivation> certificate;  // truth only
  std::pair<std::uint64_t, std::uint64_t> weights{0, 0};
};

// True iff weight(t1) = weight(t2); the certificate joins the two
// normalization certificates with eq2/eq3. Requires a congruence-closed base.
EquationVerdict decide_equation(const TermPtr& t1, const TermPtr& t2, const Base& base);

// True iff every atom in the tree is a weight-balanced equation.
bool check_weight_invariant(const Derivation& d);

// The consistency theorem's report: witness atom S(0)=0, its weight pair,
// why the (⊥) clause fails, and the search verdict under the given budget.
nlohmann::json refute_bot(const Base& base, const Budget& budget = {});

// Substitution of equals, materialized: from a certificate of t = n̄ and one
// of phi[n̄], builds a certificate of phi[t] by congruence lifting along the
// template structure plus eq3 chains. Requires a congruence-closed base.
Derivation lift_certificate(const AtomSchema& phi, const TermPtr& t, const Derivation& cert_t,
                            const Derivation& cert_phi_n, const Base& base);

}  // namespace bes
