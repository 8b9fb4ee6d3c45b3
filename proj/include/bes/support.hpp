// Bounded three-valued support over arithmetic bases, and the report-style
// checkers: numerical definiteness, ω-completeness, induction. The (∀)
// clause ranges over infinitely many closed terms, so Verified verdicts for
// quantified formulas always carry the term-size bound they were checked to.
#pragma once

#include <nlohmann/json.hpp>

#include "bes/arith.hpp"
#include "bes/derive.hpp"
#include "bes/formula.hpp"
#include "bes/verdict.hpp"

namespace bes {

struct Bounds {
  int term_size = 7;  // (∀) instances: every closed term up to this many nodes
  Budget budget;      // per-atom derive budget (depth, nodes, numeral pool)
};

// Structural recursion on f:
//   atoms      — decide_equation on congruence-closed bases, derive otherwise;
//   φ→ψ        — sufficient condition: derive the conclusion treating the
//                (atomic) antecedents as open premises; else Unknown;
//   ∀x.body    — all instances up to bounds.term_size; Verified-up-to-bound;
//   ⊥          — Refuted via the weight witness (or Verified under premises
//                that let pa1 conclude every atom).
SupportVerdict arith_support(const Base& base, const FormulaPtr& f, const Bounds& bounds = {});

// Reports: {"rows": [{instance, verdict, certificate_ref, bound}...],
// "certificates": {ref: derivation...}, plus op-specific summary fields}.
// Certificates are check_derivation-verified before a row says Verified.

// Every closed term of <= term_size nodes normalizes to a numeral, with
// certificate. Expected failure-free on A_PLUS/A_EXT.
nlohmann::json numerically_definite_upto(const Base& base, int term_size);

// Prop.-1 executable: phi[n̄] for n <= n_max, then phi[t] for every closed t
// up to term_size via normalization + substitution of equals.
nlohmann::json omega_check(const Base& base, const AtomSchema& phi, unsigned n_max,
                           int term_size = 7);

// Prop.-2 executable: base case phi[0], step instances phi[n̄]→phi[S(n̄)] for
// n < n_max, the chained phi[n̄] up to n_max, then closed terms as above.
// The first broken link is reported.
nlohmann::json induction_check(const Base& base, const AtomSchema& phi, unsigned n_max,
                               int term_size = 7);

}  // namespace bes
