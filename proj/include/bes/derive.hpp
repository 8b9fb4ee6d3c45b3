// Goal-directed proof search over a base. Backward chaining with iterative
// deepening, a per-branch visited set (loop check for eq2/eq3 cycles), and a
// metavariable pool restricted to subterms of the goal/premises plus numerals
// up to a bound. Verdicts are three-valued: NotDerivable is claimed only when
// the restricted space is exhausted AND the weight oracle independently
// refutes the goal; a restricted exhaustion alone degrades to Unknown.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bes/derivation.hpp"
#include "bes/rulebase.hpp"

namespace bes {

struct Budget {
  int max_depth = 12;
  std::size_t max_nodes = 100000;
  // The instantiation pool contains numerals 0..numeral_bound in addition to
  // subterms of the goal and premises.
  unsigned numeral_bound = 8;
};

enum class DeriveStatus { Derivable, NotDerivable, Unknown };

struct DeriveVerdict {
  DeriveStatus status = DeriveStatus::Unknown;
  std::optional<Derivation> certificate;  // Derivable only; checked before return
  std::string note;
  // NotDerivable via the weight oracle: (w(lhs), w(rhs)) of the goal.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> weight_witness;
  std::size_t nodes = 0;  // prove() calls spent
};

const char* to_string(DeriveStatus s);

// Premises are a set (duplicates ignored, reuse allowed). Throws
// std::invalid_argument on open/ill-formed atoms or a non-positive budget.
DeriveVerdict derive(const Base& base, const std::vector<Atom>& premises, const Atom& goal,
                     const Budget& budget = {});

// Deterministic corpus generator: `count` closed derivations, each grown by
// `steps` forward applications of schemas to already-derived atoms (zero-
// premise schemas seed the process; ANY-conclusion schemas never fire).
// Every output passes check_derivation with no open leaves.
std::vector<Derivation> random_forward_derivations(const Base& base, std::size_t count,
                                                   unsigned steps, std::uint64_t seed);

}  // namespace bes
