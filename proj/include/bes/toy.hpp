// Exact support over finite toy universes. A universe of k 0-ary atoms has
// a rule universe of M = k*2^k rules (every premise-set/conclusion pair);
// bases are bitmasks over those rules, and the (Inf)/(→) quantification over
// "all C ⊇ B" is evaluated literally across all 2^M extensions via a
// closure table and superset-OR transforms on whole-lattice bitsets.
#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bes/formula.hpp"
#include "bes/rulebase.hpp"
#include "bes/verdict.hpp"

namespace bes::toy {

// Rules are indexed r = conclusion * 2^k + premise_mask.
struct ToyUniverse {
  std::vector<std::string> atoms;  // ordered; the exact engine needs k <= 3

  explicit ToyUniverse(std::vector<std::string> atom_names);
  int k() const { return static_cast<int>(atoms.size()); }
  int rule_count() const { return k() * (1 << k()); }
  int rule_index(int conclusion, unsigned premise_mask) const;
  std::pair<int, unsigned> rule_parts(int r) const;  // (conclusion, premise_mask)
  std::optional<int> atom_index(const std::string& name) const;
  std::string render_rule(int r) const;  // rule-file line ("r<i>: p, q |- s")
};

using BaseMask = std::uint64_t;  // bit r set <=> rule r in the base

// Reads 0-ary rules (parsed from the rule-file format) into a mask over u.
BaseMask base_mask(const ToyUniverse& u, const Base& rules);
std::string render_base(const ToyUniverse& u, BaseMask b);

// Universe inferred from a rule file's atoms in order of first appearance,
// optionally extended by extra atom names (e.g. from the query formula).
ToyUniverse universe_from_rules(const Base& rules,
                                const std::vector<std::string>& extra_atoms = {});

// All distinct formulas over u's atoms and bot closed under -> up to the
// given implication depth: depth 0 lists atoms and bot; depth d adds a->b
// for all a, b of depth < d. Sizes grow as c(d) = c(d-1)^2 + k + 1.
std::vector<FormulaPtr> enumerate_toy_formulas(const ToyUniverse& u, int max_impl_depth);

// Whole-lattice bitset: one bit per base mask.
struct LatticeBits {
  std::vector<std::uint64_t> words;

  bool get(BaseMask m) const { return (words[m >> 6] >> (m & 63)) & 1; }
  void set(BaseMask m) { words[m >> 6] |= std::uint64_t(1) << (m & 63); }
};

class ToyEngine {
 public:
  // Builds the closure table; k <= 3 enforced. language_atoms restricts the
  // formula language to the first n atoms of u: formulas may only mention
  // those, and the (bot) clause quantifies over exactly them. Bases still
  // range over the full rule universe. The default (-1) takes all of u; the
  // fresh-atom probe passes the original k so that enlarging the rule
  // vocabulary does not silently change which atoms "every closed atom"
  // ranges over.
  explicit ToyEngine(ToyUniverse u, int language_atoms = -1);

  const ToyUniverse& universe() const { return u_; }
  std::uint64_t lattice_size() const { return std::uint64_t(1) << m_; }

  unsigned closure(BaseMask b) const;         // derivable-atom bitmap
  bool derives(BaseMask b, int atom) const;   // (At) clause

  // Support bitset of f over every base in the lattice (cached, LRU-bounded).
  const LatticeBits& support(const FormulaPtr& f);
  bool supports(BaseMask b, const FormulaPtr& f);

  SupportVerdict toy_support(BaseMask b, const FormulaPtr& f);
  // delta must be non-empty; (Inf) is defined for finite non-empty sets.
  SupportVerdict toy_entails(BaseMask b, const std::vector<FormulaPtr>& delta,
                             const FormulaPtr& f);

  // Support sets are upward closed in the base; exposed for property tests.
  bool monotone(const FormulaPtr& f);

 private:
  LatticeBits compute_support(const FormulaPtr& f);
  void superset_or(LatticeBits& v) const;  // v[m] |= v[C] for every C ⊇ m
  std::optional<BaseMask> first_superset_in(const LatticeBits& v, BaseMask b) const;
  nlohmann::json describe_base(BaseMask b) const;

  ToyUniverse u_;
  int m_;       // rule-universe size M
  int lang_k_;  // formula-language atoms (a prefix of u_.atoms)
  std::vector<std::uint8_t> closures_;
  // LRU cache of support bitsets keyed by rendered formula (k=3 bitsets are
  // 2 MiB each; the cap keeps sweeps over hundreds of formulas bounded).
  std::list<std::pair<std::string, LatticeBits>> cache_;
  std::map<std::string, std::list<std::pair<std::string, LatticeBits>>::iterator> cache_index_;
  static constexpr std::size_t kCacheCap = 48;
};

// Verdict agreement between u and u extended with one fresh atom, over the
// enlarged rule universe. Exact, hence k <= 2 (the extended engine is k+1).
// The fresh atom enlarges only the rule vocabulary that bases and extensions
// may mention; the formula language — and with it the atom range of the (bot)
// clause — stays u. (Otherwise any base saturating u's atoms would support
// bot over u but not over the extension, a verdict flip caused by moving the
// goalposts rather than by the extension quantification under test.)
class FreshAtomProbe {
 public:
  explicit FreshAtomProbe(const ToyUniverse& u);

  ToyEngine& small() { return small_; }
  ToyEngine& big() { return big_; }
  BaseMask embed(BaseMask b) const;  // same rules, re-indexed in the big universe
  bool robust(BaseMask b, const FormulaPtr& f);

 private:
  ToyEngine small_, big_;
};

bool toy_fresh_atom_robustness(const ToyUniverse& u, BaseMask b, const FormulaPtr& f);

}  // namespace bes::toy
