#include "bes/toy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bes::toy {

namespace {

// Superset-OR smear masks for dimensions living inside one 64-bit word:
// positions with bit d clear receive the bit from position p + 2^d.
constexpr std::uint64_t kSmear[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

}  // namespace

ToyUniverse::ToyUniverse(std::vector<std::string> atom_names) : atoms(std::move(atom_names)) {
  if (atoms.empty()) throw std::invalid_argument("toy universe needs at least one atom");
  std::set<std::string> seen;
  for (const auto& a : atoms) {
    if (a.empty()) throw std::invalid_argument("empty atom name");
    if (!seen.insert(a).second) throw std::invalid_argument("duplicate atom " + a);
  }
}

int ToyUniverse::rule_index(int conclusion, unsigned premise_mask) const {
  return conclusion * (1 << k()) + static_cast<int>(premise_mask);
}

std::pair<int, unsigned> ToyUniverse::rule_parts(int r) const {
  return {r >> k(), static_cast<unsigned>(r) & ((1u << k()) - 1)};
}

std::optional<int> ToyUniverse::atom_index(const std::string& name) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::string ToyUniverse::render_rule(int r) const {
  auto [concl, mask] = rule_parts(r);
  std::string out = "r" + std::to_string(r) + ": ";
  bool first = true;
  for (int i = 0; i < k(); ++i) {
    if (!(mask >> i & 1)) continue;
    if (!first) out += ", ";
    out += atoms[static_cast<std::size_t>(i)];
    first = false;
  }
  if (!first) out += " ";
  out += "|- " + atoms[static_cast<std::size_t>(concl)];
  return out;
}

BaseMask base_mask(const ToyUniverse& u, const Base& rules) {
  BaseMask b = 0;
  for (const auto& s : rules.schemas) {
    if (s.concludes_any())
      throw std::invalid_argument("rule " + s.name + ": ANY conclusions are not toy rules");
    if (s.conclusion->is_prop() == false)
      throw std::invalid_argument("rule " + s.name + ": toy rules are over 0-ary atoms");
    auto concl = u.atom_index(s.conclusion->prop);
    if (!concl)
      throw std::invalid_argument("rule " + s.name + ": atom " + s.conclusion->prop +
                                  " outside the universe");
    unsigned mask = 0;
    for (const auto& p : s.premises) {
      if (!p.is_prop())
        throw std::invalid_argument("rule " + s.name + ": toy rules are over 0-ary atoms");
      auto i = u.atom_index(p.prop);
      if (!i)
        throw std::invalid_argument("rule " + s.name + ": atom " + p.prop +
                                    " outside the universe");
      mask |= 1u << *i;
    }
    b |= BaseMask(1) << u.rule_index(*concl, mask);
  }
  return b;
}

std::string render_base(const ToyUniverse& u, BaseMask b) {
  if (b == 0) return "(empty base)";
  std::string out;
  for (int r = 0; r < u.rule_count(); ++r) {
    if (!(b >> r & 1)) continue;
    if (!out.empty()) out += "; ";
    out += u.render_rule(r);
  }
  return out;
}

ToyUniverse universe_from_rules(const Base& rules, const std::vector<std::string>& extra_atoms) {
  std::vector<std::string> atoms;
  auto add = [&](const Atom& a, const std::string& rule) {
    if (!a.is_prop())
      throw std::invalid_argument("rule " + rule + ": toy universes are over 0-ary atoms");
    if (std::find(atoms.begin(), atoms.end(), a.prop) == atoms.end()) atoms.push_back(a.prop);
  };
  for (const auto& s : rules.schemas) {
    for (const auto& p : s.premises) add(p, s.name);
    if (!s.conclusion) throw std::invalid_argument("rule " + s.name + ": ANY is not a toy rule");
    add(*s.conclusion, s.name);
  }
  for (const auto& a : extra_atoms)
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  return ToyUniverse(atoms);
}

std::vector<FormulaPtr> enumerate_toy_formulas(const ToyUniverse& u, int max_impl_depth) {
  std::vector<FormulaPtr> level;
  for (const auto& a : u.atoms) level.push_back(Formula::atomic(Atom::proposition(a)));
  level.push_back(Formula::bot());
  std::vector<FormulaPtr> atoms = level;
  for (int d = 0; d < max_impl_depth; ++d) {
    std::vector<FormulaPtr> next = atoms;
    for (const auto& a : level)
      for (const auto& b : level) next.push_back(Formula::impl(a, b));
    level = std::move(next);
  }
  return level;
}

ToyEngine::ToyEngine(ToyUniverse u, int language_atoms)
    : u_(std::move(u)),
      m_(u_.rule_count()),
      lang_k_(language_atoms < 0 ? u_.k() : language_atoms) {
  if (u_.k() > 3)
    throw std::invalid_argument("exact toy engine handles at most 3 atoms (got " +
                                std::to_string(u_.k()) + "; the lattice has 2^" +
                                std::to_string(m_) + " bases)");
  if (lang_k_ > u_.k())
    throw std::invalid_argument("language larger than the universe");
  const std::uint64_t n = lattice_size();
  closures_.resize(n);
  const int k = u_.k();
  // Independent fixpoints; embarrassingly parallel across the lattice.
#pragma omp parallel for schedule(static)
  for (long long m = 0; m < static_cast<long long>(n); ++m) {
    unsigned state = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      std::uint64_t bits = static_cast<std::uint64_t>(m);
      while (bits) {
        int r = __builtin_ctzll(bits);
        bits &= bits - 1;
        unsigned pm = static_cast<unsigned>(r) & ((1u << k) - 1);
        unsigned concl = 1u << (r >> k);
        if ((state & pm) == pm && !(state & concl)) {
          state |= concl;
          changed = true;
        }
      }
    }
    closures_[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>(state);
  }
}

unsigned ToyEngine::closure(BaseMask b) const {
  if (b >= lattice_size()) throw std::invalid_argument("base outside the rule universe");
  return closures_[b];
}

bool ToyEngine::derives(BaseMask b, int atom) const { return closure(b) >> atom & 1; }

namespace {

LatticeBits make_bits(std::uint64_t lattice) {
  LatticeBits v;
  v.words.assign(static_cast<std::size_t>(std::max<std::uint64_t>(1, lattice >> 6)), 0);
  return v;
}

void mask_tail(LatticeBits& v, std::uint64_t lattice) {
  if (lattice < 64) v.words[0] &= (std::uint64_t(1) << lattice) - 1;
}

// lang_k bounds the atoms a formula may mention (the language is a prefix of
// u.atoms; rule vocabulary beyond it is for bases only).
void validate_fragment(const FormulaPtr& f, const ToyUniverse& u, int lang_k) {
  switch (f->kind) {
    case FormulaKind::Bot:
      return;
    case FormulaKind::Atom: {
      const auto idx = f->atom.is_prop() ? u.atom_index(f->atom.prop) : std::nullopt;
      if (!idx || *idx >= lang_k)
        throw std::invalid_argument("formula outside toy fragment: atom " + render(f));
      return;
    }
    case FormulaKind::Impl:
      validate_fragment(f->lhs, u, lang_k);
      validate_fragment(f->rhs, u, lang_k);
      return;
    case FormulaKind::Forall:
      throw std::invalid_argument("formula outside toy fragment: quantifier in " + render(f));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

void ToyEngine::superset_or(LatticeBits& v) const {
  const long long words = static_cast<long long>(v.words.size());
  for (int d = 0; d < m_; ++d) {
    if (d < 6) {
      const int shift = 1 << d;
      const std::uint64_t mask = kSmear[d];
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < words; ++i) v.words[i] |= (v.words[i] >> shift) & mask;
    } else {
      const long long stride = 1LL << (d - 6);
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < words; ++i)
        if (!(i & stride)) v.words[i] |= v.words[i + stride];
    }
  }
}

std::optional<BaseMask> ToyEngine::first_superset_in(const LatticeBits& v, BaseMask b) const {
  const BaseMask top = lattice_size() - 1;
  BaseMask s = b;
  for (;;) {
    if (v.get(s)) return s;
    if (s == top) return std::nullopt;
    s = (s + 1) | b;
  }
}

LatticeBits ToyEngine::compute_support(const FormulaPtr& f) {
  const std::uint64_t n = lattice_size();
  LatticeBits out = make_bits(n);
  const long long words = static_cast<long long>(out.words.size());

  switch (f->kind) {
    case FormulaKind::Atom: {
      const int idx = *u_.atom_index(f->atom.prop);
#pragma omp parallel for schedule(static)
      for (long long w = 0; w < words; ++w) {
        std::uint64_t word = 0;
        for (int bit = 0; bit < 64; ++bit) {
          const std::uint64_t m = (static_cast<std::uint64_t>(w) << 6) | bit;
          if (m >= n) break;
          if (closures_[m] >> idx & 1) word |= std::uint64_t(1) << bit;
        }
        out.words[static_cast<std::size_t>(w)] = word;
      }
      return out;
    }
    case FormulaKind::Bot: {
      // "every closed atom" ranges over the formula language, which the
      // fresh-atom probe keeps smaller than the rule vocabulary.
      const unsigned lang = (1u << lang_k_) - 1;
#pragma omp parallel for schedule(static)
      for (long long w = 0; w < words; ++w) {
        std::uint64_t word = 0;
        for (int bit = 0; bit < 64; ++bit) {
          const std::uint64_t m = (static_cast<std::uint64_t>(w) << 6) | bit;
          if (m >= n) break;
          if ((closures_[m] & lang) == lang) word |= std::uint64_t(1) << bit;
        }
        out.words[static_cast<std::size_t>(w)] = word;
      }
      return out;
    }
    case FormulaKind::Impl: {
      LatticeBits viol = support(f->lhs);  // copy before rhs can evict it
      const LatticeBits& right = support(f->rhs);
      for (std::size_t i = 0; i < viol.words.size(); ++i) viol.words[i] &= ~right.words[i];
      mask_tail(viol, n);
      superset_or(viol);
      for (std::size_t i = 0; i < out.words.size(); ++i) out.words[i] = ~viol.words[i];
      mask_tail(out, n);
      return out;
    }
    case FormulaKind::Forall:
      break;
  }
  throw std::invalid_argument("formula outside toy fragment: " + render(f));
}

const LatticeBits& ToyEngine::support(const FormulaPtr& f) {
  const std::string key = render(f);
  auto hit = cache_index_.find(key);
  if (hit != cache_index_.end()) {
    cache_.splice(cache_.begin(), cache_, hit->second);
    return cache_.front().second;
  }
  LatticeBits bits = compute_support(f);
  cache_.emplace_front(key, std::move(bits));
  cache_index_[key] = cache_.begin();
  if (cache_.size() > kCacheCap) {
    cache_index_.erase(cache_.back().first);
    cache_.pop_back();
  }
  return cache_.front().second;
}

bool ToyEngine::supports(BaseMask b, const FormulaPtr& f) {
  if (b >= lattice_size()) throw std::invalid_argument("base outside the rule universe");
  validate_fragment(f, u_, lang_k_);
  return support(f).get(b);
}

nlohmann::json ToyEngine::describe_base(BaseMask b) const {
  return {{"mask", b}, {"rules", render_base(u_, b)}};
}

SupportVerdict ToyEngine::toy_support(BaseMask b, const FormulaPtr& f) {
  if (b >= lattice_size()) throw std::invalid_argument("base outside the rule universe");
  validate_fragment(f, u_, lang_k_);
  const bool held = support(f).get(b);

  nlohmann::json details{{"formula", render(f)}, {"base", describe_base(b)}};
  switch (f->kind) {
    case FormulaKind::Atom: {
      if (held)
        return SupportVerdict::verified("atom derivable by forward chaining", details);
      details["counterexample"] = describe_base(b);
      details["failing_clause"] = "(At): no rule chain in the base derives " + f->atom.prop;
      return SupportVerdict::refuted("atom not derivable", details);
    }
    case FormulaKind::Bot: {
      if (held)
        return SupportVerdict::verified("every closed atom of the language is derivable",
                                        details);
      for (int i = 0; i < lang_k_; ++i)
        if (!derives(b, i)) {
          details["missing_atom"] = u_.atoms[static_cast<std::size_t>(i)];
          break;
        }
      details["failing_clause"] = "(bot): some closed atom is not derivable";
      return SupportVerdict::refuted("bot unsupported", details);
    }
    case FormulaKind::Impl: {
      const std::uint64_t extensions =
          std::uint64_t(1) << (m_ - __builtin_popcountll(b));
      details["extensions_checked"] = extensions;
      if (held)
        return SupportVerdict::verified(
            "no extension supports the antecedent without the consequent", details);
      LatticeBits viol = support(f->lhs);
      const LatticeBits& right = support(f->rhs);
      for (std::size_t i = 0; i < viol.words.size(); ++i) viol.words[i] &= ~right.words[i];
      mask_tail(viol, lattice_size());
      const BaseMask c = *first_superset_in(viol, b);
      details["counterexample"] = describe_base(c);
      details["failing_clause"] =
          "(->): the counterexample extension supports the antecedent but not the consequent";
      details["recheck"] = supports(c, f->lhs) && !supports(c, f->rhs);
      return SupportVerdict::refuted("a base extension violates the implication", details);
    }
    default:
      throw std::logic_error("unreachable");
  }
}

SupportVerdict ToyEngine::toy_entails(BaseMask b, const std::vector<FormulaPtr>& delta,
                                      const FormulaPtr& f) {
  if (delta.empty())
    throw std::invalid_argument("(Inf) takes a non-empty finite set of closed formulas");
  if (b >= lattice_size()) throw std::invalid_argument("base outside the rule universe");
  for (const auto& d : delta) validate_fragment(d, u_, lang_k_);
  validate_fragment(f, u_, lang_k_);

  LatticeBits all = make_bits(lattice_size());
  for (auto& w : all.words) w = ~std::uint64_t(0);
  for (const auto& d : delta) {
    const LatticeBits& sup = support(d);
    for (std::size_t i = 0; i < all.words.size(); ++i) all.words[i] &= sup.words[i];
  }
  const LatticeBits& supF = support(f);
  for (std::size_t i = 0; i < all.words.size(); ++i) all.words[i] &= ~supF.words[i];
  mask_tail(all, lattice_size());

  nlohmann::json details{{"formula", render(f)}, {"base", describe_base(b)}};
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : delta) ds.push_back(render(d));
  details["delta"] = ds;
  details["extensions_checked"] = std::uint64_t(1) << (m_ - __builtin_popcountll(b));

  auto c = first_superset_in(all, b);
  if (!c)
    return SupportVerdict::verified("every extension supporting delta supports the formula",
                                    details);
  details["counterexample"] = describe_base(*c);
  bool delta_holds = true;
  for (const auto& d : delta) delta_holds = delta_holds && supports(*c, d);
  details["recheck"] = delta_holds && !supports(*c, f);
  return SupportVerdict::refuted("an extension supports delta but not the formula", details);
}

bool ToyEngine::monotone(const FormulaPtr& f) {
  validate_fragment(f, u_, lang_k_);
  LatticeBits sup = support(f);  // copy
  LatticeBits nonsup = sup;
  for (auto& w : nonsup.words) w = ~w;
  mask_tail(nonsup, lattice_size());
  superset_or(nonsup);
  for (std::size_t i = 0; i < sup.words.size(); ++i)
    if (sup.words[i] & nonsup.words[i]) return false;
  return true;
}

namespace {

ToyUniverse extend_with_fresh(const ToyUniverse& u) {
  std::string fresh = "fresh";
  for (int i = 0; u.atom_index(fresh); ++i) fresh = "fresh" + std::to_string(i);
  std::vector<std::string> atoms = u.atoms;
  atoms.push_back(fresh);
  return ToyUniverse(atoms);
}

const ToyUniverse& require_probe_sized(const ToyUniverse& u) {
  if (u.k() > 2)
    throw std::invalid_argument(
        "fresh-atom probe is exact and needs the extended engine: at most 2 atoms (a third "
        "would give a 2^64 lattice)");
  return u;
}

}  // namespace

FreshAtomProbe::FreshAtomProbe(const ToyUniverse& u)
    // The big engine keeps u as the formula language: the fresh atom is extra
    // rule vocabulary for bases, not a new closed atom for the (bot) clause.
    : small_(require_probe_sized(u)), big_(extend_with_fresh(u), u.k()) {}

BaseMask FreshAtomProbe::embed(BaseMask b) const {
  BaseMask out = 0;
  std::uint64_t bits = b;
  while (bits) {
    int r = __builtin_ctzll(bits);
    bits &= bits - 1;
    auto [concl, pm] = small_.universe().rule_parts(r);
    out |= BaseMask(1) << big_.universe().rule_index(concl, pm);
  }
  return out;
}

bool FreshAtomProbe::robust(BaseMask b, const FormulaPtr& f) {
  return small_.toy_support(b, f).status == big_.toy_support(embed(b), f).status;
}

bool toy_fresh_atom_robustness(const ToyUniverse& u, BaseMask b, const FormulaPtr& f) {
  FreshAtomProbe probe(u);
  return probe.robust(b, f);
}

}  // namespace bes::toy
