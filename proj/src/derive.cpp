#include "bes/derive.hpp"

#include <algorithm>
#include <stdexcept>

#include "bes/arith.hpp"

namespace bes {

namespace {

std::size_t atom_size(const Atom& a) {
  return a.is_prop() ? 1 : node_count(a.lhs) + node_count(a.rhs);
}

bool balanced(const Atom& a) {
  return !a.is_prop() && weight(a.lhs) == weight(a.rhs);
}

class Searcher {
 public:
  Searcher(const Base& base, const std::vector<Atom>& premises, const Atom& goal,
           const Budget& budget)
      : base_(base), premises_(premises), budget_(budget) {
    // Pool: closed subterms of the goal and premises, plus small numerals.
    auto take = [&](const TermPtr& t) {
      for (const auto& s : collect_subterms(t)) pool_.push_back(s);
    };
    if (!goal.is_prop()) {
      take(goal.lhs);
      take(goal.rhs);
    }
    for (const auto& p : premises) {
      if (!p.is_prop()) {
        take(p.lhs);
        take(p.rhs);
      }
    }
    for (unsigned n = 0; n <= budget.numeral_bound; ++n) pool_.push_back(numeral(n));
    std::sort(pool_.begin(), pool_.end(),
              [](const TermPtr& a, const TermPtr& b) { return compare(a, b) < 0; });
    pool_.erase(std::unique(pool_.begin(), pool_.end(),
                            [](const TermPtr& a, const TermPtr& b) { return equal(a, b); }),
                pool_.end());

    size_bound_ = atom_size(goal) + static_cast<std::size_t>(budget.max_depth);
    oracle_on_ = base.weight_sound &&
                 std::all_of(premises.begin(), premises.end(),
                             [](const Atom& p) { return balanced(p); });
  }

  std::optional<Derivation> run(const Atom& goal) {
    std::vector<Atom> path;
    for (int d = 1; d <= budget_.max_depth; ++d) {
      depth_cutoff_ = false;
      auto r = prove(goal, d, path);
      if (r) return r;
      if (budget_hit_ || !depth_cutoff_) break;  // deeper iterations add nothing
    }
    return std::nullopt;
  }

  bool exhausted() const { return !budget_hit_ && !depth_cutoff_; }
  bool oracle_on() const { return oracle_on_; }
  std::size_t nodes() const { return nodes_; }

 private:
  bool spend() {
    if (++nodes_ > budget_.max_nodes) {
      budget_hit_ = true;
      return false;
    }
    return true;
  }

  std::optional<Derivation> prove(const Atom& goal, int depth, std::vector<Atom>& path) {
    if (!spend()) return std::nullopt;
    for (const auto& p : premises_)
      if (equal(p, goal)) return Derivation{goal, "", {}, {}};
    // Sound refutation, not a space restriction: from balanced premises over a
    // weight-sound base no unbalanced equation is derivable.
    if (oracle_on_ && !goal.is_prop() && !balanced(goal)) return std::nullopt;
    for (const auto& seen : path)
      if (equal(seen, goal)) return std::nullopt;  // minimal proofs never repeat a branch atom
    if (depth == 0) {
      depth_cutoff_ = true;
      return std::nullopt;
    }

    path.push_back(goal);
    for (const auto& schema : base_.schemas) {
      Substitution partial;
      if (!schema.concludes_any()) {
        partial.clear();
        if (!match_atom(*schema.conclusion, goal, partial)) continue;
      }
      std::vector<std::string> free;
      for (const auto& v : schema.metavariables())
        if (!partial.count(v)) free.push_back(v);

      // Odometer over pool^|free| (|free| <= 1 for the builtin bases).
      std::vector<std::size_t> idx(free.size(), 0);
      for (;;) {
        if (!spend()) break;
        Substitution subst = partial;
        for (std::size_t i = 0; i < free.size(); ++i) subst[free[i]] = pool_[idx[i]];
        RuleInstance inst = instantiate(
            schema, subst, schema.concludes_any() ? std::optional<Atom>(goal) : std::nullopt);
        bool within = true;
        for (const auto& prem : inst.premises)
          if (atom_size(prem) > size_bound_) {
            within = false;
            break;
          }
        if (within) {
          std::vector<Derivation> children;
          bool all = true;
          for (const auto& prem : inst.premises) {
            auto sub = prove(prem, depth - 1, path);
            if (!sub) {
              all = false;
              break;
            }
            children.push_back(std::move(*sub));
          }
          if (all) {
            path.pop_back();
            return Derivation{goal, schema.name, std::move(subst), std::move(children)};
          }
        }
        // advance odometer
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == pool_.size()) idx[i++] = 0;
        if (i == idx.size()) break;  // wrapped (or no free vars: single pass)
      }
      if (budget_hit_) break;
    }
    path.pop_back();
    return std::nullopt;
  }

  const Base& base_;
  const std::vector<Atom>& premises_;
  Budget budget_;
  std::vector<TermPtr> pool_;
  std::size_t size_bound_ = 0;
  bool oracle_on_ = false;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  bool depth_cutoff_ = false;
};

}  // namespace

const char* to_string(DeriveStatus s) {
  switch (s) {
    case DeriveStatus::Derivable: return "Derivable";
    case DeriveStatus::NotDerivable: return "NotDerivable";
    default: return "Unknown";
  }
}

DeriveVerdict derive(const Base& base, const std::vector<Atom>& premises, const Atom& goal,
                     const Budget& budget) {
  if (budget.max_depth < 1 || budget.max_nodes < 1)
    throw std::invalid_argument("budget must be positive");
  auto validate = [&](const Atom& a, const char* what) {
    if (!is_closed(a)) throw std::invalid_argument(std::string(what) + " must be closed");
    if (!well_formed(a, base.sig))
      throw std::invalid_argument(std::string(what) + " uses constants outside the signature");
  };
  validate(goal, "goal");
  for (const auto& p : premises) validate(p, "premise");

  DeriveVerdict out;
  Searcher searcher(base, premises, goal, budget);
  auto finish = [&](Derivation d, const std::string& note) {
    CheckResult check = check_derivation(base, d, premises);
    if (!check) {
      out.status = DeriveStatus::Unknown;
      out.note = "internal: certificate failed audit at " + check.path + ": " + check.reason;
      return;
    }
    if (premises.empty() && uses_rule(d, "pa1")) {
      out.status = DeriveStatus::Unknown;
      out.note = "internal: pa1 in a premise-free certificate";
      return;
    }
    out.status = DeriveStatus::Derivable;
    out.certificate = std::move(d);
    out.note = note;
  };

  if (auto found = searcher.run(goal)) {
    out.nodes = searcher.nodes();
    finish(std::move(*found), "found by backward search");
    return out;
  }
  out.nodes = searcher.nodes();

  // The pool cannot invent middle terms like S(S(0)+0); over a congruence-
  // closed base a balanced closed equation still has a mechanical certificate.
  if (base.has_congruence() && !goal.is_prop() && weight(goal.lhs) == weight(goal.rhs)) {
    EquationVerdict ev = decide_equation(goal.lhs, goal.rhs, base);
    if (ev.truth && ev.certificate) {
      finish(std::move(*ev.certificate), "normalization certificate");
      if (out.status == DeriveStatus::Derivable) return out;
    }
  }

  if (searcher.exhausted() && searcher.oracle_on() && !goal.is_prop() &&
      weight(goal.lhs) != weight(goal.rhs)) {
    out.status = DeriveStatus::NotDerivable;
    out.weight_witness = {weight(goal.lhs), weight(goal.rhs)};
    out.note = "restricted search exhausted; weight oracle refutes the goal";
    return out;
  }
  out.status = DeriveStatus::Unknown;
  out.note = searcher.exhausted()
                 ? "restricted search exhausted without a weight refutation"
                 : "budget exhausted before the restricted space was covered";
  return out;
}

namespace {

struct SplitMix {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

}  // namespace

std::vector<Derivation> random_forward_derivations(const Base& base, std::size_t count,
                                                   unsigned steps, std::uint64_t seed) {
  if (count < 1 || steps < 1) throw std::invalid_argument("count and steps must be >= 1");
  const std::vector<TermPtr> pool = closed_terms_upto(base.sig, 3);

  std::vector<Derivation> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SplitMix rng{seed + 0x9E3779B97F4A7C15ULL * (i + 1)};
    std::vector<Derivation> derived;
    for (unsigned step = 0; step < steps; ++step) {
      std::vector<std::size_t> order(base.schemas.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      for (std::size_t k = order.size(); k > 1; --k)
        std::swap(order[k - 1], order[rng.pick(k)]);

      bool fired = false;
      for (std::size_t k = 0; k < order.size() && !fired; ++k) {
        const RuleSchema& schema = base.schemas[order[k]];
        if (schema.concludes_any()) continue;  // pa1-style: premise never derivable here
        for (int attempt = 0; attempt < 4 && !fired; ++attempt) {
          Substitution subst;
          std::vector<Derivation> kids;
          bool ok = true;
          for (const auto& prem : schema.premises) {
            std::vector<std::pair<std::size_t, Substitution>> fits;
            for (std::size_t t = 0; t < derived.size(); ++t) {
              Substitution ext = subst;
              if (match_atom(prem, derived[t].atom, ext)) fits.emplace_back(t, std::move(ext));
            }
            if (fits.empty()) {
              ok = false;
              break;
            }
            auto& fit = fits[rng.pick(fits.size())];
            subst = std::move(fit.second);
            kids.push_back(derived[fit.first]);
          }
          if (!ok) continue;  // another attempt may pick matches that fit the later premises
          for (const auto& v : schema.metavariables())
            if (!subst.count(v)) subst[v] = pool[rng.pick(pool.size())];
          derived.push_back(Derivation{instantiate(schema, subst).conclusion, schema.name,
                                       std::move(subst), std::move(kids)});
          fired = true;
        }
      }
      if (!fired) throw std::runtime_error("no schema applicable while growing a derivation");
    }
    out.push_back(derived.back());
  }
  return out;
}

}  // namespace bes
