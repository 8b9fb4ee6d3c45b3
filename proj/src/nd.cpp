#include "bes/nd.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

#include "bes/parse.hpp"
#include "bes/support.hpp"

namespace bes {

const char* to_string(NDRule r) {
  switch (r) {
    case NDRule::Assumption: return "assumption";
    case NDRule::ImplIntro: return "impl_intro";
    case NDRule::ImplElim: return "impl_elim";
    case NDRule::ForallIntro: return "forall_intro";
    case NDRule::ForallElim: return "forall_elim";
    case NDRule::BotElim: return "bot_elim";
    default: return "classical_reductio";
  }
}

NDRule nd_rule_from_string(const std::string& s) {
  for (NDRule r : {NDRule::Assumption, NDRule::ImplIntro, NDRule::ImplElim,
                   NDRule::ForallIntro, NDRule::ForallElim, NDRule::BotElim,
                   NDRule::ClassicalReductio}) {
    if (s == to_string(r)) return r;
  }
  throw std::invalid_argument("unknown nd rule: " + s);
}

namespace {

struct OpenAssumption {
  std::string label;
  FormulaPtr formula;
};

bool var_free_in(const FormulaPtr& f, const std::string& v) {
  std::vector<std::string> vars;
  free_vars(f, vars);
  return std::find(vars.begin(), vars.end(), v) != vars.end();
}

std::size_t expected_children(NDRule r) {
  switch (r) {
    case NDRule::Assumption: return 0;
    case NDRule::ImplElim: return 2;
    default: return 1;
  }
}

class NDChecker {
 public:
  NDCheckResult run(const NDProof& p, const Sequent& s) {
    result_ = NDCheckResult{};
    std::vector<OpenAssumption> open;
    if (!walk(p, "root", open)) return result_;
    if (!equal(p.formula, s.conclusion)) {
      fail("root", "sequent",
           "tree concludes " + render(p.formula) + " but the sequent wants " +
               render(s.conclusion));
      return result_;
    }
    for (const auto& a : open) {
      bool found = std::any_of(s.assumptions.begin(), s.assumptions.end(),
                               [&](const FormulaPtr& g) { return equal(g, a.formula); });
      if (!found) {
        fail("root", "sequent",
             "open assumption [" + a.label + "] " + render(a.formula) +
                 " is not among the sequent's assumptions");
        return result_;
      }
    }
    return result_;
  }

 private:
  bool fail(const std::string& path, const std::string& rule, const std::string& reason) {
    if (result_.ok) result_ = {false, path, rule, reason};
    return false;
  }

  // Removes every open assumption carrying `label`; each must be `expected`.
  // A label matching nothing discharges vacuously, which is fine.
  bool discharge(std::vector<OpenAssumption>& open, const std::string& label,
                 const FormulaPtr& expected, const std::string& path, const char* rule) {
    for (const auto& a : open) {
      if (a.label == label && !equal(a.formula, expected)) {
        return fail(path, rule,
                    "label '" + label + "' is bound to " + render(a.formula) +
                        ", not the discharged " + render(expected));
      }
    }
    open.erase(std::remove_if(open.begin(), open.end(),
                              [&](const OpenAssumption& a) { return a.label == label; }),
               open.end());
    return true;
  }

  bool walk(const NDProof& n, const std::string& path, std::vector<OpenAssumption>& out) {
    const char* rule = to_string(n.rule);
    if (!n.formula) return fail(path, rule, "node lacks a formula");
    if (n.children.size() != expected_children(n.rule)) {
      return fail(path, rule,
                  "expected " + std::to_string(expected_children(n.rule)) +
                      " premise(s), found " + std::to_string(n.children.size()));
    }
    std::vector<std::vector<OpenAssumption>> sub(n.children.size());
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (!n.children[i]) return fail(path, rule, "null child");
      if (!walk(*n.children[i], path + "." + std::to_string(i), sub[i])) return false;
    }

    switch (n.rule) {
      case NDRule::Assumption:
        if (n.label.empty()) return fail(path, rule, "assumption needs a label");
        out.push_back({n.label, n.formula});
        return true;

      case NDRule::ImplIntro: {
        if (n.formula->kind != FormulaKind::Impl)
          return fail(path, rule, "conclusion " + render(n.formula) + " is not an implication");
        if (n.label.empty()) return fail(path, rule, "missing discharge label");
        const FormulaPtr& child = n.children[0]->formula;
        if (!equal(child, n.formula->rhs))
          return fail(path, rule,
                      "premise concludes " + render(child) + ", wanted the consequent " +
                          render(n.formula->rhs));
        if (!discharge(sub[0], n.label, n.formula->lhs, path, rule)) return false;
        break;
      }

      case NDRule::ImplElim: {
        const FormulaPtr& major = n.children[0]->formula;
        const FormulaPtr& minor = n.children[1]->formula;
        if (major->kind != FormulaKind::Impl)
          return fail(path, rule, "major premise " + render(major) + " is not an implication");
        if (!equal(major->rhs, n.formula))
          return fail(path, rule,
                      "major premise yields " + render(major->rhs) + ", node concludes " +
                          render(n.formula));
        if (!equal(minor, major->lhs))
          return fail(path, rule,
                      "minor premise " + render(minor) + " does not match the antecedent " +
                          render(major->lhs));
        break;
      }

      case NDRule::ForallIntro: {
        if (n.formula->kind != FormulaKind::Forall)
          return fail(path, rule, "conclusion " + render(n.formula) + " is not universal");
        if (n.label.empty()) return fail(path, rule, "missing eigenvariable");
        FormulaPtr want = substitute(n.formula->body, n.formula->var, Term::var(n.label));
        if (!equal(n.children[0]->formula, want))
          return fail(path, rule,
                      "premise concludes " + render(n.children[0]->formula) + ", wanted " +
                          render(want));
        if (var_free_in(n.formula, n.label))
          return fail(path, rule,
                      "eigenvariable " + n.label + " is free in the conclusion");
        for (const auto& a : sub[0]) {
          if (var_free_in(a.formula, n.label))
            return fail(path, rule,
                        "eigenvariable " + n.label + " is free in open assumption [" +
                            a.label + "] " + render(a.formula));
        }
        break;
      }

      case NDRule::ForallElim: {
        const FormulaPtr& child = n.children[0]->formula;
        if (child->kind != FormulaKind::Forall)
          return fail(path, rule, "premise " + render(child) + " is not universal");
        if (!n.term) return fail(path, rule, "missing witness term");
        FormulaPtr want = substitute(child->body, child->var, n.term);
        if (!equal(want, n.formula))
          return fail(path, rule,
                      "instantiating at " + render(n.term) + " gives " + render(want) +
                          ", node concludes " + render(n.formula));
        break;
      }

      case NDRule::BotElim:
        if (n.children[0]->formula->kind != FormulaKind::Bot)
          return fail(path, rule, "premise must be bot");
        break;

      case NDRule::ClassicalReductio: {
        if (n.children[0]->formula->kind != FormulaKind::Bot)
          return fail(path, rule, "premise must be bot");
        if (n.label.empty()) return fail(path, rule, "missing discharge label");
        FormulaPtr expected = Formula::impl(n.formula, Formula::bot());
        if (!discharge(sub[0], n.label, expected, path, rule)) return false;
        break;
      }
    }

    for (auto& s : sub) out.insert(out.end(), s.begin(), s.end());
    return true;
  }

  NDCheckResult result_;
};

}  // namespace

NDCheckResult check_nd(const NDProof& p, const Sequent& s) { return NDChecker().run(p, s); }

nlohmann::json nd_proof_to_json(const NDProof& p) {
  nlohmann::json j{{"rule", to_string(p.rule)},
                   {"formula", render(p.formula)},
                   {"children", nlohmann::json::array()}};
  if (!p.label.empty()) j["label"] = p.label;
  if (p.term) j["term"] = render(p.term);
  for (const auto& c : p.children) j["children"].push_back(nd_proof_to_json(*c));
  return j;
}

NDProof nd_proof_from_json(const nlohmann::json& j, const Signature& sig) {
  NDProof p;
  p.rule = nd_rule_from_string(j.at("rule").get<std::string>());
  p.formula = parse_formula(j.at("formula").get<std::string>(), sig);
  p.label = j.value("label", std::string{});
  if (j.contains("term")) p.term = parse_term(j.at("term").get<std::string>(), sig);
  for (const auto& c : j.value("children", nlohmann::json::array()))
    p.children.push_back(std::make_shared<NDProof>(nd_proof_from_json(c, sig)));
  return p;
}

nlohmann::json sequent_to_json(const Sequent& s) {
  nlohmann::json j{{"assumptions", nlohmann::json::array()},
                   {"conclusion", render(s.conclusion)}};
  for (const auto& a : s.assumptions) j["assumptions"].push_back(render(a));
  return j;
}

Sequent sequent_from_json(const nlohmann::json& j, const Signature& sig) {
  Sequent s;
  for (const auto& a : j.value("assumptions", nlohmann::json::array()))
    s.assumptions.push_back(parse_formula(a.get<std::string>(), sig));
  s.conclusion = parse_formula(j.at("conclusion").get<std::string>(), sig);
  return s;
}

CorpusEntry corpus_entry_from_json(const nlohmann::json& j, const Signature& sig) {
  CorpusEntry e;
  e.name = j.at("name").get<std::string>();
  e.comment = j.value("comment", std::string{});
  e.propositional = j.value("fragment", std::string{"propositional"}) != "first-order";
  e.sequent = sequent_from_json(j.at("sequent"), sig);
  e.proof = nd_proof_from_json(j.at("proof"), sig);
  return e;
}

std::vector<CorpusEntry> load_corpus_dir(const std::string& dir, const Signature& sig) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> corpus;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw std::runtime_error("cannot open " + f.string());
    nlohmann::json j;
    try {
      in >> j;
      corpus.push_back(corpus_entry_from_json(j, sig));
    } catch (const std::exception& e) {
      throw std::runtime_error(f.string() + ": " + e.what());
    }
  }
  return corpus;
}

namespace {

// Atom names a propositional entry mentions; nullopt if anything falls
// outside the {0-ary atoms, ->, bot} fragment.
std::optional<std::set<std::string>> prop_atoms(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
      if (!f->atom.is_prop()) return std::nullopt;
      return std::set<std::string>{f->atom.prop};
    case FormulaKind::Bot:
      return std::set<std::string>{};
    case FormulaKind::Impl: {
      auto l = prop_atoms(f->lhs);
      auto r = prop_atoms(f->rhs);
      if (!l || !r) return std::nullopt;
      l->insert(r->begin(), r->end());
      return l;
    }
    default:
      return std::nullopt;
  }
}

std::vector<toy::BaseMask> sample_bases(int rule_count, std::size_t sample,
                                        std::uint64_t seed) {
  const std::uint64_t lattice = std::uint64_t(1) << rule_count;
  std::vector<toy::BaseMask> out;
  if (sample == 0 || sample >= lattice) {
    out.reserve(lattice);
    for (std::uint64_t b = 0; b < lattice; ++b) out.push_back(b);
    return out;
  }
  // Always probe the two extremes; fill the rest from a fixed-seed generator.
  std::set<toy::BaseMask> picked{0, lattice - 1};
  std::mt19937_64 rng(seed);
  while (picked.size() < sample) picked.insert(rng() & (lattice - 1));
  out.assign(picked.begin(), picked.end());
  return out;
}

}  // namespace

nlohmann::json soundness_harness(const std::vector<CorpusEntry>& corpus,
                                 const std::vector<toy::ToyUniverse>& universes,
                                 std::size_t sample, std::uint64_t seed) {
  nlohmann::json report{{"entries", nlohmann::json::array()},
                        {"universes", nlohmann::json::array()}};
  std::vector<std::unique_ptr<toy::ToyEngine>> engines;
  for (const auto& u : universes) {
    engines.push_back(std::make_unique<toy::ToyEngine>(u));
    report["universes"].push_back(
        {{"atoms", u.atoms},
         {"rules", u.rule_count()},
         {"bases", sample_bases(u.rule_count(), sample, seed).size()},
         {"sampled", sample != 0 && sample < (std::uint64_t(1) << u.rule_count())}});
  }

  std::size_t violations = 0, rejected = 0;
  for (const auto& entry : corpus) {
    nlohmann::json e{{"name", entry.name}};
    NDCheckResult chk = check_nd(entry.proof, entry.sequent);
    if (!chk) {
      e["status"] = "proof_rejected";
      e["at"] = chk.path;
      e["reason"] = chk.reason;
      ++rejected;
      report["entries"].push_back(std::move(e));
      continue;
    }
    e["nd_check"] = "ok";

    if (!entry.propositional) {
      // First-order entries: no exhaustive semantics; run the bounded
      // arithmetic support check on the curried sequent instead.
      FormulaPtr goal = entry.sequent.conclusion;
      for (auto it = entry.sequent.assumptions.rbegin();
           it != entry.sequent.assumptions.rend(); ++it)
        goal = Formula::impl(*it, goal);
      SupportVerdict v = arith_support(builtin_base(BaseKind::A), goal);
      e["semantic_check"] = "arith_support";
      e["base"] = "A";
      e["support"] = {{"status", to_string(v.status)}, {"note", v.note}};
      if (v.status == SupportStatus::Refuted) {
        e["status"] = "violation";
        ++violations;
      } else {
        e["status"] = "ok";
      }
      report["entries"].push_back(std::move(e));
      continue;
    }

    e["semantic_check"] = "toy_exhaustive";
    e["universes"] = nlohmann::json::array();
    std::set<std::string> needed;
    for (const auto& a : entry.sequent.assumptions) {
      auto got = prop_atoms(a);
      if (got) needed.insert(got->begin(), got->end());
    }
    if (auto got = prop_atoms(entry.sequent.conclusion)) needed.insert(got->begin(), got->end());

    bool violated = false, ran = false;
    for (auto& engine : engines) {
      const toy::ToyUniverse& u = engine->universe();
      bool hosts = std::all_of(needed.begin(), needed.end(), [&](const std::string& a) {
        return u.atom_index(a).has_value();
      });
      nlohmann::json uj{{"atoms", u.k()}};
      if (!hosts) {
        uj["status"] = "skipped";
        e["universes"].push_back(std::move(uj));
        continue;
      }
      const auto bases = sample_bases(u.rule_count(), sample, seed);
      std::size_t verified = 0, refuted = 0;
      for (toy::BaseMask b : bases) {
        SupportVerdict v = entry.sequent.assumptions.empty()
                               ? engine->toy_support(b, entry.sequent.conclusion)
                               : engine->toy_entails(b, entry.sequent.assumptions,
                                                     entry.sequent.conclusion);
        if (v.status == SupportStatus::Verified) {
          ++verified;
        } else {
          ++refuted;
          if (!uj.contains("first_violation"))
            uj["first_violation"] = {{"base", b}, {"note", v.note}, {"details", v.details}};
        }
      }
      uj["bases_checked"] = bases.size();
      uj["verified"] = verified;
      uj["refuted"] = refuted;
      uj["status"] = refuted == 0 ? "ok" : "violation";
      violated = violated || refuted > 0;
      ran = true;
      e["universes"].push_back(std::move(uj));
    }
    if (violated) ++violations;
    e["status"] = violated ? "violation" : (ran ? "ok" : "skipped");
    report["entries"].push_back(std::move(e));
  }

  report["entries_total"] = corpus.size();
  report["proofs_rejected"] = rejected;
  report["violations"] = violations;
  report["all_sound"] = violations == 0 && rejected == 0;
  return report;
}

}  // namespace bes
