#include "bes/support.hpp"

#include <algorithm>

#include "bes/verdict.hpp"

namespace bes {

const char* to_string(SupportStatus s) {
  switch (s) {
    case SupportStatus::Verified: return "Verified";
    case SupportStatus::Refuted: return "Refuted";
    default: return "Unknown";
  }
}

SupportVerdict SupportVerdict::verified(std::string note, nlohmann::json details) {
  return {SupportStatus::Verified, std::move(note),
          details.is_null() ? nlohmann::json::object() : std::move(details)};
}

SupportVerdict SupportVerdict::refuted(std::string note, nlohmann::json details) {
  return {SupportStatus::Refuted, std::move(note),
          details.is_null() ? nlohmann::json::object() : std::move(details)};
}

SupportVerdict SupportVerdict::unknown(std::string note, nlohmann::json details) {
  return {SupportStatus::Unknown, std::move(note),
          details.is_null() ? nlohmann::json::object() : std::move(details)};
}

namespace {

bool all_balanced(const std::vector<Atom>& premises) {
  return std::all_of(premises.begin(), premises.end(),
                     [](const Atom& a) { return weight_balanced(a); });
}

// The canonical counter-extension: the base plus each assumption as an axiom.
Base with_assumption_axioms(const Base& base, const std::vector<Atom>& premises) {
  Base ext = base;
  ext.name = base.name + "+assumptions";
  for (std::size_t i = 0; i < premises.size(); ++i) {
    RuleSchema ax;
    ax.name = "h" + std::to_string(i + 1);
    ax.conclusion = premises[i];
    ext.schemas.push_back(std::move(ax));
  }
  return ext;
}

std::string render_assumptions(const std::vector<Atom>& premises) {
  std::string out;
  for (const auto& p : premises) {
    if (!out.empty()) out += "; ";
    out += "|- " + render(p);
  }
  return out.empty() ? "(none)" : out;
}

class SupportQuery {
 public:
  SupportQuery(const Base& base, const Bounds& bounds) : base_(base), bounds_(bounds) {}

  SupportVerdict run(const FormulaPtr& f) {
    if (!is_closed(f)) throw std::invalid_argument("arith_support takes a closed formula");
    std::vector<Atom> premises;
    return go(f, premises);
  }

 private:
  SupportVerdict atom_case(const Atom& a, const std::vector<Atom>& premises) {
    DeriveVerdict v = derive(base_, premises, a, bounds_.budget);
    nlohmann::json details{{"atom", render(a)}, {"assumptions", render_assumptions(premises)}};
    switch (v.status) {
      case DeriveStatus::Derivable:
        details["certificate"] = derivation_to_json(*v.certificate);
        return SupportVerdict::verified("atom derivable (" + v.note + ")", details);
      case DeriveStatus::NotDerivable: {
        details["weights"] = {v.weight_witness->first, v.weight_witness->second};
        if (!premises.empty()) {
          // Genuine counterexample to the enclosing implication: the extension
          // adding the assumptions as axioms supports them all but can never
          // support this conclusion (it stays weight-sound, the atom is not
          // balanced). Re-checked below.
          Base ext = with_assumption_axioms(base_, premises);
          bool recheck = derive(ext, {}, a, bounds_.budget).status == DeriveStatus::NotDerivable;
          for (const auto& p : premises)
            recheck = recheck && derive(ext, {}, p, bounds_.budget).status ==
                                     DeriveStatus::Derivable;
          details["counterexample_extension"] =
              base_.name + " plus " + render_assumptions(premises);
          details["recheck"] = recheck;
        }
        return SupportVerdict::refuted("weight oracle refutes the atom", details);
      }
      default:
        return SupportVerdict::unknown(v.note, details);
    }
  }

  SupportVerdict bot_case(const std::vector<Atom>& premises) {
    if (premises.empty()) {
      nlohmann::json details = refute_bot(base_, bounds_.budget);
      return SupportVerdict::refuted("the (bot) clause fails on the witness atom", details);
    }
    // Under assumptions, pa1 can blow the base open: find a derivable S(t)=0.
    if (base_.find_schema("pa1") != nullptr) {
      std::vector<TermPtr> pool;
      for (const auto& p : premises) {
        if (p.is_prop()) continue;
        for (const auto& s : collect_subterms(p.lhs)) pool.push_back(s);
        for (const auto& s : collect_subterms(p.rhs)) pool.push_back(s);
      }
      for (unsigned n = 0; n <= bounds_.budget.numeral_bound; ++n) pool.push_back(numeral(n));
      for (const auto& t : pool) {
        Atom gate = Atom::equation(Term::succ(t), Term::zero());
        DeriveVerdict v = derive(base_, premises, gate, bounds_.budget);
        if (v.status == DeriveStatus::Derivable) {
          nlohmann::json details{
              {"assumptions", render_assumptions(premises)},
              {"gate", render(gate)},
              {"gate_certificate", derivation_to_json(*v.certificate)},
              {"note", "pa1 applied to the gate concludes every closed atom"}};
          return SupportVerdict::verified(
              "assumptions derive " + render(gate) + "; pa1 then yields every atom", details);
        }
      }
    }
    if (base_.weight_sound && all_balanced(premises)) {
      nlohmann::json details{
          {"assumptions", render_assumptions(premises)},
          {"witness", "S(0) = 0"},
          {"weights", {1, 0}},
          {"note", "balanced assumptions keep the base weight-sound, so the witness stays "
                   "underivable in the assumption extension"}};
      return SupportVerdict::refuted("the (bot) clause fails under the assumptions", details);
    }
    return SupportVerdict::unknown("cannot settle bot under these assumptions",
                                   {{"assumptions", render_assumptions(premises)}});
  }

  SupportVerdict go(const FormulaPtr& f, std::vector<Atom>& premises) {
    switch (f->kind) {
      case FormulaKind::Atom:
        return atom_case(f->atom, premises);
      case FormulaKind::Bot:
        return bot_case(premises);
      case FormulaKind::Impl: {
        if (f->lhs->kind == FormulaKind::Atom) {
          premises.push_back(f->lhs->atom);
          SupportVerdict inner = go(f->rhs, premises);
          premises.pop_back();
          inner.details["clause"] = "(->) with antecedent " + render(f->lhs) + " assumed";
          return inner;
        }
        SupportVerdict inner = go(f->rhs, premises);
        if (inner.status == SupportStatus::Verified) {
          inner.details["clause"] = "(->) consequent holds outright";
          return inner;
        }
        return SupportVerdict::unknown(
            "antecedent is beyond the atomic sufficient condition",
            {{"formula", render(f)},
             {"antecedent", render(f->lhs)},
             {"note", "extension quantification over arithmetic bases is not decidable here"}});
      }
      case FormulaKind::Forall: {
        const auto instances = closed_terms_upto(base_.sig, bounds_.term_size);
        for (const auto& t : instances) {
          SupportVerdict inner = go_subst(f, t, premises);
          if (inner.status == SupportStatus::Verified) continue;
          nlohmann::json details{{"formula", render(f)},
                                 {"instance_term", render(t)},
                                 {"instance", inner.details},
                                 {"bound", bounds_.term_size}};
          if (inner.status == SupportStatus::Refuted)
            return SupportVerdict::refuted("instance refuted: " + inner.note, details);
          return SupportVerdict::unknown("instance unknown: " + inner.note, details);
        }
        return SupportVerdict::verified(
            "verified up to bound",
            {{"formula", render(f)},
             {"bound", bounds_.term_size},
             {"instances", instances.size()},
             {"note", "the (forall) clause ranges over all closed terms; instances beyond "
                      "the bound are unexamined"}});
      }
    }
    throw std::logic_error("unreachable");
  }

  SupportVerdict go_subst(const FormulaPtr& forall, const TermPtr& t,
                          std::vector<Atom>& premises) {
    FormulaPtr inst = substitute(forall->body, forall->var, t);
    return go(inst, premises);
  }

  const Base& base_;
  const Bounds& bounds_;
};

}  // namespace

SupportVerdict arith_support(const Base& base, const FormulaPtr& f, const Bounds& bounds) {
  return SupportQuery(base, bounds).run(f);
}

namespace {

nlohmann::json make_row(const std::string& instance, const char* verdict,
                        const std::string& ref, std::uint64_t bound) {
  return {{"instance", instance}, {"verdict", verdict}, {"certificate_ref", ref},
          {"bound", bound}};
}

// Verdict is Verified only if the certificate survives the checker.
void push_checked(nlohmann::json& report, const Base& base, const std::string& instance,
                  const std::string& ref, std::uint64_t bound, const Derivation& cert) {
  CheckResult check = check_derivation(base, cert);
  if (check) {
    report["rows"].push_back(make_row(instance, "Verified", ref, bound));
    report["certificates"][ref] = derivation_to_json(cert);
  } else {
    report["rows"].push_back(make_row(instance, "Refuted", "", bound));
    report["all_verified"] = false;
    report["failure"] = {{"instance", instance}, {"reason", check.reason}, {"at", check.path}};
  }
}

}  // namespace

nlohmann::json numerically_definite_upto(const Base& base, int term_size) {
  nlohmann::json report{{"base", base.name},
                        {"term_size", term_size},
                        {"rows", nlohmann::json::array()},
                        {"certificates", nlohmann::json::object()},
                        {"all_verified", true}};
  const auto terms = closed_terms_upto(base.sig, term_size);
  report["terms"] = terms.size();
  int i = 0;
  for (const auto& t : terms) {
    Normalization n = normalize_to_numeral(t, base);
    const std::string ref = "term-" + std::to_string(i++);
    push_checked(report, base, render(t) + " = " + render(numeral(n.value)), ref,
                 static_cast<std::uint64_t>(term_size), n.certificate);
  }
  return report;
}

namespace {

std::string schema_text(const AtomSchema& phi) { return render(phi.instantiate(Term::var("x"))); }

}  // namespace

nlohmann::json omega_check(const Base& base, const AtomSchema& phi, unsigned n_max,
                           int term_size) {
  nlohmann::json report{{"base", base.name},
                        {"phi", schema_text(phi)},
                        {"n_max", n_max},
                        {"term_size", term_size},
                        {"rows", nlohmann::json::array()},
                        {"certificates", nlohmann::json::object()},
                        {"all_verified", true}};
  for (unsigned n = 0; n <= n_max; ++n) {
    Atom inst = phi.instantiate(numeral(n));
    EquationVerdict v = decide_equation(inst.lhs, inst.rhs, base);
    if (v.truth) {
      push_checked(report, base, render(inst), "n-" + std::to_string(n), n_max, *v.certificate);
    } else {
      report["rows"].push_back(make_row(render(inst), "Refuted", "", n_max));
      report["all_verified"] = false;
      if (!report.contains("failure"))
        report["failure"] = {{"instance", render(inst)},
                             {"n", n},
                             {"weights", {v.weights.first, v.weights.second}}};
    }
  }
  // Every closed term, via normalization and substitution of equals.
  int i = 0;
  for (const auto& t : closed_terms_upto(base.sig, term_size)) {
    const std::string ref = "t-" + std::to_string(i++);
    Atom inst = phi.instantiate(t);
    Normalization norm = normalize_to_numeral(t, base);
    Atom at_numeral = phi.instantiate(numeral(norm.value));
    EquationVerdict v = decide_equation(at_numeral.lhs, at_numeral.rhs, base);
    if (!v.truth) {
      report["rows"].push_back(make_row(render(inst), "Refuted", "", n_max));
      report["all_verified"] = false;
      if (!report.contains("failure"))
        report["failure"] = {{"instance", render(inst)},
                             {"term", render(t)},
                             {"weights", {v.weights.first, v.weights.second}}};
      continue;
    }
    Derivation lifted = lift_certificate(phi, t, norm.certificate, *v.certificate, base);
    push_checked(report, base, render(inst), ref, static_cast<std::uint64_t>(term_size), lifted);
  }
  return report;
}

nlohmann::json induction_check(const Base& base, const AtomSchema& phi, unsigned n_max,
                               int term_size) {
  nlohmann::json report{{"base", base.name},
                        {"phi", schema_text(phi)},
                        {"n_max", n_max},
                        {"term_size", term_size},
                        {"rows", nlohmann::json::array()},
                        {"certificates", nlohmann::json::object()},
                        {"all_verified", true}};
  auto fail = [&](const std::string& stage, const std::string& instance,
                  const EquationVerdict& v, std::uint64_t bound) {
    report["rows"].push_back(make_row(stage + ": " + instance, "Refuted", "", bound));
    report["all_verified"] = false;
    report["first_failure"] = {{"stage", stage},
                               {"instance", instance},
                               {"weights", {v.weights.first, v.weights.second}}};
  };

  // Base case phi(0).
  Atom base_inst = phi.instantiate(Term::zero());
  EquationVerdict v0 = decide_equation(base_inst.lhs, base_inst.rhs, base);
  if (!v0.truth) {
    fail("phi(0)", render(base_inst), v0, n_max);
    return report;
  }
  push_checked(report, base, "phi(0): " + render(base_inst), "base", n_max, *v0.certificate);

  // Step instances phi(n) -> phi(S(n)), settled by deciding the consequent.
  for (unsigned n = 0; n < n_max; ++n) {
    Atom from = phi.instantiate(numeral(n));
    Atom to = phi.instantiate(numeral(n + 1));
    const std::string instance = render(from) + " -> " + render(to);
    EquationVerdict v = decide_equation(to.lhs, to.rhs, base);
    if (!v.truth) {
      fail("step n=" + std::to_string(n), instance, v, n_max);
      return report;
    }
    push_checked(report, base, "step n=" + std::to_string(n) + ": " + instance,
                 "step-" + std::to_string(n), n_max, *v.certificate);
  }

  // The chained conclusions phi(n) for n <= n_max.
  for (unsigned n = 0; n <= n_max; ++n) {
    Atom inst = phi.instantiate(numeral(n));
    EquationVerdict v = decide_equation(inst.lhs, inst.rhs, base);
    if (!v.truth) {  // cannot happen if the steps above all passed
      fail("chain n=" + std::to_string(n), render(inst), v, n_max);
      return report;
    }
    push_checked(report, base, "phi(n=" + std::to_string(n) + "): " + render(inst),
                 "chain-" + std::to_string(n), n_max, *v.certificate);
  }

  // Closed terms, via normalization and substitution of equals.
  int i = 0;
  for (const auto& t : closed_terms_upto(base.sig, term_size)) {
    const std::string ref = "t-" + std::to_string(i++);
    Atom inst = phi.instantiate(t);
    Normalization norm = normalize_to_numeral(t, base);
    Atom at_numeral = phi.instantiate(numeral(norm.value));
    EquationVerdict v = decide_equation(at_numeral.lhs, at_numeral.rhs, base);
    if (!v.truth) {
      fail("closed term " + render(t), render(inst), v, static_cast<std::uint64_t>(term_size));
      return report;
    }
    Derivation lifted = lift_certificate(phi, t, norm.certificate, *v.certificate, base);
    push_checked(report, base, "phi(t): " + render(inst), ref,
                 static_cast<std::uint64_t>(term_size), lifted);
  }
  return report;
}

}  // namespace bes
