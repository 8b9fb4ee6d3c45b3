// bes: command-line surface over the base-extension engine. Subcommands map
// one-to-one onto the library entry points; every command speaks text or
// json (--format), and exit codes encode verdicts so scripts can assert
// them: 0 Verified/true/Derivable, 1 Refuted/false/NotDerivable, 2 Unknown,
// 64 usage errors, 65 malformed input data.
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bes/arith.hpp"
#include "bes/derive.hpp"
#include "bes/nd.hpp"
#include "bes/parse.hpp"
#include "bes/rulebase.hpp"
#include "bes/rules_io.hpp"
#include "bes/support.hpp"
#include "bes/toy.hpp"
#include "bes/weight_poly.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct Options {
  std::string base = "A_PLUS";
  std::string rules_path;
  std::string format = "text";
  std::string cert_path;
  int depth = 12;
  std::size_t nodes = 100000;
  int term_size = 7;
  unsigned n_max = 25;
  std::uint64_t seed = 1;

  bool json() const { return format == "json"; }
  bes::Budget budget() const {
    bes::Budget b;
    b.max_depth = depth;
    b.max_nodes = nodes;
    return b;
  }
};

// --base accepts EQ | A | A_PLUS | A_EXT(k) | A_EXT; --rules overrides with a
// custom rule file.
bes::Base resolve_base(const Options& opt) {
  if (!opt.rules_path.empty()) return bes::load_rules_file(opt.rules_path);
  std::string name = opt.base;
  int constants = 0;
  auto paren = name.find('(');
  if (paren != std::string::npos && name.back() == ')') {
    constants = std::stoi(name.substr(paren + 1, name.size() - paren - 2));
    name = name.substr(0, paren);
  }
  auto kind = bes::base_kind_from_name(name);
  if (!kind || *kind == bes::BaseKind::Custom)
    throw std::invalid_argument("unknown base '" + opt.base +
                                "' (expected EQ, A, A_PLUS, or A_EXT(k))");
  if (*kind == bes::BaseKind::A_EXT && constants == 0)
    throw std::invalid_argument("A_EXT needs a constant count, e.g. A_EXT(9)");
  return bes::builtin_base(*kind, constants);
}

void add_base_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--base", opt.base, "Base: EQ, A, A_PLUS, or A_EXT(k)")
      ->capture_default_str();
  cmd->add_option("--rules", opt.rules_path, "Rule file overriding --base");
}

void add_format_flag(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

void add_budget_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--depth", opt.depth, "Search depth cutoff")->capture_default_str();
  cmd->add_option("--nodes", opt.nodes, "Search node budget")->capture_default_str();
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int exit_for(bes::SupportStatus s) {
  switch (s) {
    case bes::SupportStatus::Verified: return 0;
    case bes::SupportStatus::Refuted: return 1;
    default: return 2;
  }
}

int exit_for(bes::DeriveStatus s) {
  switch (s) {
    case bes::DeriveStatus::Derivable: return 0;
    case bes::DeriveStatus::NotDerivable: return 1;
    default: return 2;
  }
}

void write_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

// Strips the certificate side-table out of a report, honoring --cert.
nlohmann::json finish_report(nlohmann::json report, const Options& opt) {
  if (!opt.cert_path.empty()) write_file(opt.cert_path, report["certificates"]);
  report["certificates_emitted"] = report["certificates"].size();
  report.erase("certificates");
  return report;
}

void print_rows(const nlohmann::json& report) {
  for (const auto& row : report["rows"]) {
    std::cout << row["verdict"].get<std::string>() << "  " << row["instance"].get<std::string>()
              << "\n";
  }
  std::cout << (report["all_verified"].get<bool>() ? "all verified" : "FAILED") << " ("
            << report["rows"].size() << " rows)\n";
}

void collect_prop_atoms(const bes::FormulaPtr& f, std::vector<std::string>& out) {
  switch (f->kind) {
    case bes::FormulaKind::Atom:
      if (f->atom.is_prop()) out.push_back(f->atom.prop);
      break;
    case bes::FormulaKind::Impl:
      collect_prop_atoms(f->lhs, out);
      collect_prop_atoms(f->rhs, out);
      break;
    case bes::FormulaKind::Forall:
      collect_prop_atoms(f->body, out);
      break;
    default:
      break;
  }
}

// ---------------------------------------------------------------------------

int cmd_parse(const Options& opt, const std::string& input, const std::string& as) {
  bes::Base base = resolve_base(opt);
  std::string rendered;
  if (as == "term") {
    rendered = bes::render(bes::parse_term(input, base.sig));
  } else if (as == "atom") {
    rendered = bes::render(bes::parse_atom(input, base.sig));
  } else {
    rendered = bes::render(bes::parse_formula(input, base.sig));
  }
  if (opt.json()) {
    emit({{"input", input}, {"as", as}, {"rendered", rendered}});
  } else {
    std::cout << rendered << "\n";
  }
  return 0;
}

int cmd_weight(const Options& opt, const std::string& input, bool eval_mode) {
  bes::Base base = resolve_base(opt);
  bes::TermPtr t = bes::parse_term(input, base.sig);
  std::uint64_t v = eval_mode ? bes::eval_value(t) : bes::weight(t);
  if (opt.json()) {
    emit({{"term", bes::render(t)}, {eval_mode ? "value" : "weight", v}});
  } else {
    std::cout << v << "\n";
  }
  return 0;
}

int cmd_derive(const Options& opt, const std::string& goal_text,
               const std::vector<std::string>& premise_texts) {
  bes::Base base = resolve_base(opt);
  bes::Atom goal = bes::parse_atom(goal_text, base.sig);
  std::vector<bes::Atom> premises;
  for (const auto& p : premise_texts) premises.push_back(bes::parse_atom(p, base.sig));
  bes::DeriveVerdict v = bes::derive(base, premises, goal, opt.budget());
  nlohmann::json j{{"goal", bes::render(goal)},
                   {"premises", nlohmann::json::array()},
                   {"base", base.name},
                   {"status", bes::to_string(v.status)},
                   {"note", v.note},
                   {"nodes", v.nodes}};
  for (const auto& p : premises) j["premises"].push_back(bes::render(p));
  if (v.weight_witness) j["weights"] = {v.weight_witness->first, v.weight_witness->second};
  if (v.certificate) {
    j["certificate"] = bes::derivation_to_json(*v.certificate);
    if (!opt.cert_path.empty()) write_file(opt.cert_path, j["certificate"]);
  }
  if (opt.json()) {
    emit(j);
  } else {
    std::cout << bes::to_string(v.status) << ": " << v.note << "\n";
  }
  return exit_for(v.status);
}

int cmd_check_derivation(const Options& opt, const std::string& proof_path,
                         const std::vector<std::string>& open_texts) {
  bes::Base base = resolve_base(opt);
  bes::Derivation d = bes::derivation_from_json(read_json_file(proof_path), base.sig);
  std::vector<bes::Atom> open;
  for (const auto& a : open_texts) open.push_back(bes::parse_atom(a, base.sig));
  bes::CheckResult r = bes::check_derivation(base, d, open);
  if (opt.json()) {
    emit({{"file", proof_path},
          {"base", base.name},
          {"ok", r.ok},
          {"path", r.path},
          {"schema", r.schema},
          {"reason", r.reason}});
  } else if (r.ok) {
    std::cout << "ok: derives " << bes::render(d.atom) << "\n";
  } else {
    std::cout << "invalid at " << r.path << " (" << r.schema << "): " << r.reason << "\n";
  }
  return r.ok ? 0 : 1;
}

int cmd_decide_eq(const Options& opt, const std::string& lhs_text, const std::string& rhs_text) {
  bes::Base base = resolve_base(opt);
  bes::TermPtr l = bes::parse_term(lhs_text, base.sig);
  bes::TermPtr r = bes::parse_term(rhs_text, base.sig);
  bes::EquationVerdict v = bes::decide_equation(l, r, base);
  nlohmann::json j{{"lhs", bes::render(l)},
                   {"rhs", bes::render(r)},
                   {"base", base.name},
                   {"truth", v.truth},
                   {"weights", {v.weights.first, v.weights.second}}};
  if (v.certificate) {
    j["certificate"] = bes::derivation_to_json(*v.certificate);
    if (!opt.cert_path.empty()) write_file(opt.cert_path, j["certificate"]);
  }
  if (opt.json()) {
    emit(j);
  } else if (v.truth) {
    std::cout << "True\n";
  } else {
    std::cout << "False (weights " << v.weights.first << " vs " << v.weights.second << ")\n";
  }
  return v.truth ? 0 : 1;
}

int cmd_normalize(const Options& opt, const std::string& input) {
  bes::Base base = resolve_base(opt);
  bes::TermPtr t = bes::parse_term(input, base.sig);
  bes::Normalization n = bes::normalize_to_numeral(t, base);
  if (!opt.cert_path.empty()) write_file(opt.cert_path, bes::derivation_to_json(n.certificate));
  if (opt.json()) {
    emit({{"term", bes::render(t)},
          {"value", n.value},
          {"numeral", bes::render(bes::numeral(n.value))},
          {"certificate", bes::derivation_to_json(n.certificate)}});
  } else {
    std::cout << bes::render(bes::numeral(n.value)) << " (value " << n.value << ")\n";
  }
  return 0;
}

int cmd_support(const Options& opt, const std::string& input) {
  bes::Base base = resolve_base(opt);
  bes::FormulaPtr f = bes::parse_formula(input, base.sig);
  bes::Bounds bounds;
  bounds.term_size = opt.term_size;
  bounds.budget = opt.budget();
  bes::SupportVerdict v = bes::arith_support(base, f, bounds);
  if (opt.json()) {
    emit({{"formula", bes::render(f)},
          {"base", base.name},
          {"status", bes::to_string(v.status)},
          {"note", v.note},
          {"details", v.details}});
  } else {
    std::cout << bes::to_string(v.status) << ": " << v.note << "\n";
  }
  return exit_for(v.status);
}

int cmd_omega(const Options& opt, const std::string& phi_text, bool induction) {
  bes::Base base = resolve_base(opt);
  bes::AtomSchema phi = bes::parse_atom_schema(phi_text, base.sig);
  nlohmann::json report = induction
                              ? bes::induction_check(base, phi, opt.n_max, opt.term_size)
                              : bes::omega_check(base, phi, opt.n_max, opt.term_size);
  report = finish_report(std::move(report), opt);
  bool ok = report["all_verified"].get<bool>();
  if (opt.json()) {
    emit(report);
  } else {
    print_rows(report);
  }
  return ok ? 0 : 1;
}

int cmd_nd_check(const Options& opt, const std::string& proof_path,
                 const std::string& corpus_dir) {
  bes::Base base = resolve_base(opt);
  auto check_one = [&](const bes::CorpusEntry& e) {
    bes::NDCheckResult r = bes::check_nd(e.proof, e.sequent);
    nlohmann::json j{{"name", e.name}, {"ok", r.ok}};
    if (!r.ok) {
      j["path"] = r.path;
      j["rule"] = r.rule;
      j["reason"] = r.reason;
    }
    return std::pair(r.ok, j);
  };

  if (!corpus_dir.empty()) {
    auto corpus = bes::load_corpus_dir(corpus_dir, base.sig);
    nlohmann::json j{{"entries", nlohmann::json::array()}, {"all_ok", true}};
    bool all = true;
    for (const auto& e : corpus) {
      auto [ok, ej] = check_one(e);
      all = all && ok;
      j["entries"].push_back(ej);
      if (!opt.json())
        std::cout << (ok ? "ok      " : "INVALID ") << e.name << "\n";
    }
    j["all_ok"] = all;
    if (opt.json()) emit(j);
    return all ? 0 : 1;
  }

  nlohmann::json j = read_json_file(proof_path);
  bes::CorpusEntry e;
  if (j.contains("name")) {
    e = bes::corpus_entry_from_json(j, base.sig);
  } else {
    e.name = proof_path;
    e.sequent = bes::sequent_from_json(j.at("sequent"), base.sig);
    e.proof = bes::nd_proof_from_json(j.at("proof"), base.sig);
  }
  auto [ok, ej] = check_one(e);
  if (opt.json()) {
    emit(ej);
  } else if (ok) {
    std::cout << "ok: " << bes::render(e.sequent.conclusion) << "\n";
  } else {
    std::cout << "invalid at " << ej["path"].get<std::string>() << " ("
              << ej["rule"].get<std::string>() << "): " << ej["reason"].get<std::string>()
              << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_consistency(const Options& opt) {
  bes::Base base = resolve_base(opt);
  nlohmann::json j = bes::refute_bot(base, opt.budget());
  const std::string verdict = j["search_verdict"].get<std::string>();
  const bool consistent = verdict == "NotDerivable";
  j["base"] = base.name;
  j["consistent"] = consistent;
  if (opt.json()) {
    emit(j);
  } else {
    std::cout << "witness: " << j["witness"].get<std::string>() << "\n"
              << "weights: " << j["weights"][0] << " vs " << j["weights"][1] << "\n"
              << "search:  " << verdict << " (depth " << j["budget"]["max_depth"] << ")\n"
              << "consistent: " << (consistent ? "yes" : "not established") << "\n";
  }
  if (consistent) return 0;
  return verdict == "Unknown" ? 2 : 1;
}

int cmd_toy_support(const Options& opt, const std::string& formula_text,
                    const std::vector<std::string>& premise_texts) {
  if (opt.rules_path.empty()) throw std::invalid_argument("toy-support needs --rules <file>");
  bes::Base rules = bes::load_rules_file(opt.rules_path);
  bes::FormulaPtr f = bes::parse_formula(formula_text, rules.sig);
  std::vector<bes::FormulaPtr> premises;
  std::vector<std::string> extra;
  collect_prop_atoms(f, extra);
  for (const auto& p : premise_texts) {
    premises.push_back(bes::parse_formula(p, rules.sig));
    collect_prop_atoms(premises.back(), extra);
  }
  bes::toy::ToyUniverse u = bes::toy::universe_from_rules(rules, extra);
  bes::toy::BaseMask b = bes::toy::base_mask(u, rules);
  bes::toy::ToyEngine engine(u);
  bes::SupportVerdict v = premises.empty() ? engine.toy_support(b, f)
                                           : engine.toy_entails(b, premises, f);
  if (opt.json()) {
    emit({{"formula", bes::render(f)},
          {"universe", u.atoms},
          {"base", bes::toy::render_base(u, b)},
          {"status", bes::to_string(v.status)},
          {"note", v.note},
          {"details", v.details}});
  } else {
    std::cout << bes::to_string(v.status) << ": " << v.note << "\n";
  }
  return exit_for(v.status);
}

int cmd_soundness_demo(const Options& opt, const std::string& corpus_dir, int max_atoms,
                       std::size_t sample) {
  bes::Base sig_holder = bes::builtin_base(bes::BaseKind::A);
  auto corpus = bes::load_corpus_dir(corpus_dir, sig_holder.sig);
  std::vector<bes::toy::ToyUniverse> universes;
  const std::vector<std::string> names{"p", "q", "r"};
  for (int k = 1; k <= max_atoms; ++k)
    universes.emplace_back(std::vector<std::string>(names.begin(), names.begin() + k));
  nlohmann::json j = bes::soundness_harness(corpus, universes, sample, opt.seed);
  if (opt.json()) {
    emit(j);
  } else {
    for (const auto& e : j["entries"]) {
      std::cout << e["status"].get<std::string>() << "  " << e["name"].get<std::string>()
                << "\n";
    }
    std::cout << (j["all_sound"].get<bool>() ? "all sound" : "VIOLATIONS") << " ("
              << j["entries"].size() << " entries)\n";
  }
  return j["all_sound"].get<bool>() ? 0 : 1;
}

// Normalization goals over verbatim A: which t = numeral(value(t)) does the
// restricted search miss without congruence schemas? The gap list is the
// machine-readable answer; A_PLUS recovering every miss is the cross-check.
int cmd_probe_fidelity(const Options& opt) {
  bes::Base a = bes::builtin_base(bes::BaseKind::A);
  bes::Base a_plus = bes::builtin_base(bes::BaseKind::A_PLUS);
  nlohmann::json j{{"base", a.name},
                   {"term_size", opt.term_size},
                   {"failures", nlohmann::json::array()}};
  std::size_t goals = 0;
  bool recovered = true;
  for (const auto& t : bes::closed_terms_upto(a.sig, opt.term_size)) {
    bes::Atom goal = bes::Atom::equation(t, bes::numeral(bes::eval_value(t)));
    ++goals;
    bes::DeriveVerdict v = bes::derive(a, {}, goal, opt.budget());
    if (v.status == bes::DeriveStatus::Derivable) continue;
    j["failures"].push_back(
        {{"goal", bes::render(goal)}, {"status", bes::to_string(v.status)}});
    recovered =
        recovered && bes::decide_equation(goal.lhs, goal.rhs, a_plus).truth;
  }
  j["goals"] = goals;
  j["gap_count"] = j["failures"].size();
  j["gap_real"] = !j["failures"].empty();
  j["congruence_recovers"] = recovered;
  if (opt.json()) {
    emit(j);
  } else {
    for (const auto& f : j["failures"])
      std::cout << f["status"].get<std::string>() << "  " << f["goal"].get<std::string>()
                << "\n";
    std::cout << "gap: " << j["gap_count"] << " of " << goals << " goals (size <= "
              << opt.term_size << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bes: derivability, weights, and base-extension support"};
  app.require_subcommand(1);
  Options opt;
  std::function<int()> action;

  // parse
  {
    auto* c = app.add_subcommand("parse", "Parse and reprint a term, atom, or formula");
    static std::string input, as = "formula";
    c->add_option("input", input, "Text to parse")->required();
    c->add_option("--as", as, "What to parse: term, atom, formula")
        ->check(CLI::IsMember({"term", "atom", "formula"}))
        ->capture_default_str();
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->callback([&] { action = [&] { return cmd_parse(opt, input, as); }; });
  }
  // weight / eval
  {
    auto* c = app.add_subcommand("weight", "Weight of a closed term");
    static std::string input;
    c->add_option("term", input, "Closed term")->required();
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->callback([&] { action = [&] { return cmd_weight(opt, input, false); }; });
  }
  {
    auto* c = app.add_subcommand("eval", "Value of a closed term");
    static std::string input;
    c->add_option("term", input, "Closed term")->required();
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->callback([&] { action = [&] { return cmd_weight(opt, input, true); }; });
  }
  // derive
  {
    auto* c = app.add_subcommand("derive", "Search for a derivation of a closed atom");
    static std::string goal;
    static std::vector<std::string> premises;
    c->add_option("goal", goal, "Goal atom")->required();
    c->add_option("--premise", premises, "Open premise atom (repeatable)");
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    add_budget_flags(c, opt);
    c->add_option("--cert", opt.cert_path, "Write the certificate here");
    c->callback([&] { action = [&] { return cmd_derive(opt, goal, premises); }; });
  }
  // check-derivation
  {
    auto* c = app.add_subcommand("check-derivation", "Check a derivation JSON file");
    static std::string proof;
    static std::vector<std::string> open;
    c->add_option("proof", proof, "Derivation JSON file")->required();
    c->add_option("--open", open, "Allowed open premise (repeatable)");
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->callback([&] { action = [&] { return cmd_check_derivation(opt, proof, open); }; });
  }
  // decide-eq
  {
    auto* c = app.add_subcommand("decide-eq", "Decide a closed equation by weights");
    static std::string lhs, rhs;
    c->add_option("lhs", lhs, "Left term")->required();
    c->add_option("rhs", rhs, "Right term")->required();
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->add_option("--cert", opt.cert_path, "Write the certificate here");
    c->callback([&] { action = [&] { return cmd_decide_eq(opt, lhs, rhs); }; });
  }
  // normalize
  {
    auto* c = app.add_subcommand("normalize", "Normalize a closed term to its numeral");
    static std::string input;
    c->add_option("term", input, "Closed term")->required();
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->add_option("--cert", opt.cert_path, "Write the certificate here");
    c->callback([&] { action = [&] { return cmd_normalize(opt, input); }; });
  }
  // support
  {
    auto* c = app.add_subcommand("support", "Bounded support check over an arithmetic base");
    static std::string input;
    c->add_option("formula", input, "Closed formula")->required();
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    add_budget_flags(c, opt);
    c->add_option("--term-size", opt.term_size, "Instance bound for forall")
        ->capture_default_str();
    c->callback([&] { action = [&] { return cmd_support(opt, input); }; });
  }
  // omega-check / induction-check
  {
    auto* c = app.add_subcommand("omega-check", "Check phi(n) for numerals and closed terms");
    static std::string phi;
    c->add_option("phi", phi, "Equation schema in x, e.g. \"x+0 = x\"")->required();
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->add_option("--n-max", opt.n_max, "Numeral bound")->capture_default_str();
    c->add_option("--term-size", opt.term_size, "Closed-term bound")->capture_default_str();
    c->add_option("--cert", opt.cert_path, "Write the certificate table here");
    c->callback([&] { action = [&] { return cmd_omega(opt, phi, false); }; });
  }
  {
    auto* c = app.add_subcommand("induction-check",
                                 "Replay induction for phi: base, steps, chain, closed terms");
    static std::string phi;
    c->add_option("phi", phi, "Equation schema in x")->required();
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->add_option("--n-max", opt.n_max, "Numeral bound")->capture_default_str();
    c->add_option("--term-size", opt.term_size, "Closed-term bound")->capture_default_str();
    c->add_option("--cert", opt.cert_path, "Write the certificate table here");
    c->callback([&] { action = [&] { return cmd_omega(opt, phi, true); }; });
  }
  // nd-check
  {
    auto* c = app.add_subcommand("nd-check", "Check natural-deduction proofs");
    static std::string proof, corpus;
    c->add_option("proof", proof, "Proof JSON file ({sequent, proof})");
    c->add_option("--corpus", corpus, "Check every entry in a corpus directory");
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    c->callback([&] {
      action = [&] {
        if (proof.empty() && corpus.empty())
          throw std::invalid_argument("nd-check needs a proof file or --corpus");
        return cmd_nd_check(opt, proof, corpus);
      };
    });
  }
  // consistency
  {
    auto* c = app.add_subcommand("consistency", "Replay the bot-refutation report");
    add_base_flags(c, opt);
    add_format_flag(c, opt);
    add_budget_flags(c, opt);
    c->callback([&] { action = [&] { return cmd_consistency(opt); }; });
  }
  // toy-support
  {
    auto* c = app.add_subcommand("toy-support", "Exact support over a toy rule file");
    static std::string formula;
    static std::vector<std::string> premises;
    c->add_option("formula", formula, "Formula over the file's atoms")->required();
    c->add_option("--premise", premises, "Entailment premise (repeatable)");
    c->add_option("--rules", opt.rules_path, "Toy rule file")->required();
    add_format_flag(c, opt);
    c->callback([&] { action = [&] { return cmd_toy_support(opt, formula, premises); }; });
  }
  // soundness-demo
  {
    auto* c = app.add_subcommand("soundness-demo",
                                 "Run the ND corpus against exhaustive toy semantics");
    static std::string corpus = "data/corpus";
    static int max_atoms = 2;
    static std::size_t sample = 2000;
    c->add_option("--corpus", corpus, "Corpus directory")->capture_default_str();
    c->add_option("--max-atoms", max_atoms, "Largest universe (1..3)")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    c->add_option("--sample", sample,
                  "Base sample cap per universe (0 = exhaustive; small lattices are "
                  "always exhaustive)")
        ->capture_default_str();
    c->add_option("--seed", opt.seed, "Sampling seed")->capture_default_str();
    add_format_flag(c, opt);
    c->callback([&] { action = [&] { return cmd_soundness_demo(opt, corpus, max_atoms, sample); }; });
  }
  // probe-fidelity
  {
    auto* c = app.add_subcommand("probe-fidelity",
                                 "Which normalization goals fail over verbatim base A?");
    static int probe_size = 5;
    add_format_flag(c, opt);
    add_budget_flags(c, opt);
    c->add_option("--term-size", probe_size, "Goal bound")->capture_default_str();
    c->callback([&] {
      action = [&] {
        Options local = opt;
        local.term_size = probe_size;
        return cmd_probe_fidelity(local);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const bes::ParseError& e) {
    std::cerr << "parse error at " << e.position() << ": " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad input data: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
