#include <doctest.h>

#include <cstdlib>

#include "bes/nd.hpp"
#include "bes/parse.hpp"
#include "generators.hpp"

using namespace bes;

namespace {

const Signature kSig = Signature::basic();

std::string data_dir() {
  const char* d = std::getenv("BES_DATA_DIR");
  return d ? d : "data";
}

NDProofPtr assume(const char* f, const char* label) {
  auto p = std::make_shared<NDProof>();
  p->rule = NDRule::Assumption;
  p->formula = parse_formula(f, kSig);
  p->label = label;
  return p;
}

NDProofPtr node(NDRule rule, const char* f, std::vector<NDProofPtr> children,
                const char* label = "") {
  auto p = std::make_shared<NDProof>();
  p->rule = rule;
  p->formula = parse_formula(f, kSig);
  p->label = label;
  p->children = std::move(children);
  return p;
}

Sequent seq(std::vector<const char*> assumptions, const char* conclusion) {
  Sequent s;
  for (const char* a : assumptions) s.assumptions.push_back(parse_formula(a, kSig));
  s.conclusion = parse_formula(conclusion, kSig);
  return s;
}

}  // namespace

TEST_CASE("identity proof checks") {
  auto p = node(NDRule::ImplIntro, "p -> p", {assume("p", "u")}, "u");
  CHECK(check_nd(*p, seq({}, "p -> p")).ok);
  // The same tree does not prove q -> q.
  CHECK(!check_nd(*p, seq({}, "q -> q")).ok);
}

TEST_CASE("undischarged assumptions must appear in the sequent") {
  auto p = node(NDRule::ImplElim, "q", {assume("p -> q", "i"), assume("p", "j")});
  CHECK(check_nd(*p, seq({"p", "p -> q"}, "q")).ok);
  NDCheckResult r = check_nd(*p, seq({"p"}, "q"));
  CHECK(!r.ok);
  CHECK(r.rule == "sequent");
  CHECK(r.reason.find("p -> q") != std::string::npos);
}

TEST_CASE("discharge is label-wise and may be vacuous") {
  // K combinator: the inner intro discharges nothing.
  auto k = node(NDRule::ImplIntro, "p -> (q -> p)",
                {node(NDRule::ImplIntro, "q -> p", {assume("p", "u")}, "v")}, "u");
  CHECK(check_nd(*k, seq({}, "p -> (q -> p)")).ok);

  // A label bound to the wrong formula is an error.
  auto bad = node(NDRule::ImplIntro, "p -> q", {assume("q", "u")}, "u");
  NDCheckResult r = check_nd(*bad, seq({}, "p -> q"));
  CHECK(!r.ok);
  CHECK(r.reason.find("label 'u'") != std::string::npos);
}

TEST_CASE("classical reductio discharges the negated goal") {
  // ((p -> bot) -> bot) -> p.
  auto dne = node(
      NDRule::ImplIntro, "((p -> bot) -> bot) -> p",
      {node(NDRule::ClassicalReductio, "p",
            {node(NDRule::ImplElim, "bot",
                  {assume("(p -> bot) -> bot", "n"), assume("p -> bot", "k")})},
            "k")},
      "n");
  CHECK(check_nd(*dne, seq({}, "((p -> bot) -> bot) -> p")).ok);
}

TEST_CASE("forall rules: instantiation and generalization") {
  auto inst = node(NDRule::ForallElim, "0 = 0", {assume("forall x. x = x", "ax")});
  inst->term = parse_term("0", kSig);
  CHECK(check_nd(*inst, seq({"forall x. x = x"}, "0 = 0")).ok);

  // Wrong witness.
  auto wrong = node(NDRule::ForallElim, "0 = 0", {assume("forall x. x = x", "ax")});
  wrong->term = parse_term("S(0)", kSig);
  CHECK(!check_nd(*wrong, seq({"forall x. x = x"}, "0 = 0")).ok);

  // Generalize over an eigenvariable.
  auto reelim = node(NDRule::ForallElim, "z = z", {assume("forall x. x = x", "ax")});
  reelim->term = parse_term("z", kSig);
  auto gen = node(NDRule::ForallIntro, "forall y. y = y", {reelim}, "z");
  CHECK(check_nd(*gen, seq({"forall x. x = x"}, "forall y. y = y")).ok);
}

TEST_CASE("eigenvariable condition: free in an open assumption") {
  // From y = 0 infer forall x. x = 0 -- rejected.
  auto gen = node(NDRule::ForallIntro, "forall x. x = 0", {assume("y = 0", "a")}, "y");
  NDCheckResult r = check_nd(*gen, seq({"y = 0"}, "forall x. x = 0"));
  CHECK(!r.ok);
  CHECK(r.rule == "forall_intro");
  CHECK(r.reason.find("eigenvariable") != std::string::npos);
}

TEST_CASE("eigenvariable condition: free in the conclusion") {
  // forall x. x = y via eigenvariable y -- rejected (y stays free).
  auto elim = node(NDRule::ForallElim, "y = y", {assume("forall x. x = x", "ax")});
  elim->term = parse_term("y", kSig);
  auto gen = node(NDRule::ForallIntro, "forall x. x = y", {elim}, "y");
  CHECK(!check_nd(*gen, seq({"forall x. x = x"}, "forall x. x = y")).ok);
}

TEST_CASE("rule arity and shape violations are caught with paths") {
  auto orphan = node(NDRule::ImplElim, "q", {assume("p -> q", "i")});
  NDCheckResult r = check_nd(*orphan, seq({"p -> q"}, "q"));
  CHECK(!r.ok);
  CHECK(r.path == "root");
  CHECK(r.reason.find("premise") != std::string::npos);

  auto deep = node(NDRule::ImplIntro, "p -> p",
                   {node(NDRule::BotElim, "p", {assume("p", "u")})}, "u");
  NDCheckResult rd = check_nd(*deep, seq({}, "p -> p"));
  CHECK(!rd.ok);
  CHECK(rd.path == "root.0");
  CHECK(rd.rule == "bot_elim");
}

TEST_CASE("proof JSON round trip") {
  auto p = node(NDRule::ImplIntro, "p -> p", {assume("p", "u")}, "u");
  nlohmann::json j = nd_proof_to_json(*p);
  NDProof back = nd_proof_from_json(j, kSig);
  CHECK(nd_proof_to_json(back) == j);
  CHECK(check_nd(back, seq({}, "p -> p")).ok);

  Sequent s = seq({"p", "bot"}, "p -> p");
  CHECK(sequent_to_json(sequent_from_json(sequent_to_json(s), kSig)) == sequent_to_json(s));
}

TEST_CASE("golden corpus: every proof checks") {
  auto corpus = load_corpus_dir(data_dir() + "/corpus", kSig);
  REQUIRE(corpus.size() >= 8);
  int propositional = 0;
  for (const auto& e : corpus) {
    CAPTURE(e.name);
    NDCheckResult r = check_nd(e.proof, e.sequent);
    CHECK_MESSAGE(r.ok, e.name << " at " << r.path << ": " << r.reason);
    propositional += e.propositional ? 1 : 0;
  }
  CHECK(propositional >= 8);
}

// Single-node corruptions must flip at least the corrupted entry to invalid;
// no corruption may crash the checker.
TEST_CASE("mutation testing: corrupted corpus trees are rejected") {
  auto corpus = load_corpus_dir(data_dir() + "/corpus", kSig);
  testgen::Rng rng(99);

  auto count_nodes = [](const NDProof& p, auto&& self) -> int {
    int n = 1;
    for (const auto& c : p.children) n += self(*c, self);
    return n;
  };
  auto mutate = [&](NDProof& p, int target, auto&& self) -> int {
    if (target == 0) {
      switch (rng.pick(3)) {
        case 0:
          p.formula = Formula::impl(p.formula, Formula::bot());
          break;
        case 1:
          p.rule = p.rule == NDRule::Assumption ? NDRule::BotElim : NDRule::Assumption;
          break;
        default:
          p.label += "_mut";
          if (p.rule != NDRule::Assumption && p.rule != NDRule::ImplIntro &&
              p.rule != NDRule::ForallIntro && p.rule != NDRule::ClassicalReductio)
            p.formula = Formula::bot();
          break;
      }
      return -1;
    }
    int left = target - 1;
    for (const auto& c : p.children) {
      left = self(const_cast<NDProof&>(*c), left, self);
      if (left < 0) return -1;
    }
    return left;
  };

  int rejected = 0, total = 0;
  for (const auto& e : corpus) {
    int nodes = count_nodes(e.proof, count_nodes);
    for (int trial = 0; trial < 6; ++trial) {
      NDProof copy = nd_proof_from_json(nd_proof_to_json(e.proof), kSig);
      mutate(copy, static_cast<int>(rng.pick(nodes)), mutate);
      ++total;
      rejected += check_nd(copy, e.sequent).ok ? 0 : 1;
    }
  }
  // Label renames can be harmless (consistent alpha-renaming is not, but a
  // single-node rename usually breaks a discharge); everything else must
  // fail. Demand a high rejection rate and zero crashes.
  CHECK(total == static_cast<int>(corpus.size()) * 6);
  CHECK(rejected >= total * 3 / 4);
}

TEST_CASE("soundness harness: corpus is sound over 1- and 2-atom universes") {
  auto corpus = load_corpus_dir(data_dir() + "/corpus", kSig);
  std::vector<toy::ToyUniverse> universes;
  universes.emplace_back(std::vector<std::string>{"p"});
  universes.emplace_back(std::vector<std::string>{"p", "q"});
  nlohmann::json report = soundness_harness(corpus, universes);
  CHECK(report["all_sound"] == true);
  CHECK(report["violations"] == 0);
  CHECK(report["proofs_rejected"] == 0);

  // Spot-check the shape: Peirce must have been verified in all 256 bases.
  bool saw_peirce = false;
  for (const auto& e : report["entries"]) {
    if (e["name"] != "peirce") continue;
    saw_peirce = true;
    for (const auto& u : e["universes"]) {
      if (u["status"] == "skipped") continue;
      CHECK(u["refuted"] == 0);
      if (u["atoms"] == 2) CHECK(u["bases_checked"] == 256);
    }
  }
  CHECK(saw_peirce);
}

TEST_CASE("soundness harness: a rejected proof is reported, not evaluated") {
  CorpusEntry broken;
  broken.name = "broken";
  broken.sequent = seq({}, "p");
  broken.proof = *assume("q", "a");
  std::vector<toy::ToyUniverse> universes;
  universes.emplace_back(std::vector<std::string>{"p", "q"});
  nlohmann::json report = soundness_harness({broken}, universes);
  CHECK(report["all_sound"] == false);
  CHECK(report["proofs_rejected"] == 1);
  CHECK(report["entries"][0]["status"] == "proof_rejected");
}
