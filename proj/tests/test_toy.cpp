#include <doctest.h>

#include <cstdlib>

#include "bes/parse.hpp"
#include "bes/reference.hpp"
#include "bes/rules_io.hpp"
#include "bes/toy.hpp"
#include "generators.hpp"

using namespace bes;
using namespace bes::toy;

namespace {

FormulaPtr pf(const std::string& text) { return parse_formula(text, Signature::basic()); }

std::string data_dir() {
  const char* d = std::getenv("BES_DATA_DIR");
  return d ? d : "data";
}

}  // namespace

TEST_CASE("rule indexing round trips") {
  ToyUniverse u({"p", "q"});
  CHECK(u.rule_count() == 8);
  for (int r = 0; r < u.rule_count(); ++r) {
    auto [concl, mask] = u.rule_parts(r);
    CHECK(u.rule_index(concl, mask) == r);
  }
  CHECK(u.atom_index("q") == 1);
  CHECK(!u.atom_index("z").has_value());
  CHECK(ToyUniverse({"p", "q", "r"}).rule_count() == 24);
  CHECK_THROWS_AS(ToyUniverse({"p", "p"}), std::invalid_argument);
}

TEST_CASE("base masks from rule files") {
  Base rules = load_rules_file(data_dir() + "/rules/toy-pq.rules");
  ToyUniverse u = universe_from_rules(rules);
  REQUIRE(u.atoms == std::vector<std::string>{"p", "q"});
  BaseMask b = base_mask(u, rules);
  CHECK(__builtin_popcountll(b) == 2);

  ToyEngine engine(u);
  CHECK(engine.derives(b, *u.atom_index("p")));
  CHECK(engine.derives(b, *u.atom_index("q")));
  CHECK(!engine.derives(0, *u.atom_index("p")));
}

TEST_CASE("toy formula enumeration counts") {
  ToyUniverse u({"p", "q"});
  CHECK(enumerate_toy_formulas(u, 0).size() == 3);
  CHECK(enumerate_toy_formulas(u, 1).size() == 12);
  CHECK(enumerate_toy_formulas(u, 2).size() == 147);
  CHECK(enumerate_toy_formulas(u, 3).size() == 21612);
}

TEST_CASE("engine agrees with the serial reference (1 atom, exhaustive)") {
  ToyUniverse u({"p"});
  ToyEngine engine(u);
  for (const auto& f : enumerate_toy_formulas(u, 2)) {
    for (BaseMask b = 0; b < engine.lattice_size(); ++b) {
      CAPTURE(render(f));
      CAPTURE(b);
      CHECK(engine.supports(b, f) == reference_supports(u, b, f));
    }
  }
}

TEST_CASE("engine agrees with the serial reference (2 atoms)") {
  ToyUniverse u({"p", "q"});
  ToyEngine engine(u);
  // Shallow formulas exhaustively; the reference blows up on deep ones.
  for (const auto& f : enumerate_toy_formulas(u, 1)) {
    for (BaseMask b = 0; b < engine.lattice_size(); ++b)
      CHECK(engine.supports(b, f) == reference_supports(u, b, f));
  }
  // Depth-2 formulas on sampled bases.
  testgen::Rng rng(11);
  auto deep = enumerate_toy_formulas(u, 2);
  for (int i = 0; i < 40; ++i) {
    const auto& f = deep[rng.pick(deep.size())];
    BaseMask b = rng.pick(engine.lattice_size());
    CAPTURE(render(f));
    CAPTURE(b);
    CHECK(engine.supports(b, f) == reference_supports(u, b, f));
  }
}

TEST_CASE("spec'd toy_support verdicts") {
  Base rules = parse_rules("step: p |- q\n", "toy");
  ToyUniverse u = universe_from_rules(rules);
  ToyEngine engine(u);
  BaseMask b = base_mask(u, rules);

  CHECK(engine.toy_support(b, pf("p -> q")).status == SupportStatus::Verified);
  CHECK(engine.toy_support(0, pf("((p -> q) -> p) -> p")).status == SupportStatus::Verified);

  SupportVerdict refuted = engine.toy_support(0, pf("p"));
  REQUIRE(refuted.status == SupportStatus::Refuted);
  CHECK(refuted.details["counterexample"]["mask"] == 0);
}

TEST_CASE("toy_entails: spec examples and the empty-delta side condition") {
  Base rules = parse_rules("step: p |- q\n", "toy");
  ToyUniverse u = universe_from_rules(rules);
  ToyEngine engine(u);
  BaseMask b = base_mask(u, rules);

  CHECK(engine.toy_entails(b, {pf("p")}, pf("q")).status == SupportStatus::Verified);
  CHECK(engine.toy_entails(0, {pf("p")}, pf("p")).status == SupportStatus::Verified);
  CHECK(engine.toy_entails(b, {pf("p")}, pf("p")).status == SupportStatus::Verified);

  SupportVerdict v = engine.toy_entails(0, {pf("p -> q")}, pf("q"));
  REQUIRE(v.status == SupportStatus::Refuted);
  CHECK(v.details["recheck"] == true);

  CHECK_THROWS_AS(engine.toy_entails(b, {}, pf("p")), std::invalid_argument);
}

TEST_CASE("refuted verdicts carry counterexamples that re-check") {
  ToyUniverse u({"p", "q"});
  ToyEngine engine(u);
  auto formulas = enumerate_toy_formulas(u, 2);
  testgen::Rng rng(5);
  int refutations = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& f = formulas[rng.pick(formulas.size())];
    BaseMask b = rng.pick(engine.lattice_size());
    SupportVerdict v = engine.toy_support(b, f);
    if (v.status != SupportStatus::Refuted) continue;
    ++refutations;
    if (f->kind == FormulaKind::Impl) {
      // The counterexample extension asserts the antecedent, not the
      // consequent; confirm against the independent reference.
      BaseMask c = v.details["counterexample"]["mask"].get<BaseMask>();
      CHECK((c & b) == b);
      CHECK(reference_supports(u, c, f->lhs));
      CHECK(!reference_supports(u, c, f->rhs));
    }
  }
  CHECK(refutations > 0);
}

TEST_CASE("support is monotone in the base") {
  ToyUniverse u({"p", "q"});
  ToyEngine engine(u);
  for (const auto& f : enumerate_toy_formulas(u, 2)) {
    CAPTURE(render(f));
    CHECK(engine.monotone(f));
  }
}

TEST_CASE("(Inf) is reflexive and admits cut at toy scale") {
  ToyUniverse u({"p", "q"});
  ToyEngine engine(u);
  auto formulas = enumerate_toy_formulas(u, 1);

  for (const auto& f : formulas)
    for (BaseMask b : {BaseMask{0}, BaseMask{3}, BaseMask{255}})
      CHECK(engine.toy_entails(b, {f}, f).status == SupportStatus::Verified);

  // Cut: delta |= psi and {psi} |= g give delta |= g.
  testgen::Rng rng(13);
  int cuts = 0;
  for (int i = 0; i < 400; ++i) {
    const auto& f = formulas[rng.pick(formulas.size())];
    const auto& psi = formulas[rng.pick(formulas.size())];
    const auto& g = formulas[rng.pick(formulas.size())];
    BaseMask b = rng.pick(engine.lattice_size());
    if (engine.toy_entails(b, {f}, psi).status != SupportStatus::Verified) continue;
    if (engine.toy_entails(b, {psi}, g).status != SupportStatus::Verified) continue;
    ++cuts;
    CHECK(engine.toy_entails(b, {f}, g).status == SupportStatus::Verified);
  }
  CHECK(cuts > 0);
}

TEST_CASE("toy engine rejects out-of-fragment or out-of-universe queries") {
  ToyUniverse u({"p", "q"});
  ToyEngine engine(u);
  CHECK_THROWS_AS(engine.toy_support(0, pf("forall x. x = x")), std::invalid_argument);
  CHECK_THROWS_AS(engine.toy_support(0, pf("z")), std::invalid_argument);
  CHECK_THROWS_AS(engine.toy_support(engine.lattice_size(), pf("p")),
                  std::invalid_argument);
  CHECK_THROWS_AS(ToyEngine(ToyUniverse({"a", "b", "c", "d"})), std::invalid_argument);
}

TEST_CASE("fresh-atom robustness on the 2-atom universe") {
  ToyUniverse u({"p", "q"});
  FreshAtomProbe probe(u);
  Base rules = parse_rules("step: p |- q\n", "toy");
  BaseMask b = base_mask(u, rules);

  CHECK(probe.robust(b, pf("p -> q")));
  CHECK(probe.robust(0, pf("bot")));
  CHECK(toy_fresh_atom_robustness(u, b, pf("p -> q")));

  // Sampled sweep over formulas and bases; the exhaustive one is criterion 9.
  auto formulas = enumerate_toy_formulas(u, 1);
  for (const auto& f : formulas)
    for (BaseMask base : {BaseMask{0}, b, BaseMask{100}, BaseMask{255}})
      CHECK(probe.robust(base, f));
}

TEST_CASE("fresh-atom probe needs room for the extra atom") {
  CHECK_THROWS_AS(FreshAtomProbe(ToyUniverse({"p", "q", "r"})), std::invalid_argument);
}
