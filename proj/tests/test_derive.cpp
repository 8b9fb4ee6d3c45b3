#include <doctest.h>

#include "bes/arith.hpp"
#include "bes/derivation.hpp"
#include "bes/derive.hpp"
#include "bes/parse.hpp"
#include "bes/rules_io.hpp"

using namespace bes;

namespace {
Atom at(const std::string& text, const Base& b) { return parse_atom(text, b.sig); }
}  // namespace

TEST_CASE("derive: pa3 instance over A") {
  Base a = builtin_base(BaseKind::A);
  DeriveVerdict v = derive(a, {}, at("0+0 = 0", a));
  REQUIRE(v.status == DeriveStatus::Derivable);
  REQUIRE(v.certificate.has_value());
  CHECK(uses_rule(*v.certificate, "pa3"));
  CHECK(check_derivation(a, *v.certificate).ok);
  CHECK(!has_open_leaves(*v.certificate));
}

TEST_CASE("derive: congruence-dependent goal over A_PLUS") {
  // 1+1=2 cannot be reached by the restricted pool (the eq3 middle term
  // S(S(0)+0) never appears among goal subterms or small numerals), so this
  // exercises the normalization fallback.
  Base plus = builtin_base(BaseKind::A_PLUS);
  DeriveVerdict v = derive(plus, {}, at("S(0)+S(0) = S(S(0))", plus));
  REQUIRE(v.status == DeriveStatus::Derivable);
  CHECK(check_derivation(plus, *v.certificate).ok);
}

TEST_CASE("derive: weight refutation gives NotDerivable") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  Budget b;
  b.max_depth = 12;
  DeriveVerdict v = derive(plus, {}, at("S(0) = 0", plus), b);
  CHECK(v.status == DeriveStatus::NotDerivable);
  REQUIRE(v.weight_witness.has_value());
  CHECK(v.weight_witness->first == 1);
  CHECK(v.weight_witness->second == 0);
}

TEST_CASE("derive: unbalanced premises disable the oracle and feed pa1") {
  Base a = builtin_base(BaseKind::A);
  // With S(0)=0 assumed, pa1 concludes anything.
  DeriveVerdict v = derive(a, {at("S(0) = 0", a)}, at("0 = S(S(0))", a));
  REQUIRE(v.status == DeriveStatus::Derivable);
  CHECK(check_derivation(a, *v.certificate, {at("S(0) = 0", a)}).ok);
  CHECK(has_open_leaves(*v.certificate));
}

TEST_CASE("derive: exhaustion without the oracle is Unknown") {
  // A custom base is never marked weight-sound, so a failed search cannot
  // claim NotDerivable.
  Base custom = parse_rules("ax: |- p\n", "custom");
  DeriveVerdict v = derive(custom, {}, Atom::proposition("q"));
  CHECK(v.status == DeriveStatus::Unknown);
  CHECK(v.note.find("without a weight refutation") != std::string::npos);
}

TEST_CASE("derive: budget exhaustion is Unknown, not NotDerivable") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  Budget tiny;
  tiny.max_nodes = 5;
  DeriveVerdict v = derive(plus, {}, at("S(0)+S(S(0)) = S(S(S(0)))", plus), tiny);
  CHECK(v.status != DeriveStatus::NotDerivable);
}

TEST_CASE("derive: validates input") {
  Base a = builtin_base(BaseKind::A);
  CHECK_THROWS_AS(derive(a, {}, parse_atom("x = 0", a.sig, true)), std::invalid_argument);
  Budget zero;
  zero.max_depth = 0;
  CHECK_THROWS_AS(derive(a, {}, at("0 = 0", a), zero), std::invalid_argument);
}

TEST_CASE("derivation JSON round trip") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  DeriveVerdict v = derive(plus, {}, at("S(0)+S(0) = S(S(0))", plus));
  REQUIRE(v.certificate.has_value());
  nlohmann::json j = derivation_to_json(*v.certificate);
  Derivation back = derivation_from_json(j, plus.sig);
  CHECK(check_derivation(plus, back).ok);
  CHECK(derivation_to_json(back) == j);
  CHECK(derivation_size(back) == derivation_size(*v.certificate));
}

TEST_CASE("check_derivation rejects broken trees") {
  Base a = builtin_base(BaseKind::A);
  DeriveVerdict v = derive(a, {}, at("0+0 = 0", a));
  REQUIRE(v.certificate.has_value());

  Derivation wrong_atom = *v.certificate;
  wrong_atom.atom = at("0+0 = S(0)", a);
  CHECK(!check_derivation(a, wrong_atom).ok);

  Derivation wrong_rule = *v.certificate;
  wrong_rule.rule = "pa5";
  CHECK(!check_derivation(a, wrong_rule).ok);

  Derivation ghost = *v.certificate;
  ghost.rule = "nonexistent";
  CheckResult r = check_derivation(a, ghost);
  CHECK(!r.ok);
  CHECK(r.path == "root");

  // Open leaves are rejected unless allowed.
  Derivation open;
  open.atom = at("S(0) = S(0)", a);
  CHECK(!check_derivation(a, open).ok);
  CHECK(check_derivation(a, open, {open.atom}).ok);
}

TEST_CASE("random forward derivations are valid and reproducible") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  auto ds = random_forward_derivations(plus, 25, 4, 42);
  REQUIRE(ds.size() == 25);
  for (const auto& d : ds) {
    CHECK(check_derivation(plus, d).ok);
    CHECK(check_weight_invariant(d));
  }
  // Same seed, same trees; different seed, some difference.
  auto again = random_forward_derivations(plus, 25, 4, 42);
  bool all_equal = true;
  for (std::size_t i = 0; i < ds.size(); ++i)
    all_equal = all_equal && derivation_to_json(ds[i]) == derivation_to_json(again[i]);
  CHECK(all_equal);

  // One step from nothing must be a zero-premise schema instance.
  auto single = random_forward_derivations(plus, 1, 1, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].children.empty());
  CHECK(!single[0].rule.empty());
}

TEST_CASE("random forward derivations cover A_EXT constants") {
  Base ext = builtin_base(BaseKind::A_EXT, 5);
  auto ds = random_forward_derivations(ext, 40, 3, 7);
  for (const auto& d : ds) {
    CHECK(check_derivation(ext, d).ok);
    CHECK(check_weight_invariant(d));
  }
}
