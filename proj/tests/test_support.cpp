#include <doctest.h>

#include "bes/parse.hpp"
#include "bes/support.hpp"
#include "bes/theory.hpp"

using namespace bes;

namespace {

SupportVerdict support_of(const char* text, const Base& base, int term_size = 4) {
  Bounds bounds;
  bounds.term_size = term_size;
  return arith_support(base, parse_formula(text, base.sig), bounds);
}

}  // namespace

TEST_CASE("arith_support: atoms") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  CHECK(support_of("0+0 = 0", plus).status == SupportStatus::Verified);
  CHECK(support_of("S(0)+S(0) = S(S(0))", plus).status == SupportStatus::Verified);

  SupportVerdict bad = support_of("S(0) = 0", plus);
  CHECK(bad.status == SupportStatus::Refuted);
  CHECK(bad.details["weights"] == nlohmann::json({1, 0}));
}

TEST_CASE("arith_support: PA3 universally, up to the bound") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  SupportVerdict v = support_of("forall x. x+0 = x", plus);
  CHECK(v.status == SupportStatus::Verified);
  CHECK(v.note.find("up to bound") != std::string::npos);
  CHECK(v.details["bound"] == 4);
}

TEST_CASE("arith_support: bot is refuted outright") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  SupportVerdict v = support_of("bot", plus);
  CHECK(v.status == SupportStatus::Refuted);
  CHECK(v.details["witness"] == "S(0) = 0");
}

TEST_CASE("arith_support: PA1 instances explode via pa1 under the assumption") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  SupportVerdict v = support_of("forall x. ~S(x) = 0", plus);
  CHECK(v.status == SupportStatus::Verified);
  // A single instance, for the detail trail.
  SupportVerdict inst = support_of("S(S(0)) = 0 -> bot", plus);
  CHECK(inst.status == SupportStatus::Verified);
  CHECK(inst.details["gate"].get<std::string>().find("= 0") != std::string::npos);
}

TEST_CASE("arith_support: every PA axiom is never refuted over A_PLUS") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  AtomSchema square = parse_atom_schema("x+0 = x", plus.sig);
  TheoryPresentation pa = peano_arithmetic({square});
  Bounds bounds;
  bounds.term_size = 3;  // keeps the two-variable axioms quick
  for (const auto& axiom : pa.axioms) {
    SupportVerdict v = arith_support(plus, axiom, bounds);
    CAPTURE(render(axiom));
    CHECK(v.status != SupportStatus::Refuted);
  }
}

TEST_CASE("arith_support: refuted implications carry a re-checked counterexample") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  // 0=0 cannot push S(0)=0 through: the base itself is the counter-extension.
  SupportVerdict v = support_of("0 = 0 -> S(0) = 0", plus);
  REQUIRE(v.status == SupportStatus::Refuted);
  CHECK(v.details["recheck"] == true);
}

TEST_CASE("arith_support: non-atomic antecedents degrade to Unknown") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  // The consequent alone is refuted, but the antecedent is beyond the
  // sufficient condition, so no claim is made.
  SupportVerdict v = support_of("(0 = 0 -> S(0) = 0) -> S(S(0)) = 0", plus);
  CHECK(v.status == SupportStatus::Unknown);

  // A verified consequent still verifies the implication.
  SupportVerdict ok = support_of("(0 = 0 -> S(0) = 0) -> 0 = 0", plus);
  CHECK(ok.status == SupportStatus::Verified);
}

TEST_CASE("arith_support rejects open formulas") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  CHECK_THROWS_AS(arith_support(plus, parse_formula("x = 0", plus.sig)),
                  std::invalid_argument);
}

TEST_CASE("numerically_definite_upto certifies every closed term") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  nlohmann::json r = numerically_definite_upto(plus, 5);
  CHECK(r["all_verified"] == true);
  CHECK(r["rows"].size() == closed_terms_upto(plus.sig, 5).size());
  for (const auto& row : r["rows"]) {
    CHECK(row["verdict"] == "Verified");
    CHECK(row.contains("instance"));
    CHECK(row.contains("certificate_ref"));
    CHECK(row.contains("bound"));
  }
  CHECK(r["certificates"].size() == r["rows"].size());

  // Size 1: only the term 0.
  nlohmann::json tiny = numerically_definite_upto(plus, 1);
  CHECK(tiny["rows"].size() == 1);
  CHECK(tiny["rows"][0]["instance"] == "0 = 0");

  // Extended constants are named zeros.
  Base ext = builtin_base(BaseKind::A_EXT, 2);
  nlohmann::json e = numerically_definite_upto(ext, 3);
  CHECK(e["all_verified"] == true);
  bool saw_c1 = false;
  for (const auto& row : e["rows"])
    saw_c1 = saw_c1 || row["instance"] == "c1 = 0";
  CHECK(saw_c1);
}

TEST_CASE("omega_check: PA3 and PA5 instances all pass") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  for (const char* phi : {"x+0 = x", "x*0 = 0"}) {
    nlohmann::json r = omega_check(plus, parse_atom_schema(phi, plus.sig), 25, 4);
    CAPTURE(phi);
    CHECK(r["all_verified"] == true);
    CHECK(r["rows"].size() == 26 + closed_terms_upto(plus.sig, 4).size());
  }
}

TEST_CASE("omega_check: x = S(x) fails at n=0 with weights (0,1)") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  nlohmann::json r = omega_check(plus, parse_atom_schema("x = S(x)", plus.sig), 25, 3);
  CHECK(r["all_verified"] == false);
  CHECK(r["failure"]["n"] == 0);
  CHECK(r["failure"]["weights"] == nlohmann::json({0, 1}));
}

TEST_CASE("omega_check certificates verify") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  nlohmann::json r = omega_check(plus, parse_atom_schema("x+0 = x", plus.sig), 5, 3);
  REQUIRE(r["all_verified"] == true);
  for (const auto& [ref, cert] : r["certificates"].items()) {
    Derivation d = derivation_from_json(cert, plus.sig);
    CAPTURE(ref);
    CHECK(check_derivation(plus, d).ok);
  }
}

TEST_CASE("induction_check: positive chains") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  for (const char* phi : {"x+0 = x", "0*x = 0"}) {
    nlohmann::json r = induction_check(plus, parse_atom_schema(phi, plus.sig), 10, 3);
    CAPTURE(phi);
    CHECK(r["all_verified"] == true);
    CHECK(!r.contains("first_failure"));
  }
}

TEST_CASE("induction_check: x = 0 passes the base case, breaks at step 0") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  nlohmann::json r = induction_check(plus, parse_atom_schema("x = 0", plus.sig), 10, 3);
  CHECK(r["all_verified"] == false);
  CHECK(r["first_failure"]["stage"] == "step n=0");
  CHECK(r["rows"][0]["verdict"] == "Verified");  // phi(0)
  CHECK(r["rows"][1]["verdict"] == "Refuted");
}

TEST_CASE("report rows carry exactly the four documented fields") {
  Base plus = builtin_base(BaseKind::A_PLUS);
  nlohmann::json r = omega_check(plus, parse_atom_schema("x+0 = x", plus.sig), 3, 2);
  for (const auto& row : r["rows"]) {
    CHECK(row.size() == 4);
    for (const char* key : {"instance", "verdict", "certificate_ref", "bound"})
      CHECK(row.contains(key));
  }
}
