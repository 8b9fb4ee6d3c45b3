// End-to-end checks of the bes binary: spec'd output strings, exit codes,
// byte-determinism of json output, and schema conformance for every
// json-speaking subcommand. The binary path arrives via BES_CLI_PATH (set by
// CMake), the data directory via BES_DATA_DIR.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("BES_CLI_PATH");
  REQUIRE_MESSAGE(p != nullptr, "BES_CLI_PATH must point at the bes binary");
  return p;
}

std::string data_dir() {
  const char* d = std::getenv("BES_DATA_DIR");
  return d ? d : "data";
}

CliResult run_cli(const std::string& args) {
  std::string cmd = "\"" + cli_path() + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int rc = pclose(pipe);
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

// Just enough of JSON Schema to pin our own output shapes: type, required,
// properties, items, minItems, enum. Returns an error description or "".
std::string validate(const nlohmann::json& schema, const nlohmann::json& value,
                     const std::string& at) {
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    const bool ok = (t == "object" && value.is_object()) ||
                    (t == "array" && value.is_array()) ||
                    (t == "string" && value.is_string()) ||
                    (t == "boolean" && value.is_boolean()) ||
                    (t == "integer" && value.is_number_integer()) ||
                    (t == "number" && value.is_number());
    if (!ok) return at + ": expected " + t + ", got " + value.dump();
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& e : schema["enum"]) hit = hit || e == value;
    if (!hit) return at + ": " + value.dump() + " not in enum";
  }
  if (value.is_object()) {
    for (const auto& req : schema.value("required", nlohmann::json::array())) {
      if (!value.contains(req.get<std::string>()))
        return at + ": missing required key '" + req.get<std::string>() + "'";
    }
    if (schema.contains("properties")) {
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
        if (!value.contains(it.key())) continue;
        std::string err = validate(it.value(), value.at(it.key()), at + "." + it.key());
        if (!err.empty()) return err;
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>())
      return at + ": fewer than " + schema["minItems"].dump() + " items";
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        std::string err =
            validate(schema["items"], value[i], at + "[" + std::to_string(i) + "]");
        if (!err.empty()) return err;
      }
    }
  }
  return "";
}

nlohmann::json load_schema(const std::string& name) {
  std::ifstream in(data_dir() + "/schemas/" + name + ".schema.json");
  REQUIRE_MESSAGE(in.good(), "missing schema " << name);
  nlohmann::json j;
  in >> j;
  return j;
}

// Runs `args --format json`, checks the exit code, and validates the output
// against data/schemas/<schema>.schema.json. Returns the parsed output.
nlohmann::json expect_json(const std::string& args, const std::string& schema,
                           int expected_code) {
  CliResult r = run_cli(args + " --format json");
  CAPTURE(args);
  CHECK(r.code == expected_code);
  nlohmann::json j = nlohmann::json::parse(r.out);
  std::string err = validate(load_schema(schema), j, schema);
  CHECK_MESSAGE(err.empty(), err);
  return j;
}

}  // namespace

TEST_CASE("documented examples: exit codes and exact text") {
  CliResult consistency = run_cli("consistency --base A_PLUS");
  CHECK(consistency.code == 0);
  CHECK(consistency.out.find("witness: S(0) = 0") != std::string::npos);
  CHECK(consistency.out.find("NotDerivable") != std::string::npos);
  CHECK(consistency.out.find("consistent: yes") != std::string::npos);

  CliResult falsity = run_cli("decide-eq \"S(0)\" \"0\" --base A_PLUS");
  CHECK(falsity.code == 1);
  CHECK(falsity.out == "False (weights 1 vs 0)\n");

  CliResult w = run_cli("weight \"S(S(0))*S(S(0))\"");
  CHECK(w.code == 0);
  CHECK(w.out == "4\n");

  CliResult truth = run_cli("decide-eq \"0+0\" \"0\" --base A_PLUS");
  CHECK(truth.code == 0);
  CHECK(truth.out == "True\n");
}

TEST_CASE("exit codes: verdicts, usage errors, data errors") {
  // Derivable -> 0.
  CHECK(run_cli("derive \"0+0 = 0\" --base A_PLUS").code == 0);
  // NotDerivable -> 1.
  CHECK(run_cli("derive \"S(0) = 0\" --base A_PLUS").code == 1);
  // Exhausted without a weight refutation -> Unknown -> 2: the goal is
  // balanced, so the oracle cannot rule, and no rule of the file applies.
  CliResult unknown = run_cli("derive \"S(0) = 0+S(0)\" --rules \"" + data_dir() +
                              "/rules/succ-chain.rules\"");
  CHECK(unknown.code == 2);
  // Usage errors -> 64.
  CHECK(run_cli("derive").code == 64);
  CHECK(run_cli("no-such-command").code == 64);
  CHECK(run_cli("weight \"0\" --format yaml").code == 64);
  // Malformed input -> 65.
  CHECK(run_cli("weight \"S((\"").code == 65);
  CHECK(run_cli("weight \"c1\"").code == 65);
  CHECK(run_cli("support \"x+0 = x\"").code == 65);
  CHECK(run_cli("consistency --base A_EXT").code == 65);
}

TEST_CASE("json output is byte-deterministic") {
  const std::string args = "support \"forall x. x+0 = x\" --base A_PLUS --term-size 3";
  CliResult a = run_cli(args + " --format json");
  CliResult b = run_cli(args + " --format json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const std::string demo = "soundness-demo --corpus \"" + data_dir() +
                           "/corpus\" --max-atoms 2 --sample 12 --seed 7";
  CliResult c = run_cli(demo + " --format json");
  CliResult d = run_cli(demo + " --format json");
  CHECK(c.code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("schema: parse, weight, eval") {
  nlohmann::json p = expect_json("parse \"0 + S(0)*S(0)\" --as term", "parse", 0);
  CHECK(p["rendered"] == "0+S(0)*S(0)");
  nlohmann::json w = expect_json("weight \"S(S(0))*S(S(0))\"", "weight", 0);
  CHECK(w["weight"] == 4);
  nlohmann::json e = expect_json("eval \"S(S(0))+S(0)\"", "eval", 0);
  CHECK(e["value"] == 3);
}

TEST_CASE("schema: derive in all three verdicts") {
  nlohmann::json good = expect_json("derive \"0+0 = 0\" --base A_PLUS", "derive", 0);
  CHECK(good["status"] == "Derivable");
  CHECK(good.contains("certificate"));

  nlohmann::json bad = expect_json("derive \"S(0) = 0\" --base A_PLUS", "derive", 1);
  CHECK(bad["status"] == "NotDerivable");
  CHECK(bad["weights"] == nlohmann::json({1, 0}));

  nlohmann::json unk = expect_json("derive \"S(0) = 0+S(0)\" --rules \"" + data_dir() +
                                       "/rules/succ-chain.rules\"",
                                   "derive", 2);
  CHECK(unk["status"] == "Unknown");
}

TEST_CASE("schema: decide-eq, normalize, and the certificate sidecar") {
  expect_json("decide-eq \"S(0)\" \"0\" --base A_PLUS", "decide-eq", 1);
  nlohmann::json n =
      expect_json("normalize \"(S(0)+S(0))*S(S(0))\" --base A_PLUS", "normalize", 0);
  CHECK(n["value"] == 4);
  CHECK(n["numeral"] == "S(S(S(S(0))))");

  const char* cert_file = "cli_tmp_cert.json";
  CliResult side = run_cli(std::string("normalize \"S(0)+S(0)\" --base A_PLUS --cert ") +
                           cert_file);
  CHECK(side.code == 0);
  CliResult checked =
      run_cli(std::string("check-derivation ") + cert_file + " --base A_PLUS");
  CHECK(checked.code == 0);
  CHECK(checked.out.find("ok: derives") != std::string::npos);
  nlohmann::json cj = expect_json(std::string("check-derivation ") + cert_file +
                                      " --base A_PLUS",
                                  "check-derivation", 0);
  CHECK(cj["ok"] == true);
  std::remove(cert_file);
}

TEST_CASE("schema: support, omega-check, induction-check") {
  nlohmann::json s =
      expect_json("support \"forall x. x+0 = x\" --base A_PLUS --term-size 3", "support", 0);
  CHECK(s["status"] == "Verified");

  nlohmann::json om = expect_json(
      "omega-check \"x+0 = x\" --base A_PLUS --n-max 3 --term-size 2", "omega-check", 0);
  CHECK(om["all_verified"] == true);
  CHECK(om["rows"].size() == 6);  // numerals 0..3 plus the two closed terms of size <= 2
  CHECK(om["certificates_emitted"] == 6);

  nlohmann::json neg = expect_json(
      "omega-check \"x = S(x)\" --base A_PLUS --n-max 3 --term-size 2", "omega-check", 1);
  CHECK(neg["all_verified"] == false);
  CHECK(neg["failure"]["n"] == 0);

  nlohmann::json ind = expect_json(
      "induction-check \"x+0 = x\" --base A_PLUS --n-max 3 --term-size 2", "induction-check",
      0);
  CHECK(ind["all_verified"] == true);

  nlohmann::json indneg = expect_json(
      "induction-check \"x = 0\" --base A_PLUS --n-max 3 --term-size 2", "induction-check",
      1);
  CHECK(indneg["first_failure"]["stage"] == "step n=0");
}

TEST_CASE("schema: nd-check over the corpus and a single file") {
  nlohmann::json j =
      expect_json("nd-check --corpus \"" + data_dir() + "/corpus\"", "nd-check", 0);
  CHECK(j["all_ok"] == true);
  CHECK(j["entries"].size() >= 8);

  const char* proof_file = "cli_tmp_proof.json";
  {
    std::ofstream out(proof_file);
    out << R"({
      "sequent": {"assumptions": [], "conclusion": "p -> p"},
      "proof": {"rule": "impl_intro", "formula": "p -> p", "label": "u",
                "children": [{"rule": "assumption", "formula": "p", "label": "u",
                              "children": []}]}
    })";
  }
  CliResult single = run_cli(std::string("nd-check ") + proof_file);
  CHECK(single.code == 0);
  CHECK(single.out.find("ok: p -> p") != std::string::npos);
  std::remove(proof_file);
}

TEST_CASE("schema: consistency, toy-support, soundness-demo, probe-fidelity") {
  nlohmann::json c = expect_json("consistency --base A_PLUS", "consistency", 0);
  CHECK(c["consistent"] == true);
  CHECK(c["weights"] == nlohmann::json({1, 0}));

  nlohmann::json t = expect_json(
      "toy-support \"q\" --rules \"" + data_dir() + "/rules/toy-pq.rules\"", "toy-support", 0);
  CHECK(t["universe"] == nlohmann::json({"p", "q"}));

  nlohmann::json refuted = expect_json(
      "toy-support \"q\" --rules \"" + data_dir() + "/rules/step-only.rules\"",
      "toy-support", 1);
  CHECK(refuted["status"] == "Refuted");

  nlohmann::json demo = expect_json("soundness-demo --corpus \"" + data_dir() +
                                        "/corpus\" --max-atoms 1 --sample 0",
                                    "soundness-demo", 0);
  CHECK(demo["all_sound"] == true);

  nlohmann::json probe = expect_json("probe-fidelity --term-size 3", "probe-fidelity", 0);
  CHECK(probe["congruence_recovers"] == true);
  CHECK(probe["goals"] == 5);  // closed terms of size <= 3
}
