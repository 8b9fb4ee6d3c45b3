#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bes/formula.hpp"
#include "bes/toy.hpp"

namespace bes {

// Natural deduction for the {->, forall, bot} fragment, classical via reductio.
//
// Each node carries the formula it concludes.  `label` names an assumption
// (Assumption), a discharged assumption (ImplIntro, ClassicalReductio), or the
// eigenvariable (ForallIntro).  `term` is the ForallElim witness.
enum class NDRule {
  Assumption,
  ImplIntro,
  ImplElim,
  ForallIntro,
  ForallElim,
  BotElim,
  ClassicalReductio,
};

const char* to_string(NDRule r);
NDRule nd_rule_from_string(const std::string& s);

struct NDProof;
using NDProofPtr = std::shared_ptr<NDProof>;

struct NDProof {
  NDRule rule = NDRule::Assumption;
  FormulaPtr formula;
  std::string label;
  TermPtr term;
  std::vector<NDProofPtr> children;
};

struct Sequent {
  std::vector<FormulaPtr> assumptions;  // closed
  FormulaPtr conclusion;                // closed
};

struct NDCheckResult {
  bool ok = true;
  std::string path;    // "root", "root.0", ... of the offending node
  std::string rule;    // rule name at that node, or "sequent" for root mismatches
  std::string reason;  // empty when ok
  explicit operator bool() const { return ok; }
};

// Checks that p derives s.conclusion with open assumptions drawn from
// s.assumptions.  Local rule shapes, discharge bookkeeping, and the
// eigenvariable condition (ForallIntro's variable free in no open assumption
// of its subtree, nor in its own conclusion) are all enforced; the first
// violation is reported with its path.  Vacuous discharge is allowed.
NDCheckResult check_nd(const NDProof& p, const Sequent& s);

nlohmann::json nd_proof_to_json(const NDProof& p);
NDProof nd_proof_from_json(const nlohmann::json& j, const Signature& sig);
nlohmann::json sequent_to_json(const Sequent& s);
Sequent sequent_from_json(const nlohmann::json& j, const Signature& sig);

// A corpus entry as stored under data/corpus/: a named sequent with its proof.
// Propositional entries (atoms are 0-ary, connectives -> and bot only) are the
// ones the exhaustive toy harness can evaluate semantically.
struct CorpusEntry {
  std::string name;
  std::string comment;
  Sequent sequent;
  NDProof proof;
  bool propositional = true;
};

CorpusEntry corpus_entry_from_json(const nlohmann::json& j, const Signature& sig);
std::vector<CorpusEntry> load_corpus_dir(const std::string& dir, const Signature& sig);

// Runs every checked propositional entry against every base of every listed
// universe (entries mentioning atoms a universe lacks are skipped for it).
// `sample` caps the number of bases per universe: 0 means exhaustive; a
// positive cap draws that many distinct bases from a seeded generator, always
// including the empty and the full base.  Entries whose proof fails check_nd
// are reported with status "proof_rejected" and no semantic run.
// First-order entries get a bounded arith_support pass instead, tagged
// "arith_support" in the report.
nlohmann::json soundness_harness(const std::vector<CorpusEntry>& corpus,
                                 const std::vector<toy::ToyUniverse>& universes,
                                 std::size_t sample = 0, std::uint64_t seed = 1);

}  // namespace bes
