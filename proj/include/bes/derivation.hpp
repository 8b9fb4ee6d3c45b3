// Derivation certificates: finite trees of closed atoms. Interior nodes name
// the schema and the metavariable substitution that produced them; leaves are
// zero-premise rule instances or open premises (empty rule name).
#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bes/rulebase.hpp"

namespace bes {

struct Derivation {
  Atom atom;
  std::string rule;  // empty: open premise leaf
  Substitution subst;
  std::vector<Derivation> children;

  bool is_open_leaf() const { return rule.empty(); }
};

struct CheckResult {
  bool ok = true;
  std::string path;    // e.g. "root.1.0"
  std::string schema;  // offending node's rule name, if any
  std::string reason;

  explicit operator bool() const { return ok; }
};

// True iff every interior node is a correct instance of a schema of the base
// and every open leaf is in open_allowed. Reports the first failing node.
CheckResult check_derivation(const Base& base, const Derivation& d,
                             const std::vector<Atom>& open_allowed = {});

std::size_t derivation_size(const Derivation& d);
bool has_open_leaves(const Derivation& d);
bool uses_rule(const Derivation& d, const std::string& rule_name);
void visit_atoms(const Derivation& d, const std::function<void(const Atom&)>& fn);

nlohmann::json derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const nlohmann::json& j, const Signature& sig);

}  // namespace bes
