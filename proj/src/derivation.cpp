#include "bes/derivation.hpp"

#include <functional>

#include "bes/parse.hpp"

namespace bes {

namespace {

bool atom_in(const Atom& a, const std::vector<Atom>& set) {
  for (const auto& s : set)
    if (equal(a, s)) return true;
  return false;
}

CheckResult fail(const std::string& path, const std::string& schema, const std::string& reason) {
  return CheckResult{false, path, schema, reason};
}

CheckResult check_node(const Base& base, const Derivation& d,
                       const std::vector<Atom>& open_allowed, const std::string& path) {
  if (!is_closed(d.atom)) return fail(path, d.rule, "atom is not closed: " + render(d.atom));
  if (!well_formed(d.atom, base.sig))
    return fail(path, d.rule, "atom uses constants outside the base signature");

  if (d.is_open_leaf()) {
    if (!d.children.empty()) return fail(path, "", "open leaf has children");
    if (!atom_in(d.atom, open_allowed))
      return fail(path, "", "open premise not allowed: " + render(d.atom));
    return {};
  }

  const RuleSchema* schema = base.find_schema(d.rule);
  if (schema == nullptr)
    return fail(path, d.rule, "schema '" + d.rule + "' is not in base " + base.name);

  RuleInstance inst;
  try {
    inst = instantiate(*schema, d.subst,
                       schema->concludes_any() ? std::optional<Atom>(d.atom) : std::nullopt);
  } catch (const std::invalid_argument& e) {
    return fail(path, d.rule, e.what());
  }
  if (!equal(inst.conclusion, d.atom))
    return fail(path, d.rule,
                "conclusion mismatch: schema gives " + render(inst.conclusion) + ", node has " +
                    render(d.atom));
  if (inst.premises.size() != d.children.size())
    return fail(path, d.rule,
                "premise count mismatch: schema wants " + std::to_string(inst.premises.size()) +
                    ", node has " + std::to_string(d.children.size()));
  for (std::size_t i = 0; i < inst.premises.size(); ++i) {
    if (!equal(inst.premises[i], d.children[i].atom))
      return fail(path + "." + std::to_string(i), d.rule,
                  "premise mismatch: schema wants " + render(inst.premises[i]) + ", child has " +
                      render(d.children[i].atom));
    CheckResult r = check_node(base, d.children[i], open_allowed, path + "." + std::to_string(i));
    if (!r) return r;
  }
  return {};
}

}  // namespace

CheckResult check_derivation(const Base& base, const Derivation& d,
                             const std::vector<Atom>& open_allowed) {
  return check_node(base, d, open_allowed, "root");
}

std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& c : d.children) n += derivation_size(c);
  return n;
}

bool has_open_leaves(const Derivation& d) {
  if (d.is_open_leaf()) return true;
  for (const auto& c : d.children)
    if (has_open_leaves(c)) return true;
  return false;
}

bool uses_rule(const Derivation& d, const std::string& rule_name) {
  if (d.rule == rule_name) return true;
  for (const auto& c : d.children)
    if (uses_rule(c, rule_name)) return true;
  return false;
}

void visit_atoms(const Derivation& d, const std::function<void(const Atom&)>& fn) {
  fn(d.atom);
  for (const auto& c : d.children) visit_atoms(c, fn);
}

nlohmann::json derivation_to_json(const Derivation& d) {
  nlohmann::json subst = nlohmann::json::object();
  for (const auto& [name, value] : d.subst) subst[name] = render(value);
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : d.children) children.push_back(derivation_to_json(c));
  return nlohmann::json{{"atom", render(d.atom)},
                        {"rule", d.rule},
                        {"subst", subst},
                        {"children", children}};
}

Derivation derivation_from_json(const nlohmann::json& j, const Signature& sig) {
  Derivation d;
  d.atom = parse_atom(j.at("atom").get<std::string>(), sig);
  if (j.contains("rule")) d.rule = j.at("rule").get<std::string>();
  if (j.contains("subst"))
    for (const auto& [name, value] : j.at("subst").items())
      d.subst.emplace(name, parse_term(value.get<std::string>(), sig));
  if (j.contains("children"))
    for (const auto& c : j.at("children")) d.children.push_back(derivation_from_json(c, sig));
  return d;
}

}  // namespace bes
