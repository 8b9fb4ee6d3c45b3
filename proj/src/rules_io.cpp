#include "bes/rules_io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "bes/parse.hpp"

namespace bes {

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool valid_rule_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// Largest k such that "c<k>" appears as a standalone token.
unsigned scan_max_constant(const std::string& text) {
  unsigned best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (text[i] != 'c') continue;
    if (i > 0 && (std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_' ||
                  text[i - 1] == '?'))
      continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) continue;
    if (j < text.size() &&
        (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
      continue;
    best = std::max(best, static_cast<unsigned>(std::stoul(text.substr(i + 1, j - i - 1))));
    i = j - 1;
  }
  return best;
}

}  // namespace

RuleSchema parse_rule_line(const std::string& line, const Signature& sig) {
  std::size_t colon = line.find(':');
  if (colon == std::string::npos) throw ParseError("rule line has no ':'", 0);
  RuleSchema schema;
  schema.name = strip(line.substr(0, colon));
  if (!valid_rule_name(schema.name))
    throw ParseError("bad rule name '" + schema.name + "'", 0);

  std::string rest = line.substr(colon + 1);
  std::size_t turnstile = rest.find("|-");
  if (turnstile == std::string::npos) throw ParseError("rule line has no '|-'", colon);

  std::string premise_part = rest.substr(0, turnstile);
  std::stringstream ss(premise_part);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    piece = strip(piece);
    if (piece.empty()) {
      if (strip(premise_part).empty()) break;  // zero-premise rule
      throw ParseError("empty premise in rule '" + schema.name + "'", colon);
    }
    schema.premises.push_back(parse_atom(piece, sig, /*allow_metavariables=*/true));
  }

  std::string concl = strip(rest.substr(turnstile + 2));
  if (concl.empty()) throw ParseError("rule '" + schema.name + "' has no conclusion", colon);
  if (concl == "ANY")
    schema.conclusion = std::nullopt;
  else
    schema.conclusion = parse_atom(concl, sig, /*allow_metavariables=*/true);
  return schema;
}

Base parse_rules(const std::string& text, const std::string& base_name) {
  Base base;
  base.name = base_name;
  base.kind = BaseKind::Custom;
  base.sig = Signature::extended(scan_max_constant(text));
  base.weight_sound = false;

  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    raw = strip(raw);
    if (raw.empty()) continue;
    RuleSchema schema;
    try {
      schema = parse_rule_line(raw, base.sig);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.position());
    }
    if (!seen.insert(schema.name).second)
      throw ParseError("line " + std::to_string(line_no) + ": duplicate rule name '" +
                           schema.name + "'",
                       0);
    base.schemas.push_back(std::move(schema));
  }
  return base;
}

Base load_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rules file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_rules(buf.str(), path);
}

std::string render_rule(const RuleSchema& schema) {
  std::string out = schema.name + ": ";
  for (std::size_t i = 0; i < schema.premises.size(); ++i) {
    if (i > 0) out += ", ";
    out += render(schema.premises[i]);
  }
  if (!schema.premises.empty()) out += " ";
  out += "|- ";
  out += schema.conclusion ? render(*schema.conclusion) : std::string("ANY");
  return out;
}

std::string render_rules(const Base& base) {
  std::string out;
  for (const auto& s : base.schemas) {
    out += render_rule(s);
    out += "\n";
  }
  return out;
}

}  // namespace bes
