// Line-oriented rule files: one schema per line, "name: P1, P2, ... |- C".
// Premise list may be empty ("name: |- C"); "ANY" as conclusion marks a
// schema concluding every atom. '#' starts a comment; blank lines are skipped.
#pragma once

#include <string>
#include <vector>

#include "bes/rulebase.hpp"

namespace bes {

// Parses one rule line (already stripped of comments). Throws ParseError.
RuleSchema parse_rule_line(const std::string& line, const Signature& sig);

// Parses a whole file's contents into a custom base. The signature is
// inferred from the largest constant index mentioned anywhere in the text.
// Duplicate names are rejected. weight_sound is left false; callers may
// upgrade it after an audit.
Base parse_rules(const std::string& text, const std::string& base_name = "custom");

Base load_rules_file(const std::string& path);

std::string render_rule(const RuleSchema& schema);
std::string render_rules(const Base& base);

}  // namespace bes
