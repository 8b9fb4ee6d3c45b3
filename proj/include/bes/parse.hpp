// Concrete grammar:
//   term    := "0" | "c" DIGITS | "S(" term ")" | term "+" term
//            | term "*" term | "(" term ")" | VAR
//   formula := "bot" | term "=" term | ATOM | "~" formula
//            | formula "->" formula | "forall" VAR "." formula | "(" formula ")"
// "*" binds tighter than "+" (both left-associative); "->" is right-associative
// and binds loosest except "forall"; "~f" is sugar for "f -> bot". A bare
// identifier in formula position is a named 0-ary atom. Rule files may prefix
// identifiers with "?" to mark schema metavariables.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "bes/formula.hpp"
#include "bes/term.hpp"

namespace bes {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

TermPtr parse_term(const std::string& text, const Signature& sig);
FormulaPtr parse_formula(const std::string& text, const Signature& sig);

// Atom for rule files and CLI goals: "t1 = t2" or a bare 0-ary atom name.
// With allow_metavariables, "?x" inside terms parses as the variable x.
Atom parse_atom(const std::string& text, const Signature& sig,
                bool allow_metavariables = false);

}  // namespace bes
