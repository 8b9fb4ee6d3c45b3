#include "bes/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace bes {

namespace {

enum class Tok {
  Zero,     // 0
  Const,    // c<digits>
  Ident,    // variable / atom name / keyword
  Meta,     // ?ident
  LParen,
  RParen,
  Plus,
  Star,
  Equals,
  Arrow,    // ->
  Tilde,
  Dot,
  End,
};

struct Token {
  Tok kind;
  std::string text;  // Ident/Meta name, Const digits
  std::size_t pos = 0;
};

class Lexer {
 public:
  Lexer(const std::string& text, bool allow_meta) : text_(text), allow_meta_(allow_meta) {
    tokenize();
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = index_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++index_;
    return t;
  }

 private:
  void tokenize() {
    std::size_t i = 0;
    const std::size_t n = text_.size();
    while (i < n) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      switch (c) {
        case '(': tokens_.push_back({Tok::LParen, "", start}); ++i; continue;
        case ')': tokens_.push_back({Tok::RParen, "", start}); ++i; continue;
        case '+': tokens_.push_back({Tok::Plus, "", start}); ++i; continue;
        case '*': tokens_.push_back({Tok::Star, "", start}); ++i; continue;
        case '=': tokens_.push_back({Tok::Equals, "", start}); ++i; continue;
        case '~': tokens_.push_back({Tok::Tilde, "", start}); ++i; continue;
        case '.': tokens_.push_back({Tok::Dot, "", start}); ++i; continue;
        case '-':
          if (i + 1 < n && text_[i + 1] == '>') {
            tokens_.push_back({Tok::Arrow, "", start});
            i += 2;
            continue;
          }
          throw ParseError("stray '-'", start);
        case '?': {
          if (!allow_meta_) throw ParseError("'?' metavariables are not allowed here", start);
          ++i;
          std::string name = lex_ident(i);
          if (name.empty()) throw ParseError("expected name after '?'", start);
          tokens_.push_back({Tok::Meta, name, start});
          continue;
        }
        default:
          break;
      }
      if (c == '0') {
        tokens_.push_back({Tok::Zero, "", start});
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("numbers other than 0 are not terms (use numerals S(..S(0)..))", start);
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = lex_ident(i);
        if (name.size() >= 2 && name[0] == 'c' && all_digits(name.substr(1))) {
          tokens_.push_back({Tok::Const, name.substr(1), start});
        } else {
          tokens_.push_back({Tok::Ident, name, start});
        }
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    tokens_.push_back({Tok::End, "", n});
  }

  std::string lex_ident(std::size_t& i) {
    std::size_t start = i;
    while (i < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_'))
      ++i;
    return text_.substr(start, i - start);
  }

  static bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  }

  const std::string& text_;
  bool allow_meta_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

class Parser {
 public:
  Parser(const std::string& text, const Signature& sig, bool allow_meta)
      : lex_(text, allow_meta), sig_(sig) {}

  TermPtr term() { return additive(); }

  FormulaPtr formula() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && t.text == "forall") {
      lex_.next();
      const Token& v = lex_.next();
      if (v.kind != Tok::Ident) throw ParseError("expected variable after forall", v.pos);
      check_not_keyword(v);
      if (lex_.next().kind != Tok::Dot) throw ParseError("expected '.' after quantifier", v.pos);
      return Formula::forall(v.text, formula());
    }
    return implication();
  }

  Atom atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && !is_keyword(t.text) && t.text != "S" &&
        lex_.peek(1).kind != Tok::Equals && is_atom_end(lex_.peek(1).kind)) {
      lex_.next();
      return Atom::proposition(t.text);
    }
    TermPtr l = term();
    const Token& eq = lex_.next();
    if (eq.kind != Tok::Equals) throw ParseError("expected '=' in atom", eq.pos);
    TermPtr r = term();
    return Atom::equation(l, r);
  }

  void expect_end() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) throw ParseError("trailing input", t.pos);
  }

 private:
  static bool is_keyword(const std::string& s) {
    return s == "forall" || s == "bot" || s == "ANY";
  }
  static bool is_atom_end(Tok k) { return k == Tok::End || k == Tok::RParen; }
  static void check_not_keyword(const Token& t) {
    if (is_keyword(t.text) || t.text == "S")
      throw ParseError("'" + t.text + "' cannot be used as a variable", t.pos);
  }

  FormulaPtr implication() {
    FormulaPtr l = negation();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.next();
      return Formula::impl(l, implication());  // right-associative
    }
    return l;
  }

  FormulaPtr negation() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Tilde) {
      lex_.next();
      return Formula::neg(negation());
    }
    return primary_formula();
  }

  FormulaPtr primary_formula() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident && t.text == "bot") {
      lex_.next();
      return Formula::bot();
    }
    if (t.kind == Tok::Ident && t.text == "forall")
      throw ParseError("quantifier must be parenthesized here", t.pos);
    if (t.kind == Tok::LParen) {
      // Either a parenthesized formula or a parenthesized term starting an
      // equation; decide by scanning for '=' at depth 0 of this group.
      if (group_is_term(t)) {
        return equation();
      }
      lex_.next();
      FormulaPtr f = formula();
      const Token& close = lex_.next();
      if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
      return f;
    }
    // A bare identifier not followed by '=', '+', '*', is a 0-ary atom.
    if (t.kind == Tok::Ident && t.text != "S" && is_prop_boundary(lex_.peek(1).kind)) {
      lex_.next();
      return Formula::atomic(Atom::proposition(t.text));
    }
    return equation();
  }

  static bool is_prop_boundary(Tok k) {
    return k == Tok::End || k == Tok::RParen || k == Tok::Arrow;
  }

  // Looks ahead from an LParen to see whether the group belongs to a term
  // (contains '=' after it at group depth 0, or is followed by +/*/=).
  bool group_is_term(const Token&) {
    int depth = 0;
    for (std::size_t ahead = 0;; ++ahead) {
      const Token& t = lex_.peek(ahead);
      switch (t.kind) {
        case Tok::LParen: ++depth; break;
        case Tok::RParen:
          --depth;
          if (depth == 0) {
            Tok after = lex_.peek(ahead + 1).kind;
            return after == Tok::Plus || after == Tok::Star || after == Tok::Equals;
          }
          break;
        case Tok::Arrow:
        case Tok::Tilde:
          if (depth == 1) return false;
          break;
        case Tok::End:
          return false;
        default:
          break;
      }
    }
  }

  FormulaPtr equation() {
    TermPtr l = term();
    const Token& eq = lex_.next();
    if (eq.kind != Tok::Equals) throw ParseError("expected '=' after term", eq.pos);
    TermPtr r = term();
    return Formula::atomic(Atom::equation(l, r));
  }

  TermPtr additive() {
    TermPtr t = multiplicative();
    while (lex_.peek().kind == Tok::Plus) {
      lex_.next();
      t = Term::add(t, multiplicative());
    }
    return t;
  }

  TermPtr multiplicative() {
    TermPtr t = primary_term();
    while (lex_.peek().kind == Tok::Star) {
      lex_.next();
      t = Term::mul(t, primary_term());
    }
    return t;
  }

  TermPtr primary_term() {
    const Token& t = lex_.next();
    switch (t.kind) {
      case Tok::Zero:
        return Term::zero();
      case Tok::Const: {
        int index = 0;
        for (char c : t.text) {
          index = index * 10 + (c - '0');
          if (index > 1000000) throw ParseError("constant index too large", t.pos);
        }
        if (!sig_.allows_constant(index))
          throw ParseError("unknown constant c" + t.text + " (signature has " +
                               std::to_string(sig_.extra_constants) + " extra constants)",
                           t.pos);
        return Term::constant(index);
      }
      case Tok::Meta:
        return Term::var(t.text);
      case Tok::Ident: {
        if (t.text == "S") {
          if (lex_.next().kind != Tok::LParen) throw ParseError("expected '(' after S", t.pos);
          TermPtr inner = additive();
          const Token& close = lex_.next();
          if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
          return Term::succ(inner);
        }
        if (is_keyword(t.text))
          throw ParseError("'" + t.text + "' is not a term", t.pos);
        return Term::var(t.text);
      }
      case Tok::LParen: {
        TermPtr inner = additive();
        const Token& close = lex_.next();
        if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
        return inner;
      }
      default:
        throw ParseError("expected a term", t.pos);
    }
  }

  Lexer lex_;
  Signature sig_;
};

}  // namespace

TermPtr parse_term(const std::string& text, const Signature& sig) {
  Parser p(text, sig, false);
  TermPtr t = p.term();
  p.expect_end();
  return t;
}

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  Parser p(text, sig, false);
  FormulaPtr f = p.formula();
  p.expect_end();
  return f;
}

Atom parse_atom(const std::string& text, const Signature& sig, bool allow_metavariables) {
  Parser p(text, sig, allow_metavariables);
  Atom a = p.atom();
  p.expect_end();
  return a;
}

}  // namespace bes
