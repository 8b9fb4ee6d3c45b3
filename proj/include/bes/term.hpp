// Closed and open terms of arithmetic over <0, S, +, *>, optionally extended
// with extra constants c1..cN that name zero. Terms are immutable trees.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bes {

struct Signature {
  int extra_constants = 0;  // c1..cN legal when N > 0

  static Signature basic() { return Signature{}; }
  static Signature extended(int n);

  bool allows_constant(int index) const {
    return index >= 1 && index <= extra_constants;
  }
  bool operator==(const Signature&) const = default;
};

enum class TermKind { Zero, Const, Succ, Add, Mul, Var };

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  TermKind kind;
  int index = 0;        // Const only
  std::string name;     // Var only
  TermPtr left, right;  // Succ uses left; Add/Mul use both

  static TermPtr zero();
  static TermPtr constant(int index);
  static TermPtr succ(TermPtr t);
  static TermPtr add(TermPtr a, TermPtr b);
  static TermPtr mul(TermPtr a, TermPtr b);
  static TermPtr var(const std::string& name);
};

// Structural total order: Zero < Const(i) < Succ < Add < Mul < Var,
// children compared left to right.
int compare(const TermPtr& a, const TermPtr& b);
bool equal(const TermPtr& a, const TermPtr& b);

std::size_t node_count(const TermPtr& t);
bool is_closed(const TermPtr& t);
// All constants legal under sig (variables are allowed; closedness is separate).
bool well_formed(const TermPtr& t, const Signature& sig);
void free_vars(const TermPtr& t, std::vector<std::string>& out);

std::string render(const TermPtr& t);

// Replaces every occurrence of the variable. Terms have no binders, so this
// is plain structural replacement.
TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& replacement);

// S^n(0)
TermPtr numeral(std::uint64_t n);
std::optional<std::uint64_t> numeral_value(const TermPtr& t);

// Every closed term with at most max_nodes nodes, each exactly once, in
// size-lexicographic order (node count first, then Zero < c1 < ... < cN,
// then Succ, Add, Mul with children in enumeration order). The order for a
// given signature is a prefix of the order for any larger bound.
std::vector<TermPtr> closed_terms_upto(const Signature& sig, int max_nodes);

// Deduplicated subterms of t, sorted by the structural order.
std::vector<TermPtr> collect_subterms(const TermPtr& t);

}  // namespace bes
