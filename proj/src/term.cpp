#include "bes/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace bes {

Signature Signature::extended(int n) {
  if (n < 0) throw std::invalid_argument("signature: negative constant count");
  Signature s;
  s.extra_constants = n;
  return s;
}

namespace {

TermPtr make(TermKind kind) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  return t;
}

bool looks_like_constant_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'c') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

TermPtr Term::zero() {
  static const TermPtr instance = make(TermKind::Zero);
  return instance;
}

TermPtr Term::constant(int index) {
  if (index < 1) throw std::invalid_argument("constant index must be >= 1");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Const;
  t->index = index;
  return t;
}

TermPtr Term::succ(TermPtr t) {
  auto s = std::make_shared<Term>();
  s->kind = TermKind::Succ;
  s->left = std::move(t);
  return s;
}

TermPtr Term::add(TermPtr a, TermPtr b) {
  auto s = std::make_shared<Term>();
  s->kind = TermKind::Add;
  s->left = std::move(a);
  s->right = std::move(b);
  return s;
}

TermPtr Term::mul(TermPtr a, TermPtr b) {
  auto s = std::make_shared<Term>();
  s->kind = TermKind::Mul;
  s->left = std::move(a);
  s->right = std::move(b);
  return s;
}

TermPtr Term::var(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  if (looks_like_constant_name(name))
    throw std::invalid_argument("variable name '" + name + "' collides with constant syntax");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = name;
  return t;
}

int compare(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case TermKind::Zero:
      return 0;
    case TermKind::Const:
      return a->index < b->index ? -1 : (a->index > b->index ? 1 : 0);
    case TermKind::Var:
      return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    case TermKind::Succ:
      return compare(a->left, b->left);
    case TermKind::Add:
    case TermKind::Mul: {
      int c = compare(a->left, b->left);
      return c != 0 ? c : compare(a->right, b->right);
    }
  }
  return 0;
}

bool equal(const TermPtr& a, const TermPtr& b) { return compare(a, b) == 0; }

std::size_t node_count(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Zero:
    case TermKind::Const:
    case TermKind::Var:
      return 1;
    case TermKind::Succ:
      return 1 + node_count(t->left);
    case TermKind::Add:
    case TermKind::Mul:
      return 1 + node_count(t->left) + node_count(t->right);
  }
  return 1;
}

bool is_closed(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
      return false;
    case TermKind::Zero:
    case TermKind::Const:
      return true;
    case TermKind::Succ:
      return is_closed(t->left);
    case TermKind::Add:
    case TermKind::Mul:
      return is_closed(t->left) && is_closed(t->right);
  }
  return true;
}

bool well_formed(const TermPtr& t, const Signature& sig) {
  switch (t->kind) {
    case TermKind::Zero:
    case TermKind::Var:
      return true;
    case TermKind::Const:
      return sig.allows_constant(t->index);
    case TermKind::Succ:
      return well_formed(t->left, sig);
    case TermKind::Add:
    case TermKind::Mul:
      return well_formed(t->left, sig) && well_formed(t->right, sig);
  }
  return true;
}

void free_vars(const TermPtr& t, std::vector<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
      return;
    case TermKind::Succ:
      free_vars(t->left, out);
      return;
    case TermKind::Add:
    case TermKind::Mul:
      free_vars(t->left, out);
      free_vars(t->right, out);
      return;
    default:
      return;
  }
}

namespace {

// Precedence levels: 1 additive, 2 multiplicative, 3 primary.
void render_into(const TermPtr& t, int level, std::string& out) {
  switch (t->kind) {
    case TermKind::Zero:
      out += '0';
      return;
    case TermKind::Const:
      out += 'c';
      out += std::to_string(t->index);
      return;
    case TermKind::Var:
      out += t->name;
      return;
    case TermKind::Succ:
      out += "S(";
      render_into(t->left, 1, out);
      out += ')';
      return;
    case TermKind::Add: {
      bool parens = level > 1;
      if (parens) out += '(';
      render_into(t->left, 1, out);
      out += '+';
      render_into(t->right, 2, out);  // left-associative
      if (parens) out += ')';
      return;
    }
    case TermKind::Mul: {
      bool parens = level > 2;
      if (parens) out += '(';
      render_into(t->left, 2, out);
      out += '*';
      render_into(t->right, 3, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string render(const TermPtr& t) {
  std::string out;
  render_into(t, 1, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& replacement) {
  switch (t->kind) {
    case TermKind::Var:
      return t->name == var ? replacement : t;
    case TermKind::Zero:
    case TermKind::Const:
      return t;
    case TermKind::Succ: {
      TermPtr sub = substitute(t->left, var, replacement);
      return sub == t->left ? t : Term::succ(sub);
    }
    case TermKind::Add:
    case TermKind::Mul: {
      TermPtr l = substitute(t->left, var, replacement);
      TermPtr r = substitute(t->right, var, replacement);
      if (l == t->left && r == t->right) return t;
      return t->kind == TermKind::Add ? Term::add(l, r) : Term::mul(l, r);
    }
  }
  return t;
}

TermPtr numeral(std::uint64_t n) {
  TermPtr t = Term::zero();
  for (std::uint64_t i = 0; i < n; ++i) t = Term::succ(t);
  return t;
}

std::optional<std::uint64_t> numeral_value(const TermPtr& t) {
  std::uint64_t n = 0;
  const Term* cur = t.get();
  while (cur->kind == TermKind::Succ) {
    ++n;
    cur = cur->left.get();
  }
  if (cur->kind != TermKind::Zero) return std::nullopt;
  return n;
}

std::vector<TermPtr> closed_terms_upto(const Signature& sig, int max_nodes) {
  if (max_nodes < 1) throw std::invalid_argument("closed_terms_upto: size must be >= 1");
  // by_size[n] holds all closed terms with exactly n+1 nodes, in order.
  std::vector<std::vector<TermPtr>> by_size(static_cast<std::size_t>(max_nodes));
  by_size[0].push_back(Term::zero());
  for (int i = 1; i <= sig.extra_constants; ++i) by_size[0].push_back(Term::constant(i));
  for (int n = 2; n <= max_nodes; ++n) {
    auto& out = by_size[static_cast<std::size_t>(n - 1)];
    for (const auto& t : by_size[static_cast<std::size_t>(n - 2)]) out.push_back(Term::succ(t));
    for (int which = 0; which < 2; ++which) {
      for (int i = 1; i <= n - 2; ++i) {
        int j = n - 1 - i;
        for (const auto& a : by_size[static_cast<std::size_t>(i - 1)])
          for (const auto& b : by_size[static_cast<std::size_t>(j - 1)])
            out.push_back(which == 0 ? Term::add(a, b) : Term::mul(a, b));
      }
    }
  }
  std::vector<TermPtr> all;
  for (auto& bucket : by_size)
    for (auto& t : bucket) all.push_back(std::move(t));
  return all;
}

namespace {

void collect_subterms_into(const TermPtr& t, std::vector<TermPtr>& out) {
  out.push_back(t);
  switch (t->kind) {
    case TermKind::Succ:
      collect_subterms_into(t->left, out);
      break;
    case TermKind::Add:
    case TermKind::Mul:
      collect_subterms_into(t->left, out);
      collect_subterms_into(t->right, out);
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<TermPtr> collect_subterms(const TermPtr& t) {
  std::vector<TermPtr> out;
  collect_subterms_into(t, out);
  std::sort(out.begin(), out.end(),
            [](const TermPtr& a, const TermPtr& b) { return compare(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const TermPtr& a, const TermPtr& b) { return equal(a, b); }),
            out.end());
  return out;
}

}  // namespace bes
