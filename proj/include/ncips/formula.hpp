#pragma once

// Non-commutative arithmetic formulas.
//
// A formula is an immutable binary tree. Subtrees may be shared in memory but
// every operation treats the formula as its unfolded tree. Gates are addressed
// by their pre-order index in that tree (the root is gate 0).

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncips/errors.hpp"
#include "ncips/field.hpp"
#include "ncips/poly.hpp"

namespace ncips {

enum class NodeKind : std::uint8_t { variable, constant, plus, times };

using GateId = std::uint64_t;

template <class S>
struct FormulaNode {
  NodeKind kind;
  Var var = 0;
  S value{};
  std::shared_ptr<const FormulaNode> left, right;
  std::uint64_t size = 1;
  std::uint32_t depth = 0;
  std::uint64_t degree = 0;
};

template <class S>
class NcFormula {
 public:
  using Node = FormulaNode<S>;
  using NodePtr = std::shared_ptr<const Node>;

  NcFormula() = default;
  NcFormula(Field field, NodePtr root) : field_(field), root_(std::move(root)) {}

  static NcFormula variable(Field field, Var v) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::variable;
    n->var = v;
    n->degree = 1;
    return {field, std::move(n)};
  }
  static NcFormula constant(Field field, const S& c) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::constant;
    n->value = c;
    return {field, std::move(n)};
  }
  static NcFormula constant(Field field, long long c) { return constant(field, from_integer<S>(field, c)); }
  static NcFormula gate(NodeKind kind, const NcFormula& a, const NcFormula& b) {
    if (!(a.field_ == b.field_)) throw FieldMismatch("formulas over " + a.field_.name() + " and " + b.field_.name());
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->left = a.root_;
    n->right = b.root_;
    n->size = 1 + a.root_->size + b.root_->size;
    n->depth = 1 + std::max(a.root_->depth, b.root_->depth);
    n->degree = kind == NodeKind::plus ? std::max(a.root_->degree, b.root_->degree) : a.root_->degree + b.root_->degree;
    return {a.field_, std::move(n)};
  }

  const Field& field() const { return field_; }
  const NodePtr& root() const { return root_; }
  NodeKind kind() const { return root_->kind; }
  bool is_variable() const { return root_->kind == NodeKind::variable; }
  bool is_constant() const { return root_->kind == NodeKind::constant; }
  bool is_leaf() const { return is_variable() || is_constant(); }
  bool is_plus() const { return root_->kind == NodeKind::plus; }
  bool is_times() const { return root_->kind == NodeKind::times; }
  Var var() const { return root_->var; }
  const S& value() const { return root_->value; }
  NcFormula left() const { return {field_, root_->left}; }
  NcFormula right() const { return {field_, root_->right}; }

  std::uint64_t size() const { return root_->size; }
  std::uint32_t depth() const { return root_->depth; }
  std::uint64_t degree() const { return root_->degree; }

 private:
  Field field_ = Field::rationals();
  NodePtr root_;
};

template <class S>
NcFormula<S> operator+(const NcFormula<S>& a, const NcFormula<S>& b) {
  return NcFormula<S>::gate(NodeKind::plus, a, b);
}

template <class S>
NcFormula<S> operator*(const NcFormula<S>& a, const NcFormula<S>& b) {
  return NcFormula<S>::gate(NodeKind::times, a, b);
}

/// (* -1 f), the only form of negation.
template <class S>
NcFormula<S> negate(const NcFormula<S>& f) {
  return NcFormula<S>::constant(f.field(), -one<S>(f.field())) * f;
}

/// a - b as (+ a (* -1 b)).
template <class S>
NcFormula<S> operator-(const NcFormula<S>& a, const NcFormula<S>& b) {
  return a + negate(b);
}

template <class S>
bool same_tree(const typename NcFormula<S>::NodePtr& a, const typename NcFormula<S>::NodePtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->size != b->size) return false;
  switch (a->kind) {
    case NodeKind::variable:
      return a->var == b->var;
    case NodeKind::constant:
      return a->value == b->value;
    default:
      return same_tree<S>(a->left, b->left) && same_tree<S>(a->right, b->right);
  }
}

/// Structural (AST) equality.
template <class S>
bool operator==(const NcFormula<S>& a, const NcFormula<S>& b) {
  return a.field() == b.field() && same_tree<S>(a.root(), b.root());
}

struct Metrics {
  std::uint64_t size = 0;
  std::uint32_t depth = 0;
  std::uint64_t syntactic_degree = 0;
};

template <class S>
Metrics metrics(const NcFormula<S>& f) {
  return {f.size(), f.depth(), f.degree()};
}

// ---------------------------------------------------------------------------
// Text form.

template <class S>
void print_node(const typename NcFormula<S>::NodePtr& n, std::string& out) {
  switch (n->kind) {
    case NodeKind::variable:
      out += var_name(n->var);
      return;
    case NodeKind::constant:
      out += to_string(n->value);
      return;
    case NodeKind::plus:
    case NodeKind::times:
      out += n->kind == NodeKind::plus ? "(+ " : "(* ";
      print_node<S>(n->left, out);
      out += ' ';
      print_node<S>(n->right, out);
      out += ')';
      return;
  }
}

template <class S>
std::string print_formula(const NcFormula<S>& f) {
  std::string out;
  print_node<S>(f.root(), out);
  return out;
}

template <class S>
std::ostream& operator<<(std::ostream& os, const NcFormula<S>& f) {
  return os << print_formula(f);
}

namespace detail {

struct Token {
  enum Kind { open, close, atom, end } kind;
  std::string text;
  std::size_t line, column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}
  Token next();
  Token peek() {
    if (!peeked_) peeked_ = next();
    return *peeked_;
  }
  Token take() {
    if (peeked_) {
      Token t = *peeked_;
      peeked_.reset();
      return t;
    }
    return next();
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, column_ = 1;
  std::optional<Token> peeked_;
};

/// Parses "x<digits>" / "y<digits>"; returns nullopt when the atom is not a variable.
std::optional<Var> parse_var_atom(const Token& t);

}  // namespace detail

template <class S>
NcFormula<S> parse_expr(const Field& field, detail::Lexer& lex, const detail::Token* opener = nullptr) {
  using detail::Token;
  Token t = lex.take();
  if (t.kind == Token::end) {
    if (opener) throw ParseError("unbalanced '('", opener->line, opener->column);
    throw ParseError("unexpected end of input", t.line, t.column);
  }
  if (t.kind == Token::close) throw ParseError("unexpected ')'", t.line, t.column);
  if (t.kind == Token::atom) {
    if (auto v = detail::parse_var_atom(t)) return NcFormula<S>::variable(field, *v);
    char c0 = t.text[0];
    if (c0 == '-' || c0 == '+' || (c0 >= '0' && c0 <= '9')) {
      try {
        return NcFormula<S>::constant(field, parse_scalar<S>(field, t.text));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), t.line, t.column);
      }
    }
    throw ParseError("unknown token '" + t.text + "'", t.line, t.column);
  }
  Token op = lex.take();
  if (op.kind != Token::atom || (op.text != "+" && op.text != "*" && op.text != "-")) {
    if (op.kind == Token::end) throw ParseError("unbalanced '('", t.line, t.column);
    throw ParseError("expected operator '+', '*' or '-'", op.line, op.column);
  }
  NcFormula<S> a = parse_expr<S>(field, lex, &t);
  NcFormula<S> b = parse_expr<S>(field, lex, &t);
  Token close = lex.take();
  if (close.kind != Token::close) {
    if (close.kind == Token::end) throw ParseError("unbalanced '('", t.line, t.column);
    throw ParseError("expected ')'", close.line, close.column);
  }
  if (op.text == "+") return a + b;
  if (op.text == "*") return a * b;
  return a - b;
}

template <class S>
NcFormula<S> parse_formula(const Field& field, std::string_view text) {
  detail::Lexer lex(text);
  NcFormula<S> f = parse_expr<S>(field, lex);
  auto t = lex.take();
  if (t.kind != detail::Token::end) throw ParseError("trailing input after formula", t.line, t.column);
  return f;
}

// ---------------------------------------------------------------------------
// Semantics.

template <class S>
std::set<Var> variables(const NcFormula<S>& f) {
  std::set<Var> out;
  std::unordered_map<const FormulaNode<S>*, bool> seen;
  std::function<void(const typename NcFormula<S>::NodePtr&)> go = [&](const auto& n) {
    if (!seen.emplace(n.get(), true).second) return;
    if (n->kind == NodeKind::variable) {
      out.insert(n->var);
    } else if (n->kind != NodeKind::constant) {
      go(n->left);
      go(n->right);
    }
  };
  go(f.root());
  return out;
}

template <class S>
S evaluate(const NcFormula<S>& f, const std::map<Var, S>& assignment) {
  std::unordered_map<const FormulaNode<S>*, S> memo;
  std::function<S(const typename NcFormula<S>::NodePtr&)> go = [&](const auto& n) -> S {
    switch (n->kind) {
      case NodeKind::variable: {
        auto it = assignment.find(n->var);
        if (it == assignment.end()) throw PreconditionError("missing value for " + var_name(n->var));
        return it->second;
      }
      case NodeKind::constant:
        return n->value;
      default:
        break;
    }
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    S v = n->kind == NodeKind::plus ? go(n->left) + go(n->right) : go(n->left) * go(n->right);
    memo.emplace(n.get(), v);
    return v;
  };
  return go(f.root());
}

template <class S>
SparseNcPoly<S> expand(const NcFormula<S>& f) {
  const Field field = f.field();
  std::unordered_map<const FormulaNode<S>*, SparseNcPoly<S>> memo;
  std::function<SparseNcPoly<S>(const typename NcFormula<S>::NodePtr&)> go = [&](const auto& n) -> SparseNcPoly<S> {
    switch (n->kind) {
      case NodeKind::variable:
        return SparseNcPoly<S>::variable(field, n->var);
      case NodeKind::constant:
        return SparseNcPoly<S>::constant(field, n->value);
      default:
        break;
    }
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    SparseNcPoly<S> p = n->kind == NodeKind::plus ? go(n->left) + go(n->right) : go(n->left) * go(n->right);
    memo.emplace(n.get(), p);
    return p;
  };
  return go(f.root());
}

/// Sum of monomial products, in term order. The zero polynomial gives the leaf 0.
template <class S>
NcFormula<S> poly_to_formula(const SparseNcPoly<S>& p) {
  const Field field = p.field();
  std::optional<NcFormula<S>> sum;
  for (const auto& [w, c] : p.terms()) {
    std::optional<NcFormula<S>> term;
    if (!c.is_one() || w.empty()) term = NcFormula<S>::constant(field, c);
    for (Var v : w) {
      auto x = NcFormula<S>::variable(field, v);
      term = term ? *term * x : x;
    }
    sum = sum ? *sum + *term : *term;
  }
  return sum ? *sum : NcFormula<S>::constant(field, zero<S>(field));
}

// ---------------------------------------------------------------------------
// Structural edits.

/// Replaces every leaf x by g, for each (x, g) in subs.
template <class S>
NcFormula<S> substitute_vars(const NcFormula<S>& f, const std::map<Var, NcFormula<S>>& subs) {
  using NodePtr = typename NcFormula<S>::NodePtr;
  const Field field = f.field();
  for (const auto& [x, g] : subs) {
    if (!(g.field() == field)) throw FieldMismatch("substitution across fields");
  }
  std::unordered_map<const FormulaNode<S>*, NcFormula<S>> memo;
  std::function<NcFormula<S>(const NodePtr&)> go = [&](const NodePtr& n) -> NcFormula<S> {
    if (n->kind == NodeKind::variable) {
      auto it = subs.find(n->var);
      return it == subs.end() ? NcFormula<S>(field, n) : it->second;
    }
    if (n->kind == NodeKind::constant) return {field, n};
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    NcFormula<S> l = go(n->left), r = go(n->right);
    NcFormula<S> out = (l.root() == n->left && r.root() == n->right) ? NcFormula<S>(field, n)
                                                                      : NcFormula<S>::gate(n->kind, l, r);
    memo.emplace(n.get(), out);
    return out;
  };
  return go(f.root());
}

template <class S>
NcFormula<S> substitute_var(const NcFormula<S>& f, Var x, const NcFormula<S>& g) {
  return substitute_vars(f, std::map<Var, NcFormula<S>>{{x, g}});
}

/// Child directions from the root to gate `id` (false = left, true = right).
template <class S>
std::vector<bool> gate_path(const NcFormula<S>& f, GateId id) {
  if (id >= f.size()) throw PreconditionError("unknown gate " + std::to_string(id));
  std::vector<bool> path;
  auto n = f.root();
  GateId base = 0;
  while (base != id) {
    GateId left_base = base + 1;
    GateId right_base = left_base + n->left->size;
    if (id < right_base) {
      path.push_back(false);
      n = n->left;
      base = left_base;
    } else {
      path.push_back(true);
      n = n->right;
      base = right_base;
    }
  }
  return path;
}

template <class S>
NcFormula<S> subformula_at(const NcFormula<S>& f, GateId id) {
  auto n = f.root();
  for (bool right : gate_path(f, id)) n = right ? n->right : n->left;
  return {f.field(), n};
}

/// Gate id of the node reached by following `path` from the root.
template <class S>
GateId gate_id_at(const NcFormula<S>& f, const std::vector<bool>& path) {
  auto n = f.root();
  GateId id = 0;
  for (bool right : path) {
    if (n->kind == NodeKind::variable || n->kind == NodeKind::constant) throw PreconditionError("path leaves the tree");
    id += right ? 1 + n->left->size : 1;
    n = right ? n->right : n->left;
  }
  return id;
}

/// A subformula of a host formula with some of its gates replaced by constants.
template <class S>
struct InducedPart {
  GateId root = 0;
  std::map<GateId, S> substitutions;

  friend bool operator==(const InducedPart&, const InducedPart&) = default;
  friend auto operator<=>(const InducedPart& a, const InducedPart& b) {
    if (a.root != b.root) return a.root <=> b.root;
    if (a.substitutions.size() != b.substitutions.size()) return a.substitutions.size() <=> b.substitutions.size();
    auto ia = a.substitutions.begin();
    auto ib = b.substitutions.begin();
    for (; ia != a.substitutions.end(); ++ia, ++ib) {
      if (ia->first != ib->first) return ia->first <=> ib->first;
      std::string sa = to_string(ia->second), sb = to_string(ib->second);
      if (sa != sb) return sa <=> sb;
    }
    return std::strong_ordering::equal;
  }
};

template <class S>
NcFormula<S> apply_induced_part(const NcFormula<S>& f, const InducedPart<S>& part) {
  using NodePtr = typename NcFormula<S>::NodePtr;
  const Field field = f.field();
  if (part.root >= f.size()) throw PreconditionError("dangling gate-id " + std::to_string(part.root));
  NcFormula<S> sub = subformula_at(f, part.root);
  const GateId lo = part.root, hi = part.root + sub.size();
  for (const auto& [g, c] : part.substitutions) {
    if (g < lo || g >= hi) throw PreconditionError("dangling gate-id " + std::to_string(g) + " outside the part's root");
  }
  std::function<NcFormula<S>(const NodePtr&, GateId)> go = [&](const NodePtr& n, GateId id) -> NcFormula<S> {
    auto it = part.substitutions.lower_bound(id);
    if (it != part.substitutions.end() && it->first == id) return NcFormula<S>::constant(field, it->second);
    if (it == part.substitutions.end() || it->first >= id + n->size) return {field, n};
    NcFormula<S> l = go(n->left, id + 1);
    NcFormula<S> r = go(n->right, id + 1 + n->left->size);
    return NcFormula<S>::gate(n->kind, l, r);
  };
  return go(sub.root(), lo);
}

// ---------------------------------------------------------------------------
// Random formulas.

struct RandomFormulaOptions {
  std::uint32_t num_vars = 3;
  double times_probability = 0.5;
  double constant_probability = 0.2;
  /// Constants are drawn from [-constant_range, constant_range] (reduced into the field).
  int constant_range = 2;
};

/// Uniformly split random tree with exactly `size` nodes (size is rounded down to odd).
template <class S>
NcFormula<S> random_formula(const Field& field, std::uint64_t size, std::mt19937_64& rng,
                            const RandomFormulaOptions& opt = {}) {
  if (size < 1) size = 1;
  std::uint64_t leaves = (size + 1) / 2;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::function<NcFormula<S>(std::uint64_t)> go = [&](std::uint64_t l) -> NcFormula<S> {
    if (l == 1) {
      if (unit(rng) < opt.constant_probability) {
        int lo = field.kind == FieldKind::gf2 ? 0 : -opt.constant_range;
        int hi = field.kind == FieldKind::gf2 ? 1 : opt.constant_range;
        std::uniform_int_distribution<int> c(lo, hi);
        return NcFormula<S>::constant(field, c(rng));
      }
      std::uniform_int_distribution<std::uint32_t> v(1, opt.num_vars);
      return NcFormula<S>::variable(field, x_var(v(rng)));
    }
    std::uniform_int_distribution<std::uint64_t> split(1, l - 1);
    std::uint64_t k = split(rng);
    NodeKind kind = unit(rng) < opt.times_probability ? NodeKind::times : NodeKind::plus;
    NcFormula<S> a = go(k);
    NcFormula<S> b = go(l - k);
    return NcFormula<S>::gate(kind, a, b);
  };
  return go(leaves);
}

}  // namespace ncips
