#pragma once

// Depth reduction (balancing) and homogenization of non-commutative formulas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncips/errors.hpp"
#include "ncips/formula.hpp"

namespace ncips {

/// Balanced formulas satisfy depth <= kBalanceC1 * log2(size) + 1.
inline constexpr double kBalanceC1 = 3.0;
/// decompose() returns A, B, C of depth <= kDecomposeC2 * log2(size).
inline constexpr double kDecomposeC2 = 3.0;

/// Homogenization output stays below size^(kHomogenizationEnvelopeC * log2(size)).
inline constexpr double kHomogenizationEnvelopeC = 1.0;

inline double balanced_depth_bound(std::uint64_t size) { return kBalanceC1 * std::log2(static_cast<double>(size)) + 1.0; }

// ---------------------------------------------------------------------------
// 0/1 folding constructors. They only apply 0*f -> 0, 0+f -> f and 1*f -> f
// (and the mirrored forms), so they never change the computed polynomial.

struct FoldStats {
  std::uint64_t folds = 0;
};

template <class S>
bool is_const_zero(const NcFormula<S>& f) {
  return f.is_constant() && f.value().is_zero();
}

template <class S>
bool is_const_one(const NcFormula<S>& f) {
  return f.is_constant() && f.value().is_one();
}

template <class S>
NcFormula<S> fold_add(const NcFormula<S>& a, const NcFormula<S>& b, FoldStats* stats = nullptr) {
  if (is_const_zero(a) || is_const_zero(b)) {
    if (stats) ++stats->folds;
    return is_const_zero(a) ? b : a;
  }
  return a + b;
}

template <class S>
NcFormula<S> fold_mul(const NcFormula<S>& a, const NcFormula<S>& b, FoldStats* stats = nullptr) {
  if (is_const_zero(a) || is_const_zero(b)) {
    if (stats) ++stats->folds;
    return is_const_zero(a) ? a : b;
  }
  if (is_const_one(a) || is_const_one(b)) {
    if (stats) ++stats->folds;
    return is_const_one(a) ? b : a;
  }
  return a * b;
}

// ---------------------------------------------------------------------------
// Balancing.

template <class S>
std::uint64_t count_occurrences(const NcFormula<S>& f, Var z) {
  std::unordered_map<const FormulaNode<S>*, std::uint64_t> memo;
  std::function<std::uint64_t(const typename NcFormula<S>::NodePtr&)> go = [&](const auto& n) -> std::uint64_t {
    if (n->kind == NodeKind::variable) return n->var == z ? 1 : 0;
    if (n->kind == NodeKind::constant) return 0;
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    std::uint64_t c = go(n->left) + go(n->right);
    memo.emplace(n.get(), c);
    return c;
  };
  return go(f.root());
}

/// An x-variable index not used in f.
template <class S>
Var fresh_var(const NcFormula<S>& f) {
  Var top = 0;
  for (Var v : variables(f)) {
    if (!is_y_var(v)) top = std::max(top, v);
  }
  if (top + 1 >= kYBase) throw PreconditionError("no fresh variable index available");
  return top + 1;
}

/// Replaces the gate at `id` by the variable z.
template <class S>
NcFormula<S> replace_gate(const NcFormula<S>& f, GateId id, const NcFormula<S>& replacement) {
  std::function<NcFormula<S>(const NcFormula<S>&, GateId)> go = [&](const NcFormula<S>& n, GateId base) -> NcFormula<S> {
    if (base == id) return replacement;
    GateId right_base = base + 1 + n.left().size();
    if (id < right_base) return NcFormula<S>::gate(n.kind(), go(n.left(), base + 1), n.right());
    return NcFormula<S>::gate(n.kind(), n.left(), go(n.right(), right_base));
  };
  if (id >= f.size()) throw PreconditionError("unknown gate " + std::to_string(id));
  return go(f, 0);
}

template <class S>
struct Decomposition {
  NcFormula<S> a, b, c;
};

template <class S>
NcFormula<S> balance(const NcFormula<S>& f);

namespace detail {

/// Pre-order gate ids of the path from the root to the unique leaf z (root first).
template <class S>
std::vector<GateId> leaf_path(const NcFormula<S>& f, Var z) {
  std::vector<GateId> path;
  std::function<bool(const NcFormula<S>&, GateId)> go = [&](const NcFormula<S>& n, GateId id) -> bool {
    if (n.is_variable()) {
      if (n.var() != z) return false;
      path.push_back(id);
      return true;
    }
    if (n.is_constant()) return false;
    path.push_back(id);
    if (go(n.left(), id + 1) || go(n.right(), id + 1 + n.left().size())) return true;
    path.pop_back();
    return false;
  };
  go(f, 0);
  return path;
}

template <class S>
Decomposition<S> decompose_unchecked(const NcFormula<S>& f, Var z) {
  const Field field = f.field();
  const auto one_f = NcFormula<S>::constant(field, 1);
  const auto zero_f = NcFormula<S>::constant(field, 0);
  auto path = leaf_path(f, z);
  if (path.empty()) return {zero_f, one_f, balance(f)};
  if (f.is_variable()) return {one_f, one_f, zero_f};
  if (f.size() == 3) {
    NcFormula<S> l = f.left(), r = f.right();
    bool z_left = l.is_variable() && l.var() == z;
    NcFormula<S> x = z_left ? r : l;
    if (f.is_plus()) return {one_f, one_f, x};
    return z_left ? Decomposition<S>{one_f, x, zero_f} : Decomposition<S>{x, one_f, zero_f};
  }
  // g: deepest gate on the z-path whose subtree is larger than half of f.
  const double half = static_cast<double>(f.size()) / 2.0;
  std::size_t gi = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (static_cast<double>(subformula_at(f, path[i]).size()) > half) gi = i;
  }
  NcFormula<S> g = subformula_at(f, path[gi]);
  bool on_left = path[gi + 1] == path[gi] + 1;
  NcFormula<S> c = on_left ? g.left() : g.right();
  NcFormula<S> o = on_left ? g.right() : g.left();

  Decomposition<S> inner = decompose_unchecked(c, z);
  NcFormula<S> ob = balance(o);
  Decomposition<S> dg;
  if (g.is_plus()) {
    dg = {inner.a, inner.b, fold_add(inner.c, ob)};
  } else if (on_left) {
    dg = {inner.a, fold_mul(inner.b, ob), fold_mul(inner.c, ob)};
  } else {
    dg = {fold_mul(ob, inner.a), inner.b, fold_mul(ob, inner.c)};
  }
  if (gi == 0) return dg;

  Var z1 = std::max(fresh_var(f), z + 1);
  NcFormula<S> outer_f = replace_gate(f, path[gi], NcFormula<S>::variable(field, z1));
  Decomposition<S> outer = decompose_unchecked(outer_f, z1);
  return {fold_mul(outer.a, dg.a), fold_mul(dg.b, outer.b), fold_add(fold_mul(fold_mul(outer.a, dg.c), outer.b), outer.c)};
}

}  // namespace detail

/// f = A * z * B + C with A, B, C free of z. Requires z to occur at most once.
template <class S>
Decomposition<S> decompose(const NcFormula<S>& f, Var z) {
  if (count_occurrences(f, z) > 1) throw PreconditionError(var_name(z) + " occurs more than once");
  return detail::decompose_unchecked(f, z);
}

/// Equivalent formula of logarithmic depth.
template <class S>
NcFormula<S> balance(const NcFormula<S>& f) {
  const std::uint64_t s = f.size();
  if (s <= 3) return f;
  const double lo = static_cast<double>(s) / 3.0, hi = 2.0 * static_cast<double>(s) / 3.0;

  // First gate in post-order with size in (s/3, 2s/3].
  std::optional<GateId> pick;
  std::function<void(const NcFormula<S>&, GateId)> post = [&](const NcFormula<S>& n, GateId id) {
    if (pick || n.is_leaf()) return;
    post(n.left(), id + 1);
    post(n.right(), id + 1 + n.left().size());
    if (!pick && static_cast<double>(n.size()) > lo && static_cast<double>(n.size()) <= hi) pick = id;
  };
  post(f, 0);
  if (!pick) {
    NcFormula<S> n = f;
    GateId id = 0;
    while (static_cast<double>(n.size()) > hi && !n.is_leaf()) {
      bool go_left = n.left().size() >= n.right().size();
      id += go_left ? 1 : 1 + n.left().size();
      n = go_left ? n.left() : n.right();
    }
    if (n.is_leaf() || id == 0) throw Error("balance: no separator gate");
    pick = id;
  }

  Var z = fresh_var(f);
  NcFormula<S> fg = subformula_at(f, *pick);
  NcFormula<S> rest = replace_gate(f, *pick, NcFormula<S>::variable(f.field(), z));
  Decomposition<S> d = detail::decompose_unchecked(rest, z);
  return fold_add(fold_mul(fold_mul(d.a, balance(fg)), d.b), d.c);
}

// ---------------------------------------------------------------------------
// Product depth.

/// Number of product gates on the path from gate g to the root, g included.
template <class S>
std::uint32_t product_depth(const NcFormula<S>& f, GateId g) {
  std::uint32_t count = 0;
  NcFormula<S> n = f;
  if (n.is_times()) ++count;
  for (bool right : gate_path(f, g)) {
    n = right ? n.right() : n.left();
    if (n.is_times()) ++count;
  }
  return count;
}

/// Monotone non-increasing maps {0..r} -> {0..s}, each as a vector of r+1 values.
std::vector<std::vector<std::uint32_t>> monotone_family(std::uint32_t r, std::uint32_t s);

/// C(r+s+1, s).
std::uint64_t monotone_family_size(std::uint32_t r, std::uint32_t s);

// ---------------------------------------------------------------------------
// Syntactic homogeneity.

/// Degree of a syntactically homogeneous gate; `annihilated` marks gates forced to 0.
struct HomDegree {
  bool annihilated = false;
  std::uint64_t degree = 0;
  friend bool operator==(const HomDegree&, const HomDegree&) = default;
};

/// nullopt when some gate mixes degrees.
template <class S>
std::optional<HomDegree> syntactic_homogeneity(const NcFormula<S>& f) {
  std::unordered_map<const FormulaNode<S>*, std::optional<HomDegree>> memo;
  std::function<std::optional<HomDegree>(const typename NcFormula<S>::NodePtr&)> go =
      [&](const auto& n) -> std::optional<HomDegree> {
    switch (n->kind) {
      case NodeKind::variable:
        return HomDegree{false, 1};
      case NodeKind::constant:
        return n->value.is_zero() ? HomDegree{true, 0} : HomDegree{false, 0};
      default:
        break;
    }
    if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
    std::optional<HomDegree> out;
    auto l = go(n->left);
    auto r = l ? go(n->right) : std::nullopt;
    if (l && r) {
      if (n->kind == NodeKind::times) {
        out = (l->annihilated || r->annihilated) ? HomDegree{true, 0} : HomDegree{false, l->degree + r->degree};
      } else if (l->annihilated) {
        out = r;
      } else if (r->annihilated || l->degree == r->degree) {
        out = l;
      }
    }
    memo.emplace(n.get(), out);
    return out;
  };
  return go(f.root());
}

// ---------------------------------------------------------------------------
// Homogenization.

struct HomogenizationStats {
  /// Gates (u, D) of the split formula before folding, counted in the unfolded tree.
  double split_gates = 0;
  std::uint64_t annihilated = 0;
  std::uint64_t folds = 0;
  /// Sum of the unfolded sizes of the returned parts.
  double output_size = 0;
  std::uint32_t max_product_depth = 0;
};

template <class S>
struct HomogeneousParts {
  std::vector<NcFormula<S>> parts;
  HomogenizationStats stats;
};

/// Formulas F^(0..d), d = syntactic degree, with F^(i) computing the degree-i part of f.
///
/// A gate u reached with degree budget D(pd(u)) = j becomes (u, D). Sum gates pass
/// D through, product gates extend it by i <= j for the left child and j - i for
/// the right. Two copies (u, D), (u, D') with D(pd(u)) = D'(pd(u)) compute the same
/// formula, so the construction is memoized on (u, j); the unfolded output is the
/// same tree.
template <class S>
HomogeneousParts<S> homogenize(const NcFormula<S>& f) {
  if (static_cast<double>(f.depth()) > balanced_depth_bound(f.size())) {
    throw PreconditionError("homogenization needs a balanced formula (depth " + std::to_string(f.depth()) +
                            " exceeds " + std::to_string(balanced_depth_bound(f.size())) + "); balance it first");
  }
  using NodePtr = typename NcFormula<S>::NodePtr;
  const Field field = f.field();
  const auto zero_f = NcFormula<S>::constant(field, 0);
  HomogeneousParts<S> out;
  FoldStats folds;

  struct Key {
    const FormulaNode<S>* n;
    std::uint64_t j;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<const void*>()(k.n) * 1000003u ^ std::hash<std::uint64_t>()(k.j); }
  };
  std::unordered_map<Key, std::pair<NcFormula<S>, double>, KeyHash> memo;

  // Returns the formula for (u, j) and the unfolded size of that copy in the split formula.
  std::function<std::pair<NcFormula<S>, double>(const NodePtr&, std::uint64_t, std::uint32_t)> go =
      [&](const NodePtr& n, std::uint64_t j, std::uint32_t pd) -> std::pair<NcFormula<S>, double> {
    out.stats.max_product_depth = std::max(out.stats.max_product_depth, pd);
    if (n->kind == NodeKind::variable) {
      if (j == 1) return {NcFormula<S>(field, n), 1.0};
      ++out.stats.annihilated;
      return {zero_f, 1.0};
    }
    if (n->kind == NodeKind::constant) {
      if (j == 0) return {NcFormula<S>(field, n), 1.0};
      ++out.stats.annihilated;
      return {zero_f, 1.0};
    }
    if (j > n->degree) {
      ++out.stats.annihilated;
      return {zero_f, 1.0};
    }
    Key key{n.get(), j};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::pair<NcFormula<S>, double> res{zero_f, 1.0};
    if (n->kind == NodeKind::plus) {
      auto l = go(n->left, j, pd);
      auto r = go(n->right, j, pd);
      res = {fold_add(l.first, r.first, &folds), 1.0 + l.second + r.second};
    } else {
      // Children of a product gate sit one product level deeper.
      std::optional<NcFormula<S>> sum;
      double size = 0;
      for (std::uint64_t i = 0; i <= j; ++i) {
        auto l = go(n->left, i, pd + 1);
        auto r = go(n->right, j - i, pd + 1);
        NcFormula<S> term = fold_mul(l.first, r.first, &folds);
        size += 1.0 + l.second + r.second + (i > 0 ? 1.0 : 0.0);
        sum = sum ? fold_add(*sum, term, &folds) : term;
      }
      res = {*sum, size};
    }
    memo.emplace(key, res);
    return res;
  };

  for (std::uint64_t i = 0; i <= f.degree(); ++i) {
    auto [part, split] = go(f.root(), i, 0);
    out.stats.split_gates += split;
    out.stats.output_size += static_cast<double>(part.size());
    out.parts.push_back(part);
  }
  out.stats.folds = folds.folds;
  return out;
}

template <class S>
std::vector<NcFormula<S>> homogeneous_parts(const NcFormula<S>& f) {
  return homogenize(f).parts;
}

}  // namespace ncips
