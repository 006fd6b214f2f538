#pragma once

// Test-only generators and independent oracles.

#include <cstdint>
#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ncips/field.hpp"
#include "ncips/formula.hpp"
#include "ncips/matrix.hpp"
#include "ncips/poly.hpp"

namespace ncips::testing {

template <class S>
S random_scalar(const Field& field, std::mt19937_64& rng) {
  if (field.kind == FieldKind::rational) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 12);
    if constexpr (std::is_same_v<S, Rational>) return Rational(mpz_class(num(rng)), mpz_class(den(rng)));
  }
  std::uniform_int_distribution<long long> d(0, field.kind == FieldKind::gf2 ? 1 : static_cast<long long>(field.modulus) - 1);
  return from_integer<S>(field, d(rng));
}

template <class S>
SparseNcPoly<S> random_poly(const Field& field, std::mt19937_64& rng, int terms, int max_len, std::uint32_t vars) {
  SparseNcPoly<S> p(field);
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> var(1, vars);
  for (int t = 0; t < terms; ++t) {
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& v : w) v = var(rng);
    p.add_term(w, random_scalar<S>(field, rng));
  }
  return p;
}

/// Word-level substitution of q for every occurrence of x in p, built term by term.
template <class S>
SparseNcPoly<S> oracle_substitute(const SparseNcPoly<S>& p, Var x, const SparseNcPoly<S>& q) {
  const Field field = p.field();
  SparseNcPoly<S> out(field);
  for (const auto& [w, c] : p.terms()) {
    // Each letter becomes either itself or a copy of q; multiply out left to right.
    std::map<Word, S> acc{{Word{}, c}};
    for (Var v : w) {
      std::map<Word, S> next;
      auto push = [&](Word u, const S& a) {
        auto [it, ins] = next.try_emplace(std::move(u), a);
        if (!ins) it->second = it->second + a;
      };
      for (const auto& [u, a] : acc) {
        if (v != x) {
          Word u2 = u;
          u2.push_back(v);
          push(u2, a);
        } else {
          for (const auto& [qw, qc] : q.terms()) {
            Word u2 = u;
            u2.insert(u2.end(), qw.begin(), qw.end());
            push(u2, a * qc);
          }
        }
      }
      acc.clear();
      for (auto& [u, a] : next) {
        if (!a.is_zero()) acc.emplace(u, a);
      }
    }
    for (const auto& [u, a] : acc) out.add_term(u, a);
  }
  return out;
}

/// XOR/AND evaluation of the tree on a 0-1 point; vars[i-1] is x_i.
template <class S>
bool boolean_eval(const typename NcFormula<S>::NodePtr& n, unsigned point) {
  switch (n->kind) {
    case NodeKind::variable:
      return (point >> (var_index(n->var) - 1)) & 1u;
    case NodeKind::constant:
      return !n->value.is_zero();
    case NodeKind::plus:
      return boolean_eval<S>(n->left, point) != boolean_eval<S>(n->right, point);
    case NodeKind::times:
      return boolean_eval<S>(n->left, point) && boolean_eval<S>(n->right, point);
  }
  return false;
}

/// All formulas with exactly `internal` gates over the given leaves.
template <class S>
class FormulaEnumerator {
 public:
  FormulaEnumerator(Field field, std::vector<NcFormula<S>> leaves) : field_(field) { by_gates_.push_back(std::move(leaves)); }

  /// Materialized list of formulas with g gates (only for small g).
  const std::vector<NcFormula<S>>& list(std::size_t g) {
    while (by_gates_.size() <= g) {
      std::size_t n = by_gates_.size();
      std::vector<NcFormula<S>> out;
      for (std::size_t a = 0; a < n; ++a) {
        for (const auto& l : by_gates_[a]) {
          for (const auto& r : by_gates_[n - 1 - a]) {
            out.push_back(l + r);
            out.push_back(l * r);
          }
        }
      }
      by_gates_.push_back(std::move(out));
    }
    return by_gates_[g];
  }

  /// Streams all formulas with g gates without storing the top layer.
  void for_each(std::size_t g, const std::function<void(const NcFormula<S>&)>& fn) {
    if (g == 0) {
      for (const auto& f : list(0)) fn(f);
      return;
    }
    list(g - 1);
    for (std::size_t a = 0; a < g; ++a) {
      const auto& ls = list(a);
      const auto& rs = list(g - 1 - a);
      for (const auto& l : ls) {
        for (const auto& r : rs) {
          fn(l + r);
          fn(l * r);
        }
      }
    }
  }

  /// Every formula of size at most max_size.
  void for_each_up_to(std::uint64_t max_size, const std::function<void(const NcFormula<S>&)>& fn) {
    for (std::size_t g = 0; 2 * g + 1 <= max_size; ++g) for_each(g, fn);
  }

 private:
  Field field_;
  std::vector<std::vector<NcFormula<S>>> by_gates_;
};

/// Random syntactically homogeneous formula of the given degree (>= 1) with about `leaves` leaves.
template <class S>
NcFormula<S> random_homogeneous(const Field& field, std::uint64_t degree, std::uint64_t leaves, std::mt19937_64& rng,
                                std::uint32_t vars = 3) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> var(1, vars);
  if (leaves <= degree || degree == 1) {
    if (degree == 1 && leaves <= 1) {
      auto x = NcFormula<S>::variable(field, x_var(var(rng)));
      if (field.kind != FieldKind::gf2 && unit(rng) < 0.2) return NcFormula<S>::constant(field, 2) * x;
      return x;
    }
    if (degree == 1) {
      std::uniform_int_distribution<std::uint64_t> split(1, leaves - 1);
      auto k = split(rng);
      return random_homogeneous<S>(field, 1, k, rng, vars) + random_homogeneous<S>(field, 1, leaves - k, rng, vars);
    }
    std::uniform_int_distribution<std::uint64_t> cut(1, degree - 1);
    auto a = cut(rng);
    return random_homogeneous<S>(field, a, a, rng, vars) * random_homogeneous<S>(field, degree - a, degree - a, rng, vars);
  }
  if (unit(rng) < 0.5) {
    std::uniform_int_distribution<std::uint64_t> split(1, leaves - 1);
    auto k = split(rng);
    return random_homogeneous<S>(field, degree, k, rng, vars) + random_homogeneous<S>(field, degree, leaves - k, rng, vars);
  }
  std::uniform_int_distribution<std::uint64_t> cut(1, degree - 1);
  auto a = cut(rng);
  std::uint64_t la = std::max<std::uint64_t>(a, leaves * a / degree);
  std::uint64_t lb = std::max<std::uint64_t>(degree - a, leaves - std::min(leaves - 1, la));
  return random_homogeneous<S>(field, a, la, rng, vars) * random_homogeneous<S>(field, degree - a, lb, rng, vars);
}

/// A copy of f rewritten by random commutations of sums, reassociations and
/// distributions; computes the same polynomial.
template <class S>
NcFormula<S> reassociate(const NcFormula<S>& f, std::mt19937_64& rng, double p = 0.5) {
  if (f.is_leaf()) return f;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  NcFormula<S> l = reassociate(f.left(), rng, p), r = reassociate(f.right(), rng, p);
  if (f.is_plus()) {
    if (l.is_plus() && unit(rng) < p) return l.left() + (l.right() + r);
    return unit(rng) < p ? r + l : l + r;
  }
  if (l.is_times() && unit(rng) < p) return l.left() * (l.right() * r);
  if (r.is_plus() && unit(rng) < p / 2) return l * r.left() + l * r.right();
  if (l.is_plus() && unit(rng) < p / 2) return l.left() * r + l.right() * r;
  return l * r;
}

template <class S>
std::vector<NcFormula<S>> standard_leaves(const Field& field, std::uint32_t vars) {
  std::vector<NcFormula<S>> leaves;
  for (std::uint32_t i = 1; i <= vars; ++i) leaves.push_back(NcFormula<S>::variable(field, x_var(i)));
  leaves.push_back(NcFormula<S>::constant(field, 0));
  leaves.push_back(NcFormula<S>::constant(field, 1));
  return leaves;
}

}  // namespace ncips::testing
