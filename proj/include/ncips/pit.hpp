#pragma once

// Deterministic identity testing for non-commutative formulas by propagating
// row relations down the levels of the formula's ABP, and the identity
// witnesses (relation matrices Lambda_i, transfer matrices T_i) it produces.

#include <cstdint>
#include <optional>
#include <vector>

#include "ncips/abp.hpp"
#include "ncips/errors.hpp"
#include "ncips/formula.hpp"
#include "ncips/matrix.hpp"
#include "ncips/poly.hpp"

namespace ncips {

/// Row-major matrix of linear forms.
template <class S>
struct LinFormMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<LinForm<S>> entries;

  LinFormMatrix() = default;
  LinFormMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  LinForm<S>& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const LinForm<S>& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  /// Coefficient matrix of variable v.
  FieldMatrix<S> coefficient(Var v, const S& zero) const {
    FieldMatrix<S> m = FieldMatrix<S>::Constant(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols), zero);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const auto& co = at(r, c).coeffs();
        if (auto it = co.find(v); it != co.end())
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = it->second;
      }
    return m;
  }
  friend bool operator==(const LinFormMatrix&, const LinFormMatrix&) = default;
};

template <class S>
struct Witness {
  Field field = Field::rationals();
  /// m_0..m_d: number of v-parts of each degree.
  std::vector<std::size_t> dims;
  /// Lambda_0..Lambda_d; Lambda_i is m_i x m_i for i < d, Lambda_d is 1 x m_d.
  std::vector<FieldMatrix<S>> lambdas;
  /// transfers[i - 1] = T_i, with rows(Lambda_i) x rows(Lambda_{i-1}) entries.
  std::vector<LinFormMatrix<S>> transfers;
  /// vparts[i] = the vector of degree-i v-parts.
  std::vector<std::vector<VPart<S>>> vparts;
};

struct PitStats {
  std::size_t components = 0, abp_nodes = 0, abp_edges = 0, max_rank = 0;
};

template <class S>
struct PitResult {
  bool zero = true;
  /// When nonzero: a word with nonzero coefficient, and that coefficient.
  std::optional<Word> witness;
  std::optional<S> coefficient;
  PitStats stats;
};

namespace detail {

template <class S>
FieldMatrix<S> stack_rows(const std::vector<FieldMatrix<S>>& blocks, Eigen::Index cols, const S& zero) {
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  FieldMatrix<S> out = FieldMatrix<S>::Constant(rows, cols, zero);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

/// Lambda_{i-1} from Lambda_i: basis of the rows of Lambda_i * M^(k) over all k, in variable order.
template <class S>
FieldMatrix<S> propagate(const FieldMatrix<S>& lambda, const LevelMatrices<S>& lm, std::size_t i, Eigen::Index cols,
                         const S& zero) {
  std::vector<FieldMatrix<S>> blocks;
  for (Var v : lm.vars) blocks.push_back(lambda * lm.by_degree[i].at(v));
  return row_space_basis(stack_rows(blocks, cols, zero));
}

/// Row relations surviving to degree 0, starting from `start` at degree `from`.
template <class S>
FieldMatrix<S> propagate_to_base(const Abp<S>& a, const LevelMatrices<S>& lm, FieldMatrix<S> lambda, std::size_t from,
                                 std::size_t* max_rank = nullptr) {
  const S zero = ncips::zero<S>(a.field);
  for (std::size_t i = from; i >= 1 && lambda.rows() > 0; --i) {
    lambda = propagate(lambda, lm, i, static_cast<Eigen::Index>(a.degree_nodes(i - 1).size()), zero);
    if (max_rank) *max_rank = std::max(*max_rank, static_cast<std::size_t>(lambda.rows()));
  }
  if (from > 0 && lambda.rows() == 0) return FieldMatrix<S>(0, 1);
  return lambda;
}

/// lambda * (constant node vector at degree 0); nonzero iff the degree-0 relation fails.
template <class S, class Derived>
S base_value(const Abp<S>& a, const Eigen::MatrixBase<Derived>& lambda_row0) {
  return lambda_row0.cols() == 0 ? zero<S>(a.field) : lambda_row0(0, 0) * a.sink_weight;
}

/// A word with nonzero coefficient in the component, by choosing one variable per level
/// whose restricted relation still survives to the base.
template <class S>
std::pair<Word, S> trace_nonzero_word(const Abp<S>& a, const LevelMatrices<S>& lm) {
  const S zero = ncips::zero<S>(a.field);
  FieldMatrix<S> lambda = FieldMatrix<S>::Constant(1, 1, one<S>(a.field));
  Word w;
  for (std::size_t i = a.degree(); i >= 1; --i) {
    bool found = false;
    for (Var v : lm.vars) {
      FieldMatrix<S> next = lambda * lm.by_degree[i].at(v);
      if (is_zero_matrix(next)) continue;
      auto base = propagate_to_base(a, lm, next, i - 1);
      bool alive = false;
      for (Eigen::Index r = 0; r < base.rows(); ++r) alive = alive || !base_value(a, base.row(r)).is_zero();
      if (!alive) continue;
      w.push_back(v);
      lambda = next;
      found = true;
      break;
    }
    if (!found) throw Error("internal: lost the nonzero path while tracing a witness word");
  }
  return {w, base_value(a, lambda)};
}

}  // namespace detail

template <class S>
PitResult<S> identity_test(const NcFormula<S>& f) {
  PitResult<S> out;
  auto conv = formula_to_abp(f);
  for (const auto& a : conv.components) {
    ++out.stats.components;
    out.stats.abp_nodes += a.num_nodes();
    out.stats.abp_edges += a.edges.size();
    auto lm = level_matrices(a);
    FieldMatrix<S> start = FieldMatrix<S>::Constant(1, 1, one<S>(a.field));
    auto base = detail::propagate_to_base(a, lm, start, a.degree(), &out.stats.max_rank);
    bool zero = true;
    for (Eigen::Index r = 0; r < base.rows(); ++r) zero = zero && detail::base_value(a, base.row(r)).is_zero();
    if (!zero && out.zero) {
      out.zero = false;
      auto [w, c] = detail::trace_nonzero_word(a, lm);
      out.witness = std::move(w);
      out.coefficient = c;
    }
  }
  return out;
}

/// True iff f computes the zero polynomial. Never expands f.
template <class S>
bool is_identically_zero(const NcFormula<S>& f) {
  return identity_test(f).zero;
}

template <class S>
Witness<S> extract_witnesses(const NcFormula<S>& f) {
  auto hd = syntactic_homogeneity(f);
  if (!hd) throw PreconditionError("not-homogeneous: formula is not syntactically homogeneous");
  auto [a, vp] = homogeneous_abp(f);
  const Field field = f.field();
  const S z = zero<S>(field), o = one<S>(field);
  const std::size_t d = a.degree();
  auto lm = level_matrices(a);

  Witness<S> w;
  w.field = field;
  w.dims.resize(d + 1);
  w.vparts.resize(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    const auto& nodes = a.degree_nodes(i);
    w.dims[i] = nodes.size();
    for (NodeId v : nodes) w.vparts[i].push_back(vp[v]);
  }
  w.lambdas.resize(d + 1);
  w.transfers.resize(d);

  // Unpadded relations first; rows of `basis[i]` are independent.
  std::vector<FieldMatrix<S>> basis(d + 1);
  basis[d] = FieldMatrix<S>::Constant(1, static_cast<Eigen::Index>(w.dims[d]), o);
  for (std::size_t i = d; i >= 1; --i) {
    basis[i - 1] = detail::propagate(basis[i], lm, i, static_cast<Eigen::Index>(w.dims[i - 1]), z);
  }
  for (Eigen::Index r = 0; r < basis[0].rows(); ++r) {
    if (!detail::base_value(a, basis[0].row(r)).is_zero())
      throw PreconditionError("not-identically-zero: formula computes a nonzero polynomial");
  }

  // Pad every Lambda_i (i < d) with zero rows up to m_i x m_i.
  for (std::size_t i = 0; i <= d; ++i) {
    if (i == d) {
      w.lambdas[i] = basis[i];
      continue;
    }
    const auto m = static_cast<Eigen::Index>(w.dims[i]);
    w.lambdas[i] = FieldMatrix<S>::Constant(m, m, z);
    w.lambdas[i].topRows(basis[i].rows()) = basis[i];
  }
  for (std::size_t i = 1; i <= d; ++i) {
    const auto& lam = w.lambdas[i];
    LinFormMatrix<S> t(static_cast<std::size_t>(lam.rows()), static_cast<std::size_t>(w.lambdas[i - 1].rows()));
    for (Var v : lm.vars) {
      FieldMatrix<S> prod = lam * lm.by_degree[i].at(v);
      for (Eigen::Index r = 0; r < prod.rows(); ++r) {
        RowVector<S> row = prod.row(r);
        if (basis[i - 1].rows() == 0) {
          if (!is_zero_matrix(FieldMatrix<S>(row))) throw NotInSpan();
          continue;
        }
        RowVector<S> c = express_in_basis(row, basis[i - 1], z, o);
        for (Eigen::Index q = 0; q < c.cols(); ++q) t.at(static_cast<std::size_t>(r), static_cast<std::size_t>(q)).add(v, c(q));
      }
    }
    w.transfers[i - 1] = std::move(t);
  }
  return w;
}

namespace detail {

template <class S>
std::vector<SparseNcPoly<S>> apply_rows(const FieldMatrix<S>& lambda, const std::vector<SparseNcPoly<S>>& vec,
                                        const Field& field) {
  std::vector<SparseNcPoly<S>> out;
  for (Eigen::Index r = 0; r < lambda.rows(); ++r) {
    SparseNcPoly<S> acc(field);
    for (Eigen::Index c = 0; c < lambda.cols(); ++c) {
      if (!lambda(r, c).is_zero()) acc += scale(vec[static_cast<std::size_t>(c)], lambda(r, c));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// The formula sum_p row[p] * part_p with unit coefficients left implicit.
template <class S>
std::optional<NcFormula<S>> combine_syntactically(const NcFormula<S>& f, const FieldMatrix<S>& row,
                                                  const std::vector<VPart<S>>& parts) {
  std::optional<NcFormula<S>> out;
  for (Eigen::Index p = 0; p < row.cols(); ++p) {
    const S& c = row(0, p);
    if (c.is_zero()) continue;
    auto term = apply_induced_part(f, parts[static_cast<std::size_t>(p)].part);
    if (!c.is_one()) term = NcFormula<S>::constant(f.field(), c) * term;
    out = out ? *out + term : term;
  }
  return out;
}

}  // namespace detail

/// Checks the witness equalities exactly. Returns false on any failed equality;
/// throws DimensionMismatch when the shapes do not fit together.
template <class S>
bool verify_witnesses(const NcFormula<S>& f, const Witness<S>& w) {
  const Field field = f.field();
  if (!(w.field == field)) throw FieldMismatch("witness field " + w.field.name() + " differs from " + field.name());
  const std::size_t d = w.dims.empty() ? 0 : w.dims.size() - 1;
  if (w.dims.empty() || w.lambdas.size() != d + 1 || w.transfers.size() != d || w.vparts.size() != d + 1)
    throw DimensionMismatch("witness needs d+1 dims, lambdas and v-part vectors and d transfers");
  for (std::size_t i = 0; i <= d; ++i) {
    const auto m = static_cast<Eigen::Index>(w.dims[i]);
    if (w.vparts[i].size() != w.dims[i] || w.lambdas[i].cols() != m)
      throw DimensionMismatch("degree " + std::to_string(i) + ": v-part vector or Lambda width differs from m_i");
    if (i == d ? w.lambdas[i].rows() != 1 : w.lambdas[i].rows() != m)
      throw DimensionMismatch("degree " + std::to_string(i) + ": Lambda has the wrong number of rows");
  }
  for (std::size_t i = 1; i <= d; ++i) {
    const auto& t = w.transfers[i - 1];
    if (t.rows != static_cast<std::size_t>(w.lambdas[i].rows()) ||
        t.cols != static_cast<std::size_t>(w.lambdas[i - 1].rows()) || t.entries.size() != t.rows * t.cols)
      throw DimensionMismatch("T_" + std::to_string(i) + " does not fit between Lambda_i and Lambda_{i-1}");
  }
  const S z = zero<S>(field);

  // F is syntactically Lambda_d * F_d.
  auto top = detail::combine_syntactically(f, w.lambdas[d], w.vparts[d]);
  if (!top || !(*top == f)) return false;

  // Structural alignment with the formula's ABP: Lambda_i M^(k) = T_i^(k) Lambda_{i-1} for every k,
  // with T_i vanishing on the zero rows of Lambda_{i-1}.
  auto hd = syntactic_homogeneity(f);
  if (!hd) return false;
  auto [a, vp] = homogeneous_abp(f);
  if (a.degree() != d) return false;
  for (std::size_t i = 0; i <= d; ++i) {
    const auto& nodes = a.degree_nodes(i);
    if (nodes.size() != w.dims[i]) return false;
    for (std::size_t p = 0; p < nodes.size(); ++p)
      if (!(vp[nodes[p]] == w.vparts[i][p])) return false;
  }
  auto lm = level_matrices(a);
  for (std::size_t i = 1; i <= d; ++i) {
    const auto& t = w.transfers[i - 1];
    std::set<Var> vars(lm.vars.begin(), lm.vars.end());
    for (const auto& e : t.entries)
      for (const auto& [v, c] : e.coeffs()) vars.insert(v);
    for (Var v : vars) {
      auto it = lm.by_degree[i].find(v);
      FieldMatrix<S> lhs = it == lm.by_degree[i].end()
                               ? zero_matrix(w.lambdas[i].rows(), static_cast<Eigen::Index>(w.dims[i - 1]), z)
                               : FieldMatrix<S>(w.lambdas[i] * it->second);
      FieldMatrix<S> rhs = t.coefficient(v, z) * w.lambdas[i - 1];
      if (!(lhs == rhs)) return false;
    }
    for (Eigen::Index q = 0; q < w.lambdas[i - 1].rows(); ++q) {
      if (!is_zero_matrix(FieldMatrix<S>(w.lambdas[i - 1].row(q)))) continue;
      for (std::size_t r = 0; r < t.rows; ++r)
        if (!t.at(r, static_cast<std::size_t>(q)).is_zero()) return false;
    }
  }

  // Semantic equalities through the expansion oracle.
  std::vector<std::vector<SparseNcPoly<S>>> values(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    for (const auto& part : w.vparts[i])
      values[i].push_back(degree_part(expand(apply_induced_part(f, part.part)), part.degree));
  std::vector<std::vector<SparseNcPoly<S>>> rel(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    rel[i] = detail::apply_rows(w.lambdas[i], values[i], field);
    for (const auto& p : rel[i])
      if (!p.is_zero()) return false;
  }
  for (std::size_t i = 1; i <= d; ++i) {
    const auto& t = w.transfers[i - 1];
    for (std::size_t r = 0; r < t.rows; ++r) {
      SparseNcPoly<S> acc(field);
      for (std::size_t q = 0; q < t.cols; ++q) acc += t.at(r, q).to_poly(field) * rel[i - 1][q];
      if (!(acc == rel[i][r])) return false;
    }
  }
  return rel[d].size() == 1 && rel[d][0] == expand(f);
}

}  // namespace ncips
