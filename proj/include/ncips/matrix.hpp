#pragma once

// Dense exact matrices and the two elimination routines the PIT needs.

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "ncips/errors.hpp"
#include "ncips/field.hpp"

namespace ncips {

template <class S>
using FieldMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using RowVector = Eigen::Matrix<S, 1, Eigen::Dynamic>;

namespace detail {

/// In-place reduced row-echelon form. Applies the same row operations to
/// `track` when it is non-null. Returns pivot columns, one per nonzero row.
template <class S>
std::vector<Eigen::Index> rref_in_place(FieldMatrix<S>& m, FieldMatrix<S>* track) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!m(r, col).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != row) {
      m.row(sel).swap(m.row(row));
      if (track) track->row(sel).swap(track->row(row));
    }
    S inv = m(row, col).inverse();
    if (!inv.is_one()) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
      if (track) {
        for (Eigen::Index c = 0; c < track->cols(); ++c) (*track)(row, c) = (*track)(row, c) * inv;
      }
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      S f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - f * m(row, c);
      if (track) {
        for (Eigen::Index c = 0; c < track->cols(); ++c) (*track)(r, c) = (*track)(r, c) - f * (*track)(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <class S>
FieldMatrix<S> zero_matrix(Eigen::Index rows, Eigen::Index cols, const S& zero) {
  return FieldMatrix<S>::Constant(rows, cols, zero);
}

/// Rows of the result are the nonzero rows of the reduced row-echelon form of m.
template <class S>
FieldMatrix<S> row_space_basis(const FieldMatrix<S>& m) {
  FieldMatrix<S> r = m;
  auto pivots = detail::rref_in_place<S>(r, nullptr);
  return r.topRows(static_cast<Eigen::Index>(pivots.size()));
}

template <class S>
Eigen::Index rank(const FieldMatrix<S>& m) {
  FieldMatrix<S> r = m;
  return static_cast<Eigen::Index>(detail::rref_in_place<S>(r, nullptr).size());
}

/// Returns c with c * basis == v. The rows of `basis` need not be independent.
/// Throws NotInSpan when v is outside the row space.
template <class S>
RowVector<S> express_in_basis(const RowVector<S>& v, const FieldMatrix<S>& basis, const S& zero, const S& one) {
  if (v.cols() != basis.cols()) throw DimensionMismatch("vector length does not match basis width");
  const Eigen::Index k = basis.rows();
  FieldMatrix<S> r = basis;
  FieldMatrix<S> u = FieldMatrix<S>::Constant(k, k, zero);
  for (Eigen::Index i = 0; i < k; ++i) u(i, i) = one;
  auto pivots = detail::rref_in_place<S>(r, &u);

  // v = d * r with d read off the pivot columns, then c = d * u.
  RowVector<S> rest = v;
  RowVector<S> c = RowVector<S>::Constant(k, zero);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    S d = rest(pivots[i]);
    if (d.is_zero()) continue;
    for (Eigen::Index col = 0; col < rest.cols(); ++col) rest(col) = rest(col) - d * r(row, col);
    for (Eigen::Index j = 0; j < k; ++j) c(j) = c(j) + d * u(row, j);
  }
  for (Eigen::Index col = 0; col < rest.cols(); ++col) {
    if (!rest(col).is_zero()) throw NotInSpan();
  }
  return c;
}

template <class S>
bool is_zero_matrix(const FieldMatrix<S>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace ncips
