// Dense exact-arithmetic matrix aliases and free functions.
#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include "torspair/numeric.hpp"

namespace torspair {

using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMat = DenseMatrix<Int>;
using IntVec = DenseVector<Int>;
using RatMat = DenseMatrix<Rat>;
using RatVec = DenseVector<Rat>;

template <typename DerivedA, typename DerivedB>
bool same_matrix(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a.derived().array() == b.derived().array()).all();
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return (a.derived().array() == Scalar(0)).all();
}

// Exact determinant by fraction-free (Bareiss) elimination. Empty matrix
// has determinant 1.
Int det(const IntMat& m);

template <typename Derived>
Int det(const Eigen::MatrixBase<Derived>& m) {
  return det(IntMat(m.derived()));
}

bool is_unimodular(const IntMat& m);

// Exact integer inverse of a unimodular matrix. Throws Error("NotUnimodular").
IntMat inverse_unimodular(const IntMat& m);

IntMat matrix_power(const IntMat& m, unsigned long exp);

}  // namespace torspair
