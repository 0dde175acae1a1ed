#include "torspair/lattice.hpp"

#include <utility>

namespace torspair {

LatticeWithIsometry validate(const Int& l, IntMat gram, IntMat isometry,
                             std::string name) {
  LPrime prime(l);  // throws NotPrime
  if (gram.rows() != gram.cols())
    throw Error("NotSymmetric", "Gram matrix is not square");
  if (!same_matrix(gram, gram.transpose()))
    throw Error("NotSymmetric", "Gram matrix differs from its transpose");
  Int gram_det = det(gram);
  if (gram_det == 0 || gram_det % l == 0)
    throw Error("NotPerfectAtL",
                "det(G) = " + gram_det.str() + " is not a unit at l = " + l.str());
  if (isometry.rows() != gram.rows() || isometry.cols() != gram.cols())
    throw Error("NotIsometry", "isometry size does not match the Gram matrix");
  if (!same_matrix(isometry.transpose() * gram * isometry, gram))
    throw Error("NotIsometry", "S^T G S differs from G");
  Int iso_det = det(isometry);
  if (iso_det == 0 || iso_det % l == 0)
    throw Error("NotInvertibleAtL",
                "det(S) = " + iso_det.str() + " is not a unit at l = " + l.str());
  return LatticeWithIsometry{std::move(prime), std::move(gram),
                             std::move(isometry), std::move(name)};
}

Int evaluate_form(const LatticeWithIsometry& lattice, const IntVec& x,
                  const IntVec& y) {
  if (x.size() != lattice.rank() || y.size() != lattice.rank())
    throw Error("ShapeMismatch", "vector length does not match the rank");
  return x.dot(lattice.gram * y);
}

LatticeWithIsometry direct_sum(const LatticeWithIsometry& a,
                               const LatticeWithIsometry& b) {
  if (!(a.prime == b.prime))
    throw Error("WrongPrime", "direct sum of lattices at different primes");
  const Index n = a.rank(), m = b.rank();
  IntMat gram = IntMat::Zero(n + m, n + m);
  IntMat isometry = IntMat::Zero(n + m, n + m);
  gram.topLeftCorner(n, n) = a.gram;
  gram.bottomRightCorner(m, m) = b.gram;
  isometry.topLeftCorner(n, n) = a.isometry;
  isometry.bottomRightCorner(m, m) = b.isometry;
  std::string name;
  if (!a.name.empty() || !b.name.empty()) name = a.name + "+" + b.name;
  return LatticeWithIsometry{a.prime, std::move(gram), std::move(isometry),
                             std::move(name)};
}

LatticeWithIsometry base_change(const LatticeWithIsometry& lattice,
                                const IntMat& transform) {
  if (transform.rows() != lattice.rank() || transform.cols() != lattice.rank())
    throw Error("ShapeMismatch", "base change size does not match the rank");
  IntMat inverse = inverse_unimodular(transform);  // throws NotUnimodular
  IntMat gram = transform.transpose() * lattice.gram * transform;
  IntMat isometry = inverse * lattice.isometry * transform;
  return LatticeWithIsometry{lattice.prime, std::move(gram), std::move(isometry),
                             lattice.name};
}

}  // namespace torspair
