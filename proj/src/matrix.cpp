#include "torspair/matrix.hpp"

#include "torspair/error.hpp"

namespace torspair {

Int det(const IntMat& m) {
  if (m.rows() != m.cols())
    throw Error("ShapeMismatch", "determinant of a non-square matrix");
  const Index n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index pivot = -1;
      for (Index r = k + 1; r < n; ++r) {
        if (a(r, k) != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) return 0;
      a.row(k).swap(a.row(pivot));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        // Exact division: standard Bareiss identity.
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

bool is_unimodular(const IntMat& m) {
  if (m.rows() != m.cols()) return false;
  Int d = det(m);
  return d == 1 || d == -1;
}

IntMat inverse_unimodular(const IntMat& m) {
  if (!is_unimodular(m))
    throw Error("NotUnimodular", "matrix has determinant other than +/-1");
  const Index n = m.rows();
  RatMat a = m.cast<Rat>();
  RatMat inv = RatMat::Identity(n, n);
  for (Index k = 0; k < n; ++k) {
    Index pivot = -1;
    for (Index r = k; r < n; ++r) {
      if (a(r, k) != 0) {
        pivot = r;
        break;
      }
    }
    a.row(k).swap(a.row(pivot));
    inv.row(k).swap(inv.row(pivot));
    Rat p = a(k, k);
    a.row(k) /= p;
    inv.row(k) /= p;
    for (Index r = 0; r < n; ++r) {
      if (r == k || a(r, k) == 0) continue;
      Rat f = a(r, k);
      a.row(r) -= f * a.row(k);
      inv.row(r) -= f * inv.row(k);
    }
  }
  IntMat out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const Rat& v = inv(i, j);
      if (denominator(v) != 1)
        throw Error("NotUnimodular", "inverse is not integral");
      out(i, j) = numerator(v);
    }
  return out;
}

IntMat matrix_power(const IntMat& m, unsigned long exp) {
  if (m.rows() != m.cols())
    throw Error("ShapeMismatch", "power of a non-square matrix");
  IntMat result = IntMat::Identity(m.rows(), m.rows());
  IntMat base = m;
  while (exp != 0) {
    if (exp & 1u) result = result * base;
    exp >>= 1u;
    if (exp != 0) base = base * base;
  }
  return result;
}

}  // namespace torspair
