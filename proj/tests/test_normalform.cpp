#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "torspair/normalform.hpp"

using namespace torspair;
using test::make;
using test::mat;
using test::random_matrix;
using test::vec;

namespace {

void check_decomposition(const IntMat& input, const SmithDecomposition& s) {
  const Index rows = input.rows(), cols = input.cols();
  IntMat diag = IntMat::Zero(rows, cols);
  for (Index i = 0; i < static_cast<Index>(s.diagonal.size()); ++i)
    diag(i, i) = s.diagonal[static_cast<std::size_t>(i)];
  CHECK(same_matrix(IntMat(s.left * input * s.right), diag));
  CHECK(same_matrix(IntMat(s.left * s.left_inv),
                    IntMat(IntMat::Identity(rows, rows))));
  CHECK(same_matrix(IntMat(s.right * s.right_inv),
                    IntMat(IntMat::Identity(cols, cols))));
  bool zero_seen = false;
  for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
    const Int& d = s.diagonal[i];
    if (d == 0) {
      zero_seen = true;
      continue;
    }
    CHECK_FALSE(zero_seen);
    CHECK(d > 0);
    if (i + 1 < s.diagonal.size() && s.diagonal[i + 1] != 0)
      CHECK(s.diagonal[i + 1] % d == 0);
  }
}

}  // namespace

TEST_CASE("smith_form on worked examples") {
  auto s = smith_form(mat({{1, 2}}));
  REQUIRE(s.diagonal.size() == 1);
  CHECK(s.diagonal[0] == 1);
  check_decomposition(mat({{1, 2}}), s);

  s = smith_form(mat({{0, 0}, {0, 0}}));
  CHECK(s.diagonal == std::vector<Int>{0, 0});
  CHECK(s.rank() == 0);

  s = smith_form(mat({{4, 0}, {0, 6}}));
  CHECK(s.diagonal == std::vector<Int>{2, 12});
  check_decomposition(mat({{4, 0}, {0, 6}}), s);

  s = smith_form(mat({{6, 4}, {4, 6}}));
  CHECK(s.diagonal == std::vector<Int>{2, 10});

  s = smith_form(mat({{2, 4}, {4, 8}}));
  CHECK(s.diagonal == std::vector<Int>{2, 0});
  CHECK(s.rank() == 1);

  s = smith_form(IntMat(0, 0));
  CHECK(s.diagonal.empty());
}

TEST_CASE("smith_form properties on random matrices") {
  Rng rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    Index rows = static_cast<Index>(rng.range(1, 6));
    Index cols = static_cast<Index>(rng.range(1, 6));
    IntMat input = random_matrix(rows, cols, rng, 9);
    auto s = smith_form(input);
    check_decomposition(input, s);
  }
}

TEST_CASE("integer_kernel is saturated") {
  IntMat k = integer_kernel(mat({{2, 4}}));
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) * 2 + k(1, 0) * 4 == 0);
  CHECK(gcd(k(0, 0), k(1, 0)) == 1);

  k = integer_kernel(mat({{1, 2}, {2, 4}}));
  REQUIRE(k.cols() == 1);
  CHECK(gcd(k(0, 0), k(1, 0)) == 1);

  CHECK(integer_kernel(mat({{1, 0}, {0, 1}})).cols() == 0);
  CHECK(integer_kernel(IntMat(IntMat::Zero(2, 2))).cols() == 2);
  CHECK(integer_kernel(IntMat(IntMat::Zero(2, 2))).rows() == 2);

  // A wide map whose kernel needs the columns beyond min(rows, cols).
  k = integer_kernel(mat({{1, 2, 3}}));
  CHECK(k.cols() == 2);
  CHECK(is_zero_matrix(IntMat(mat({{1, 2, 3}}) * k)));
  CHECK(smith_form(k).diagonal == std::vector<Int>{1, 1});
}

TEST_CASE("integer_kernel of random singular maps") {
  Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    Index rows = static_cast<Index>(rng.range(1, 5));
    Index cols = static_cast<Index>(rng.range(1, 5));
    IntMat input = random_matrix(rows, cols, rng, 5);
    IntMat k = integer_kernel(input);
    CHECK(is_zero_matrix(IntMat(input * k)));
    if (k.cols() > 0) {
      auto s = smith_form(k);
      for (const Int& d : s.diagonal) CHECK(d == 1);  // saturated
    }
    CHECK(k.cols() + smith_form(input).rank() == cols);
  }
}

TEST_CASE("coinvariants of the hyperbolic plane") {
  auto u_minus = make(2, {{0, 1}, {1, 0}}, {{-1, 0}, {0, -1}});
  auto d = coinvariants(u_minus);
  CHECK(d.free_rank == 0);
  CHECK(d.torsion_exponents == std::vector<long>{1, 1});
  CHECK(d.torsion_count() == 2);
  REQUIRE(d.generator_lifts.size() == 2);

  auto u_swap = make(2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
  auto ds = coinvariants(u_swap);
  CHECK(ds.free_rank == 1);
  CHECK(ds.torsion_exponents.empty());

  // At l = 3 the 2-group coker(2I) is invisible.
  auto u_minus3 = make(3, {{0, 1}, {1, 0}}, {{-1, 0}, {0, -1}});
  auto d3 = coinvariants(u_minus3);
  CHECK(d3.free_rank == 0);
  CHECK(d3.torsion_exponents.empty());
}

TEST_CASE("coinvariants of a rotation") {
  auto rot = make(2, {{1, 0}, {0, 1}}, {{0, -1}, {1, 0}});
  auto d = coinvariants(rot);
  CHECK(d.free_rank == 0);
  CHECK(d.torsion_exponents == std::vector<long>{1});  // coker has order 2
  REQUIRE(d.generator_lifts.size() == 1);
}

TEST_CASE("generator lifts have the stated order") {
  for (auto lattice :
       {make(2, {{0, 1}, {1, 0}}, {{-1, 0}, {0, -1}}),
        make(2, {{1, 0}, {0, 1}}, {{0, -1}, {1, 0}}),
        make(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
             {{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}})}) {
    auto d = coinvariants(lattice);
    for (Index i = 0; i < d.torsion_count(); ++i) {
      long m = d.torsion_exponents[static_cast<std::size_t>(i)];
      const IntVec& t = d.generator_lifts[static_cast<std::size_t>(i)];
      CHECK_NOTHROW(solve_torsion_witness(lattice, t, m));
      CHECK_THROWS_AS(solve_torsion_witness(lattice, t, m - 1), Error);
    }
  }
}

TEST_CASE("torsion witnesses solve the defining equation exactly") {
  auto lattice = make(2, {{0, 1}, {1, 0}}, {{-1, 0}, {0, -1}});
  auto d = coinvariants(lattice);
  for (Index i = 0; i < d.torsion_count(); ++i) {
    long m = d.torsion_exponents[static_cast<std::size_t>(i)];
    const IntVec& t = d.generator_lifts[static_cast<std::size_t>(i)];
    auto w = solve_torsion_witness(d, t, m);
    CHECK(w.exponent == m);
    RatVec h(lattice.rank());
    for (Index j = 0; j < lattice.rank(); ++j)
      h(j) = w.scaled[static_cast<std::size_t>(j)].value();
    IntMat one_minus_s =
        IntMat(IntMat::Identity(lattice.rank(), lattice.rank())) -
        lattice.isometry;
    RatVec lhs = one_minus_s.cast<Rat>() * h;
    RatVec rhs = t.cast<Rat>() * Rat(int_pow(Int(2), static_cast<unsigned long>(m)));
    CHECK((lhs.array() == rhs.array()).all());
  }
}

TEST_CASE("solve_torsion_witness rejects non-torsion classes") {
  auto u_swap = make(2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(solve_torsion_witness(u_swap, vec({1, 0}), 5), Error);
  try {
    solve_torsion_witness(u_swap, vec({1, 0}), 5);
  } catch (const Error& e) {
    CHECK(e.code() == "NotTorsion");
  }
  // (1, 1) is fixed, hence zero in the free quotient only if it lies in the
  // image; here it generates the fixed line, not the image.
  CHECK_THROWS_AS(solve_torsion_witness(u_swap, vec({1, 1}), 3), Error);
  // (1, -1) = (I - S) e1 is killed at exponent 0 already.
  CHECK_NOTHROW(solve_torsion_witness(u_swap, vec({1, -1}), 0));
}

TEST_CASE("fixed_sublattice and orthogonal_complement") {
  auto u_swap = make(2, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
  IntMat fixed = fixed_sublattice(u_swap);
  REQUIRE(fixed.cols() == 1);
  CHECK(same_matrix(IntMat(u_swap.isometry * fixed), fixed));
  CHECK(gcd(fixed(0, 0), fixed(1, 0)) == 1);
  CHECK(fixed(0, 0) == fixed(1, 0));

  IntMat comp = orthogonal_complement(u_swap, fixed);
  REQUIRE(comp.cols() == 1);
  CHECK(evaluate_form(u_swap, IntVec(fixed.col(0)), IntVec(comp.col(0))) == 0);
  CHECK(comp(0, 0) == -comp(1, 0));

  auto u_minus = make(2, {{0, 1}, {1, 0}}, {{-1, 0}, {0, -1}});
  CHECK(fixed_sublattice(u_minus).cols() == 0);
  CHECK(orthogonal_complement(u_minus, fixed_sublattice(u_minus)).cols() == 2);
}
