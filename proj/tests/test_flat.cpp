#include <doctest.h>

#include "polydisc/flat.hpp"
#include "support.hpp"

#include <random>

using namespace polydisc;

namespace {

AffineFlat plane_through(int d, const VecC& normal, Complex offset) {
  MatC n(1, d);
  n.row(0) = normal.transpose();
  VecC b(1);
  b(0) = offset;
  return AffineFlat(d, std::move(n), std::move(b));
}

}  // namespace

TEST_CASE("AffineFlat: shape checks and rank validation") {
  MatC n(2, 3);
  n.row(0) << Complex(1.0), Complex(0.0), Complex(0.0);
  n.row(1) << Complex(2.0), Complex(0.0), Complex(0.0);
  VecC b(2);
  b << Complex(0.0), Complex(0.0);
  CHECK_THROWS_AS(AffineFlat(3, n, b), std::invalid_argument);

  n.row(1) << Complex(0.0), Complex(1.0), Complex(0.0);
  const AffineFlat f(3, n, b);
  CHECK(f.ambient_dim() == 3);
  CHECK(f.codim() == 2);
  CHECK(f.dim() == 1);
  CHECK_FALSE(f.is_full_space());
  CHECK(AffineFlat(4).is_full_space());
  CHECK(AffineFlat(4).dim() == 4);
}

TEST_CASE("AffineFlat: residual, particular point, direction basis") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 3 + static_cast<int>(rng() % 4);
    const int codim = 1 + static_cast<int>(rng() % (d - 1));
    MatC n(codim, d);
    VecC b(codim);
    for (int i = 0; i < codim; ++i) {
      for (int c = 0; c < d; ++c) n(i, c) = testsup::rand_complex(rng);
      b(i) = testsup::rand_complex(rng);
    }
    const AffineFlat f(d, n, b);
    CHECK(f.dim() == d - codim);
    const VecC x0 = f.particular_point();
    CHECK(f.residual(x0) <= 1e-10);
    const MatC basis = f.direction_basis();
    CHECK(basis.cols() == f.dim());
    for (int k = 0; k < basis.cols(); ++k) {
      const VecC y = x0 + basis.col(k);
      CHECK(f.residual(y) <= 1e-9);
    }
    for (int s = 0; s < 4; ++s) CHECK(f.residual(f.sample_point(rng, 2.0)) <= 1e-9);
  }
}

TEST_CASE("flat_equal: same flat under different constraint presentations") {
  std::mt19937_64 rng(32);
  MatC n(2, 4);
  n.row(0) << Complex(1.0), Complex(1.0), Complex(0.0), Complex(0.0);
  n.row(1) << Complex(0.0), Complex(1.0), Complex(1.0), Complex(0.0);
  VecC b(2);
  b << Complex(1.0), Complex(-2.0);
  const AffineFlat f(4, n, b);

  // Mix the rows: same affine set.
  MatC m(2, 4);
  m.row(0) = n.row(0) + n.row(1);
  m.row(1) = n.row(1) * Complex(3.0);
  VecC c(2);
  c << b(0) + b(1), b(1) * Complex(3.0);
  const AffineFlat g(4, m, c);
  CHECK(flat_equal(f, g, rng));

  // Different offset: parallel but distinct.
  VecC c2 = b;
  c2(0) += Complex(0.5);
  const AffineFlat h(4, n, c2);
  CHECK_FALSE(flat_equal(f, h, rng));

  // Different dimension.
  const AffineFlat k = plane_through(4, VecC(n.row(0).transpose()), b(0));
  CHECK_FALSE(flat_equal(f, k, rng));
}

TEST_CASE("flat_intersection: stacked constraints, dependent rows dropped") {
  std::mt19937_64 rng(33);
  VecC n1(3), n2(3);
  n1 << Complex(1.0), Complex(0.0), Complex(1.0);
  n2 << Complex(0.0), Complex(1.0), Complex(-1.0);
  const AffineFlat a = plane_through(3, n1, Complex(2.0));
  const AffineFlat b = plane_through(3, n2, Complex(1.0));
  const AffineFlat ab = flat_intersection(a, b);
  CHECK(ab.dim() == 1);
  const VecC x = ab.sample_point(rng);
  CHECK(a.residual(x) <= 1e-9);
  CHECK(b.residual(x) <= 1e-9);

  // Intersecting a flat with itself keeps it unchanged.
  const AffineFlat aa = flat_intersection(a, a);
  CHECK(aa.dim() == a.dim());
  CHECK(flat_equal(aa, a, rng));
}

TEST_CASE("flat_distance: parallel planes at controlled offsets") {
  std::mt19937_64 rng(34);
  VecC n(3);
  n << Complex(0.0), Complex(0.0), Complex(1.0);  // unit normal: residual is offset
  const AffineFlat base = plane_through(3, n, Complex(0.0));
  double prev = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const AffineFlat off = plane_through(3, n, Complex(eps));
    const double dist = flat_distance(base, off, rng);
    CHECK(dist == doctest::Approx(eps).epsilon(1e-6));
    if (prev > 0.0) CHECK(dist < prev);
    prev = dist;
  }
}
