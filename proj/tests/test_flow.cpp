#include <doctest.h>

#include "polydisc/flow.hpp"
#include "support.hpp"

#include <random>

using namespace polydisc;
using testsup::coeff_distance;

namespace {

MonicPoly cubic(Complex b, Complex c, Complex d, Field f = Field::cplx) {
  VecC a(3);
  a << b, c, d;
  return MonicPoly(std::move(a), f);
}

}  // namespace

TEST_CASE("apply_flow: fixed cases and closed-form regressions") {
  // z^3 flows to (z-1)^3.
  const MonicPoly s = apply_flow(MonicPoly::power(3), Complex(1.0));
  CHECK(s.coeff(1) == Complex(-3.0));
  CHECK(s.coeff(2) == Complex(3.0));
  CHECK(s.coeff(3) == Complex(-1.0));

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 80; ++trial) {
    const Complex b = testsup::rand_complex(rng, 2.0);
    const Complex c = testsup::rand_complex(rng, 2.0);
    const Complex d = testsup::rand_complex(rng, 2.0);
    const Complex t = testsup::rand_complex(rng, 1.5);

    // Degree 2: (b - 2t, c - bt + t^2).
    VecC a2(2);
    a2 << b, c;
    const MonicPoly q2 = apply_flow(MonicPoly(a2), t);
    CHECK(std::abs(q2.coeff(1) - (b - 2.0 * t)) <= 1e-12);
    CHECK(std::abs(q2.coeff(2) - (c - b * t + t * t)) <= 1e-12);

    // Degree 3: (b - 3t, c - 2tb + 3t^2, d - tc + t^2 b - t^3).
    const MonicPoly q3 = apply_flow(cubic(b, c, d), t);
    CHECK(std::abs(q3.coeff(1) - (b - 3.0 * t)) <= 1e-12);
    CHECK(std::abs(q3.coeff(2) - (c - 2.0 * t * b + 3.0 * t * t)) <= 1e-11);
    CHECK(std::abs(q3.coeff(3) - (d - t * c + t * t * b - t * t * t)) <= 1e-11);
  }
}

TEST_CASE("apply_flow: group law") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 6);
    const MonicPoly p = testsup::rand_poly(rng, d, 1.5);
    const Complex s = testsup::rand_complex(rng);
    const Complex t = testsup::rand_complex(rng);
    CHECK(coeff_distance(apply_flow(apply_flow(p, s), t), apply_flow(p, s + t)) <= 1e-10);
  }
  const FlowMap phi{Complex(0.5, -0.25)};
  const MonicPoly p = MonicPoly::power(4);
  CHECK(coeff_distance(phi(p), apply_flow(p, phi.t)) == 0.0);
}

TEST_CASE("flow linear part: unit lower triangular, matches the shift") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 6);
    const Complex t = testsup::rand_complex(rng, 1.5);
    const MatC lin = flow_linear_part(d, t);
    for (int k = 0; k < d; ++k) {
      CHECK(lin(k, k) == Complex(1.0));
      for (int j = k + 1; j < d; ++j) CHECK(lin(k, j) == Complex(0.0));
    }
    CHECK(flow_linear_det(d, t) == Complex(1.0));

    // Affine decomposition: flow(P) = lin * a + flow(z^d).
    const MonicPoly p = testsup::rand_poly(rng, d, 1.5);
    const VecC via_matrix =
        lin * p.coefficients() + apply_flow(MonicPoly::power(d), t).coefficients();
    CHECK((via_matrix - apply_flow(p, t).coefficients()).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("check_flow_invariants: drift, determinant, partition") {
  std::mt19937_64 rng(74);
  for (int trial = 0; trial < 100; ++trial) {
    const MonicPoly p = testsup::rand_poly(rng, 3, 1.5);
    const Complex t = testsup::rand_complex(rng, 1.0);
    const auto rep = check_flow_invariants(p, t, 1e-8);
    CHECK(rep.discriminant_drift <= 1e-9);
    CHECK(rep.linear_det == Complex(1.0));
    CHECK(rep.mu_invariant);
  }
  // Roots translate rigidly: mu stays (2,1).
  const MonicPoly dbl = from_roots(RootConfig({{Complex(1.0), 2}, {Complex(2.0), 1}}));
  for (double t : {0.3, -1.7, 12.0}) {
    const auto rep = check_flow_invariants(dbl, Complex(t), 1e-6);
    CHECK(rep.mu_invariant);
    CHECK(rep.mu_before == Partition({2, 1}));
  }
}

TEST_CASE("reduce: flows to the zero-trace slice") {
  std::mt19937_64 rng(75);
  // Degree 2: reduced point (0, c - b^2/4).
  for (int trial = 0; trial < 50; ++trial) {
    const Complex b = testsup::rand_complex(rng, 2.0);
    const Complex c = testsup::rand_complex(rng, 2.0);
    VecC a(2);
    a << b, c;
    const auto red = reduce(MonicPoly(a));
    CHECK(red.reduced.coeff(1) == Complex(0.0));
    CHECK(std::abs(red.reduced.coeff(2) - (c - b * b / 4.0)) <= 1e-12);
    CHECK(std::abs(red.t_star - b / 2.0) <= 1e-15);
    // Round trip.
    CHECK(coeff_distance(apply_flow(red.reduced, -red.t_star), MonicPoly(a)) <= 1e-12);
  }

  // Already reduced: t* = 0 and the identity.
  VecC a(3);
  a << Complex(0.0), Complex(1.5), Complex(-2.0);
  const auto red = reduce(MonicPoly(a));
  CHECK(red.t_star == Complex(0.0));
  CHECK(coeff_distance(red.reduced, MonicPoly(a)) == 0.0);

  // Random cubics: a_1 vanishes and the roots sum to zero.
  for (int trial = 0; trial < 30; ++trial) {
    const MonicPoly p = testsup::rand_poly(rng, 3, 1.5);
    const auto r = reduce(p);
    CHECK(r.reduced.coeff(1) == Complex(0.0));
    const RootConfig reduced_roots = roots(r.reduced, 1e-8);
    Complex sum(0.0);
    for (const auto& e : reduced_roots.entries())
      sum += e.root * static_cast<double>(e.multiplicity);
    CHECK(std::abs(sum) <= 1e-7);
    CHECK(coeff_distance(apply_flow(r.reduced, -r.t_star), p) <=
          1e-10 * std::max(1.0, p.max_abs_coeff()));
  }
}

TEST_CASE("k_transform_d3: straightens the stratification") {
  std::mt19937_64 rng(76);
  // The triple-root curve lands on the b-axis.
  for (int trial = 0; trial < 30; ++trial) {
    const Complex u = testsup::rand_complex(rng, 1.5);
    const MonicPoly p = from_roots(RootConfig({{u, 3}}));
    const MonicPoly k = k_transform_d3(p);
    CHECK(std::abs(k.coeff(2)) <= 1e-10 * std::max(1.0, p.max_abs_coeff()));
    CHECK(std::abs(k.coeff(3)) <= 1e-10 * std::max(1.0, p.max_abs_coeff()));
  }

  // Inputs already in the slice are fixed.
  VecC a(3);
  a << Complex(0.0), Complex(-2.0), Complex(0.7);
  CHECK(coeff_distance(k_transform_d3(MonicPoly(a)), MonicPoly(a)) <= 1e-14);

  // The double-root surface maps onto the cylinder over the reduced cusp.
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = testsup::separated_points(rng, 2, 0.3, 1.5);
    const MonicPoly p = from_roots(RootConfig({{pts[0], 2}, {pts[1], 1}}));
    const MonicPoly k = k_transform_d3(p);
    const Complex cp = k.coeff(2), dp = k.coeff(3);
    const Complex cusp = 4.0 * cp * cp * cp + 27.0 * dp * dp;
    CHECK(std::abs(cusp) <= 1e-8 * std::max(1.0, std::pow(p.max_abs_coeff(), 3)));
  }

  // Closed form of the constructive map and its printed variant.
  for (int trial = 0; trial < 40; ++trial) {
    const Complex b = testsup::rand_complex(rng, 2.0);
    const Complex c = testsup::rand_complex(rng, 2.0);
    const Complex d = testsup::rand_complex(rng, 2.0);
    const MonicPoly k = k_transform_d3(cubic(b, c, d));
    CHECK(std::abs(k.coeff(1) - b) <= 1e-13);
    CHECK(std::abs(k.coeff(2) - (c - b * b / 3.0)) <= 1e-11);
    CHECK(std::abs(k.coeff(3) - (d - b * c / 3.0 + 2.0 * b * b * b / 27.0)) <= 1e-11);

    const auto rep = k_transform_report(cubic(b, c, d));
    const double expected_gap =
        std::max(std::abs(2.0 / 9.0 * b * b), std::abs(4.0 / 27.0 * b * b * b));
    CHECK(rep.mismatch == doctest::Approx(expected_gap).epsilon(1e-8));
  }
}

TEST_CASE("flow maps tangent flats onto translated tangent flats") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % d);
    const Complex u = testsup::rand_complex(rng, 1.2);
    const Complex t = testsup::rand_complex(rng, 1.2);
    const AffineFlat before = tangent_flat(u, d, k);
    const AffineFlat after = tangent_flat(u + t, d, k);
    for (int s = 0; s < 5; ++s) {
      const VecC x = before.sample_point(rng);
      const MonicPoly moved = apply_flow(MonicPoly(x), t);
      CHECK(after.residual(moved.coefficients()) <= 1e-8);
    }
  }
}
