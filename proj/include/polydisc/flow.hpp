#pragma once

#include "polydisc/poly.hpp"
#include "polydisc/strata.hpp"
#include "polydisc/viete.hpp"

namespace polydisc {

/// The coefficient-space action of translating every root by +t: the
/// coefficients of P(z - t). One Taylor-shift code path for every degree;
/// the degree-2 and degree-3 closed forms are regression fixtures.
inline MonicPoly apply_flow(const MonicPoly& p, Complex t) { return shift(p, t); }

/// The shift action on coefficient space.
struct FlowMap {
  Complex t;
  MonicPoly operator()(const MonicPoly& p) const { return apply_flow(p, t); }
};

/// Linear part of the flow in the a-basis, assembled from binomial
/// coefficients: entry (k, j) is C(d-j, k-j) (-t)^{k-j} for j <= k
/// (1-based), zero above the diagonal. Unit lower triangular.
inline MatC flow_linear_part(int d, Complex t) {
  MatC m = MatC::Zero(d, d);
  for (int k = 1; k <= d; ++k)
    for (int j = 1; j <= k; ++j)
      m(k - 1, j - 1) = Complex(static_cast<double>(binomial(d - j, k - j))) * pow_int(-t, k - j);
  return m;
}

/// Determinant of the linear part, taken along the diagonal of the
/// symbolically assembled matrix: exactly one, no floating error.
inline Complex flow_linear_det(int d, Complex t) {
  const MatC m = flow_linear_part(d, t);
  Complex det(1.0);
  for (int k = 0; k < d; ++k) det *= m(k, k);
  return det;
}

struct FlowInvariantReport {
  double discriminant_drift = 0.0;  // |Delta(flowed) - Delta(P)| / max(1, |Delta(P)|)
  Complex linear_det{1.0, 0.0};     // exactly 1
  bool mu_invariant = false;
  Partition mu_before;
  Partition mu_after;
};

/// Checks the three conserved quantities of the flow at (P, t): the
/// discriminant, the volume (unit determinant of the linear part), and the
/// multiplicity partition.
inline FlowInvariantReport check_flow_invariants(const MonicPoly& p, Complex t, double tol) {
  if (p.degree() < 2)
    throw std::invalid_argument("check_flow_invariants: degree must be >= 2");
  FlowInvariantReport rep;
  const MonicPoly q = apply_flow(p, t);
  const Complex d0 = discriminant(p);
  const Complex d1 = discriminant(q);
  rep.discriminant_drift = std::abs(d1 - d0) / std::max(1.0, std::abs(d0));
  rep.linear_det = flow_linear_det(p.degree(), t);
  // Compare partitions under one field convention even when a complex t
  // lifts a real-field polynomial into complex mode.
  const MonicPoly p_cmp =
      q.field() == p.field() ? p : MonicPoly(p.coefficients(), q.field());
  rep.mu_before = mu_of(p_cmp, tol).mu;
  rep.mu_after = mu_of(q, tol).mu;
  rep.mu_invariant = rep.mu_before == rep.mu_after;
  return rep;
}

struct ReduceResult {
  MonicPoly reduced;
  Complex t_star;
};

/// Flows P along its orbit to the slice {a_1 = 0} of reduced polynomials.
/// The orbit meets the slice at flow time t_star = a_1 / d; the round trip
/// apply_flow(reduced, -t_star) recovers P.
inline ReduceResult reduce(const MonicPoly& p) {
  const Complex t_star = p.coeff(1) / static_cast<double>(p.degree());
  MonicPoly red = apply_flow(p, t_star);
  // The leading coefficient cancellation is exact in theory; pin it to the
  // slice so downstream slice logic sees a_1 == 0.
  VecC a = red.coefficients();
  a(0) = Complex(0.0);
  return {MonicPoly(std::move(a), red.field()), t_star};
}

/// Straightening map for cubics built from the flow: move P to the reduced
/// slice, then restore the b-coordinate. Maps the double-root surface onto
/// the cylinder over the reduced cusp and the triple-root curve onto the
/// b-axis. Closed form (b, c - b^2/3, d - bc/3 + 2b^3/27).
inline MonicPoly k_transform_d3(const MonicPoly& p) {
  if (p.degree() != 3) throw std::invalid_argument("k_transform_d3: degree must be 3");
  const ReduceResult r = reduce(p);
  VecC a = r.reduced.coefficients();
  a(0) = p.coeff(1);
  return MonicPoly(std::move(a), p.field());
}

/// The straightening map with the printed closed-form coefficients
/// (b, c - 5b^2/9, d - bc/3 - 2b^3/27). Disagrees with the constructive
/// flow-to-slice map; kept for the discrepancy report.
inline MonicPoly k_transform_d3_printed(const MonicPoly& p) {
  if (p.degree() != 3) throw std::invalid_argument("k_transform_d3_printed: degree must be 3");
  const Complex b = p.coeff(1), c = p.coeff(2), d = p.coeff(3);
  VecC a(3);
  a(0) = b;
  a(1) = c - 5.0 / 9.0 * b * b;
  a(2) = d - b * c / 3.0 - 2.0 / 27.0 * b * b * b;
  return MonicPoly(std::move(a), p.field());
}

struct KTransformReport {
  MonicPoly constructive;
  MonicPoly printed;
  double mismatch;  // max coefficient difference between the two maps
};

/// Evaluates both versions of the cubic straightening map and reports their
/// component-wise mismatch (2b^2/9 in the second slot, 4b^3/27 in the third).
inline KTransformReport k_transform_report(const MonicPoly& p) {
  MonicPoly c = k_transform_d3(p);
  MonicPoly q = k_transform_d3_printed(p);
  const double mismatch = (c.coefficients() - q.coefficients()).cwiseAbs().maxCoeff();
  return {std::move(c), std::move(q), mismatch};
}

}  // namespace polydisc
