#pragma once

#include "polydisc/poly.hpp"
#include "polydisc/roots.hpp"
#include "polydisc/strata.hpp"

#include <vector>

namespace polydisc {

/// Root-to-coefficient map: a_k = (-1)^k sigma_k(roots), evaluated by the
/// stable product recurrence in canonical summation order (permuting the
/// input gives bit-identical output).
inline MonicPoly viete_map(std::vector<Complex> roots, Field field = Field::cplx) {
  if (roots.empty()) throw std::invalid_argument("viete_map: at least one root required");
  return monic_from_dense(expand_from_roots(std::move(roots)), field);
}

/// Jacobi matrix of the Viete map: entry (k-1, i-1) is
/// (-1)^k sigma_{k-1}(roots with u_i removed).
inline MatC viete_jacobian(const std::vector<Complex>& roots) {
  const int d = static_cast<int>(roots.size());
  MatC jac(d, d);
  for (int i = 0; i < d; ++i) {
    // Elementary symmetric values of the d-1 remaining roots.
    VecC e = VecC::Zero(d);
    e(0) = Complex(1.0);
    int len = 1;
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      ++len;
      for (int k = len - 1; k >= 1; --k) e(k) = e(k) + roots[static_cast<size_t>(j)] * e(k - 1);
    }
    double sign = -1.0;
    for (int k = 1; k <= d; ++k) {
      jac(k - 1, i) = sign * e(k - 1);
      sign = -sign;
    }
  }
  return jac;
}

/// LU determinant of the Viete Jacobi matrix. Equals
/// jacobian_sign(d) * prod_{i<j} (u_i - u_j).
inline Complex viete_jacobian_det(const std::vector<Complex>& roots) {
  return Eigen::PartialPivLU<MatC>(viete_jacobian(roots)).determinant();
}

/// prod_{i<j} (u_i - u_j) in the order given.
inline Complex vandermonde_product(const std::vector<Complex>& roots) {
  Complex p(1.0);
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) p *= roots[i] - roots[j];
  return p;
}

/// Sign convention of the Viete Jacobian against the root-difference
/// product: the k-th coefficient row carries a factor (-1)^k.
inline double jacobian_sign(int d) {
  return (d * (d + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
}

/// Sylvester matrix of P and its derivative, partial-pivot LU determinant.
inline Complex resultant_p_pprime(const MonicPoly& p) {
  const int d = p.degree();
  const CPoly pd = p.dense();
  const CPoly dp = derivative(pd);
  const int n = 2 * d - 1;
  MatC syl = MatC::Zero(n, n);
  for (int r = 0; r < d - 1; ++r)
    for (int c = 0; c <= d; ++c) syl(r, r + c) = pd.coeffs()(c);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c <= d - 1; ++c) syl(d - 1 + r, r + c) = dp.coeffs()(c);
  return Eigen::PartialPivLU<MatC>(syl).determinant();
}

/// Discriminant normalized as the squared root-difference product:
/// Delta = (-1)^{d(d-1)/2} Res(P, P'). Vanishes iff P has a multiple root.
inline Complex discriminant(const MonicPoly& p) {
  const int d = p.degree();
  if (d < 2) throw std::invalid_argument("discriminant: degree must be >= 2");
  const double sign = (d * (d - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * resultant_p_pprime(p);
}

enum class CubicChamber { U3, U1, boundary };

inline const char* to_string(CubicChamber c) {
  switch (c) {
    case CubicChamber::U3: return "U3";
    case CubicChamber::U1: return "U1";
    default: return "boundary";
  }
}

/// Chamber of a real cubic: three real roots (Delta > 0), one real root
/// (Delta < 0), or on the discriminant surface (|Delta| within tolerance).
inline CubicChamber real_cubic_chamber(const MonicPoly& p, double chamber_tol = 1e-9) {
  if (p.degree() != 3) throw std::invalid_argument("real_cubic_chamber: degree must be 3");
  if (p.field() != Field::real)
    throw std::invalid_argument("real_cubic_chamber: real-field polynomial required");
  const double delta = discriminant(p).real();
  if (std::abs(delta) <= chamber_tol) return CubicChamber::boundary;
  return delta > 0.0 ? CubicChamber::U3 : CubicChamber::U1;
}

/// Image of the root-space slab {u_1 = ... = u_k = u_star} under the Viete
/// map: the flat of polynomials with u_star as a root of multiplicity >= k.
inline AffineFlat slab_image_flat(Complex u_star, int d, int k) {
  if (k < 1 || k > d) throw std::invalid_argument("slab_image_flat: k out of range");
  return tangent_flat(u_star, d, k);
}

}  // namespace polydisc
