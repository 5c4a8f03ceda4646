#pragma once

#include "polydisc/poly.hpp"
#include "polydisc/roots.hpp"
#include "polydisc/sampling.hpp"

#include <random>
#include <vector>

namespace testsup {

using polydisc::Complex;
using polydisc::CPoly;
using polydisc::MonicPoly;
using polydisc::RootConfig;
using polydisc::RootEntry;
using polydisc::VecC;

using polydisc::rand_complex;
using polydisc::rand_config;
using polydisc::rand_poly;
using polydisc::rand_real;
using polydisc::rand_real_poly;
using polydisc::separated_points;

/// Term-by-term power-sum evaluation; the naive oracle for Horner.
inline Complex eval_naive(const CPoly& p, Complex z) {
  Complex acc(0.0);
  const int d = p.degree();
  for (int k = 0; k <= d; ++k) {
    Complex zp(1.0);
    for (int i = 0; i < k; ++i) zp *= z;
    acc += p.coeff_of_power(k) * zp;
  }
  return acc;
}

/// Central finite difference of p at z; the derivative oracle.
inline Complex derivative_fd(const CPoly& p, Complex z, double h = 1e-6) {
  return (p(z + Complex(h)) - p(z - Complex(h))) / Complex(2.0 * h);
}

inline double coeff_distance(const CPoly& a, const CPoly& b) {
  return (a - b).max_abs_coeff();
}

inline double coeff_distance(const MonicPoly& a, const MonicPoly& b) {
  return (a.coefficients() - b.coefficients()).cwiseAbs().maxCoeff();
}

}  // namespace testsup
