#pragma once

#include "polydisc/poly.hpp"
#include "polydisc/roots.hpp"

#include <random>
#include <vector>

namespace polydisc {

/// Deterministic sampling helpers shared by the property suites and tests.
/// Everything is driven by an explicit engine; no global state.

inline Complex rand_complex(std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> uni(-radius, radius);
  const double re = uni(rng);
  const double im = uni(rng);
  return Complex(re, im);
}

inline double rand_real(std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> uni(-radius, radius);
  return uni(rng);
}

/// Distinct complex points with pairwise separation at least sep.
inline std::vector<Complex> separated_points(std::mt19937_64& rng, int count, double sep,
                                             double radius = 1.0) {
  std::vector<Complex> pts;
  int guard = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++guard > 100000) throw numerical_error("separated_points: sampling stalled");
    const Complex c = rand_complex(rng, radius);
    bool ok = true;
    for (Complex p : pts) ok = ok && std::abs(c - p) >= sep;
    if (ok) pts.push_back(c);
  }
  return pts;
}

inline MonicPoly rand_poly(std::mt19937_64& rng, int degree, double radius = 1.0) {
  VecC a(degree);
  for (int i = 0; i < degree; ++i) a(i) = rand_complex(rng, radius);
  return MonicPoly(std::move(a));
}

inline MonicPoly rand_real_poly(std::mt19937_64& rng, int degree, double radius = 1.0) {
  VecC a(degree);
  for (int i = 0; i < degree; ++i) a(i) = Complex(rand_real(rng, radius), 0.0);
  return MonicPoly(std::move(a), Field::real);
}

/// Random configuration with the given multiplicities and separated roots.
inline RootConfig rand_config(std::mt19937_64& rng, const std::vector<int>& mults, double sep,
                              double radius = 1.0) {
  const auto pts = separated_points(rng, static_cast<int>(mults.size()), sep, radius);
  std::vector<RootEntry> entries;
  for (size_t i = 0; i < mults.size(); ++i) entries.push_back({pts[i], mults[i]});
  return RootConfig(std::move(entries));
}

}  // namespace polydisc
