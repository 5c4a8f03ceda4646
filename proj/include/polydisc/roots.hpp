#pragma once

#include "polydisc/poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace polydisc {

struct RootEntry {
  Complex root;
  int multiplicity = 1;
};

/// Distinct roots with positive multiplicities, canonically ordered by
/// (re, im). An effective divisor on the affine line.
class RootConfig {
 public:
  RootConfig() = default;
  explicit RootConfig(std::vector<RootEntry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
      if (e.multiplicity < 1)
        throw std::invalid_argument("RootConfig: multiplicity must be positive");
      if (!is_finite(e.root)) throw std::invalid_argument("RootConfig: non-finite root");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const RootEntry& a, const RootEntry& b) { return lex_less(a.root, b.root); });
  }

  const std::vector<RootEntry>& entries() const { return entries_; }
  int distinct_count() const { return static_cast<int>(entries_.size()); }

  int total_multiplicity() const {
    int s = 0;
    for (const auto& e : entries_) s += e.multiplicity;
    return s;
  }

  /// Full root multiset in canonical order.
  std::vector<Complex> expand() const {
    std::vector<Complex> out;
    for (const auto& e : entries_)
      out.insert(out.end(), e.multiplicity, e.root);
    return out;
  }

  /// Multiplicities in non-increasing order.
  std::vector<int> multiplicities_desc() const {
    std::vector<int> m;
    for (const auto& e : entries_) m.push_back(e.multiplicity);
    std::sort(m.begin(), m.end(), std::greater<int>());
    return m;
  }

  /// Entries whose root lies on the real line (imaginary part exactly zero
  /// after real-field symmetrization).
  std::vector<RootEntry> real_entries() const {
    std::vector<RootEntry> out;
    for (const auto& e : entries_)
      if (e.root.imag() == 0.0) out.push_back(e);
    return out;
  }

 private:
  std::vector<RootEntry> entries_;
};

/// Expansion of prod_i (z - u_i)^{mu_i}; the Viete map on the root multiset.
inline MonicPoly from_roots(const RootConfig& rc, Field field = Field::cplx) {
  if (rc.total_multiplicity() < 1)
    throw std::invalid_argument("from_roots: empty configuration");
  return monic_from_dense(expand_from_roots(rc.expand()), field);
}

namespace detail {

/// Backward-stable evaluation-noise scale at z: sum |a_k| |z|^{d-k}.
inline double eval_noise_scale(const CPoly& dense, Complex z) {
  double noise = 0.0;
  double zp = 1.0;
  const double az = std::abs(z);
  for (int k = dense.degree(); k >= 0; --k) {
    noise += std::abs(dense.coeffs()(k)) * zp;
    zp *= az;
  }
  return noise;
}

/// Simultaneous Weierstrass (Durand-Kerner) iteration. Deterministic initial
/// guesses on a circle of radius 1 + |P|_inf, rotated by a fixed offset to
/// break real-axis symmetry. Iterates until every correction reaches the
/// rounding floor or the iteration cap; near multiple roots the corrections
/// stagnate at the attainable scatter, so acceptance is judged afterwards by
/// the backward-stable residual, not by the step size.
inline std::vector<Complex> durand_kerner(const MonicPoly& p) {
  const int d = p.degree();
  const CPoly dense = p.dense();
  const double radius = 1.0 + p.max_abs_coeff();
  constexpr int kMaxIter = 500;
  constexpr double kStepTol = 1e-14;
  constexpr double kEps = 2.22e-16;

  constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::vector<Complex> z(d);
  for (int i = 0; i < d; ++i) {
    const double angle = kTwoPi * i / d + 0.4;
    z[i] = radius * Complex(std::cos(angle), std::sin(angle));
  }

  std::vector<double> last_step(d, radius);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double max_step = 0.0;
    for (int i = 0; i < d; ++i) {
      Complex denom(1.0);
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (denom == Complex(0.0)) {
        z[i] += Complex(1e-12 * radius, 1e-12 * radius);
        last_step[i] = radius;
        max_step = radius;
        continue;
      }
      const Complex step = dense(z[i]) / denom;
      z[i] -= step;
      last_step[i] = std::abs(step) / (1.0 + std::abs(z[i]));
      max_step = std::max(max_step, last_step[i]);
    }
    if (max_step <= kStepTol) break;
  }

  // Non-convergence detection, not an accuracy claim: a root is acceptable
  // when its correction reached the rounding floor (forward criterion) or
  // its residual sits at the evaluation-noise floor (backward criterion; the
  // attainable state near multiple roots, where corrections keep jittering).
  for (int i = 0; i < d; ++i) {
    const bool step_ok = last_step[i] <= 1e-10;
    const bool residual_ok =
        std::abs(dense(z[i])) <= 1e6 * d * kEps * eval_noise_scale(dense, z[i]);
    if (!step_ok && !residual_ok)
      throw numerical_error("durand_kerner: iteration failed to converge");
  }
  return z;
}

/// Refine a multiplicity-m cluster center: the root is simple for the
/// (m-1)-st derivative, so plain Newton restores full accuracy from the
/// jittering cluster mean. Falls back to the mean if the iteration drifts
/// outside the cluster's neighbourhood.
inline Complex polish_center(const CPoly& dense, Complex mean, int multiplicity,
                             double trust_radius) {
  const CPoly target = derivative(dense, multiplicity - 1);
  const CPoly slope = derivative(dense, multiplicity);
  Complex z = mean;
  for (int iter = 0; iter < 50; ++iter) {
    const Complex s = slope(z);
    if (s == Complex(0.0)) break;
    const Complex step = target(z) / s;
    z -= step;
    if (std::abs(z - mean) > trust_radius) return mean;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

/// Pair conjugate roots of a real polynomial and average them so that the
/// returned multiset is exactly symmetric; roots within `band` of the real
/// axis are snapped onto it.
inline void symmetrize_real(std::vector<Complex>& z, double band) {
  std::vector<int> pos, neg;
  for (int i = 0; i < static_cast<int>(z.size()); ++i) {
    if (std::abs(z[i].imag()) <= band) {
      z[i].imag(0.0);
    } else if (z[i].imag() > 0.0) {
      pos.push_back(i);
    } else {
      neg.push_back(i);
    }
  }
  std::vector<bool> used(z.size(), false);
  for (int i : pos) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j : neg) {
      if (used[j]) continue;
      const double dist = std::abs(z[i] - std::conj(z[j]));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best < 0) continue;
    used[best] = true;
    const Complex avg = 0.5 * (z[i] + std::conj(z[best]));
    z[i] = avg;
    z[best] = std::conj(avg);
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Single-linkage clustering of a root multiset at the given absolute radius.
/// Cluster centers are the means of their members; multiplicity is the
/// cluster size.
inline RootConfig cluster_roots(const std::vector<Complex>& z, double radius) {
  const int n = static_cast<int>(z.size());
  detail::UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) <= radius) uf.unite(i, j);

  std::vector<RootEntry> entries;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    const int r = uf.find(i);
    if (seen[r]) continue;
    seen[r] = true;
    Complex sum(0.0);
    int count = 0;
    bool on_axis = true;
    for (int j = 0; j < n; ++j) {
      if (uf.find(j) != r) continue;
      sum += z[j];
      ++count;
      on_axis = on_axis && z[j].imag() == 0.0;
    }
    Complex center = sum / static_cast<double>(count);
    if (on_axis) center.imag(0.0);
    entries.push_back({center, count});
  }
  return RootConfig(std::move(entries));
}

/// All roots of P with multiplicities detected by single-linkage clustering
/// at relative radius tol * max(1, |P|_inf). In real-field mode the computed
/// roots are conjugate-symmetrized before clustering, so real roots carry an
/// exactly zero imaginary part. Multiple-root cluster centers are polished
/// by Newton on the (m-1)-st derivative; the raw mean jitters at the
/// evaluation-noise floor, which is far too coarse for the downstream
/// tangency identities.
inline RootConfig roots(const MonicPoly& p, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("roots: tol must be positive");
  std::vector<Complex> z = detail::durand_kerner(p);
  const double radius = tol * std::max(1.0, p.max_abs_coeff());
  if (p.field() == Field::real) detail::symmetrize_real(z, radius);
  RootConfig rc = cluster_roots(z, radius);
  if (rc.total_multiplicity() != p.degree())
    throw numerical_error("roots: multiplicities do not sum to the degree");

  const CPoly dense = p.dense();
  std::vector<RootEntry> polished;
  for (const auto& e : rc.entries()) {
    if (e.multiplicity == 1) {
      polished.push_back(e);
      continue;
    }
    double nearest = 0.01 * (1.0 + std::abs(e.root));
    for (const auto& other : rc.entries())
      if (&other != &e)
        nearest = std::min(nearest, 0.25 * std::abs(e.root - other.root));
    Complex center =
        detail::polish_center(dense, e.root, e.multiplicity, std::max(nearest, 8.0 * radius));
    // Real-field clusters on the axis stay on it (real Newton arithmetic);
    // snap any residual dust all the same.
    if (p.field() == Field::real && e.root.imag() == 0.0) center.imag(0.0);
    polished.push_back({center, e.multiplicity});
  }
  return RootConfig(std::move(polished));
}

}  // namespace polydisc
