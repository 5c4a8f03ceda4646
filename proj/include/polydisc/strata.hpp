#pragma once

#include "polydisc/flat.hpp"
#include "polydisc/partition.hpp"
#include "polydisc/poly.hpp"
#include "polydisc/roots.hpp"

#include <functional>
#include <vector>

namespace polydisc {

/// Flat of all monic degree-d polynomials with root u of multiplicity >= k:
/// constraint j has normal n^{(j)}(u) and offset -(u^d)^{(j)}, 0 <= j < k.
/// Dimension d - k. k == 0 gives the full space.
inline AffineFlat tangent_flat(Complex u, int d, int k) {
  if (k < 0 || k > d) throw std::invalid_argument("tangent_flat: k out of range");
  if (k == 0) return AffineFlat(d);
  MatC normals(k, d);
  VecC offsets(k);
  for (int j = 0; j < k; ++j) {
    normals.row(j) = normal_vector(u, d, j).transpose();
    offsets(j) = -Complex(falling_factorial(d, j)) * pow_int(u, d - j);
  }
  return AffineFlat(d, std::move(normals), std::move(offsets));
}

/// Coefficient point of (z - u)^d: a_k = (-1)^k C(d,k) u^k.
inline VecC repeated_root_point(Complex u, int d) {
  VecC a(d);
  double sign = -1.0;
  for (int k = 1; k <= d; ++k) {
    a(k - 1) = sign * Complex(static_cast<double>(binomial(d, k))) * pow_int(u, k);
    sign = -sign;
  }
  return a;
}

/// m-th osculating flat of the maximal-multiplicity curve u -> (z - u)^d at
/// its point over u, in constraint form: the d - m normals n^{(j)}(u),
/// 0 <= j <= d-m-1, through that point. As an affine set it equals
/// tangent_flat(u, d, d - m).
inline AffineFlat osculating_flat(Complex u, int d, int m) {
  if (m < 1 || m > d - 1) throw std::invalid_argument("osculating_flat: order out of range");
  const VecC point = repeated_root_point(u, d);
  const int rows = d - m;
  MatC normals(rows, d);
  VecC offsets(rows);
  for (int j = 0; j < rows; ++j) {
    const VecC n = normal_vector(u, d, j);
    normals.row(j) = n.transpose();
    offsets(j) = dot_bilinear(n, point);
  }
  return AffineFlat(d, std::move(normals), std::move(offsets));
}

namespace detail {

inline long long falling_ll(int n, int k) {
  if (k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

inline __int128 ipow_i128(long long base, int e) {
  __int128 r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline std::vector<RootEntry> visible_entries(const RootConfig& rc, Field field) {
  if (field == Field::cplx) return rc.entries();
  return rc.real_entries();
}

}  // namespace detail

/// Exact integer dot product of the q-th derivative of the curve point
/// (z - u)^d with the p-th derivative of the normal vector, at integer u.
/// Vanishes whenever p + q < d (and also for p + q > d).
inline long long osculating_dot_exact(long long u, int d, int p, int q) {
  __int128 acc = 0;
  for (int k = 1; k <= d; ++k) {
    if (k < q || d - k < p) continue;
    const __int128 kap = (k % 2 == 0 ? 1 : -1) *
                         static_cast<__int128>(binomial(d, k)) *
                         detail::falling_ll(k, q) * detail::ipow_i128(u, k - q);
    const __int128 nrm =
        static_cast<__int128>(detail::falling_ll(d - k, p)) * detail::ipow_i128(u, d - k - p);
    acc += kap * nrm;
  }
  const auto lo = static_cast<long long>(acc);
  if (static_cast<__int128>(lo) != acc)
    throw std::overflow_error("osculating_dot_exact: value exceeds 64 bits");
  return lo;
}

struct Stratification {
  Partition mu;
  RootConfig roots;
};

/// Root multiplicities of P as a partition, together with the clustered
/// configuration. In real-field mode mu covers only the roots on the real
/// line; the configuration always lists every cluster.
inline Stratification mu_of(const MonicPoly& p, double tol) {
  RootConfig rc = roots(p, tol);
  std::vector<int> mults;
  for (const auto& e : detail::visible_entries(rc, p.field()))
    mults.push_back(e.multiplicity);
  return {Partition(std::move(mults)), std::move(rc)};
}

struct DkMembership {
  int k = 0;
  bool in_closed = false;  // P in D_{d,k}:  max part of mu >= k
  bool in_open = false;    // P in D_{d,k} degree-exact stratum: max part == k
};

struct StratumLabel {
  Partition mu;
  std::vector<DkMembership> memberships;
};

inline StratumLabel stratum_label(const Partition& mu, int d) {
  StratumLabel out{mu, {}};
  for (int k = 1; k <= d; ++k)
    out.memberships.push_back({k, mu.max_part() >= k, mu.max_part() == k});
  return out;
}

struct TangentSpace {
  AffineFlat flat;
  CPoly divisor;           // prod (z - u_i)^{mu_i - 1}, monic
  bool full_space = false; // all roots simple: the flat is the whole space
  bool ill_conditioned = false;
};

/// Tangent space of the multiplicity stratum through the polynomial with the
/// given root configuration: all monic polynomials divisible by
/// prod (z - u_i)^{mu_i - 1}. Dimension equals the number of distinct roots.
inline TangentSpace tangent_space_from_config(const RootConfig& rc) {
  const int d = rc.total_multiplicity();
  std::vector<Complex> divisor_roots;
  int rows = 0;
  for (const auto& e : rc.entries()) {
    rows += e.multiplicity - 1;
    for (int c = 0; c < e.multiplicity - 1; ++c) divisor_roots.push_back(e.root);
  }
  if (rows == 0) return {AffineFlat(d), CPoly::constant(Complex(1.0)), true, false};

  MatC normals(rows, d);
  VecC offsets(rows);
  int r = 0;
  for (const auto& e : rc.entries())
    for (int j = 0; j <= e.multiplicity - 2; ++j, ++r) {
      normals.row(r) = normal_vector(e.root, d, j).transpose();
      offsets(r) = -Complex(falling_factorial(d, j)) * pow_int(e.root, d - j);
    }
  return {AffineFlat(d, std::move(normals), std::move(offsets)),
          expand_from_roots(std::move(divisor_roots)), false, false};
}

/// As above, detecting the configuration of P numerically. Distinct roots
/// closer than ten cluster radii are flagged as ill conditioned.
inline TangentSpace stratum_tangent_space(const MonicPoly& p, double tol) {
  const RootConfig rc = roots(p, tol);
  TangentSpace ts = tangent_space_from_config(rc);
  const double radius = tol * std::max(1.0, p.max_abs_coeff());
  for (int i = 0; i < rc.distinct_count(); ++i)
    for (int j = i + 1; j < rc.distinct_count(); ++j)
      if (std::abs(rc.entries()[i].root - rc.entries()[j].root) < 10.0 * radius)
        ts.ill_conditioned = true;
  return ts;
}

/// Tangent cone of the k-th coarse stratum at P: one flat of polynomials
/// with a multiplicity-(k-1) root per distinct root of multiplicity exactly
/// k. Throws if P has no root of multiplicity >= k.
inline std::vector<AffineFlat> tangent_cone(const MonicPoly& p, int k, double tol) {
  const RootConfig rc = roots(p, tol);
  const auto visible = detail::visible_entries(rc, p.field());
  int max_mult = 0;
  for (const auto& e : visible) max_mult = std::max(max_mult, e.multiplicity);
  if (max_mult < k)
    throw std::invalid_argument("tangent_cone: no root of multiplicity >= k");
  std::vector<AffineFlat> cone;
  for (const auto& e : visible)
    if (e.multiplicity == k) cone.push_back(tangent_flat(e.root, p.degree(), k - 1));
  return cone;
}

struct TangentHyperplane {
  Complex root;  // read off the normalized normal vector
  int multiplicity = 1;
  AffineFlat hyperplane;
};

/// Root finding restated as tangency: one hyperplane with a multiplicity->=1
/// constraint per distinct root of P. The hyperplane normal, normalized to
/// last component 1, carries the root as its second-to-last component.
inline std::vector<TangentHyperplane> solve_by_tangency(const MonicPoly& p, double tol) {
  const int d = p.degree();
  if (d < 2) throw std::invalid_argument("solve_by_tangency: degree must be >= 2");
  const RootConfig rc = roots(p, tol);
  std::vector<TangentHyperplane> out;
  for (const auto& e : detail::visible_entries(rc, p.field())) {
    AffineFlat h = tangent_flat(e.root, d, 1);
    VecC n = h.normals().row(0).transpose();
    n /= n(d - 1);  // normalize the last component to 1 (it already is)
    out.push_back({n(d - 2), e.multiplicity, std::move(h)});
  }
  return out;
}

/// Brute-force count of distinct monic divisors with multiplicity shape
/// kappa of the polynomial with configuration rc: enumerates exponent
/// assignments 0 <= e_i <= mult_i whose nonzero multiset equals kappa.
inline long long count_divisors_of_shape(const RootConfig& rc, const Partition& kappa) {
  const int r = rc.distinct_count();
  const int target = kappa.weight();
  std::vector<int> expo(static_cast<size_t>(r), 0);
  long long count = 0;
  std::function<void(int, int)> rec = [&](int idx, int assigned) {
    if (assigned > target) return;
    if (idx == r) {
      if (assigned != target) return;
      std::vector<int> nz;
      for (int e : expo)
        if (e > 0) nz.push_back(e);
      std::sort(nz.begin(), nz.end(), std::greater<int>());
      if (nz == kappa.parts()) ++count;
      return;
    }
    const int cap = rc.entries()[static_cast<size_t>(idx)].multiplicity;
    for (int e = 0; e <= cap; ++e) {
      expo[static_cast<size_t>(idx)] = e;
      rec(idx + 1, assigned + e);
    }
    expo[static_cast<size_t>(idx)] = 0;
  };
  rec(0, 0);
  return count;
}

/// Number of |mu|-dimensional spaces tangent to the mu-stratum through Q:
/// the placement count of mu decremented inside the shape of Q. For degrees
/// up to 7 the count is cross-validated against brute-force divisor
/// enumeration.
inline long long tangent_count_through(const MonicPoly& q, const Partition& mu, double tol) {
  if (mu.weight() != q.degree())
    throw std::invalid_argument("tangent_count_through: weight of mu must equal deg Q");
  const Stratification s = mu_of(q, tol);
  const long long count = gamma_count(down1(mu), s.mu);
  if (q.degree() <= 7) {
    const long long brute = count_divisors_of_shape(s.roots, down1(mu));
    if (brute != count)
      throw numerical_error("tangent_count_through: placement count disagrees with enumeration");
  }
  return count;
}

/// Velocities a-dot_i of the root-perturbation line through P that passes
/// through Q: a-dot_i = Qhat(u_i) / (tau mu_i Delta_i) with Qhat the
/// quotient of Q by prod (z - u_i)^{mu_i - 1} and Delta_i the product of
/// root differences. Ordered like the configuration entries.
inline std::vector<Complex> tangency_velocities_config(const CPoly& q, const RootConfig& rc,
                                                       Complex tau, double tol) {
  if (tau == Complex(0.0)) throw std::invalid_argument("tangency_velocities: tau must be nonzero");
  const int r = rc.distinct_count();
  std::vector<Complex> divisor_roots;
  for (const auto& e : rc.entries())
    for (int c = 0; c < e.multiplicity - 1; ++c) divisor_roots.push_back(e.root);
  const CPoly divisor = expand_from_roots(std::move(divisor_roots));
  const auto dr = divrem(q, divisor);
  if (dr.remainder.max_abs_coeff() > tol * std::max(1.0, q.max_abs_coeff()))
    throw std::invalid_argument("tangency_velocities: Q is not divisible by the reduced divisor");
  std::vector<Complex> out;
  for (int i = 0; i < r; ++i) {
    const Complex ui = rc.entries()[static_cast<size_t>(i)].root;
    Complex delta(1.0);
    for (int j = 0; j < r; ++j)
      if (j != i) delta *= ui - rc.entries()[static_cast<size_t>(j)].root;
    if (delta == Complex(0.0))
      throw std::invalid_argument("tangency_velocities: repeated distinct roots");
    const double mult = rc.entries()[static_cast<size_t>(i)].multiplicity;
    out.push_back(dr.quotient(ui) / (tau * mult * delta));
  }
  return out;
}

inline std::vector<Complex> tangency_velocities(const MonicPoly& q, const MonicPoly& p,
                                                Complex tau, double tol) {
  return tangency_velocities_config(q.dense(), roots(p, tol), tau, tol);
}

/// Point P + tau * Pdot on the tangent line with the given root velocities:
/// P(z) [1 + tau sum mu_i adot_i / (z - u_i)], expanded without division.
inline CPoly tangent_line_point(const RootConfig& rc, const std::vector<Complex>& velocities,
                                Complex tau) {
  const int r = rc.distinct_count();
  if (static_cast<int>(velocities.size()) != r)
    throw std::invalid_argument("tangent_line_point: one velocity per distinct root");
  CPoly acc = expand_from_roots(rc.expand());
  for (int i = 0; i < r; ++i) {
    std::vector<Complex> reduced;
    for (int j = 0; j < r; ++j) {
      const auto& e = rc.entries()[static_cast<size_t>(j)];
      const int copies = e.multiplicity - (i == j ? 1 : 0);
      reduced.insert(reduced.end(), static_cast<size_t>(copies), e.root);
    }
    const double mult = rc.entries()[static_cast<size_t>(i)].multiplicity;
    acc = acc + expand_from_roots(std::move(reduced)) * (tau * mult * velocities[static_cast<size_t>(i)]);
  }
  return acc;
}

/// The unique common point of the per-root tangent flats of a configuration:
/// solves the stacked linear system of all constraints. Equals the expansion
/// of the configuration.
inline MonicPoly intersect_osculating(const RootConfig& rc) {
  const int d = rc.total_multiplicity();
  if (d < 1) throw std::invalid_argument("intersect_osculating: empty configuration");
  MatC system(d, d);
  VecC rhs(d);
  int r = 0;
  for (const auto& e : rc.entries())
    for (int j = 0; j < e.multiplicity; ++j, ++r) {
      system.row(r) = normal_vector(e.root, d, j).transpose();
      rhs(r) = -Complex(falling_factorial(d, j)) * pow_int(e.root, d - j);
    }
  Eigen::FullPivLU<MatC> lu(system);
  lu.setThreshold(AffineFlat::kRankTol);
  if (!lu.isInvertible())
    throw numerical_error("intersect_osculating: singular stacked system");
  return MonicPoly(lu.solve(rhs));
}

/// Tangency loci of the hyperplanes through P: one codimension-2 flat of
/// double-root polynomials per distinct root of P.
inline std::vector<AffineFlat> horizon(const MonicPoly& p, double tol) {
  const int d = p.degree();
  if (d < 2) throw std::invalid_argument("horizon: degree must be >= 2");
  const RootConfig rc = roots(p, tol);
  std::vector<AffineFlat> out;
  for (const auto& e : detail::visible_entries(rc, p.field()))
    out.push_back(tangent_flat(e.root, d, 2));
  return out;
}

struct LimitFlat {
  AffineFlat flat;
  CPoly divisor;  // monic; the flat is the set of polynomials it divides
};

namespace detail {

/// Entries sorted by multiplicity descending (ties by root order), aligning
/// them with the parts of the multiplicity partition.
inline std::vector<RootEntry> entries_by_mult(const RootConfig& rc) {
  std::vector<RootEntry> es = rc.entries();
  std::stable_sort(es.begin(), es.end(), [](const RootEntry& a, const RootEntry& b) {
    return a.multiplicity > b.multiplicity;
  });
  return es;
}

inline AffineFlat divisibility_flat(const std::vector<RootEntry>& exps, int d) {
  int rows = 0;
  for (const auto& e : exps) rows += e.multiplicity;
  MatC normals(rows, d);
  VecC offsets(rows);
  int r = 0;
  for (const auto& e : exps)
    for (int j = 0; j < e.multiplicity; ++j, ++r) {
      normals.row(r) = normal_vector(e.root, d, j).transpose();
      offsets(r) = -Complex(falling_factorial(d, j)) * pow_int(e.root, d - j);
    }
  return AffineFlat(d, std::move(normals), std::move(offsets));
}

}  // namespace detail

/// Limits of the tangent spaces of the mu-stratum along resolution paths
/// shrinking onto P1: one flat per reduced resolution class, the flat of all
/// monic degree-d polynomials divisible by the class's limiting divisor.
inline std::vector<LimitFlat> limit_tangent_flats(const MonicPoly& p1, const Partition& mu,
                                                  double tol) {
  const int d = p1.degree();
  const RootConfig rc = roots(p1, tol);
  const auto parents = detail::entries_by_mult(rc);
  std::vector<int> nu_parts;
  for (const auto& e : parents) nu_parts.push_back(e.multiplicity);
  const Partition nu(nu_parts);

  std::vector<LimitFlat> out;
  for (const auto& cls : res_down1_classes(nu, mu)) {
    std::vector<RootEntry> exps;
    std::vector<Complex> divisor_roots;
    for (size_t j = 0; j < parents.size(); ++j) {
      const int e = cls.exponents[j];
      if (e == 0) continue;
      exps.push_back({parents[j].root, e});
      divisor_roots.insert(divisor_roots.end(), static_cast<size_t>(e), parents[j].root);
    }
    out.push_back({detail::divisibility_flat(exps, d), expand_from_roots(std::move(divisor_roots))});
  }
  return out;
}

/// Number of distinct roots |supp mu_P| (over the complex field), cross-
/// checked against the numerical rank of the Vandermonde matrix built on the
/// clustered root multiset.
inline int distinct_root_count(const MonicPoly& p, double tol) {
  const RootConfig rc = roots(p, tol);
  const int d = p.degree();
  MatC vandermonde(d, d);
  int col = 0;
  for (Complex u : rc.expand()) vandermonde.col(col++) = normal_vector(u, d, 0);
  Eigen::CompleteOrthogonalDecomposition<MatC> cod(vandermonde);
  cod.setThreshold(AffineFlat::kRankTol);
  const int rank = static_cast<int>(cod.rank());
  if (rank != rc.distinct_count())
    throw numerical_error("distinct_root_count: Vandermonde rank disagrees with clustering");
  return rc.distinct_count();
}

}  // namespace polydisc
