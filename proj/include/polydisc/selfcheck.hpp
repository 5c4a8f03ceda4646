#pragma once

#include "polydisc/flow.hpp"
#include "polydisc/partition.hpp"
#include "polydisc/sampling.hpp"
#include "polydisc/strata.hpp"
#include "polydisc/viete.hpp"

#include <string>
#include <vector>

namespace polydisc {

/// One invariant checked over a sample sweep: pass/fail plus the worst
/// observed residual against its bound.
struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double bound = 0.0;
};

namespace detail {

inline void record(std::vector<CheckResult>& out, const std::string& name, double worst,
                   double bound) {
  out.push_back({name, worst <= bound, worst, bound});
}

inline void record_flag(std::vector<CheckResult>& out, const std::string& name, bool ok) {
  out.push_back({name, ok, ok ? 0.0 : 1.0, 0.0});
}

inline CPoly reduced_divisor(const RootConfig& rc) {
  std::vector<Complex> roots;
  for (const auto& e : rc.entries())
    roots.insert(roots.end(), static_cast<size_t>(e.multiplicity - 1), e.root);
  return expand_from_roots(std::move(roots));
}

inline RootConfig random_multiplicity_config(std::mt19937_64& rng, int degree, double sep,
                                             double radius, int max_mult = 3) {
  std::vector<int> mults;
  int rest = degree;
  while (rest > 0) {
    const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(max_mult, rest)));
    mults.push_back(m);
    rest -= m;
  }
  return rand_config(rng, mults, sep, radius);
}

}  // namespace detail

inline std::vector<CheckResult> check_poly_core(uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;

  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int dq = 1 + static_cast<int>(rng() % 7);
    const int dd = 1 + static_cast<int>(rng() % dq);
    VecC vq(dq + 1), vd(dd + 1);
    for (int k = 0; k <= dq; ++k) vq(k) = rand_complex(rng, 2.0);
    for (int k = 0; k <= dd; ++k) vd(k) = rand_complex(rng, 2.0);
    if (std::abs(vd(0)) < 0.1) vd(0) = Complex(1.0);
    if (vq(0) == Complex(0.0)) vq(0) = Complex(1.0);
    const CPoly q(vq), d(vd);
    const auto res = divrem(q, d);
    const double err = (d * res.quotient + res.remainder - q).max_abs_coeff() /
                       std::max(1.0, q.max_abs_coeff());
    worst = std::max(worst, err);
    if (res.remainder.degree() >= d.degree()) worst = 1.0;
  }
  detail::record(out, "divrem reconstruction", worst, 1e-10);

  worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int degree = 2 + static_cast<int>(rng() % 7);
    const RootConfig rc = detail::random_multiplicity_config(rng, degree, 0.3, 1.0);
    const RootConfig back = roots(from_roots(rc), 1e-3);
    if (back.distinct_count() != rc.distinct_count()) {
      worst = 1.0;
      break;
    }
    for (int k = 0; k < rc.distinct_count(); ++k) {
      if (back.entries()[k].multiplicity != rc.entries()[k].multiplicity) worst = 1.0;
      worst = std::max(worst, std::abs(back.entries()[k].root - rc.entries()[k].root));
    }
  }
  detail::record(out, "roots/from_roots round trip", worst, 1e-6);

  worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + static_cast<int>(rng() % 6);
    const MonicPoly p = rand_poly(rng, d, 1.5);
    const Complex s = rand_complex(rng), t = rand_complex(rng);
    worst = std::max(worst, (apply_flow(apply_flow(p, s), t).coefficients() -
                             apply_flow(p, s + t).coefficients())
                                .cwiseAbs()
                                .maxCoeff());
  }
  detail::record(out, "shift group law", worst, 1e-10);

  return out;
}

inline std::vector<CheckResult> check_partitions(uint64_t seed, int /*samples*/) {
  std::vector<CheckResult> out;
  (void)seed;  // exact combinatorics; nothing to randomize

  bool ok = true;
  for (int n = 1; n <= 7 && ok; ++n)
    for (const auto& mu : all_partitions(n)) {
      ok = ok && down1(mu).weight() == mu.weight() - mu.length();
      ok = ok && uplus(mu, Partition({2, 1})).weight() == mu.weight() + 3;
    }
  detail::record_flag(out, "weight bookkeeping", ok);

  ok = true;
  for (int n = 1; n <= 7 && ok; ++n)
    for (const auto& tau : all_partitions(n))
      for (int k = 0; k <= tau.length(); ++k)
        ok = ok && gamma_count(ones_partition(k), tau) == binomial_ll(tau.length(), k);
  detail::record_flag(out, "gamma binomial identity", ok);

  ok = true;
  for (int n = 1; n <= 6 && ok; ++n) {
    const auto parts = all_partitions(n);
    for (const auto& a : parts) ok = ok && merge_leq(a, a);
    for (const auto& a : parts)
      for (const auto& b : parts) {
        if (merge_leq(a, b) && merge_leq(b, a)) ok = ok && a == b;
        for (const auto& c : parts)
          if (merge_leq(a, b) && merge_leq(b, c)) ok = ok && merge_leq(a, c);
      }
  }
  detail::record_flag(out, "merge order is a partial order (weights <= 6)", ok);

  ok = true;
  for (int d = 2; d <= 9 && ok; ++d)
    for (int k = 2; k <= d; ++k) {
      std::vector<int> hook{k};
      for (int i = 0; i < d - k; ++i) hook.push_back(1);
      ok = ok && stratum_degree(Partition(hook)) == static_cast<long long>(k) * (d - k + 1);
    }
  for (int d = 1; d <= 9; ++d) ok = ok && stratum_degree(ones_partition(d)) == 1;
  detail::record_flag(out, "hook degrees k(d-k+1), 2 <= k <= d <= 9", ok);

  return out;
}

inline std::vector<CheckResult> check_viete(uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;

  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Complex b = rand_complex(rng, 2.0), c = rand_complex(rng, 2.0),
                  d = rand_complex(rng, 2.0);
    VecC a2(2);
    a2 << b, c;
    const Complex e2 = b * b - 4.0 * c;
    worst = std::max(worst,
                     std::abs(discriminant(MonicPoly(a2)) - e2) / std::max(1.0, std::abs(e2)));
    VecC a3(3);
    a3 << b, c, d;
    const Complex e3 =
        b * b * c * c - 4.0 * b * b * b * d + 18.0 * b * c * d - 4.0 * c * c * c - 27.0 * d * d;
    worst = std::max(worst,
                     std::abs(discriminant(MonicPoly(a3)) - e3) / std::max(1.0, std::abs(e3)));
  }
  detail::record(out, "discriminant closed forms d = 2, 3", worst, 1e-10);

  worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + static_cast<int>(rng() % 6);
    std::vector<Complex> roots;
    for (int k = 0; k < d; ++k) roots.push_back(rand_complex(rng, 1.5));
    const Complex expected = jacobian_sign(d) * vandermonde_product(roots);
    worst = std::max(worst, std::abs(viete_jacobian_det(roots) - expected) /
                                std::max(1.0, std::abs(expected)));
  }
  detail::record(out, "Jacobian factorization d <= 7", worst, 1e-8);

  worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + static_cast<int>(rng() % 6);
    const auto pts = separated_points(rng, d, 0.1, 1.2);
    std::vector<RootEntry> entries;
    for (Complex p : pts) entries.push_back({p, 1});
    const MonicPoly p = from_roots(RootConfig(entries));
    Complex prod(1.0);
    const auto found = roots(p, 1e-8).expand();
    for (size_t a = 0; a < found.size(); ++a)
      for (size_t b2 = a + 1; b2 < found.size(); ++b2) {
        const Complex diff = found[a] - found[b2];
        prod *= diff * diff;
      }
    worst = std::max(worst,
                     std::abs(discriminant(p) - prod) / std::max(1.0, std::abs(prod)));
  }
  detail::record(out, "discriminant equals squared root differences", worst, 1e-7);

  bool sd_ok = true;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + static_cast<int>(rng() % 6);
    std::vector<Complex> roots;
    for (int k = 0; k < d; ++k) roots.push_back(rand_complex(rng, 2.0));
    const MonicPoly a = viete_map(roots);
    std::shuffle(roots.begin(), roots.end(), rng);
    const MonicPoly b = viete_map(roots);
    for (int k = 1; k <= d; ++k)
      sd_ok = sd_ok && a.coeff(k).real() == b.coeff(k).real() &&
              a.coeff(k).imag() == b.coeff(k).imag();
  }
  detail::record_flag(out, "S_d invariance bit-identical", sd_ok);

  bool sign_ok = true;
  int done = 0;
  while (done < samples) {
    const MonicPoly p = rand_real_poly(rng, 3, 2.0);
    const double delta = discriminant(p).real();
    if (std::abs(delta) < 1e-8) continue;
    ++done;
    int real_count = 0;
    for (const auto& e : roots(p, 1e-8).real_entries()) real_count += e.multiplicity;
    sign_ok = sign_ok && ((delta > 0.0) == (real_count == 3));
  }
  detail::record_flag(out, "sign(Delta) counts real cubic roots", sign_ok);

  return out;
}

inline std::vector<CheckResult> check_strata(uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;

  bool exact_ok = true;
  for (int d = 2; d <= 8; ++d)
    for (long long u = -3; u <= 3; ++u)
      for (int q = 1; q <= d - 1; ++q)
        for (int p = 0; p + q < d; ++p)
          exact_ok = exact_ok && osculating_dot_exact(u, d, p, q) == 0;
  detail::record_flag(out, "osculating orthogonality exact (p+q < d, d <= 8)", exact_ok);

  bool flats_ok = true;
  for (int i = 0; i < std::max(1, samples / 10); ++i) {
    const int d = 2 + static_cast<int>(rng() % 7);
    const int k = 1 + static_cast<int>(rng() % (d - 1));
    const Complex u = rand_complex(rng, 2.0);
    flats_ok = flats_ok && flat_equal(osculating_flat(u, d, d - k), tangent_flat(u, d, k), rng, 1e-7);
  }
  detail::record_flag(out, "osculating flats equal tangent flats", flats_ok);

  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int degree = 3 + static_cast<int>(rng() % 5);
    RootConfig rc = detail::random_multiplicity_config(rng, degree, 0.4, 1.5);
    if (rc.distinct_count() < 2) continue;
    std::vector<Complex> qhat_roots;
    for (int k = 0; k < rc.distinct_count(); ++k) qhat_roots.push_back(rand_complex(rng, 1.5));
    const CPoly q = detail::reduced_divisor(rc) * expand_from_roots(qhat_roots);
    const Complex tau(1.3, -0.4);
    const auto vel = tangency_velocities_config(q, rc, tau, 1e-8);
    worst = std::max(worst, (tangent_line_point(rc, vel, tau) - q).max_abs_coeff() /
                                std::max(1.0, q.max_abs_coeff()));
  }
  detail::record(out, "backward tangency reconstruction", worst, 1e-9);

  worst = 0.0;
  const double h = 1e-5;
  for (int i = 0; i < samples; ++i) {
    const int degree = 3 + static_cast<int>(rng() % 5);
    const RootConfig rc = detail::random_multiplicity_config(rng, degree, 0.4, 1.5);
    std::vector<Complex> dir;
    for (int k = 0; k < rc.distinct_count(); ++k) dir.push_back(rand_complex(rng, 1.0));
    auto at = [&](double t) {
      std::vector<RootEntry> entries;
      for (int k = 0; k < rc.distinct_count(); ++k)
        entries.push_back({rc.entries()[static_cast<size_t>(k)].root + t * dir[static_cast<size_t>(k)],
                           rc.entries()[static_cast<size_t>(k)].multiplicity});
      return from_roots(RootConfig(entries)).dense();
    };
    const CPoly velocity = (at(h) - at(-h)) * Complex(1.0 / (2.0 * h));
    const double resid = divrem(velocity, detail::reduced_divisor(rc)).remainder.max_abs_coeff();
    worst = std::max(worst, resid / std::max(1.0, velocity.max_abs_coeff()));
  }
  detail::record(out, "forward finite-difference tangency", worst, 1e-5);

  bool bij_ok = true;
  double root_worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int degree = 2 + static_cast<int>(rng() % 5);
    const RootConfig rc = detail::random_multiplicity_config(rng, degree, 0.3, 1.2, 2);
    const MonicPoly p = from_roots(rc);
    const auto sols = solve_by_tangency(p, 1e-5);
    bij_ok = bij_ok && static_cast<int>(sols.size()) == rc.distinct_count();
    for (const auto& s : sols) {
      double best = 1e9;
      for (const auto& e : rc.entries()) best = std::min(best, std::abs(s.root - e.root));
      root_worst = std::max(root_worst, best);
    }
  }
  detail::record_flag(out, "solve-by-tangency bijection", bij_ok);
  detail::record(out, "solve-by-tangency root recovery", root_worst, 1e-8);

  bool count_ok = true;
  for (int n = 2; n <= 6 && count_ok; ++n)
    for (const auto& mu : all_partitions(n))
      for (const auto& nu : all_partitions(n)) {
        std::vector<RootEntry> entries;
        for (int i = 0; i < nu.length(); ++i)
          entries.push_back(
              {Complex(static_cast<double>(2 * i) - 3.0), nu.parts()[static_cast<size_t>(i)]});
        count_ok = count_ok && gamma_count(down1(mu), nu) ==
                                   count_divisors_of_shape(RootConfig(entries), down1(mu));
      }
  detail::record_flag(out, "tangent counts match enumeration (weights <= 6)", count_ok);

  return out;
}

inline std::vector<CheckResult> check_flow(uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;

  double worst = 0.0;
  bool det_ok = true;
  bool mu_ok = true;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + static_cast<int>(rng() % 6);
    const MonicPoly p = rand_poly(rng, d, 1.5);
    const Complex t = rand_complex(rng, 1.0);
    const auto rep = check_flow_invariants(p, t, 1e-8);
    worst = std::max(worst, rep.discriminant_drift);
    det_ok = det_ok && rep.linear_det == Complex(1.0);
    mu_ok = mu_ok && rep.mu_invariant;
  }
  detail::record(out, "discriminant drift", worst, 1e-9);
  detail::record_flag(out, "linear part determinant exactly 1", det_ok);
  detail::record_flag(out, "mu invariance", mu_ok);

  double group_worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + static_cast<int>(rng() % 6);
    const MonicPoly p = rand_poly(rng, d, 1.5);
    const Complex s = rand_complex(rng), t = rand_complex(rng);
    group_worst = std::max(group_worst, (apply_flow(apply_flow(p, s), t).coefficients() -
                                         apply_flow(p, s + t).coefficients())
                                            .cwiseAbs()
                                            .maxCoeff());
  }
  detail::record(out, "flow group law", group_worst, 1e-10);

  double equiv_worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % d);
    const Complex u = rand_complex(rng, 1.2), t = rand_complex(rng, 1.2);
    const AffineFlat before = tangent_flat(u, d, k);
    const AffineFlat after = tangent_flat(u + t, d, k);
    const VecC x = before.sample_point(rng);
    equiv_worst = std::max(equiv_worst, after.residual(apply_flow(MonicPoly(x), t).coefficients()));
  }
  detail::record(out, "tangency equivariance", equiv_worst, 1e-8);

  return out;
}

inline std::vector<CheckResult> run_suite(const std::string& name, uint64_t seed, int samples) {
  if (name == "poly_core") return check_poly_core(seed, samples);
  if (name == "partitions") return check_partitions(seed, samples);
  if (name == "viete") return check_viete(seed, samples);
  if (name == "strata") return check_strata(seed, samples);
  if (name == "flow") return check_flow(seed, samples);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace polydisc
