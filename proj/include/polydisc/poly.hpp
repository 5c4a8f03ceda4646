#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polydisc {

using Complex = std::complex<double>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using VecC = Vec<Complex>;
using MatC = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

/// Thrown when an iterative routine fails to converge or a linear system
/// that should be regular turns out numerically singular.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Field { real, cplx };

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Lexicographic order on (re, im); the canonical root order.
inline bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Bilinear (non-Hermitian) dot product; constraint rows act on coefficient
/// vectors by plain summation, not by the Hermitian inner product.
template <typename Scalar>
Scalar dot_bilinear(const Vec<Scalar>& a, const Vec<Scalar>& b) {
  return (a.transpose() * b).value();
}

/// n * (n-1) * ... * (n-k+1); equals 1 for k == 0, 0 for k > n.
inline double falling_factorial(int n, int k) {
  if (k < 0) throw std::invalid_argument("falling_factorial: k < 0");
  if (k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Integer power by repeated multiplication; pow_int(z, 0) == 1 for any z,
/// including z == 0 (std::pow(0,0) is not reliable for complex arguments).
inline Complex pow_int(Complex z, int n) {
  if (n < 0) throw std::invalid_argument("pow_int: negative exponent");
  Complex r(1.0);
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

/// Dense univariate polynomial, coefficients stored highest degree first.
/// The zero polynomial is represented by an empty coefficient vector and
/// reports degree -1.
template <typename Scalar>
class DensePoly {
 public:
  using Coeffs = Vec<Scalar>;

  DensePoly() = default;
  explicit DensePoly(Coeffs coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static DensePoly zero() { return DensePoly(); }
  static DensePoly constant(Scalar c) {
    Coeffs v(1);
    v(0) = c;
    return DensePoly(std::move(v));
  }
  /// The monic linear factor z - root.
  static DensePoly linear(Scalar root) {
    Coeffs v(2);
    v(0) = Scalar(1);
    v(1) = -root;
    return DensePoly(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 0; }
  const Coeffs& coeffs() const { return coeffs_; }
  Scalar leading() const { return is_zero() ? Scalar(0) : coeffs_(0); }

  /// Coefficient of z^k (zero outside the stored range).
  Scalar coeff_of_power(int k) const {
    const int d = degree();
    if (k < 0 || k > d) return Scalar(0);
    return coeffs_(d - k);
  }

  /// Horner evaluation.
  Scalar operator()(Scalar z) const {
    Scalar acc(0);
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) acc = acc * z + coeffs_(i);
    return acc;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
      m = std::max(m, std::abs(coeffs_(i)));
    return m;
  }

  friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
    const int n = std::max(a.coeffs_.size(), b.coeffs_.size());
    Coeffs v = Coeffs::Zero(n);
    for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i)
      v(n - a.coeffs_.size() + i) += a.coeffs_(i);
    for (Eigen::Index i = 0; i < b.coeffs_.size(); ++i)
      v(n - b.coeffs_.size() + i) += b.coeffs_(i);
    return DensePoly(std::move(v));
  }

  friend DensePoly operator-(const DensePoly& a, const DensePoly& b) {
    return a + (b * Scalar(-1));
  }

  friend DensePoly operator*(const DensePoly& a, Scalar s) {
    Coeffs v = a.coeffs_ * s;
    return DensePoly(std::move(v));
  }
  friend DensePoly operator*(Scalar s, const DensePoly& a) { return a * s; }

  friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return DensePoly();
    Coeffs v = Coeffs::Zero(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (Eigen::Index i = 0; i < a.coeffs_.size(); ++i)
      for (Eigen::Index j = 0; j < b.coeffs_.size(); ++j)
        v(i + j) += a.coeffs_(i) * b.coeffs_(j);
    return DensePoly(std::move(v));
  }

 private:
  void trim() {
    Eigen::Index k = 0;
    while (k < coeffs_.size() && coeffs_(k) == Scalar(0)) ++k;
    if (k > 0) coeffs_ = Coeffs(coeffs_.tail(coeffs_.size() - k)).eval();
  }

  Coeffs coeffs_;
};

using CPoly = DensePoly<Complex>;

/// j-th formal derivative; j past the degree yields the zero polynomial.
template <typename Scalar>
DensePoly<Scalar> derivative(const DensePoly<Scalar>& p, int j = 1) {
  if (j < 0) throw std::invalid_argument("derivative: negative order");
  const int d = p.degree();
  if (j > d) return DensePoly<Scalar>::zero();
  Vec<Scalar> v(d - j + 1);
  for (int i = 0; i <= d - j; ++i)
    v(i) = p.coeffs()(i) * Scalar(falling_factorial(d - i, j));
  return DensePoly<Scalar>(std::move(v));
}

template <typename Scalar>
struct DivRem {
  DensePoly<Scalar> quotient;
  DensePoly<Scalar> remainder;
};

/// Euclidean division Q = D * quotient + remainder with deg remainder < deg D.
/// The cancelled leading entries are zeroed structurally, so the degree bound
/// on the remainder holds exactly even in floating point.
template <typename Scalar>
DivRem<Scalar> divrem(const DensePoly<Scalar>& q, const DensePoly<Scalar>& d) {
  if (d.is_zero()) throw std::invalid_argument("divrem: zero divisor");
  const int dq = q.degree();
  const int dd = d.degree();
  if (dq < dd) return {DensePoly<Scalar>::zero(), q};
  Vec<Scalar> work = q.coeffs();
  Vec<Scalar> quot = Vec<Scalar>::Zero(dq - dd + 1);
  for (int i = 0; i <= dq - dd; ++i) {
    const Scalar f = work(i) / d.leading();
    quot(i) = f;
    work(i) = Scalar(0);
    for (int j = 1; j <= dd; ++j) work(i + j) -= f * d.coeffs()(j);
  }
  Vec<Scalar> rem = dd > 0 ? Vec<Scalar>(work.tail(dd)) : Vec<Scalar>();
  return {DensePoly<Scalar>(std::move(quot)), DensePoly<Scalar>(std::move(rem))};
}

/// Monic degree-d polynomial z^d + a_1 z^{d-1} + ... + a_d, stored as the
/// point (a_1, ..., a_d) of coefficient space. In real-field mode all
/// imaginary parts are exactly zero (dust below 1e-12 relative is snapped).
class MonicPoly {
 public:
  MonicPoly(VecC a, Field field = Field::cplx) : a_(std::move(a)), field_(field) {
    if (a_.size() < 1) throw std::invalid_argument("MonicPoly: degree must be positive");
    double scale = 1.0;
    for (Eigen::Index i = 0; i < a_.size(); ++i) {
      if (!is_finite(a_(i))) throw std::invalid_argument("MonicPoly: non-finite coefficient");
      scale = std::max(scale, std::abs(a_(i)));
    }
    if (field_ == Field::real) {
      for (Eigen::Index i = 0; i < a_.size(); ++i) {
        if (std::abs(a_(i).imag()) > 1e-12 * scale)
          throw std::invalid_argument("MonicPoly: complex coefficient in real-field mode");
        a_(i).imag(0.0);
      }
    }
  }

  /// z^d, the origin of coefficient space.
  static MonicPoly power(int d, Field field = Field::cplx) {
    return MonicPoly(VecC::Zero(d), field);
  }

  int degree() const { return static_cast<int>(a_.size()); }
  Field field() const { return field_; }
  const VecC& coefficients() const { return a_; }
  /// a_k, 1-based as in z^d + a_1 z^{d-1} + ... + a_d.
  Complex coeff(int k) const { return a_(k - 1); }

  double max_abs_coeff() const {
    double m = 0.0;
    for (Eigen::Index i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_(i)));
    return m;
  }

  CPoly dense() const {
    VecC v(a_.size() + 1);
    v(0) = Complex(1.0);
    v.tail(a_.size()) = a_;
    return CPoly(std::move(v));
  }

  Complex operator()(Complex z) const { return dense()(z); }

 private:
  VecC a_;
  Field field_;
};

/// Monic polynomial from a dense one; the leading coefficient is divided out.
inline MonicPoly monic_from_dense(const CPoly& p, Field field = Field::cplx) {
  if (p.degree() < 1) throw std::invalid_argument("monic_from_dense: degree must be positive");
  VecC a = p.coeffs().tail(p.degree()) / p.leading();
  return MonicPoly(std::move(a), field);
}

/// Expand the monic product of (z - u) over the given roots. The roots are
/// summed in canonical (re, im)-lexicographic order, so permuted inputs give
/// bit-identical coefficients.
inline CPoly expand_from_roots(std::vector<Complex> roots) {
  std::sort(roots.begin(), roots.end(), lex_less);
  VecC c = VecC::Zero(static_cast<Eigen::Index>(roots.size()) + 1);
  c(0) = Complex(1.0);
  Eigen::Index len = 1;
  for (Complex u : roots) {
    c(len) = Complex(0.0);
    for (Eigen::Index j = len; j >= 1; --j) c(j) = c(j) - u * c(j - 1);
    ++len;
  }
  return CPoly(std::move(c));
}

/// Coefficients of P(z - t): the monic polynomial whose roots are the roots
/// of P shifted by +t. Computed by repeated synthetic division (Taylor
/// shift), one code path for every degree.
inline MonicPoly shift(const MonicPoly& p, Complex t) {
  const int d = p.degree();
  VecC c = p.dense().coeffs();
  const Complex s = -t;
  for (int i = 0; i < d; ++i)
    for (int j = 1; j <= d - i; ++j) c(j) += s * c(j - 1);
  const Field f =
      (p.field() == Field::real && t.imag() == 0.0) ? Field::real : Field::cplx;
  return MonicPoly(VecC(c.tail(d)), f);
}

/// Component-wise j-th derivative of n(u) = (u^{d-1}, u^{d-2}, ..., u, 1),
/// the normal-vector family of the tangent-flat constraints.
inline VecC normal_vector(Complex u, int d, int j) {
  if (j < 0 || j > d) throw std::invalid_argument("normal_vector: order out of range");
  VecC n = VecC::Zero(d);
  for (int k = 1; k <= d; ++k) {
    const int pw = d - k;
    if (pw < j) continue;
    n(k - 1) = Complex(falling_factorial(pw, j)) * pow_int(u, pw - j);
  }
  return n;
}

}  // namespace polydisc
