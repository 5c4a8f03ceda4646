#pragma once

#include "polydisc/poly.hpp"

#include <random>

namespace polydisc {

/// Affine subspace of coefficient space in constraint form: points x with
/// normals * x = offsets, row by row (bilinear products, no conjugation).
/// Normals must be linearly independent; dim = ambient - #constraints.
/// A flat with no constraints is the full space.
class AffineFlat {
 public:
  static constexpr double kRankTol = 1e-10;

  explicit AffineFlat(int ambient_dim)
      : ambient_(ambient_dim), normals_(0, ambient_dim), offsets_(0) {
    if (ambient_dim < 1) throw std::invalid_argument("AffineFlat: ambient_dim < 1");
  }

  AffineFlat(int ambient_dim, MatC normals, VecC offsets)
      : ambient_(ambient_dim), normals_(std::move(normals)), offsets_(std::move(offsets)) {
    if (ambient_dim < 1) throw std::invalid_argument("AffineFlat: ambient_dim < 1");
    if (normals_.cols() != ambient_ || normals_.rows() != offsets_.size())
      throw std::invalid_argument("AffineFlat: inconsistent constraint shapes");
    if (normals_.rows() > 0) {
      Eigen::FullPivLU<MatC> lu(normals_);
      lu.setThreshold(kRankTol);
      if (lu.rank() != normals_.rows())
        throw std::invalid_argument("AffineFlat: dependent constraint normals");
    }
  }

  int ambient_dim() const { return ambient_; }
  int codim() const { return static_cast<int>(normals_.rows()); }
  int dim() const { return ambient_ - codim(); }
  bool is_full_space() const { return normals_.rows() == 0; }
  const MatC& normals() const { return normals_; }
  const VecC& offsets() const { return offsets_; }

  /// Worst constraint violation at x, each row normalized by max(1, |row|).
  double residual(const VecC& x) const {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < normals_.rows(); ++i) {
      const Complex v = (normals_.row(i) * x).value() - offsets_(i);
      worst = std::max(worst, std::abs(v) / std::max(1.0, normals_.row(i).norm()));
    }
    return worst;
  }

  bool contains(const VecC& x, double tol) const { return residual(x) <= tol; }

  /// Minimum-norm point satisfying the constraints.
  VecC particular_point() const {
    if (is_full_space()) return VecC::Zero(ambient_);
    Eigen::CompleteOrthogonalDecomposition<MatC> cod(normals_);
    cod.setThreshold(kRankTol);
    return cod.solve(offsets_);
  }

  /// Orthonormal basis of the direction space (kernel of the normals).
  /// Zero-dimensional flats get a zero-width matrix (Eigen's kernel()
  /// placeholder zero column must not be orthonormalized).
  MatC direction_basis() const {
    if (is_full_space()) return MatC::Identity(ambient_, ambient_);
    if (dim() == 0) return MatC(ambient_, 0);
    Eigen::FullPivLU<MatC> lu(normals_);
    lu.setThreshold(kRankTol);
    MatC kernel = lu.kernel();
    Eigen::HouseholderQR<MatC> qr(kernel);
    MatC q = qr.householderQ() * MatC::Identity(ambient_, kernel.cols());
    return q;
  }

  /// Deterministic pseudo-random point on the flat.
  VecC sample_point(std::mt19937_64& rng, double scale = 1.0) const {
    const MatC basis = direction_basis();
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    VecC coeffs(basis.cols());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
      coeffs(i) = scale * Complex(uni(rng), uni(rng));
    return particular_point() + basis * coeffs;
  }

 private:
  int ambient_;
  MatC normals_;
  VecC offsets_;
};

/// Intersection of two flats: stacked constraints with dependent rows
/// dropped (column-pivoted rank detection at the flat rank tolerance).
inline AffineFlat flat_intersection(const AffineFlat& a, const AffineFlat& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("flat_intersection: ambient dimensions differ");
  const int d = a.ambient_dim();
  MatC stacked(a.codim() + b.codim(), d);
  VecC offs(a.codim() + b.codim());
  stacked << a.normals(), b.normals();
  offs << a.offsets(), b.offsets();
  if (stacked.rows() == 0) return AffineFlat(d);

  // Greedy independent-row selection.
  std::vector<int> keep;
  MatC sel(0, d);
  for (int i = 0; i < stacked.rows(); ++i) {
    MatC trial(sel.rows() + 1, d);
    trial << sel, stacked.row(i);
    Eigen::FullPivLU<MatC> lu(trial);
    lu.setThreshold(AffineFlat::kRankTol);
    if (lu.rank() == trial.rows()) {
      sel = std::move(trial);
      keep.push_back(i);
    }
  }
  MatC normals(keep.size(), d);
  VecC offsets(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    normals.row(i) = stacked.row(keep[i]);
    offsets(i) = offs(keep[i]);
  }
  return AffineFlat(d, std::move(normals), std::move(offsets));
}

/// Equality as affine sets: equal dimension plus mutual containment of
/// ambient-many sample points of each flat in the other.
inline bool flat_equal(const AffineFlat& a, const AffineFlat& b, std::mt19937_64& rng,
                       double residual_tol = 1e-8) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  const int samples = a.ambient_dim();
  for (int i = 0; i < samples; ++i) {
    if (!b.contains(a.sample_point(rng), residual_tol)) return false;
    if (!a.contains(b.sample_point(rng), residual_tol)) return false;
  }
  return true;
}

/// Symmetric sampled distance between two flats: the worst normalized
/// constraint violation of each flat's sample points against the other.
inline double flat_distance(const AffineFlat& a, const AffineFlat& b, std::mt19937_64& rng,
                            int samples = 8) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    worst = std::max(worst, b.residual(a.sample_point(rng)));
    worst = std::max(worst, a.residual(b.sample_point(rng)));
  }
  return worst;
}

}  // namespace polydisc
