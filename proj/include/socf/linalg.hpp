#pragma once

#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace socf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thresholds shared by every rank, zero and equality decision.
///
/// `rank` is relative to the largest singular value, `zero` is an absolute
/// snap-to-zero level and `eq` is used for equality comparisons.
struct TolerancePolicy {
  double rank = 1e-10;
  double zero = 1e-12;
  double eq = 1e-9;

  /// Throws InvalidArgument unless all three are in (0, 1).
  void validate() const;
};

/// Eigenpairs of a symmetric matrix. Eigenvalues ascend; column i of
/// `eigenvectors` belongs to eigenvalue i.
struct SymEigen {
  Vector eigenvalues;
  Matrix eigenvectors;
};

namespace linalg {

/// Throws NonFinite if any entry is NaN or infinite. `what` names the
/// offending quantity in the message.
void require_finite(const Matrix& a, std::string_view what);
void require_finite(const Vector& v, std::string_view what);

/// Largest absolute entry, 0 for an empty matrix.
double max_abs(const Matrix& a);

/// True when |S - S^T| <= eq * max(1, max|S|) entrywise.
bool is_symmetric(const Matrix& s, const TolerancePolicy& tol = {});

SymEigen sym_eigen(const Matrix& s, const TolerancePolicy& tol = {});

/// Moore-Penrose inverse from an SVD; singular values at or below
/// rank * sigma_max are treated as zero.
Matrix pseudoinverse(const Matrix& a, const TolerancePolicy& tol = {});

/// Unique symmetric PSD square root. Eigenvalues in [-zero*scale, 0) are
/// clamped to 0; anything more negative throws NotPSD.
Matrix psd_sqrt(const Matrix& m, const TolerancePolicy& tol = {});

std::size_t rank_of(const Matrix& a, const TolerancePolicy& tol = {});

/// Orthogonal projector onto col(M) for symmetric PSD M.
Matrix colspace_projector(const Matrix& m, const TolerancePolicy& tol = {});

/// Spectral split of a symmetric PSD matrix into its column space and null
/// space. An eigenvalue counts as nonzero when it exceeds
/// zero * max(1, lambda_max); the same cutoff drives every PD/PSD decision
/// in the analysis layer.
struct PsdSpectrum {
  Vector eigenvalues;   // clamped at 0, ascending
  Matrix eigenvectors;  // orthonormal columns
  std::size_t rank = 0;

  double lambda_max() const;
  double lambda_min() const;
  bool positive_definite() const { return rank == static_cast<std::size_t>(eigenvalues.size()); }
  bool zero() const { return rank == 0; }

  /// Orthonormal basis of N(M) as columns (n x (n - rank)).
  Matrix null_basis() const;
  /// Orthonormal basis of col(M) as columns (n x rank).
  Matrix range_basis() const;
  Matrix projector() const;
  /// M^+ computed on the retained eigenpairs.
  Matrix pinv() const;
};

/// Throws NotPSD when an eigenvalue falls below -zero * max(1, |lambda_max|),
/// NonSymmetric when the input is not symmetric.
PsdSpectrum psd_spectrum(const Matrix& m, const TolerancePolicy& tol = {});

}  // namespace linalg
}  // namespace socf
