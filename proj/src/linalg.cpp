#include "socf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "socf/error.hpp"

namespace socf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotDifferentiable: return "NotDifferentiable";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

void TolerancePolicy::validate() const {
  for (double t : {rank, zero, eq}) {
    if (!(t > 0.0 && t < 1.0)) {
      throw Error(ErrorKind::InvalidArgument, "tolerances must lie in (0, 1)");
    }
  }
}

namespace linalg {

void require_finite(const Matrix& a, std::string_view what) {
  if (!a.allFinite()) {
    throw Error(ErrorKind::NonFinite, std::string(what) + " has a non-finite entry");
  }
}

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw Error(ErrorKind::NonFinite, std::string(what) + " has a non-finite entry");
  }
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_symmetric(const Matrix& s, const TolerancePolicy& tol) {
  if (s.rows() != s.cols()) return false;
  const double bound = tol.eq * std::max(1.0, max_abs(s));
  return max_abs(s - s.transpose()) <= bound;
}

namespace {

void require_square_symmetric(const Matrix& s, const TolerancePolicy& tol) {
  require_finite(s, "matrix");
  if (s.rows() != s.cols() || s.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "expected a non-empty square matrix");
  }
  if (!is_symmetric(s, tol)) {
    throw Error(ErrorKind::NonSymmetric, "matrix is not symmetric");
  }
}

// Flip each eigenvector so its largest-magnitude component is positive.
void normalize_signs(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index imax = 0;
    v.col(j).cwiseAbs().maxCoeff(&imax);
    if (v(imax, j) < 0.0) v.col(j) = -v.col(j);
  }
}

}  // namespace

SymEigen sym_eigen(const Matrix& s, const TolerancePolicy& tol) {
  require_square_symmetric(s, tol);
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonFinite, "symmetric eigensolver did not converge");
  }
  SymEigen out{solver.eigenvalues(), solver.eigenvectors()};
  normalize_signs(out.eigenvectors);
  return out;
}

namespace {

struct Svd {
  Matrix u;
  Vector sigma;
  Matrix v;
  std::size_t rank = 0;
};

Svd thin_svd(const Matrix& a, const TolerancePolicy& tol) {
  require_finite(a, "matrix");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Svd out{svd.matrixU(), svd.singularValues(), svd.matrixV(), 0};
  const double sigma_max = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  for (Eigen::Index i = 0; i < out.sigma.size(); ++i) {
    if (out.sigma(i) > 0.0 && out.sigma(i) > tol.rank * sigma_max) ++out.rank;
  }
  return out;
}

}  // namespace

Matrix pseudoinverse(const Matrix& a, const TolerancePolicy& tol) {
  const Svd svd = thin_svd(a, tol);
  Matrix out = Matrix::Zero(a.cols(), a.rows());
  for (std::size_t i = 0; i < svd.rank; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out.noalias() += svd.v.col(k) * (1.0 / svd.sigma(k)) * svd.u.col(k).transpose();
  }
  return out;
}

std::size_t rank_of(const Matrix& a, const TolerancePolicy& tol) {
  return thin_svd(a, tol).rank;
}

double PsdSpectrum::lambda_max() const {
  return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0;
}

double PsdSpectrum::lambda_min() const {
  return eigenvalues.size() ? eigenvalues(0) : 0.0;
}

Matrix PsdSpectrum::null_basis() const {
  const auto n = eigenvectors.cols();
  return eigenvectors.leftCols(n - static_cast<Eigen::Index>(rank));
}

Matrix PsdSpectrum::range_basis() const {
  return eigenvectors.rightCols(static_cast<Eigen::Index>(rank));
}

Matrix PsdSpectrum::projector() const {
  const Matrix r = range_basis();
  return r * r.transpose();
}

Matrix PsdSpectrum::pinv() const {
  const auto k = static_cast<Eigen::Index>(rank);
  const Matrix r = range_basis();
  const Vector inv = eigenvalues.tail(k).cwiseInverse();
  return r * inv.asDiagonal() * r.transpose();
}

PsdSpectrum psd_spectrum(const Matrix& m, const TolerancePolicy& tol) {
  SymEigen eig = sym_eigen(m, tol);
  const auto n = eig.eigenvalues.size();
  const double top = eig.eigenvalues(n - 1);
  const double scale = std::max(1.0, std::abs(top));
  if (eig.eigenvalues(0) < -tol.zero * scale) {
    throw Error(ErrorKind::NotPSD, "matrix has a negative eigenvalue " +
                                       std::to_string(eig.eigenvalues(0)));
  }
  PsdSpectrum out;
  out.eigenvalues = eig.eigenvalues.cwiseMax(0.0);
  out.eigenvectors = std::move(eig.eigenvectors);
  const double cutoff = tol.zero * std::max(1.0, top);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out.eigenvalues(i) > cutoff) ++out.rank;
  }
  return out;
}

Matrix psd_sqrt(const Matrix& m, const TolerancePolicy& tol) {
  const PsdSpectrum spec = psd_spectrum(m, tol);
  // Eigenvalues below the rank cutoff are rounding noise; their roots would not be.
  Vector root = spec.eigenvalues.cwiseSqrt();
  root.head(root.size() - static_cast<Eigen::Index>(spec.rank)).setZero();
  Matrix r = spec.eigenvectors * root.asDiagonal() * spec.eigenvectors.transpose();
  return 0.5 * (r + r.transpose());
}

Matrix colspace_projector(const Matrix& m, const TolerancePolicy& tol) {
  return psd_spectrum(m, tol).projector();
}

}  // namespace linalg
}  // namespace socf
