#include "socf/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "socf/error.hpp"

namespace socf {

namespace {

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_dim(const Vector& x, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(x.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has dimension " +
                                                  std::to_string(x.size()) + ", expected " +
                                                  std::to_string(n));
  }
}

bool close(double a, double b, double eq) {
  return std::abs(a - b) <= eq * std::max({1.0, std::abs(a), std::abs(b)});
}

bool close(const Matrix& a, const Matrix& b, double eq) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double bound = eq * std::max({1.0, linalg::max_abs(a), linalg::max_abs(b)});
  return linalg::max_abs(a - b) <= bound;
}

// Quadratic part of the canonical radical at x: (x - x*)^T M (x - x*).
struct Radical {
  Vector shift;  // x - x*
  Vector m_shift;  // M (x - x*)
  double quad = 0.0;
  double radicand = 0.0;
};

Radical radical(const CanonicalForm& g, const Vector& x) {
  require_dim(x, g.dim(), "x");
  Radical r;
  r.shift = x - g.x_star;
  r.m_shift = g.M * r.shift;
  r.quad = std::max(0.0, r.shift.dot(r.m_shift));
  r.radicand = g.delta * g.delta + r.quad;
  return r;
}

void require_smooth(const CanonicalForm& g, const Radical& r, const TolerancePolicy& tol) {
  if (g.delta == 0.0 && r.quad <= tol.zero && linalg::max_abs(g.M) > tol.zero) {
    throw Error(ErrorKind::NotDifferentiable, "point is the vertex of the cone (delta = 0)");
  }
}

bool linear_part_only(const CanonicalForm& g, const TolerancePolicy& tol) {
  return linalg::max_abs(g.M) <= tol.zero;
}

}  // namespace

void GeneralForm::validate() const {
  if (c.size() == 0 || A.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "empty SOCF parameters");
  }
  if (A.cols() != c.size() || A.rows() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "A is " + dims(A.rows(), A.cols()) + " but c has " + std::to_string(c.size()) +
                    " entries and b has " + std::to_string(b.size()));
  }
  linalg::require_finite(c, "c");
  linalg::require_finite(A, "A");
  linalg::require_finite(b, "b");
  if (!std::isfinite(d)) throw Error(ErrorKind::NonFinite, "d is not finite");
}

void CanonicalForm::validate(const TolerancePolicy& tol) const {
  if (c.size() == 0) throw Error(ErrorKind::DimensionMismatch, "empty SOCF parameters");
  if (M.rows() != c.size() || M.cols() != c.size() || x_star.size() != c.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "M is " + dims(M.rows(), M.cols()) + " but c has " + std::to_string(c.size()) +
                    " entries and x_star has " + std::to_string(x_star.size()));
  }
  linalg::require_finite(c, "c");
  linalg::require_finite(M, "M");
  linalg::require_finite(x_star, "x_star");
  if (!std::isfinite(d) || !std::isfinite(delta)) {
    throw Error(ErrorKind::NonFinite, "d or delta is not finite");
  }
  if (delta < 0.0) throw Error(ErrorKind::InvalidArgument, "delta must be non-negative");
  linalg::psd_spectrum(M, tol);
}

double LineRestriction::operator()(double t) const {
  const double u = t - t_star;
  return c * t + d - std::sqrt(delta * delta + slope2 * u * u);
}

double eval_general(const GeneralForm& f, const Vector& x) {
  require_dim(x, f.dim(), "x");
  return f.c.dot(x) + f.d - (f.A * x + f.b).norm();
}

double eval_canonical(const CanonicalForm& g, const Vector& x) {
  const Radical r = radical(g, x);
  return g.c.dot(x) + g.d - std::sqrt(r.radicand);
}

Vector gradient(const CanonicalForm& g, const Vector& x, const TolerancePolicy& tol) {
  const Radical r = radical(g, x);
  if (linear_part_only(g, tol)) return g.c;
  require_smooth(g, r, tol);
  return g.c - r.m_shift / std::sqrt(r.radicand);
}

Matrix hessian(const CanonicalForm& g, const Vector& x, const TolerancePolicy& tol) {
  const Radical r = radical(g, x);
  const auto n = static_cast<Eigen::Index>(g.dim());
  if (linear_part_only(g, tol)) return Matrix::Zero(n, n);
  require_smooth(g, r, tol);
  const double s = std::sqrt(r.radicand);
  Matrix h = -g.M / s + r.m_shift * r.m_shift.transpose() / (s * s * s);
  return 0.5 * (h + h.transpose());
}

CanonicalForm canonicalize(const GeneralForm& f, const TolerancePolicy& tol) {
  f.validate();
  CanonicalForm g;
  g.c = f.c;
  g.d = f.d;
  const Matrix m = f.A.transpose() * f.A;
  g.M = 0.5 * (m + m.transpose());
  g.x_star = -linalg::pseudoinverse(f.A, tol) * f.b;
  g.delta = (f.A * g.x_star + f.b).norm();
  if (g.delta < tol.zero * (1.0 + f.b.norm())) g.delta = 0.0;
  return g;
}

GeneralForm reconstruct(const CanonicalForm& g, const TolerancePolicy& tol) {
  g.validate(tol);
  const auto n = static_cast<Eigen::Index>(g.dim());
  const Matrix root = linalg::psd_sqrt(g.M, tol);
  GeneralForm f;
  f.c = g.c;
  f.d = g.d;
  f.A = Matrix::Zero(n + 1, n);
  f.A.topRows(n) = root;
  f.b = Vector::Zero(n + 1);
  f.b.head(n) = -root * g.x_star;
  f.b(n) = g.delta;
  return f;
}

GeneralForm restrict(const GeneralForm& f, const Vector& x0, const Matrix& B) {
  f.validate();
  require_dim(x0, f.dim(), "x0");
  if (static_cast<std::size_t>(B.rows()) != f.dim() || B.cols() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "B is " + dims(B.rows(), B.cols()) +
                                                  ", expected " + std::to_string(f.dim()) +
                                                  " rows and at least one column");
  }
  linalg::require_finite(x0, "x0");
  linalg::require_finite(B, "B");
  GeneralForm out;
  out.c = B.transpose() * f.c;
  out.d = f.c.dot(x0) + f.d;
  out.A = f.A * B;
  out.b = f.A * x0 + f.b;
  return out;
}

LineRestriction restrict_to_line(const GeneralForm& f, const Vector& x0, const Vector& v,
                                 const TolerancePolicy& tol) {
  f.validate();
  require_dim(x0, f.dim(), "x0");
  require_dim(v, f.dim(), "v");
  if (v.lpNorm<Eigen::Infinity>() == 0.0) {
    throw Error(ErrorKind::ZeroDirection, "line direction is zero");
  }
  const Vector av = f.A * v;
  const Vector w = f.A * x0 + f.b;
  LineRestriction g;
  g.c = f.c.dot(v);
  g.d = f.c.dot(x0) + f.d;
  const double slope2 = av.squaredNorm();
  if (slope2 <= tol.zero) {
    g.d -= w.norm();
    return g;
  }
  g.slope2 = slope2;
  g.t_star = -av.dot(w) / slope2;
  g.delta = (w + g.t_star * av).norm();
  if (g.delta < tol.zero * (1.0 + w.norm())) g.delta = 0.0;
  return g;
}

bool socf_equal(const CanonicalForm& g1, const CanonicalForm& g2, const TolerancePolicy& tol) {
  if (g1.dim() != g2.dim() || g1.M.rows() != g2.M.rows() ||
      g1.x_star.size() != g2.x_star.size()) {
    throw Error(ErrorKind::DimensionMismatch, "SOCFs live on spaces of different dimension");
  }
  const double eq = tol.eq;
  if (!close(g1.c, g2.c, eq)) return false;
  const bool zero1 = linalg::max_abs(g1.M) <= eq;
  const bool zero2 = linalg::max_abs(g2.M) <= eq;
  if (zero1 && zero2) return close(g1.d - g1.delta, g2.d - g2.delta, eq);
  if (zero1 != zero2) return false;
  return close(g1.d, g2.d, eq) && close(g1.delta, g2.delta, eq) && close(g1.M, g2.M, eq) &&
         close(Matrix(g1.M * g1.x_star), Matrix(g2.M * g2.x_star), eq);
}

AsymptoteData asymptote(const CanonicalForm& g, const Vector& v, const TolerancePolicy& tol) {
  require_dim(v, g.dim(), "v");
  if (v.lpNorm<Eigen::Infinity>() == 0.0) {
    throw Error(ErrorKind::ZeroDirection, "asymptote direction is zero");
  }
  const Vector mv = g.M * v;
  const double vmv = std::max(0.0, v.dot(mv));
  const double root = std::sqrt(vmv);
  AsymptoteData out;
  out.slope = g.c.dot(v) - root;
  if (vmv > tol.zero) out.intercept = g.d + mv.dot(g.x_star) / root;
  return out;
}

double scale_of(const CanonicalForm& g) {
  double lambda_max = 0.0;
  if (g.M.size() > 0) {
    const Matrix sym = 0.5 * (g.M + g.M.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    lambda_max = std::max(0.0, solver.eigenvalues().maxCoeff());
  }
  return 1.0 + std::abs(g.d) + g.c.norm() + g.delta +
         lambda_max * (1.0 + g.x_star.squaredNorm());
}

}  // namespace socf
