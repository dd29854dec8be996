#pragma once

#include <cstddef>
#include <optional>

#include "socf/linalg.hpp"

namespace socf {

/// f(x) = c^T x + d - ||A x + b|| with A m x n.
struct GeneralForm {
  Vector c;
  double d = 0.0;
  Matrix A;
  Vector b;

  std::size_t dim() const { return static_cast<std::size_t>(c.size()); }
  std::size_t rows() const { return static_cast<std::size_t>(A.rows()); }

  /// Throws DimensionMismatch or NonFinite.
  void validate() const;
};

/// f(x) = c^T x + d - sqrt(delta^2 + (x - x*)^T M (x - x*)) with M PSD.
struct CanonicalForm {
  Vector c;
  double d = 0.0;
  double delta = 0.0;
  Matrix M;
  Vector x_star;

  std::size_t dim() const { return static_cast<std::size_t>(c.size()); }

  /// Throws DimensionMismatch, NonFinite, NonSymmetric, NotPSD, or
  /// InvalidArgument for a negative delta.
  void validate(const TolerancePolicy& tol = {}) const;
};

/// One-variable restriction g(t) = f(x0 + t v), stored as
/// g(t) = c t + d - sqrt(delta^2 + slope2 (t - t_star)^2).
/// When slope2 == 0 the restriction is linear and delta, t_star are 0.
struct LineRestriction {
  double c = 0.0;
  double d = 0.0;
  double delta = 0.0;
  double slope2 = 0.0;
  double t_star = 0.0;

  bool linear() const { return slope2 == 0.0; }
  double operator()(double t) const;
  /// Strictly concave iff the quadratic part is present and delta > 0.
  bool strictly_concave() const { return slope2 > 0.0 && delta > 0.0; }
};

/// Slant asymptote of t -> f(v t): slope t + intercept + O(1/t).
struct AsymptoteData {
  double slope = 0.0;
  std::optional<double> intercept;
};

double eval_general(const GeneralForm& f, const Vector& x);
double eval_canonical(const CanonicalForm& g, const Vector& x);

/// Closed-form derivatives at smooth points. Both throw NotDifferentiable
/// at the vertex of a cone (delta == 0, M (x - x*) ~ 0, M != 0).
Vector gradient(const CanonicalForm& g, const Vector& x, const TolerancePolicy& tol = {});
Matrix hessian(const CanonicalForm& g, const Vector& x, const TolerancePolicy& tol = {});

/// M = A^T A, x* = -A^+ b, delta = ||A x* + b||; delta snaps to 0 below
/// zero * (1 + ||b||).
CanonicalForm canonicalize(const GeneralForm& f, const TolerancePolicy& tol = {});

/// A = [M^{1/2}; 0], b = [-M^{1/2} x*; delta].
GeneralForm reconstruct(const CanonicalForm& g, const TolerancePolicy& tol = {});

/// The SOCF y -> f(x0 + B y) on R^k.
GeneralForm restrict(const GeneralForm& f, const Vector& x0, const Matrix& B);

LineRestriction restrict_to_line(const GeneralForm& f, const Vector& x0, const Vector& v,
                                 const TolerancePolicy& tol = {});

/// True iff both parameter sets define the same function. With M = 0 only
/// c and d - delta matter; otherwise c, d, delta, M and M x* must agree.
bool socf_equal(const CanonicalForm& g1, const CanonicalForm& g2, const TolerancePolicy& tol = {});

AsymptoteData asymptote(const CanonicalForm& g, const Vector& v, const TolerancePolicy& tol = {});

/// Magnitude used for relative comparisons:
/// 1 + |d| + ||c|| + delta + lambda_max (1 + ||x*||^2).
double scale_of(const CanonicalForm& g);

}  // namespace socf
