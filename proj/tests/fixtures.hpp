#pragma once

#include <cmath>

#include "socf/forms.hpp"

// Worked instances shared by the unit and acceptance suites.
namespace socf::fixtures {

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

// f(x) = -||A x + b|| on R^2 with the four (A, b) pairs of the cone gallery.
inline GeneralForm gallery_a() {
  return {vec({0, 0}), 0.0, mat({{1, 0}, {0, 1}, {0, 0}}), vec({0, 0, 0.3})};
}
inline GeneralForm gallery_b() { return {vec({0, 0}), 0.0, mat({{1, 0}, {0, 1}}), vec({0, 0})}; }
inline GeneralForm gallery_c() {
  return {vec({0, 0}), 0.0, mat({{1, 0}, {0, 0}, {0, 0}}), vec({0, 0, 0.3})};
}
inline GeneralForm gallery_d() { return {vec({0, 0}), 0.0, mat({{1, 0}, {0, 0}}), vec({0, 0})}; }

// A in R^{3x2} whose canonical form has M = [[2,-1],[-1,5]], x* = (1/9, 2/9).
inline GeneralForm three_by_two() {
  return {vec({0, 0}), 0.0, mat({{1, 0}, {-1, 1}, {0, 2}}), vec({1, 1, -1})};
}

inline Matrix six_case_matrix() { return mat({{2, -1}, {-1, 5}}); }

// The six contour instances: delta in {0, 1} x c in {0.7, 1, 1.3} (1, 1).
inline CanonicalForm six_case(double c_scale, double delta) {
  return {vec({c_scale, c_scale}), 0.0, delta, six_case_matrix(), vec({0, 0})};
}

// M = diag(4, 0), d = 0, x* = 0.
inline CanonicalForm semidefinite(double c1, double c2, double delta, double d = 0.0) {
  return {vec({c1, c2}), d, delta, mat({{4, 0}, {0, 0}}), vec({0, 0})};
}

// Unique maximizer of six_case(0.7, 1).
inline Vector pd4_maximizer() { return vec({1.4 / 3.0, 0.7 / 3.0}) / std::sqrt(0.51); }

}  // namespace socf::fixtures
