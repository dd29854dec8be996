#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "socf/forms.hpp"

namespace socf::analysis {

enum class ConcavityReason { RankDeficient, DeltaZero };

struct ConcavityClass {
  bool strictly_concave = false;
  std::vector<ConcavityReason> reasons;
};

enum class CriticalKind { None, Point, Ray, PointPlusNull, RayPlusNull };

/// Critical points of an SOCF. Point kinds use `base`; Ray kinds add the
/// ray `direction` (t >= 0); PlusNull kinds are translated by span(null_basis).
struct CriticalSet {
  CriticalKind kind = CriticalKind::None;
  Vector base;
  Vector direction;
  Matrix null_basis;  // orthonormal columns spanning N(M)

  bool bounded() const { return kind == CriticalKind::None || kind == CriticalKind::Point; }
};

enum class CaseTag {
  PD1,
  PD2,
  PD3,
  PD4,
  PD5,
  PD6,
  SemiDefNotInCol,
  SemiDefBounded,
  SemiDefUnbounded,
  LinearBounded,
  LinearUnbounded,
};

/// Upper-boundedness of an SOCF.
///
/// For positive definite M the tag is one of PD1..PD6, numbered by
/// (q < 1, q = 1, q > 1) for delta = 0 and then for delta > 0, where
/// q = c^T M^+ c. A singular M with c in col(M) receives the same subcase
/// number in `subcase` but is tagged SemiDefBounded / SemiDefUnbounded and
/// its critical sets extend along N(M). `q` is absent when c is not in
/// col(M). `boundary_flag` marks |q - 1| <= eq, where the classification
/// depends on the tolerance band.
struct BoundednessReport {
  bool bounded_above = false;
  CaseTag case_tag = CaseTag::LinearUnbounded;
  std::optional<int> subcase;
  std::optional<double> q;
  double supremum = 0.0;  // +inf when unbounded
  bool attained = false;
  CriticalSet critical_set;
  bool boundary_flag = false;
  bool positive_definite = false;
};

enum class RegionKind { Empty, Singleton, CompactWithInterior, UnboundedNonempty };

struct RegionClass {
  RegionKind kind = RegionKind::Empty;
};

std::string_view to_string(ConcavityReason r);
std::string_view to_string(CriticalKind k);
std::string_view to_string(CaseTag t);
std::string_view to_string(RegionKind k);

ConcavityClass concavity_class(const CanonicalForm& g, const TolerancePolicy& tol = {});
/// Strict concavity straight from (A, b): rank(A) = n and b not in col(A).
ConcavityClass concavity_class(const GeneralForm& f, const TolerancePolicy& tol = {});

BoundednessReport boundedness_report(const CanonicalForm& g, const TolerancePolicy& tol = {});
CriticalSet critical_points(const CanonicalForm& g, const TolerancePolicy& tol = {});

RegionClass region_class(const CanonicalForm& g, const TolerancePolicy& tol = {});
RegionClass region_class(const CanonicalForm& g, const BoundednessReport& report,
                         const TolerancePolicy& tol = {});

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Values of f on a uniform nx x ny lattice; values[j * nx + i] sits at
/// (xs[i], ys[j]), x varying fastest.
struct ContourGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
};

ContourGrid contour_grid(const CanonicalForm& g, Interval x_range, Interval y_range,
                         std::size_t nx, std::size_t ny);

}  // namespace socf::analysis
