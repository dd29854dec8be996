#include "socf/analysis.hpp"

#include <cmath>
#include <limits>

#include "socf/error.hpp"

namespace socf::analysis {

std::string_view to_string(ConcavityReason r) {
  switch (r) {
    case ConcavityReason::RankDeficient: return "RankDeficient";
    case ConcavityReason::DeltaZero: return "DeltaZero";
  }
  return "Unknown";
}

std::string_view to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::None: return "None";
    case CriticalKind::Point: return "Point";
    case CriticalKind::Ray: return "Ray";
    case CriticalKind::PointPlusNull: return "PointPlusNull";
    case CriticalKind::RayPlusNull: return "RayPlusNull";
  }
  return "Unknown";
}

std::string_view to_string(CaseTag t) {
  switch (t) {
    case CaseTag::PD1: return "PD1";
    case CaseTag::PD2: return "PD2";
    case CaseTag::PD3: return "PD3";
    case CaseTag::PD4: return "PD4";
    case CaseTag::PD5: return "PD5";
    case CaseTag::PD6: return "PD6";
    case CaseTag::SemiDefNotInCol: return "SemiDefNotInCol";
    case CaseTag::SemiDefBounded: return "SemiDefBounded";
    case CaseTag::SemiDefUnbounded: return "SemiDefUnbounded";
    case CaseTag::LinearBounded: return "LinearBounded";
    case CaseTag::LinearUnbounded: return "LinearUnbounded";
  }
  return "Unknown";
}

std::string_view to_string(RegionKind k) {
  switch (k) {
    case RegionKind::Empty: return "Empty";
    case RegionKind::Singleton: return "Singleton";
    case RegionKind::CompactWithInterior: return "CompactWithInterior";
    case RegionKind::UnboundedNonempty: return "UnboundedNonempty";
  }
  return "Unknown";
}

ConcavityClass concavity_class(const CanonicalForm& g, const TolerancePolicy& tol) {
  g.validate(tol);
  const linalg::PsdSpectrum spec = linalg::psd_spectrum(g.M, tol);
  ConcavityClass out;
  if (!spec.positive_definite()) out.reasons.push_back(ConcavityReason::RankDeficient);
  if (!(g.delta > tol.zero)) out.reasons.push_back(ConcavityReason::DeltaZero);
  out.strictly_concave = out.reasons.empty();
  return out;
}

ConcavityClass concavity_class(const GeneralForm& f, const TolerancePolicy& tol) {
  const CanonicalForm g = canonicalize(f, tol);
  ConcavityClass out;
  if (linalg::rank_of(f.A, tol) < f.dim()) out.reasons.push_back(ConcavityReason::RankDeficient);
  if (!(g.delta > tol.zero)) out.reasons.push_back(ConcavityReason::DeltaZero);
  out.strictly_concave = out.reasons.empty();
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void mark_unbounded(BoundednessReport& r) {
  r.bounded_above = false;
  r.supremum = kInf;
  r.attained = false;
}

}  // namespace

BoundednessReport boundedness_report(const CanonicalForm& g, const TolerancePolicy& tol) {
  g.validate(tol);
  const linalg::PsdSpectrum spec = linalg::psd_spectrum(g.M, tol);
  const auto n = static_cast<Eigen::Index>(g.dim());
  BoundednessReport r;
  r.positive_definite = spec.positive_definite();

  if (spec.zero()) {
    if (g.c.norm() <= tol.eq) {
      r.case_tag = CaseTag::LinearBounded;
      r.q = 0.0;
      r.bounded_above = true;
      r.supremum = g.d - g.delta;
      r.attained = true;
      r.critical_set.kind = CriticalKind::PointPlusNull;
      r.critical_set.base = g.x_star;
      r.critical_set.null_basis = Matrix::Identity(n, n);
    } else {
      r.case_tag = CaseTag::LinearUnbounded;
      mark_unbounded(r);
    }
    return r;
  }

  const Vector off_range = g.c - spec.projector() * g.c;
  if (off_range.norm() > tol.eq * g.c.norm()) {
    r.case_tag = CaseTag::SemiDefNotInCol;
    mark_unbounded(r);
    return r;
  }

  const Vector pinv_c = spec.pinv() * g.c;
  const double q = g.c.dot(pinv_c);
  r.q = q;
  r.boundary_flag = std::abs(q - 1.0) <= tol.eq;
  // 1: q < 1, 2: q = 1, 3: q > 1; shifted by 3 when delta > 0.
  const int q_part = r.boundary_flag ? 2 : (q < 1.0 ? 1 : 3);
  const bool cone = !(g.delta > tol.zero);
  const int subcase = q_part + (cone ? 0 : 3);
  r.subcase = subcase;

  const double vertex_value = g.c.dot(g.x_star) + g.d;
  CriticalSet& cs = r.critical_set;
  switch (subcase) {
    case 1:
      r.bounded_above = true;
      r.supremum = vertex_value;
      r.attained = true;
      cs.kind = CriticalKind::Point;
      cs.base = g.x_star;
      break;
    case 2:
      r.bounded_above = true;
      r.supremum = vertex_value;
      r.attained = true;
      cs.kind = CriticalKind::Ray;
      cs.base = g.x_star;
      cs.direction = pinv_c;
      break;
    case 3:
      mark_unbounded(r);
      cs.kind = CriticalKind::Point;
      cs.base = g.x_star;
      break;
    case 4: {
      const double slack = std::sqrt(1.0 - q);
      r.bounded_above = true;
      r.supremum = vertex_value - g.delta * slack;
      r.attained = true;
      cs.kind = CriticalKind::Point;
      cs.base = g.x_star + (g.delta / slack) * pinv_c;
      break;
    }
    case 5:
      r.bounded_above = true;
      r.supremum = vertex_value;
      r.attained = false;
      break;
    default:
      mark_unbounded(r);
      break;
  }

  if (r.positive_definite) {
    static constexpr CaseTag kTags[] = {CaseTag::PD1, CaseTag::PD2, CaseTag::PD3,
                                        CaseTag::PD4, CaseTag::PD5, CaseTag::PD6};
    r.case_tag = kTags[subcase - 1];
  } else {
    r.case_tag = r.bounded_above ? CaseTag::SemiDefBounded : CaseTag::SemiDefUnbounded;
    if (cs.kind == CriticalKind::Point) cs.kind = CriticalKind::PointPlusNull;
    if (cs.kind == CriticalKind::Ray) cs.kind = CriticalKind::RayPlusNull;
    if (cs.kind != CriticalKind::None) cs.null_basis = spec.null_basis();
  }
  return r;
}

CriticalSet critical_points(const CanonicalForm& g, const TolerancePolicy& tol) {
  return boundedness_report(g, tol).critical_set;
}

RegionClass region_class(const CanonicalForm& g, const TolerancePolicy& tol) {
  return region_class(g, boundedness_report(g, tol), tol);
}

RegionClass region_class(const CanonicalForm& g, const BoundednessReport& report,
                         const TolerancePolicy& tol) {
  if (!report.bounded_above) return {RegionKind::UnboundedNonempty};
  const double band = tol.eq * scale_of(g);
  const double s = report.supremum;
  const bool compact_candidate = report.positive_definite && !report.boundary_flag &&
                                 report.subcase && (*report.subcase == 1 || *report.subcase == 4);
  if (s < -band) return {RegionKind::Empty};
  if (s <= band) {
    if (!report.attained) return {RegionKind::Empty};
    if (compact_candidate) return {RegionKind::Singleton};
    return {RegionKind::UnboundedNonempty};
  }
  return {compact_candidate ? RegionKind::CompactWithInterior : RegionKind::UnboundedNonempty};
}

ContourGrid contour_grid(const CanonicalForm& g, Interval x_range, Interval y_range,
                         std::size_t nx, std::size_t ny) {
  if (g.dim() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "contour grids need a function of two variables");
  }
  if (nx < 2 || ny < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2x2 points");
  if (!std::isfinite(x_range.lo) || !std::isfinite(x_range.hi) || !std::isfinite(y_range.lo) ||
      !std::isfinite(y_range.hi)) {
    throw Error(ErrorKind::NonFinite, "grid range is not finite");
  }
  ContourGrid grid;
  grid.nx = nx;
  grid.ny = ny;
  auto lattice = [](Interval r, std::size_t count) {
    std::vector<double> pts(count);
    const double step = (r.hi - r.lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) pts[i] = r.lo + step * static_cast<double>(i);
    pts.back() = r.hi;
    return pts;
  };
  grid.xs = lattice(x_range, nx);
  grid.ys = lattice(y_range, ny);
  grid.values.reserve(nx * ny);
  Vector x(2);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      x << grid.xs[i], grid.ys[j];
      grid.values.push_back(eval_canonical(g, x));
    }
  }
  return grid;
}

}  // namespace socf::analysis
