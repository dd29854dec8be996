#include "socf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "socf/error.hpp"

namespace socf::oracle {

void ProbeConfig::validate() const {
  if (n_segments < 1 || n_directions < 1) {
    throw Error(ErrorKind::InvalidArgument, "probe counts must be at least 1");
  }
  if (!(t_max > 1.0)) throw Error(ErrorKind::InvalidArgument, "t_max must exceed 1");
  if (!(h_fd > 0.0 && h_fd < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "finite-difference step must lie in (0, 1)");
  }
}

Vector random_normal(Rng& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
  return v;
}

Vector random_unit(Rng& rng, std::size_t n) {
  Vector v = random_normal(rng, n);
  while (v.norm() < 1e-8) v = random_normal(rng, n);
  return v.normalized();
}

Matrix random_orthogonal(Rng& rng, std::size_t m) {
  const auto k = static_cast<Eigen::Index>(m);
  Matrix z(k, k);
  for (Eigen::Index j = 0; j < k; ++j) z.col(j) = random_normal(rng, m);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  // Fix column signs so the distribution is Haar.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

ConcavityProbe concavity_probe(const CanonicalForm& g, const ProbeConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::size_t n = g.dim();
  const double radius = 2.0 * (1.0 + g.x_star.norm());
  ConcavityProbe out;
  out.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < cfg.n_segments; ++s) {
    const Vector x0 = g.x_star + radius * random_normal(rng, n);
    Vector x1 = g.x_star + radius * random_normal(rng, n);
    if ((x1 - x0).norm() == 0.0) x1(0) += 1.0;
    const double f0 = eval_canonical(g, x0);
    const double f1 = eval_canonical(g, x1);
    for (double t : {0.25, 0.5, 0.75}) {
      const double chord = (1.0 - t) * f0 + t * f1;
      const double mid = eval_canonical(g, (1.0 - t) * x0 + t * x1);
      out.worst_violation = std::max(out.worst_violation, chord - mid);
    }
  }
  out.consistent = out.worst_violation <= 1e-9 * scale_of(g);
  return out;
}

BoundednessProbe boundedness_probe(const CanonicalForm& g, const ProbeConfig& cfg,
                                   const TolerancePolicy& tol) {
  cfg.validate();
  Rng rng(cfg.seed);
  const std::size_t n = g.dim();
  const linalg::PsdSpectrum spec = linalg::psd_spectrum(g.M, tol);

  std::vector<Vector> directions;
  directions.reserve(cfg.n_directions + 1 + 2 * n);
  for (std::size_t i = 0; i < cfg.n_directions; ++i) directions.push_back(random_unit(rng, n));

  BoundednessProbe out;
  const Vector pinv_c = spec.pinv() * g.c;
  if (pinv_c.norm() > tol.zero) {
    directions.push_back(pinv_c.normalized());
    out.distinguished_slope = asymptote(g, directions.back(), tol).slope;
  }
  const Matrix null_basis = spec.null_basis();
  for (Eigen::Index j = 0; j < null_basis.cols(); ++j) {
    directions.push_back(null_basis.col(j));
    directions.push_back(-null_basis.col(j));
  }

  const double allowance = tol.eq * scale_of(g);
  out.max_slope = -std::numeric_limits<double>::infinity();
  out.max_seen = -std::numeric_limits<double>::infinity();
  for (const Vector& v : directions) {
    out.max_slope = std::max(out.max_slope, asymptote(g, v, tol).slope);
    for (double t : {1.0, 10.0, cfg.t_max}) {
      out.max_seen = std::max(out.max_seen, eval_canonical(g, g.x_star + t * v));
    }
  }
  out.claims_bounded = out.max_slope <= allowance;
  return out;
}

namespace {

void require_smooth_at(const CanonicalForm& g, const Vector& x, const TolerancePolicy& tol) {
  if (g.delta != 0.0 || linalg::max_abs(g.M) <= tol.zero) return;
  const Vector shift = x - g.x_star;
  if (shift.dot(g.M * shift) <= tol.zero) {
    throw Error(ErrorKind::NotDifferentiable, "finite-difference stencil touches the cone vertex");
  }
}

}  // namespace

Vector finite_diff_gradient(const CanonicalForm& g, const Vector& x, double h,
                            const TolerancePolicy& tol) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  if (static_cast<std::size_t>(x.size()) != g.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "x has the wrong dimension");
  }
  require_smooth_at(g, x, tol);
  Vector grad(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector xp = x;
    Vector xm = x;
    xp(i) += h;
    xm(i) -= h;
    require_smooth_at(g, xp, tol);
    require_smooth_at(g, xm, tol);
    grad(i) = (eval_canonical(g, xp) - eval_canonical(g, xm)) / (2.0 * h);
  }
  return grad;
}

Matrix finite_diff_hessian(const CanonicalForm& g, const Vector& x, double h,
                           const TolerancePolicy& tol) {
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  if (static_cast<std::size_t>(x.size()) != g.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "x has the wrong dimension");
  }
  const auto n = x.size();
  Matrix hess(n, n);
  auto f = [&](const Vector& p) {
    require_smooth_at(g, p, tol);
    return eval_canonical(g, p);
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Vector pp = x, pm = x, mp = x, mm = x;
      pp(i) += h; pp(j) += h;
      pm(i) += h; pm(j) -= h;
      mp(i) -= h; mp(j) += h;
      mm(i) -= h; mm(j) -= h;
      hess(i, j) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
      hess(j, i) = hess(i, j);
    }
  }
  return hess;
}

GridMax grid_max(const CanonicalForm& g, const std::vector<analysis::Interval>& box,
                 std::size_t n_per_axis, std::size_t refine_rounds) {
  const std::size_t n = g.dim();
  if (n > 3) throw Error(ErrorKind::DimensionTooLarge, "grid search supports n <= 3");
  if (box.size() != n) throw Error(ErrorKind::DimensionMismatch, "box has the wrong dimension");
  if (n_per_axis < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 points per axis");
  for (const auto& iv : box) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.hi < iv.lo) {
      throw Error(ErrorKind::InvalidArgument, "box must be finite and ordered");
    }
  }

  GridMax best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<analysis::Interval> current = box;
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= n_per_axis;

  for (std::size_t round = 0; round <= refine_rounds; ++round) {
    Vector x(static_cast<Eigen::Index>(n));
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = rem % n_per_axis;
        rem /= n_per_axis;
        const double frac = static_cast<double>(i) / static_cast<double>(n_per_axis - 1);
        x(static_cast<Eigen::Index>(k)) = current[k].lo + frac * (current[k].hi - current[k].lo);
      }
      const double value = eval_canonical(g, x);
      if (value > best.value) {
        best.value = value;
        best.argmax = x;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double half = (current[k].hi - current[k].lo) / 8.0;
      const double center = best.argmax(static_cast<Eigen::Index>(k));
      current[k].lo = std::max(box[k].lo, center - half);
      current[k].hi = std::min(box[k].hi, center + half);
    }
  }
  return best;
}

InstanceSpec draw_spec(Rng& rng) {
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_int_distribution<int> bucket(0, 2);
  std::bernoulli_distribution third(1.0 / 3.0);
  std::bernoulli_distribution half(0.5);
  InstanceSpec spec;
  spec.n = static_cast<std::size_t>(dim(rng));
  spec.singular = third(rng);
  spec.cone = half(rng);
  spec.bucket = static_cast<QBucket>(bucket(rng));
  spec.c_in_range = !spec.singular || !third(rng);
  return spec;
}

CanonicalForm make_instance(Rng& rng, const InstanceSpec& spec) {
  const std::size_t n = spec.n;
  const auto k = static_cast<Eigen::Index>(n);
  Matrix r(k, k);
  for (Eigen::Index j = 0; j < k; ++j) r.col(j) = random_normal(rng, n);

  CanonicalForm g;
  Matrix m = r.transpose() * r;
  if (spec.singular) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    Vector lambda = eig.eigenvalues();
    std::uniform_int_distribution<Eigen::Index> zeroed(1, k);
    const Eigen::Index nz = zeroed(rng);
    lambda.head(nz).setZero();
    m = eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().transpose();
  } else {
    m += 0.1 * Matrix::Identity(k, k);
  }
  g.M = 0.5 * (m + m.transpose());

  const linalg::PsdSpectrum psd = linalg::psd_spectrum(g.M);
  Vector c = random_normal(rng, n);
  if (!psd.zero()) {
    c = psd.projector() * c;
    double target = 1.0;
    if (spec.bucket == QBucket::Below) {
      target = std::uniform_real_distribution<double>(0.05, 0.8)(rng);
    } else if (spec.bucket == QBucket::Above) {
      target = std::uniform_real_distribution<double>(1.3, 3.0)(rng);
    }
    const double q = c.dot(psd.pinv() * c);
    if (q > 1e-12) c *= std::sqrt(target / q);
    if (!spec.c_in_range && psd.rank < n) c += 0.5 * psd.null_basis().col(0);
  } else if (spec.c_in_range) {
    c.setZero();
  }
  g.c = c;
  g.d = std::normal_distribution<double>(0.0, 1.0)(rng);
  g.delta = spec.cone ? 0.0 : std::uniform_real_distribution<double>(0.2, 2.0)(rng);
  g.x_star = random_normal(rng, n);
  return g;
}

CanonicalForm random_canonical(Rng& rng) {
  const InstanceSpec spec = draw_spec(rng);
  return make_instance(rng, spec);
}

GeneralForm random_general(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> rows(1, n + 2);
  std::uniform_int_distribution<int> variant(0, 3);
  const std::size_t m = rows(rng);
  GeneralForm f;
  f.A.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < f.A.cols(); ++j) f.A.col(j) = random_normal(rng, m);
  const int v = variant(rng);
  if (v == 1 && n > 1) f.A.col(0).setZero();
  f.b = random_normal(rng, m);
  if (v == 2) f.b = f.A * random_normal(rng, n);
  f.c = random_normal(rng, n);
  f.d = std::normal_distribution<double>(0.0, 1.0)(rng);
  return f;
}

}  // namespace socf::oracle
