#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "socf/analysis.hpp"
#include "socf/forms.hpp"

// Brute-force checks that never call into the closed-form classifiers.
namespace socf::oracle {

using Rng = std::mt19937_64;

struct ProbeConfig {
  std::size_t n_segments = 200;
  std::size_t n_directions = 200;
  double t_max = 1e6;
  std::uint64_t seed = 42;
  double h_fd = 1e-5;

  void validate() const;
};

struct ConcavityProbe {
  bool consistent = true;
  /// Largest value of (1-t) f(x0) + t f(x1) - f((1-t) x0 + t x1) seen.
  /// Negative means every sampled chord was strictly below the graph.
  double worst_violation = 0.0;
};

struct BoundednessProbe {
  bool claims_bounded = true;
  double max_seen = 0.0;
  /// Largest asymptote slope over all probed directions.
  double max_slope = 0.0;
  /// Asymptote slope along M^+ c, when that vector is nonzero.
  std::optional<double> distinguished_slope;
};

struct GridMax {
  Vector argmax;
  double value = 0.0;
};

ConcavityProbe concavity_probe(const CanonicalForm& g, const ProbeConfig& cfg = {});

/// Judges boundedness from asymptote slopes along random unit directions,
/// the direction M^+ c and both signs of every null-space basis vector.
BoundednessProbe boundedness_probe(const CanonicalForm& g, const ProbeConfig& cfg = {},
                                   const TolerancePolicy& tol = {});

Vector finite_diff_gradient(const CanonicalForm& g, const Vector& x, double h,
                            const TolerancePolicy& tol = {});
Matrix finite_diff_hessian(const CanonicalForm& g, const Vector& x, double h,
                           const TolerancePolicy& tol = {});

/// Grid search on `box` refined `refine_rounds` times, each round shrinking
/// the box by 4 around the incumbent (clipped to the original box).
GridMax grid_max(const CanonicalForm& g, const std::vector<analysis::Interval>& box,
                 std::size_t n_per_axis, std::size_t refine_rounds);

// Seeded instance generation.

enum class QBucket { Below, AtOne, Above };

struct InstanceSpec {
  std::size_t n = 2;
  bool singular = false;
  bool cone = false;  // delta == 0
  QBucket bucket = QBucket::Below;
  bool c_in_range = true;
};

InstanceSpec draw_spec(Rng& rng);

/// M = R^T R + 0.1 I, or R^T R with some eigenvalues zeroed when singular;
/// c rescaled so that c^T M^+ c lands in the requested bucket.
CanonicalForm make_instance(Rng& rng, const InstanceSpec& spec);
CanonicalForm random_canonical(Rng& rng);

/// Gaussian (A, b) with occasional rank deficiency and b in col(A).
GeneralForm random_general(Rng& rng, std::size_t n);

Matrix random_orthogonal(Rng& rng, std::size_t m);
Vector random_unit(Rng& rng, std::size_t n);
Vector random_normal(Rng& rng, std::size_t n);

}  // namespace socf::oracle
