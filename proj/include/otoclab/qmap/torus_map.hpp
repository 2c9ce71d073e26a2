#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "otoclab/common.hpp"

namespace otoclab::qmap {

enum class MapKind { cat, standard, harper };

std::string to_string(MapKind kind);
MapKind map_kind_from_string(const std::string& name);

/// A kicked map of the unit torus.
///
/// Update rules, all reduced mod 1:
///   cat:      p' = p + q - 2 pi K sin(2 pi q),  q' = q + p' + 2 pi K sin(2 pi p')
///   standard: p' = p + (K / 2 pi) sin(2 pi q),  q' = q + p'
///   harper:   p' = p + K sin(2 pi q),           q' = q - K2 sin(2 pi p')   (K2 defaults to K)
struct TorusMap {
  MapKind kind = MapKind::cat;
  double K = 0.0;
  std::optional<double> K2;

  double second_kick() const { return K2.value_or(K); }
  /// One-line description of the update rule, recorded in output metadata.
  std::string convention() const;
};

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/// Jacobian d(q',p')/d(q,p), rows (q', p'), columns (q, p).
using Jacobian = Eigen::Matrix2d;

PhasePoint classical_step(const TorusMap& map, PhasePoint x);
Jacobian tangent_step(const TorusMap& map, PhasePoint x);

struct LyapunovOptions {
  int n_iter = 10000;
  int n_samples = 100;
  int transient = 100;
  std::uint64_t seed = 20180601;
};

struct LyapunovResult {
  double exponent = 0.0;
  /// |estimate at 3/4 of the run - final estimate|, sample averaged.
  double drift = 0.0;
  bool converged = true;
};

using StepFn = std::function<PhasePoint(PhasePoint)>;
using TangentFn = std::function<Jacobian(PhasePoint)>;

/// Largest Lyapunov exponent (nats per step) by tangent-vector iteration with
/// renormalization every step. Flags non-convergence when the drift exceeds 1e-3.
LyapunovResult lyapunov_exponent(const StepFn& step, const TangentFn& tangent,
                                 const LyapunovOptions& options);
LyapunovResult lyapunov_exponent(const TorusMap& map, const LyapunovOptions& options = {});

}  // namespace otoclab::qmap
