#include "otoclab/qmap/torus_map.hpp"

#include <algorithm>
#include <cmath>

namespace otoclab::qmap {
namespace {

double wrap(double x) {
  double r = x - std::floor(x);
  // floor can round a tiny negative value up to exactly 1.0
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::cat: return "cat";
    case MapKind::standard: return "standard";
    case MapKind::harper: return "harper";
  }
  return "unknown";
}

MapKind map_kind_from_string(const std::string& name) {
  if (name == "cat") return MapKind::cat;
  if (name == "standard") return MapKind::standard;
  if (name == "harper") return MapKind::harper;
  throw InvalidArgument("unknown map kind '" + name + "' (expected cat, standard or harper)");
}

std::string TorusMap::convention() const {
  switch (kind) {
    case MapKind::cat:
      return "p'=p+q-2*pi*K*sin(2*pi*q); q'=q+p'+2*pi*K*sin(2*pi*p') mod 1";
    case MapKind::standard:
      return "p'=p+(K/(2*pi))*sin(2*pi*q); q'=q+p' mod 1";
    case MapKind::harper:
      return "p'=p+K*sin(2*pi*q); q'=q-K2*sin(2*pi*p') mod 1";
  }
  return {};
}

PhasePoint classical_step(const TorusMap& map, PhasePoint x) {
  const double K = map.K;
  switch (map.kind) {
    case MapKind::cat: {
      const double p1 = x.p + x.q - kTwoPi * K * std::sin(kTwoPi * x.q);
      const double q1 = x.q + p1 + kTwoPi * K * std::sin(kTwoPi * p1);
      return {wrap(q1), wrap(p1)};
    }
    case MapKind::standard: {
      const double p1 = x.p + K / kTwoPi * std::sin(kTwoPi * x.q);
      return {wrap(x.q + p1), wrap(p1)};
    }
    case MapKind::harper: {
      const double p1 = x.p + K * std::sin(kTwoPi * x.q);
      const double q1 = x.q - map.second_kick() * std::sin(kTwoPi * p1);
      return {wrap(q1), wrap(p1)};
    }
  }
  return x;
}

Jacobian tangent_step(const TorusMap& map, PhasePoint x) {
  const double K = map.K;
  Jacobian j;
  switch (map.kind) {
    case MapKind::cat: {
      const double p1 = x.p + x.q - kTwoPi * K * std::sin(kTwoPi * x.q);
      const double dp_dq = 1.0 - kTwoPi * kTwoPi * K * std::cos(kTwoPi * x.q);
      const double s = 1.0 + kTwoPi * kTwoPi * K * std::cos(kTwoPi * p1);
      j << 1.0 + s * dp_dq, s, dp_dq, 1.0;
      break;
    }
    case MapKind::standard: {
      const double a = K * std::cos(kTwoPi * x.q);
      j << 1.0 + a, 1.0, a, 1.0;
      break;
    }
    case MapKind::harper: {
      const double p1 = x.p + K * std::sin(kTwoPi * x.q);
      const double a = kTwoPi * K * std::cos(kTwoPi * x.q);
      const double s = -kTwoPi * map.second_kick() * std::cos(kTwoPi * p1);
      j << 1.0 + s * a, s, a, 1.0;
      break;
    }
  }
  return j;
}

LyapunovResult lyapunov_exponent(const StepFn& step, const TangentFn& tangent,
                                 const LyapunovOptions& options) {
  if (options.n_iter < 100) throw InvalidArgument("lyapunov_exponent: n_iter must be >= 100");
  if (options.n_samples < 1) throw InvalidArgument("lyapunov_exponent: n_samples must be >= 1");
  if (options.transient < 0 || options.transient >= options.n_iter)
    throw InvalidArgument("lyapunov_exponent: transient must lie in [0, n_iter)");

  const int measured = options.n_iter - options.transient;
  const int checkpoint = options.transient + std::max(1, (3 * measured) / 4);
  Rng rng(derive_seed(options.seed));

  double total = 0.0;
  double drift = 0.0;
  for (int s = 0; s < options.n_samples; ++s) {
    PhasePoint x{rng.uniform(), rng.uniform()};
    const double angle = kTwoPi * rng.uniform();
    Eigen::Vector2d v(std::cos(angle), std::sin(angle));
    double log_sum = 0.0;
    double at_checkpoint = 0.0;
    for (int it = 0; it < options.n_iter; ++it) {
      v = tangent(x) * v;
      x = step(x);
      const double norm = v.norm();
      if (!std::isfinite(norm) || norm == 0.0)
        throw NumericalError("lyapunov_exponent: tangent vector degenerated");
      v /= norm;
      if (it >= options.transient) log_sum += std::log(norm);
      if (it + 1 == checkpoint) at_checkpoint = log_sum / (checkpoint - options.transient);
    }
    const double estimate = log_sum / measured;
    total += estimate;
    drift += std::abs(estimate - at_checkpoint);
  }

  LyapunovResult out;
  out.exponent = total / options.n_samples;
  out.drift = drift / options.n_samples;
  out.converged = out.drift <= 1e-3;
  return out;
}

LyapunovResult lyapunov_exponent(const TorusMap& map, const LyapunovOptions& options) {
  return lyapunov_exponent([&map](PhasePoint x) { return classical_step(map, x); },
                           [&map](PhasePoint x) { return tangent_step(map, x); }, options);
}

}  // namespace otoclab::qmap
