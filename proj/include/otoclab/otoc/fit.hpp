#pragma once

#include <span>

#include "otoclab/otoc/engine.hpp"

namespace otoclab::otoc {

/// Closed time interval [begin, end] selecting the samples of a fit.
struct Window {
  double begin = 0.0;
  double end = 0.0;
};

/// Least-squares line through (t, ln y).
struct RateFit {
  double rate = 0.0;  ///< slope of ln y versus t
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};

/// Fits ln y = intercept + rate * t over the samples with t inside the window.
/// Throws InvalidArgument with fewer than 4 samples or any y <= 0 in the window.
RateFit fit_log_linear(std::span<const double> t, std::span<const double> y, Window window);

/// Growth rate Lambda of C(t); about twice the Lyapunov exponent in the chaotic regime.
RateFit fit_growth_rate(const OtocSeries& series, Window window);

/// Decay rate of |F(t)|; the implied resonance modulus is exp(rate / 2).
RateFit fit_decay_rate(std::span<const double> t, std::span<const double> f_magnitude, Window window);

double resonance_modulus(const RateFit& decay);

/// [2, floor(t_E) - 1]
Window default_growth_window(const EhrenfestEstimate& te);
/// [ceil(t_E) + 1, ceil(t_E) + 15]
Window default_decay_window(const EhrenfestEstimate& te);

}  // namespace otoclab::otoc
