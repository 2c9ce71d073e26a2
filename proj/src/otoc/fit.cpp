#include "otoclab/otoc/fit.hpp"

#include <cmath>
#include <vector>

namespace otoclab::otoc {

RateFit fit_log_linear(std::span<const double> t, std::span<const double> y, Window window) {
  if (t.size() != y.size()) throw InvalidArgument("fit_log_linear: size mismatch");
  if (!(window.end > window.begin)) throw InvalidArgument("fit_log_linear: degenerate window");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.begin || t[i] > window.end) continue;
    if (!(y[i] > 0.0))
      throw InvalidArgument("fit_log_linear: non-positive value at t=" + std::to_string(t[i]));
    xs.push_back(t[i]);
    ys.push_back(std::log(y[i]));
  }
  if (xs.size() < 4) throw InvalidArgument("fit_log_linear: fewer than 4 points in window");

  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_log_linear: degenerate window");

  RateFit fit;
  fit.rate = sxy / sxx;
  fit.intercept = my - fit.rate * mx;
  fit.points = static_cast<int>(xs.size());
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.rate * xs[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

RateFit fit_growth_rate(const OtocSeries& series, Window window) {
  const auto t = series.times_as_double();
  return fit_log_linear(t, series.C, window);
}

RateFit fit_decay_rate(std::span<const double> t, std::span<const double> f_magnitude, Window window) {
  return fit_log_linear(t, f_magnitude, window);
}

double resonance_modulus(const RateFit& decay) { return std::exp(decay.rate / 2.0); }

Window default_growth_window(const EhrenfestEstimate& te) {
  return {2.0, std::floor(te.t_E) - 1.0};
}

Window default_decay_window(const EhrenfestEstimate& te) {
  const double c = std::ceil(te.t_E);
  return {c + 1.0, c + 15.0};
}

}  // namespace otoclab::otoc
