#include "otoclab/chaoskit/indicators.hpp"

#include <algorithm>
#include <cmath>

#include "otoclab/chaoskit/spectral.hpp"
#include "otoclab/kernels/fft.hpp"

namespace otoclab::chaoskit {

std::vector<double> select_window(std::span<const double> times, std::span<const double> values,
                                  TimeWindow window) {
  if (times.size() != values.size()) throw InvalidArgument("select_window: size mismatch");
  std::vector<double> out;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] >= window.begin && times[i] <= window.end) out.push_back(values[i]);
  return out;
}

std::optional<double> xi_otoc(std::span<const double> windowed, const SpectralOptions& options) {
  const auto w = static_cast<int>(windowed.size());
  if (w < options.min_samples)
    throw InvalidArgument("xi_otoc: window has " + std::to_string(w) + " samples, need " +
                          std::to_string(options.min_samples));
  double mean = 0.0;
  if (options.subtract_mean) {
    for (double c : windowed) mean += c;
    mean /= w;
  }
  CVector x(w);
  for (int i = 0; i < w; ++i) x[i] = windowed[static_cast<std::size_t>(i)] - mean;
  const CVector spec = kernels::dft(x, kernels::FftDirection::forward);

  const int first = options.exclude_zero_bin ? 1 : 0;
  double total = 0.0;
  std::vector<double> power;
  for (int k = first; k <= w / 2; ++k) {
    power.push_back(std::norm(spec[k]));
    total += power.back();
  }
  // relative to the signal scale, so rounding residue of a constant reads as no power
  double scale = 0.0;
  for (double c : windowed) scale = std::max(scale, std::abs(c));
  if (!(total > 1e-24 * w * w * std::max(scale * scale, 1e-300))) return std::nullopt;

  double sum_sq = 0.0;
  for (double p : power) sum_sq += (p / total) * (p / total);
  return 1.0 / sum_sq;
}

double sigma_otoc(std::span<const double> windowed) {
  if (windowed.size() < 2) throw InvalidArgument("sigma_otoc: window needs at least 2 samples");
  const auto n = static_cast<double>(windowed.size());
  double mean = 0.0;
  for (double c : windowed) mean += c;
  mean /= n;
  double var = 0.0;
  for (double c : windowed) var += (c - mean) * (c - mean);
  return std::sqrt(var / n);
}

IndicatorReport indicator_report(std::span<const double> times, std::span<const double> series,
                                 TimeWindow window, const std::optional<SpectrumInput>& spectrum,
                                 const SpectralOptions& options) {
  const std::vector<double> w = select_window(times, series, window);
  IndicatorReport rep;
  rep.window = window;
  rep.samples = static_cast<int>(w.size());
  rep.xi_otoc = xi_otoc(w, options);
  rep.sigma_otoc = sigma_otoc(w);
  rep.provenance["window"] = {window.begin, window.end};
  rep.provenance["samples"] = rep.samples;
  rep.provenance["spectrum"] = "rectangular window, mean subtracted, one-sided, zero bin excluded";
  if (spectrum) {
    const auto spacings = unfold_spacings(spectrum->energies);
    // small sectors leave too few central spacings for a meaningful fit
    if (spacings.size() >= 200)
      rep.brody_beta = brody_fit(spacings);
    else
      rep.provenance["brody"] = "omitted: " + std::to_string(spacings.size()) + " unfolded spacings, need 200";
    rep.mean_gap_ratio = gap_ratio(spectrum->energies);
    if (spectrum->vectors != nullptr) rep.ipr = ipr(*spectrum->vectors);
    rep.provenance["unfolding"] = "degree-7 polynomial staircase fit, central 60%";
  }
  return rep;
}

}  // namespace otoclab::chaoskit
