#pragma once

#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "otoclab/common.hpp"

namespace otoclab::chaoskit {

/// Closed window [begin, end] in the time units of the series.
struct TimeWindow {
  double begin = 200.0;
  double end = 400.0;
};

/// The windowed spectrum is always rectangular (no taper); these switch the remaining choices.
struct SpectralOptions {
  bool subtract_mean = true;
  bool exclude_zero_bin = true;
  int min_samples = 16;
};

/// Samples of `values` whose time lies inside the window.
std::vector<double> select_window(std::span<const double> times, std::span<const double> values,
                                  TimeWindow window);

/// Participation number of the normalized one-sided power spectrum, 1 / sum_k p_k^2.
/// Returns nullopt (the degenerate marker) when the windowed signal carries no power.
std::optional<double> xi_otoc(std::span<const double> windowed, const SpectralOptions& options = {});

/// Population standard deviation of the windowed series.
double sigma_otoc(std::span<const double> windowed);

struct IndicatorReport {
  std::optional<double> xi_otoc;  ///< nullopt marks a degenerate (power-free) window
  double sigma_otoc = 0.0;
  TimeWindow window;
  int samples = 0;
  std::optional<double> brody_beta;
  std::optional<double> mean_gap_ratio;
  std::optional<double> ipr;
  nlohmann::json provenance = nlohmann::json::object();
};

struct SpectrumInput {
  std::span<const double> energies;  ///< ascending, one symmetry sector
  const RMatrix* vectors = nullptr;  ///< optional eigenvectors for the IPR
};

IndicatorReport indicator_report(std::span<const double> times, std::span<const double> series,
                                 TimeWindow window, const std::optional<SpectrumInput>& spectrum = std::nullopt,
                                 const SpectralOptions& options = {});

}  // namespace otoclab::chaoskit
