#pragma once

#include <optional>
#include <span>
#include <vector>

#include "otoclab/spinchain/chain.hpp"

namespace otoclab::spinchain {

struct ConeReport {
  double theta = 0.5;
  std::vector<int> sites;
  /// First time C(l, t) >= theta, linearly interpolated; empty when C never crosses.
  std::vector<std::optional<double>> arrival;
  /// Slope of l against arrival time; empty with fewer than two crossings.
  std::optional<double> velocity;
  /// Diagnostic only: arrival times non-decreasing over the crossing sites.
  bool monotone = true;
};

ConeReport butterfly_cone(const ChainOtoc& otoc, double theta);
/// Computes C(l, t) for l = 1 .. L-1 and extracts the cone.
ConeReport butterfly_cone(const SpinChainModel& model, std::span<const double> times, double theta);

}  // namespace otoclab::spinchain
