#include "otoclab/spinchain/cone.hpp"

#include <numeric>

namespace otoclab::spinchain {

ConeReport butterfly_cone(const ChainOtoc& otoc, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("butterfly_cone: theta must lie in (0, 1)");
  ConeReport rep;
  rep.theta = theta;
  rep.sites = otoc.separations;
  const auto nt = static_cast<Eigen::Index>(otoc.times.size());

  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < otoc.separations.size(); ++j) {
    std::optional<double> hit;
    const auto row = static_cast<Eigen::Index>(j);
    for (Eigen::Index k = 0; k < nt; ++k) {
      const double c = otoc.C(row, k);
      if (c < theta) continue;
      if (k == 0) {
        hit = otoc.times[0];
      } else {
        const double c0 = otoc.C(row, k - 1);
        const double t0 = otoc.times[static_cast<std::size_t>(k - 1)];
        const double t1 = otoc.times[static_cast<std::size_t>(k)];
        hit = t0 + (theta - c0) / (c - c0) * (t1 - t0);
      }
      break;
    }
    rep.arrival.push_back(hit);
    if (hit) {
      xs.push_back(*hit);
      ys.push_back(otoc.separations[j]);
    }
  }

  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] < xs[i - 1]) rep.monotone = false;

  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx > 0.0) rep.velocity = sxy / sxx;
  }
  return rep;
}

ConeReport butterfly_cone(const SpinChainModel& model, std::span<const double> times, double theta) {
  std::vector<int> sites(static_cast<std::size_t>(model.L - 1));
  std::iota(sites.begin(), sites.end(), 1);
  return butterfly_cone(chain_otoc(model, sites, times), theta);
}

}  // namespace otoclab::spinchain
