#pragma once

#include <span>
#include <vector>

#include "otoclab/common.hpp"

namespace otoclab::chaoskit {

/// Levels closer than the tolerance; `count` is the number of such adjacent pairs.
class DegenerateSpectrum : public InvalidArgument {
 public:
  DegenerateSpectrum(const std::string& what, int count) : InvalidArgument(what), count(count) {}
  int count;
};

struct UnfoldOptions {
  int degree = 7;
  double keep_fraction = 0.6;  ///< central part of the spectrum that is kept
};

/// Spacings of the unfolded central part of a sorted spectrum. The integrated level
/// density is fitted by a polynomial in the energy.
std::vector<double> unfold_spacings(std::span<const double> sorted_energies, const UnfoldOptions& options = {});

/// b(beta) = Gamma((beta + 2) / (beta + 1))^(beta + 1)
double brody_b(double beta);
/// P_beta(s) = (beta + 1) b s^beta exp(-b s^(beta + 1))
double brody_pdf(double s, double beta);

/// Maximum-likelihood Brody parameter over [0, 1.5]. Spacings are rescaled to unit mean first.
double brody_fit(std::span<const double> spacings);

/// Mean of min(s_n, s_{n+1}) / max(s_n, s_{n+1}); no unfolding needed.
double gap_ratio(std::span<const double> sorted_energies);

/// 1 / sum_j |psi_j|^4 per column.
std::vector<double> ipr_per_vector(const RMatrix& vectors);
/// Spectrum-averaged IPR; columns must be normalized to 1e-12.
double ipr(const RMatrix& vectors);
double ipr(const CMatrix& vectors);

}  // namespace otoclab::chaoskit
