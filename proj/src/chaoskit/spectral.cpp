#include "otoclab/chaoskit/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

namespace otoclab::chaoskit {

std::vector<double> unfold_spacings(std::span<const double> e, const UnfoldOptions& options) {
  const auto n = static_cast<int>(e.size());
  if (n < options.degree + 2) throw InvalidArgument("unfold_spacings: too few levels for the fit degree");
  if (!(options.keep_fraction > 0.0 && options.keep_fraction <= 1.0))
    throw InvalidArgument("unfold_spacings: keep_fraction must lie in (0, 1]");
  for (int i = 1; i < n; ++i)
    if (e[static_cast<std::size_t>(i)] < e[static_cast<std::size_t>(i - 1)])
      throw InvalidArgument("unfold_spacings: energies must be sorted ascending");

  // fit the staircase N(E) = i with the energy mapped onto [-1, 1] for conditioning
  const double lo = e.front();
  const double hi = e.back();
  const double half = (hi - lo) / 2.0;
  if (!(half > 0.0)) throw InvalidArgument("unfold_spacings: spectrum has zero width");
  const double mid = (hi + lo) / 2.0;
  const int deg = options.degree;
  RMatrix a(n, deg + 1);
  RVector b(n);
  for (int i = 0; i < n; ++i) {
    const double x = (e[static_cast<std::size_t>(i)] - mid) / half;
    double pw = 1.0;
    for (int k = 0; k <= deg; ++k) {
      a(i, k) = pw;
      pw *= x;
    }
    b[i] = i;
  }
  const RVector coef = a.colPivHouseholderQr().solve(b);
  const RVector unfolded = a * coef;

  const double drop = (1.0 - options.keep_fraction) / 2.0;
  const int first = static_cast<int>(std::floor(drop * n));
  const int last = n - first;  // exclusive
  std::vector<double> s;
  for (int i = first; i + 1 < last; ++i) s.push_back(unfolded[i + 1] - unfolded[i]);
  return s;
}

double brody_b(double beta) { return std::pow(std::tgamma((beta + 2.0) / (beta + 1.0)), beta + 1.0); }

double brody_pdf(double s, double beta) {
  const double b = brody_b(beta);
  return (beta + 1.0) * b * std::pow(s, beta) * std::exp(-b * std::pow(s, beta + 1.0));
}

double brody_fit(std::span<const double> spacings) {
  if (spacings.size() < 200) throw InvalidArgument("brody_fit: need at least 200 spacings");
  double mean = 0.0;
  for (double s : spacings) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("brody_fit: spacings must be finite and >= 0");
    mean += s;
  }
  mean /= static_cast<double>(spacings.size());
  const auto [mn, mx] = std::minmax_element(spacings.begin(), spacings.end());
  if (!(mean > 0.0) || *mx - *mn <= 1e-12 * mean) throw InvalidArgument("brody_fit: degenerate spacings");

  std::vector<double> s(spacings.begin(), spacings.end());
  double sum_log = 0.0;
  for (auto& v : s) {
    v /= mean;
    // exact zeros would pin the likelihood at beta = 0; treat them as the smallest resolvable gap
    v = std::max(v, 1e-300);
    sum_log += std::log(v);
  }
  const double n = static_cast<double>(s.size());
  auto neg_log_likelihood = [&](double beta) {
    const double b = brody_b(beta);
    double tail = 0.0;
    for (double v : s) tail += std::pow(v, beta + 1.0);
    return -(n * std::log((beta + 1.0) * b) + beta * sum_log - b * tail);
  };

  std::uintmax_t iterations = 200;
  const auto result = boost::math::tools::brent_find_minima(neg_log_likelihood, 0.0, 1.5, 40, iterations);
  if (iterations >= 200 || !std::isfinite(result.second))
    throw NumericalError("brody_fit: likelihood maximization did not converge");
  return result.first;
}

double gap_ratio(std::span<const double> e) {
  const auto n = static_cast<int>(e.size());
  if (n < 50) throw InvalidArgument("gap_ratio: need at least 50 levels");
  int degenerate = 0;
  for (int i = 1; i < n; ++i) {
    const double s = e[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>(i - 1)];
    if (s < 0.0) throw InvalidArgument("gap_ratio: energies must be sorted ascending");
    if (s <= 1e-12) ++degenerate;
  }
  if (degenerate > 0)
    throw DegenerateSpectrum("gap_ratio: " + std::to_string(degenerate) + " degenerate level pair(s)", degenerate);
  double sum = 0.0;
  for (int i = 1; i + 1 < n; ++i) {
    const double s0 = e[static_cast<std::size_t>(i)] - e[static_cast<std::size_t>(i - 1)];
    const double s1 = e[static_cast<std::size_t>(i + 1)] - e[static_cast<std::size_t>(i)];
    sum += std::min(s0, s1) / std::max(s0, s1);
  }
  return sum / (n - 2);
}

namespace {

template <typename Matrix>
std::vector<double> ipr_columns(const Matrix& v) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(v.cols()));
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    double norm2 = 0.0, p4 = 0.0;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double a2 = std::norm(v(i, j));
      norm2 += a2;
      p4 += a2 * a2;
    }
    if (std::abs(norm2 - 1.0) > 1e-12)
      throw InvalidArgument("ipr: column " + std::to_string(j) + " is not normalized");
    out.push_back(1.0 / p4);
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) throw InvalidArgument("ipr: no vectors");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> ipr_per_vector(const RMatrix& vectors) { return ipr_columns(vectors); }
double ipr(const RMatrix& vectors) { return mean_of(ipr_columns(vectors)); }
double ipr(const CMatrix& vectors) { return mean_of(ipr_columns(vectors)); }

}  // namespace otoclab::chaoskit
