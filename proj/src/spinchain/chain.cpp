#include "otoclab/spinchain/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace otoclab::spinchain {
namespace {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void validate_sector(int L, int n_up) {
  if (L < 1 || L > 30) throw InvalidArgument("spin chain: L must lie in [1, 30]");
  if (n_up < 0 || n_up > L) throw InvalidArgument("spin chain: n_up must lie in [0, L]");
}

}  // namespace

std::int64_t SpinChainModel::sector_dimension() const { return binomial(L, n_up); }

SpinChainModel make_model(int L, int n_up, double h, std::uint64_t seed, std::uint64_t realization) {
  validate_sector(L, n_up);
  if (!(h >= 0.0) || !std::isfinite(h)) throw InvalidArgument("spin chain: h must be finite and >= 0");
  SpinChainModel m;
  m.L = L;
  m.n_up = n_up;
  m.h = h;
  m.seed = seed;
  m.realization = realization;
  Rng rng(derive_seed(seed, realization));
  m.fields.resize(static_cast<std::size_t>(L));
  for (auto& f : m.fields) f = rng.uniform(-h, h);
  return m;
}

SectorBasis::SectorBasis(int L, int n_up) : L_(L), n_up_(n_up) {
  validate_sector(L, n_up);
  states_.reserve(static_cast<std::size_t>(binomial(L, n_up)));
  for (std::uint32_t s = 0; s < (1u << L); ++s)
    if (std::popcount(s) == n_up) states_.push_back(s);
}

int SectorBasis::index_of(std::uint32_t state) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), state);
  if (it == states_.end() || *it != state) return -1;
  return static_cast<int>(it - states_.begin());
}

SectorOperator build_hamiltonian(const SpinChainModel& model) {
  return build_hamiltonian(model, SectorBasis(model.L, model.n_up));
}

SectorOperator build_hamiltonian(const SpinChainModel& model, const SectorBasis& basis) {
  if (static_cast<int>(model.fields.size()) != model.L)
    throw InvalidArgument("build_hamiltonian: expected one field per site");
  if (basis.L() != model.L || basis.n_up() != model.n_up)
    throw InvalidArgument("build_hamiltonian: basis does not match the model sector");
  const int dim = basis.dimension();
  const double J = model.coupling;
  RMatrix h = RMatrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const std::uint32_t s = basis.states()[static_cast<std::size_t>(col)];
    double diag = 0.0;
    for (int i = 0; i + 1 < model.L; ++i) {
      const bool a = (s >> i) & 1u;
      const bool b = (s >> (i + 1)) & 1u;
      diag += a == b ? 0.25 * J : -0.25 * J;
      if (a != b) {
        const int row = basis.index_of(s ^ (3u << i));
        h(row, col) += 0.5 * J;
      }
    }
    for (int i = 0; i < model.L; ++i)
      diag += model.fields[static_cast<std::size_t>(i)] * (((s >> i) & 1u) ? 0.5 : -0.5);
    h(col, col) += diag;
  }
  return {std::move(h), "H(L=" + std::to_string(model.L) + ",n_up=" + std::to_string(model.n_up) + ")"};
}

RVector sigma_z_diagonal(const SectorBasis& basis, int site) {
  if (site < 0 || site >= basis.L()) throw InvalidArgument("sigma_z: site out of range");
  RVector d(basis.dimension());
  for (int k = 0; k < basis.dimension(); ++k)
    d[k] = ((basis.states()[static_cast<std::size_t>(k)] >> site) & 1u) ? 1.0 : -1.0;
  return d;
}

SectorOperator sigma_z_sector(const SpinChainModel& model, int site) {
  const SectorBasis basis(model.L, model.n_up);
  return {sigma_z_diagonal(basis, site).asDiagonal(), "sigma_z[" + std::to_string(site) + "]"};
}

Eigensystem diagonalize(const SectorOperator& h) {
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h.matrix);
  if (solver.info() != Eigen::Success) throw NumericalError("diagonalize: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ChainOtoc chain_otoc(const SpinChainModel& model, std::span<const int> separations,
                     std::span<const double> times) {
  return chain_otoc(model, diagonalize(build_hamiltonian(model)), separations, times);
}

ChainOtoc chain_otoc(const SpinChainModel& model, const Eigensystem& eig, std::span<const int> separations,
                     std::span<const double> times) {
  const SectorBasis basis(model.L, model.n_up);
  const int dim = basis.dimension();
  if (eig.vectors.rows() != dim || eig.vectors.cols() != dim)
    throw InvalidArgument("chain_otoc: eigensystem does not match the sector");
  for (int l : separations)
    if (l < 1 || l >= model.L) throw InvalidArgument("chain_otoc: separation out of range");

  const RMatrix& q = eig.vectors;
  const RMatrix w = q.transpose() * sigma_z_diagonal(basis, 0).asDiagonal() * q;
  std::vector<RMatrix> v;
  v.reserve(separations.size());
  for (int l : separations) v.push_back(q.transpose() * sigma_z_diagonal(basis, l).asDiagonal() * q);

  ChainOtoc out;
  out.times.assign(times.begin(), times.end());
  out.separations.assign(separations.begin(), separations.end());
  out.C.resize(static_cast<Eigen::Index>(separations.size()), static_cast<Eigen::Index>(times.size()));
  std::vector<double> imag(times.size(), 0.0);
  const auto nt = static_cast<int>(times.size());

#pragma omp parallel
  {
    RMatrix wr(dim, dim), wi(dim, dim), xr(dim, dim), xi(dim, dim);
#pragma omp for schedule(dynamic)
    for (int k = 0; k < nt; ++k) {
      const double t = times[static_cast<std::size_t>(k)];
      // s0(t) in the eigenbasis: w_ab exp(i (E_a - E_b) t)
      for (int b = 0; b < dim; ++b)
        for (int a = 0; a < dim; ++a) {
          const double phase = (eig.energies[a] - eig.energies[b]) * t;
          wr(a, b) = w(a, b) * std::cos(phase);
          wi(a, b) = w(a, b) * std::sin(phase);
        }
      double worst_imag = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        xr.noalias() = wr * v[j];
        xi.noalias() = wi * v[j];
        const double re = xr.cwiseProduct(xr.transpose()).sum() - xi.cwiseProduct(xi.transpose()).sum();
        const double im = 2.0 * xr.cwiseProduct(xi.transpose()).sum();
        out.C(static_cast<Eigen::Index>(j), k) = 1.0 - re / dim;
        worst_imag = std::max(worst_imag, std::abs(im) / dim);
      }
      imag[static_cast<std::size_t>(k)] = worst_imag;
    }
  }
  for (double im : imag) out.max_imag = std::max(out.max_imag, im);

  if (!out.C.allFinite()) throw NumericalError("chain_otoc: non-finite correlator");
  out.meta["L"] = model.L;
  out.meta["n_up"] = model.n_up;
  out.meta["h"] = model.h;
  out.meta["seed"] = model.seed;
  out.meta["realization"] = model.realization;
  out.meta["trace_domain"] = "fixed-magnetization sector";
  out.meta["operators"] = "W=sigma_z[0], V=sigma_z[l]";
  return out;
}

double short_time_prediction(int l, double t) {
  if (l < 1) throw InvalidArgument("short_time_prediction: l must be >= 1");
  if (t < 0.0) throw InvalidArgument("short_time_prediction: t must be >= 0");
  const double fact = std::tgamma(l + 1.0);
  return std::pow(t, 2.0 * l) / (2.0 * fact * fact);
}

std::vector<double> time_grid(double t0, double t1, double dt) {
  if (!(dt > 0.0) || !(t1 >= t0)) throw InvalidArgument("time_grid: need dt > 0 and t1 >= t0");
  const auto n = static_cast<long long>(std::floor((t1 - t0) / dt * (1.0 + 1e-12) + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long long k = 0; k <= n; ++k) out.push_back(t0 + static_cast<double>(k) * dt);
  return out;
}

}  // namespace otoclab::spinchain
