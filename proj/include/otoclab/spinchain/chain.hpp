#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "otoclab/common.hpp"

namespace otoclab::spinchain {

/// Open Heisenberg spin-1/2 chain with a random z field,
///   H = J sum_i (S^x_i S^x_{i+1} + S^y_i S^y_{i+1} + S^z_i S^z_{i+1}) + sum_i h_i S^z_i,
/// restricted to the sector with n_up spins up. Site i is bit i of a basis state.
struct SpinChainModel {
  int L = 0;
  int n_up = 0;
  double h = 0.0;
  std::vector<double> fields;  ///< h_i, uniform on [-h, h]
  std::uint64_t seed = 0;
  std::uint64_t realization = 0;
  double coupling = 1.0;  ///< J; zero gives a decoupled chain

  std::int64_t sector_dimension() const;
};

/// Draws h_i from the stream derived from (seed, realization); bit-identical across runs.
SpinChainModel make_model(int L, int n_up, double h, std::uint64_t seed, std::uint64_t realization = 0);

/// Basis states of the fixed-magnetization sector, in ascending bit order.
class SectorBasis {
 public:
  SectorBasis(int L, int n_up);

  int L() const { return L_; }
  int n_up() const { return n_up_; }
  int dimension() const { return static_cast<int>(states_.size()); }
  const std::vector<std::uint32_t>& states() const { return states_; }
  /// Index of a state in the sector; -1 if absent.
  int index_of(std::uint32_t state) const;

 private:
  int L_;
  int n_up_;
  std::vector<std::uint32_t> states_;
};

struct SectorOperator {
  RMatrix matrix;
  std::string label;
};

SectorOperator build_hamiltonian(const SpinChainModel& model);
SectorOperator build_hamiltonian(const SpinChainModel& model, const SectorBasis& basis);

/// Pauli sigma^z of one site, diagonal with entries +-1 in the sector basis.
SectorOperator sigma_z_sector(const SpinChainModel& model, int site);
RVector sigma_z_diagonal(const SectorBasis& basis, int site);

struct Eigensystem {
  RVector energies;  ///< ascending
  RMatrix vectors;   ///< columns are eigenvectors
};

/// Dense symmetric eigendecomposition; throws NumericalError on failure.
Eigensystem diagonalize(const SectorOperator& h);

/// C(l, t) = 1 - Re Tr[s0(t) sl s0(t) sl] / D with s = sigma^z, trace over the sector.
struct ChainOtoc {
  std::vector<double> times;
  std::vector<int> separations;
  RMatrix C;  ///< rows follow `separations`, columns follow `times`
  double max_imag = 0.0;
  nlohmann::json meta = nlohmann::json::object();
};

ChainOtoc chain_otoc(const SpinChainModel& model, std::span<const int> separations,
                     std::span<const double> times);
ChainOtoc chain_otoc(const SpinChainModel& model, const Eigensystem& eig, std::span<const int> separations,
                     std::span<const double> times);

/// t^{2l} / (2 (l!)^2)
double short_time_prediction(int l, double t);

/// t0, t0 + dt, ... up to and including t1 (within dt * 1e-9).
std::vector<double> time_grid(double t0, double t1, double dt);

}  // namespace otoclab::spinchain
