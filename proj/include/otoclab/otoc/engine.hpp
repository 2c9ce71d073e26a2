#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "otoclab/common.hpp"
#include "otoclab/kernels/conjugation.hpp"
#include "otoclab/qmap/int_matrix.hpp"
#include "otoclab/qmap/quantize.hpp"

namespace otoclab::otoc {

/// C(t), F(t), D(t), I(t) on an integer time grid; all traces normalized by N.
struct OtocSeries {
  std::vector<int> times;
  std::vector<double> C;
  std::vector<cplx> F;
  std::vector<double> D;
  std::vector<double> I;
  nlohmann::json meta = nlohmann::json::object();

  std::size_t size() const { return times.size(); }
  void push_back(int t, const kernels::CorrelatorTraces& tr);
  std::vector<double> times_as_double() const;
  std::vector<double> abs_F() const;
};

/// One Heisenberg step W <- U^dagger W U of a map.
class Propagator {
 public:
  virtual ~Propagator() = default;
  virtual int dimension() const = 0;
  virtual void heisenberg(CMatrix& w) const = 0;
  virtual std::string description() const = 0;
};

class DensePropagator final : public Propagator {
 public:
  explicit DensePropagator(CMatrix u);
  int dimension() const override { return static_cast<int>(u_.rows()); }
  void heisenberg(CMatrix& w) const override;
  std::string description() const override { return "dense"; }

 private:
  CMatrix u_;
};

/// Split-step propagation of a quantized kicked map; O(N^2 log N) per step.
class SplitStepPropagator final : public Propagator {
 public:
  explicit SplitStepPropagator(kernels::SplitStepFactors factors);
  explicit SplitStepPropagator(const qmap::QuantizedMap& qm);
  int dimension() const override { return conj_.dimension(); }
  void heisenberg(CMatrix& w) const override { conj_.heisenberg(w); }
  std::string description() const override { return "split-step-fft"; }

 private:
  kernels::SplitStepConjugator conj_;
};

/// The static operator V of the correlator. Diagonal forms take the O(N^2) trace path.
struct Observable {
  enum class Form { dense, position_diagonal, momentum_diagonal };

  Form form = Form::dense;
  CMatrix matrix;    ///< used when form == dense
  CVector diagonal;  ///< eigenvalues in the position or momentum basis
  std::string name;

  static Observable dense(CMatrix m, std::string name = "V");
  static Observable position_diagonal(CVector d, std::string name = "V");
  static Observable momentum_diagonal(CVector d, std::string name = "V");

  int dimension() const;
  /// Position-basis matrix for every form.
  CMatrix to_matrix() const;
};

/// Position operator Q = (U - U^dagger)/2i as a position-diagonal observable.
Observable position_observable(int n);
/// Momentum operator P = (V - V^dagger)/2i; in the momentum basis it is diag(-sin(2 pi p / N)).
Observable momentum_observable(int n);

/// (U^dagger)^t W U^t by t successive conjugations.
CMatrix heisenberg_evolve(const CMatrix& u, const CMatrix& w, int t);

/// Correlators for t = 0..t_max with dense U, W, V.
OtocSeries otoc_series(const CMatrix& u, const CMatrix& w, const CMatrix& v, int t_max);

/// Correlators for t = 0..t_max. W is evolved incrementally; it is never diagonalized.
/// Throws NumericalError on non-finite values.
OtocSeries otoc_series(const Propagator& prop, const CMatrix& w, const Observable& v, int t_max);

/// C_{PQ}(t) of a quantized map with W = Q and V = P, on the split-step path.
OtocSeries map_otoc(const qmap::QuantizedMap& qm, int t_max);

struct AnalyticCatOtoc {
  double C = 0.0;
  double F = 0.0;
  /// a_t reduced mod 2N; C and F are 2N-periodic in a_t.
  long long a_t_mod_2n = 0;
};

/// C = sin^2(pi a_t / N), F = cos(2 pi a_t / N) / 4 for the linear cat map M.
AnalyticCatOtoc cat_otoc_analytic(int n, const qmap::IntMatrix2& m, long long t);

struct EhrenfestEstimate {
  double t_E = 0.0;
  double lambda = 0.0;
  int N = 0;
};

/// t_E = ln(N) / lambda.
EhrenfestEstimate ehrenfest_time(double lambda, int n);

}  // namespace otoclab::otoc
