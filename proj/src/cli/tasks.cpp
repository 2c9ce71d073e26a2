#include "otoclab/cli/tasks.hpp"

#include <cmath>

#include "otoclab/chaoskit/indicators.hpp"
#include "otoclab/chaoskit/rpr.hpp"
#include "otoclab/chaoskit/spectral.hpp"
#include "otoclab/io/csv.hpp"
#include "otoclab/otoc/engine.hpp"
#include "otoclab/qmap/quantize.hpp"
#include "otoclab/spinchain/chain.hpp"

namespace otoclab::cli {

namespace {

using nlohmann::json;

qmap::TorusMap torus_map(const RunConfig& c) {
  qmap::TorusMap m;
  m.kind = qmap::map_kind_from_string(param_text(c, "map"));
  m.K = param_real(c, "K");
  if (!param_is_null(c, "K2")) m.K2 = param_real(c, "K2");
  return m;
}

spinchain::SpinChainModel chain_model(const RunConfig& c, std::uint64_t seed) {
  return spinchain::make_model(static_cast<int>(param_int(c, "L")), static_cast<int>(param_int(c, "nup")),
                               param_real(c, "h"), seed, 0);
}

CellOutput map_otoc_cell(const RunConfig& c) {
  const int n = static_cast<int>(param_int(c, "N"));
  const int tmax = static_cast<int>(param_int(c, "tmax"));
  const bool dense = param_text(c, "propagator") == "dense";
  const auto qm = qmap::quantize(torus_map(c), n, dense);
  otoc::OtocSeries s;
  if (dense) {
    s = otoc::otoc_series(otoc::DensePropagator(qm.U), otoc::position_observable(n).to_matrix(),
                          otoc::momentum_observable(n), tmax);
    s.meta["W"] = "Q";
    s.meta["map"] = qmap::to_string(qm.map.kind);
    s.meta["K"] = qm.map.K;
  } else {
    s = otoc::map_otoc(qm, tmax);
  }
  CellOutput out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.keys.push_back({std::to_string(s.times[i])});
    out.values.push_back({Value::number(s.C[i]), Value::number(s.F[i].real()), Value::number(s.F[i].imag()),
                          Value::number(s.D[i]), Value::number(s.I[i])});
  }
  out.meta = s.meta;
  return out;
}

CellOutput map_rpr_cell(const RunConfig& c) {
  const auto qm = qmap::quantize(torus_map(c), static_cast<int>(param_int(c, "N")), false);
  chaoskit::RprOptions opt;
  opt.epsilon = param_real(c, "eps");
  opt.xi_max = static_cast<int>(param_int(c, "xi-max"));
  opt.k = static_cast<int>(param_int(c, "num"));
  opt.krylov_dim = static_cast<int>(param_int(c, "krylov"));
  opt.tol = param_real(c, "tol");
  const auto est = chaoskit::rpr_spectrum(qm, opt);
  CellOutput out;
  for (std::size_t i = 0; i < est.resonances.size(); ++i) {
    const cplx a = est.resonances[i];
    out.keys.push_back({std::to_string(i + 1)});
    out.values.push_back({Value::number(a.real()), Value::number(a.imag()), Value::number(std::abs(a)),
                          Value::number(est.residuals[i])});
  }
  out.meta = chaoskit::to_json(est);
  out.meta["map_convention"] = qm.map.convention();
  out.meta["quantization"] = qm.convention();
  return out;
}

CellOutput chain_otoc_cell(const RunConfig& c, std::uint64_t seed) {
  const auto model = chain_model(c, seed);
  std::vector<int> seps;
  for (long long l : param_int_list(c, "l")) seps.push_back(static_cast<int>(l));
  const auto times = spinchain::time_grid(param_real(c, "t0"), param_real(c, "tmax"), param_real(c, "dt"));
  const auto res = spinchain::chain_otoc(model, seps, times);
  CellOutput out;
  for (std::size_t ti = 0; ti < times.size(); ++ti)
    for (std::size_t li = 0; li < seps.size(); ++li) {
      out.keys.push_back({io::format_double(times[ti]), std::to_string(seps[li])});
      out.values.push_back({Value::number(res.C(static_cast<Eigen::Index>(li), static_cast<Eigen::Index>(ti)))});
    }
  out.meta = res.meta;
  out.meta["max_imag"] = res.max_imag;
  out.meta["fields"] = model.fields;
  return out;
}

struct SpectralValues {
  Value brody = Value::absent();
  Value gap = Value::absent();
  Value ipr = Value::absent();
};

SpectralValues spectral_values(const spinchain::Eigensystem& eig) {
  SpectralValues v;
  const std::span<const double> e(eig.energies.data(), static_cast<std::size_t>(eig.energies.size()));
  const auto spacings = chaoskit::unfold_spacings(e);
  if (spacings.size() >= 200) v.brody = Value::number(chaoskit::brody_fit(spacings));
  v.gap = Value::number(chaoskit::gap_ratio(e));
  v.ipr = Value::number(chaoskit::ipr(eig.vectors));
  return v;
}

CellOutput chain_spectrum_cell(const RunConfig& c, std::uint64_t seed) {
  const auto model = chain_model(c, seed);
  const auto eig = spinchain::diagonalize(spinchain::build_hamiltonian(model));
  const auto sv = spectral_values(eig);
  CellOutput out;
  out.keys.push_back({});
  out.values.push_back({sv.brody, sv.gap, sv.ipr});
  out.meta["fields"] = model.fields;
  out.meta["dimension"] = model.sector_dimension();
  out.meta["unfolding"] = "degree-7 polynomial staircase fit, central 60%; brody omitted below 200 spacings";
  return out;
}

CellOutput indicators_cell(const RunConfig& c, std::uint64_t seed) {
  const auto model = chain_model(c, seed);
  const auto eig = spinchain::diagonalize(spinchain::build_hamiltonian(model));
  const auto w = param_real_list(c, "window");
  const int l = static_cast<int>(param_int_list(c, "l").front());
  const auto times = spinchain::time_grid(w[0], w[1], param_real(c, "dt"));
  const std::vector<int> seps = {l};
  const auto res = spinchain::chain_otoc(model, eig, seps, times);
  std::vector<double> series(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) series[i] = res.C(0, static_cast<Eigen::Index>(i));

  const auto rep = chaoskit::indicator_report(times, series, {w[0], w[1]});

  const int sl = param_is_null(c, "spectrum-L") ? model.L : static_cast<int>(param_int(c, "spectrum-L"));
  const int sn = param_is_null(c, "spectrum-nup") ? model.n_up : static_cast<int>(param_int(c, "spectrum-nup"));
  SpectralValues sv;
  json spectrum_meta;
  if (sl == model.L && sn == model.n_up) {
    sv = spectral_values(eig);
    spectrum_meta = {{"L", sl}, {"n_up", sn}, {"model", "same realization as the OTOC"}};
  } else {
    // independent disorder stream so the OTOC model is untouched by the spectral one
    const auto smodel = spinchain::make_model(sl, sn, model.h, derive_seed(seed, 1), 0);
    sv = spectral_values(spinchain::diagonalize(spinchain::build_hamiltonian(smodel)));
    spectrum_meta = {{"L", sl}, {"n_up", sn}, {"model", "separate realization, seed derived from the cell seed"}};
  }

  CellOutput out;
  out.keys.push_back({});
  out.values.push_back({rep.xi_otoc ? Value::number(*rep.xi_otoc) : Value::degenerate(),
                        Value::number(rep.sigma_otoc), sv.brody, sv.gap, sv.ipr});
  out.meta = rep.provenance;
  out.meta["l"] = l;
  out.meta["spectrum"] = spectrum_meta;
  out.meta["trace_domain"] = "fixed-magnetization sector";
  return out;
}

}  // namespace

std::string Value::str() const {
  switch (kind) {
    case Kind::number: return io::format_double(x);
    case Kind::absent: return "";
    case Kind::degenerate: return "degenerate";
  }
  return "";
}

TaskSchema task_schema(Task task) {
  switch (task) {
    case Task::map_otoc: return {"map_otoc", {"t"}, {"C", "ReF", "ImF", "D", "I"}, "K"};
    case Task::map_rpr: return {"map_rpr", {"index"}, {"re", "im", "modulus", "residual"}, "K"};
    case Task::chain_otoc: return {"chain_otoc", {"t", "l"}, {"C"}, "h"};
    case Task::chain_spectrum: return {"chain_spectrum", {}, {"brody", "gap_ratio", "ipr"}, "h"};
    case Task::indicators:
      return {"indicators", {}, {"xi_otoc", "sigma_otoc", "brody", "gap_ratio", "ipr"}, "h"};
    case Task::sweep: break;
  }
  throw InvalidArgument("sweep has no cell schema of its own");
}

int realization_count(const RunConfig& config) {
  switch (config.effective_task()) {
    case Task::chain_otoc:
    case Task::chain_spectrum:
    case Task::indicators:
      return static_cast<int>(param_int(config, "realizations"));
    default:
      return 1;
  }
}

CellOutput run_cell(const RunConfig& config, std::uint64_t cell_seed) {
  switch (config.task) {
    case Task::map_otoc: return map_otoc_cell(config);
    case Task::map_rpr: return map_rpr_cell(config);
    case Task::chain_otoc: return chain_otoc_cell(config, cell_seed);
    case Task::chain_spectrum: return chain_spectrum_cell(config, cell_seed);
    case Task::indicators: return indicators_cell(config, cell_seed);
    case Task::sweep: break;
  }
  throw InvalidArgument("run_cell: a sweep is not a cell");
}

}  // namespace otoclab::cli
