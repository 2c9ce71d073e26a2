#include "otoclab/io/metadata.hpp"

#include <fstream>

#include "otoclab/common.hpp"
#include "otoclab/io/csv.hpp"

#ifndef OTOCLAB_VERSION
#define OTOCLAB_VERSION "unknown"
#endif

namespace otoclab::io {

const char* code_version() { return OTOCLAB_VERSION; }

nlohmann::json pinned_conventions() {
  nlohmann::json c;
  c["dft"] = "F_pq = exp(-2 pi i p q / N) / sqrt(N); q, p in {0..N-1}";
  c["cat_map"] = "p' = p + q - 2 pi K sin(2 pi q), q' = q + p' + 2 pi K sin(2 pi p'), mod 1";
  c["standard_map"] = "p' = p + (K / 2 pi) sin(2 pi q), q' = q + p', mod 1";
  c["harper_map"] = "p' = p + K sin(2 pi q), q' = q - K2 sin(2 pi p'), mod 1 (K2 defaults to K)";
  c["quantization"] =
      "U = F^dag diag(exp(-i T(p)/hbar)) F diag(exp(-i V(q)/hbar)), hbar = 1/(2 pi N); cat: "
      "D_q = exp(+2 pi i [q^2/2N + K N cos(2 pi q/N)]), D_p = exp(-2 pi i [p^2/2N - K N cos(2 pi p/N)])";
  c["map_otoc_operators"] = "W = Q = (U_clock - U_clock^dag)/2i evolved, V = P = (V_shift - V_shift^dag)/2i";
  c["trace_normalization"] = "Tr(.)/N, maximally mixed state";
  c["heisenberg"] = "W_t = (U^dag)^t W U^t";
  c["chain_trace_domain"] = "fixed-magnetization sector";
  c["chain_otoc"] = "C(l,t) = 1 - Re Tr[s0(t) sl s0(t) sl]/D, s = sigma^z, open chain";
  c["xi_otoc_spectrum"] = "mean-subtracted, rectangular window, one-sided bins 1..W/2, zero bin excluded";
  c["brody_unfolding"] = "degree-7 polynomial staircase fit, central 60% of levels";
  c["rpr_matrix"] = "P_xi,chi = exp(-eps |xi|^2) Tr(T_xi^dag U T_chi U^dag)/N, |xi|_inf, |chi|_inf <= xi_max";
  c["seed_derivation"] = "cell seed = splitmix(master, value index, realization)";
  return c;
}

std::filesystem::path sidecar_path(const std::filesystem::path& output) {
  auto p = output;
  p += ".meta.json";
  return p;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_sidecar(const std::filesystem::path& output, const nlohmann::json& meta) {
  write_json(sidecar_path(output), meta);
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot open " + path.string());
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace otoclab::io
