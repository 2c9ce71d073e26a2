#include "otoclab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "otoclab/common.hpp"
#include "otoclab/qmap/torus_map.hpp"

namespace otoclab::cli {

namespace {

using nlohmann::json;

const std::vector<Task> kMapTasks = {Task::map_otoc, Task::map_rpr};
const std::vector<Task> kChainTasks = {Task::chain_otoc, Task::chain_spectrum, Task::indicators};

const std::set<std::string> kReserved = {"task", "inner", "seed", "output-dir", "workers", "plot"};

bool applies(const ParamSpec& p, Task t) { return std::find(p.tasks.begin(), p.tasks.end(), t) != p.tasks.end(); }

json default_for(const ParamSpec& p, Task t) {
  if (p.default_value.is_object()) {
    const auto it = p.default_value.find(to_string(t));
    return it == p.default_value.end() ? json() : *it;
  }
  return p.default_value;
}

bool is_integral(double x) { return std::isfinite(x) && std::floor(x) == x && std::abs(x) < 9.0e15; }

json coerce(const ParamSpec& p, const json& v) {
  auto fail = [&]() -> json { throw InvalidArgument("parameter '" + p.name + "' has the wrong type: " + v.dump()); };
  auto as_int = [&](const json& x) -> long long {
    if (x.is_number_integer()) return x.get<long long>();
    if (x.is_number_float() && is_integral(x.get<double>())) return static_cast<long long>(x.get<double>());
    fail();
    return 0;
  };
  auto as_real = [&](const json& x) -> double {
    if (!x.is_number()) fail();
    const double d = x.get<double>();
    if (!std::isfinite(d)) throw InvalidArgument("parameter '" + p.name + "' must be finite");
    return d;
  };
  if (v.is_null()) return v;
  switch (p.kind) {
    case ParamKind::integer:
      return as_int(v);
    case ParamKind::real:
      return as_real(v);
    case ParamKind::text:
      if (!v.is_string()) fail();
      return v;
    case ParamKind::int_list: {
      json out = json::array();
      if (v.is_array()) {
        for (const auto& x : v) out.push_back(as_int(x));
      } else {
        out.push_back(as_int(v));
      }
      return out;
    }
    case ParamKind::real_list: {
      json out = json::array();
      if (v.is_array()) {
        for (const auto& x : v) out.push_back(as_real(x));
      } else {
        out.push_back(as_real(v));
      }
      return out;
    }
  }
  return fail();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

void validate(const RunConfig& c) {
  const Task t = c.effective_task();
  auto has = [&](const char* k) { return c.parameters.contains(k) && !c.parameters[k].is_null(); };
  if (t == Task::map_otoc || t == Task::map_rpr) {
    qmap::map_kind_from_string(param_text(c, "map"));
    require(param_int(c, "N") >= 2, "N must be >= 2");
    require(param_int(c, "N") <= 1 << 16, "N must be <= 65536");
  }
  if (t == Task::map_otoc) {
    require(is_integral(param_real(c, "tmax")) && param_real(c, "tmax") >= 0.0, "tmax must be an integer >= 0");
    const auto prop = param_text(c, "propagator");
    require(prop == "split-step" || prop == "dense", "propagator must be split-step or dense");
  }
  if (t == Task::map_rpr) {
    require(param_real(c, "eps") > 0.0, "eps must be > 0");
    require(param_int(c, "xi-max") >= 4, "xi-max must be >= 4");
    require(2 * param_int(c, "xi-max") + 1 <= param_int(c, "N"), "2 xi-max + 1 must not exceed N");
    require(param_int(c, "num") >= 1, "num must be >= 1");
    require(param_int(c, "krylov") >= 0, "krylov must be >= 0");
    require(param_real(c, "tol") > 0.0, "tol must be > 0");
  }
  if (t == Task::chain_otoc || t == Task::chain_spectrum || t == Task::indicators) {
    const long long L = param_int(c, "L");
    const long long nup = param_int(c, "nup");
    require(L >= 2 && L <= 24, "L must lie in [2, 24]");
    require(nup >= 0 && nup <= L, "nup must lie in [0, L]");
    require(param_real(c, "h") >= 0.0, "h must be >= 0");
    require(param_int(c, "realizations") >= 1, "realizations must be >= 1");
  }
  if (t == Task::chain_otoc || t == Task::indicators) {
    const auto ls = param_int_list(c, "l");
    require(!ls.empty(), "l must name at least one separation");
    for (long long l : ls) require(l >= 1 && l < param_int(c, "L"), "each l must lie in [1, L-1]");
    require(param_real(c, "dt") > 0.0, "dt must be > 0");
  }
  if (t == Task::chain_otoc) {
    require(param_real(c, "t0") >= 0.0, "t0 must be >= 0");
    require(param_real(c, "tmax") >= param_real(c, "t0"), "tmax must be >= t0");
  }
  if (t == Task::indicators) {
    require(param_int_list(c, "l").size() == 1, "indicators take a single l");
    const auto w = param_real_list(c, "window");
    require(w.size() == 2 && w[0] >= 0.0 && w[1] > w[0], "window must be two increasing times");
    if (has("spectrum-L")) {
      const long long sl = param_int(c, "spectrum-L");
      require(sl >= 2 && sl <= 24, "spectrum-L must lie in [2, 24]");
      const long long sn = has("spectrum-nup") ? param_int(c, "spectrum-nup") : param_int(c, "nup");
      require(sn >= 0 && sn <= sl, "spectrum-nup must lie in [0, spectrum-L]");
    }
  }
  if (c.task == Task::sweep) {
    require(c.inner != Task::sweep, "a sweep cannot nest another sweep");
    const auto axis = param_text(c, "axis");
    const ParamSpec* p = find_parameter(axis);
    require(p != nullptr && applies(*p, c.inner) && (p->kind == ParamKind::integer || p->kind == ParamKind::real),
            "axis '" + axis + "' is not a numeric parameter of " + to_string(c.inner));
    const auto values = param_real_list(c, "values");
    require(!values.empty(), "values must not be empty");
    for (double v : values)
      require(p->kind == ParamKind::real || is_integral(v), "axis '" + axis + "' takes integer values");
  }
  require(c.workers >= 1, "workers must be >= 1");
}

}  // namespace

std::string to_string(Task task) {
  switch (task) {
    case Task::map_otoc: return "map-otoc";
    case Task::map_rpr: return "map-rpr";
    case Task::chain_otoc: return "chain-otoc";
    case Task::chain_spectrum: return "chain-spectrum";
    case Task::indicators: return "indicators";
    case Task::sweep: return "sweep";
  }
  return "?";
}

Task task_from_string(const std::string& name) {
  for (Task t : {Task::map_otoc, Task::map_rpr, Task::chain_otoc, Task::chain_spectrum, Task::indicators, Task::sweep})
    if (to_string(t) == name) return t;
  throw InvalidArgument("unknown task '" + name + "'");
}

const std::vector<ParamSpec>& parameter_registry() {
  static const std::vector<ParamSpec> reg = {
      {"map", ParamKind::text, "cat", "map family: cat, standard or harper", kMapTasks},
      {"K", ParamKind::real, 0.0, "kick strength", kMapTasks},
      {"K2", ParamKind::real, json(), "second kick of the harper map (defaults to K)", kMapTasks},
      {"N", ParamKind::integer, 1024, "Hilbert-space dimension", kMapTasks},
      {"tmax", ParamKind::real, json{{"map-otoc", 50}, {"chain-otoc", 100.0}}, "last time of the series",
       {Task::map_otoc, Task::chain_otoc}},
      {"propagator", ParamKind::text, "split-step", "split-step or dense", {Task::map_otoc}},
      {"eps", ParamKind::real, 0.02, "Gaussian coarse-graining strength", {Task::map_rpr}},
      {"xi-max", ParamKind::integer, 40, "translation-lattice truncation radius", {Task::map_rpr}},
      {"num", ParamKind::integer, 3, "number of resonances", {Task::map_rpr}},
      {"krylov", ParamKind::integer, 0, "Krylov dimension (0 = automatic)", {Task::map_rpr}},
      {"tol", ParamKind::real, 1e-10, "relative eigen-residual tolerance", {Task::map_rpr}},
      {"L", ParamKind::integer, 9, "chain length", kChainTasks},
      {"nup", ParamKind::integer, 5, "spins up in the sector", kChainTasks},
      {"h", ParamKind::real, 1.0, "disorder amplitude", kChainTasks},
      {"realizations", ParamKind::integer, json{{"chain-otoc", 1}, {"chain-spectrum", 1}, {"indicators", 100}},
       "disorder realizations", kChainTasks},
      {"l", ParamKind::int_list, json{{"chain-otoc", json::array({1})}, {"indicators", json::array({1})}},
       "site separations", {Task::chain_otoc, Task::indicators}},
      {"t0", ParamKind::real, 0.0, "first time of the grid", {Task::chain_otoc}},
      {"dt", ParamKind::real, json{{"chain-otoc", 0.05}, {"indicators", 0.5}}, "time step",
       {Task::chain_otoc, Task::indicators}},
      {"window", ParamKind::real_list, json::array({200.0, 400.0}), "indicator window begin,end", {Task::indicators}},
      {"spectrum-L", ParamKind::integer, json(), "chain length for the spectral indicators (defaults to L)",
       {Task::indicators}},
      {"spectrum-nup", ParamKind::integer, json(), "sector for the spectral indicators (defaults to nup)",
       {Task::indicators}},
      {"axis", ParamKind::text, json(), "parameter swept", {Task::sweep}},
      {"values", ParamKind::real_list, json(), "axis values", {Task::sweep}},
  };
  return reg;
}

std::vector<const ParamSpec*> parameters_for(Task task) {
  std::vector<const ParamSpec*> out;
  for (const auto& p : parameter_registry())
    if (applies(p, task)) out.push_back(&p);
  return out;
}

const ParamSpec* find_parameter(const std::string& name) {
  for (const auto& p : parameter_registry())
    if (p.name == name) return &p;
  return nullptr;
}

json parse_param_value(const ParamSpec& spec, const std::string& text) {
  auto number = [&](const std::string& s) -> json {
    std::size_t pos = 0;
    try {
      if (spec.kind == ParamKind::integer || spec.kind == ParamKind::int_list) {
        const long long v = std::stoll(s, &pos);
        if (pos == s.size()) return v;
      } else {
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
      }
    } catch (const std::exception&) {
    }
    throw InvalidArgument("--" + spec.name + ": cannot parse '" + s + "'");
  };
  switch (spec.kind) {
    case ParamKind::text:
      return text;
    case ParamKind::integer:
    case ParamKind::real:
      return number(text);
    case ParamKind::int_list:
    case ParamKind::real_list: {
      json out = json::array();
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(number(item));
      return out;
    }
  }
  return json();
}

json RunConfig::to_json() const {
  json j = parameters;
  j["task"] = cli::to_string(task);
  if (task == Task::sweep) j["inner"] = cli::to_string(inner);
  j["seed"] = seed;
  j["output-dir"] = output_dir;
  j["workers"] = workers;
  j["plot"] = plot;
  return j;
}

json RunConfig::canonical() const {
  json j = parameters;
  j["task"] = cli::to_string(task);
  if (task == Task::sweep) j["inner"] = cli::to_string(inner);
  j["seed"] = seed;
  return j;
}

std::string RunConfig::hash() const { return hex64(fnv1a64(canonical().dump())); }

RunConfig RunConfig::from_json(const json& flat) {
  if (!flat.is_object()) throw InvalidArgument("config must be a JSON object");
  RunConfig c;
  if (!flat.contains("task") || !flat["task"].is_string()) throw InvalidArgument("config needs a string 'task'");
  c.task = task_from_string(flat["task"].get<std::string>());
  if (c.task == Task::sweep) {
    if (!flat.contains("inner") || !flat["inner"].is_string())
      throw InvalidArgument("a sweep needs a string 'inner' naming the swept task");
    c.inner = task_from_string(flat["inner"].get<std::string>());
  } else if (flat.contains("inner")) {
    throw InvalidArgument("'inner' only applies to sweeps");
  }
  if (flat.contains("seed")) {
    const auto& s = flat["seed"];
    if (s.is_number_unsigned()) c.seed = s.get<std::uint64_t>();
    else if (s.is_number_integer() && s.get<long long>() >= 0) c.seed = static_cast<std::uint64_t>(s.get<long long>());
    else throw InvalidArgument("seed must be a non-negative integer");
  }
  c.output_dir = flat.contains("output-dir") ? flat["output-dir"].get<std::string>() : default_output_dir();
  if (flat.contains("workers")) {
    if (!flat["workers"].is_number_integer()) throw InvalidArgument("workers must be an integer");
    c.workers = flat["workers"].get<int>();
  }
  if (flat.contains("plot")) {
    if (!flat["plot"].is_boolean()) throw InvalidArgument("plot must be true or false");
    c.plot = flat["plot"].get<bool>();
  }

  std::vector<const ParamSpec*> allowed = parameters_for(c.effective_task());
  if (c.task == Task::sweep) {
    const auto extra = parameters_for(Task::sweep);
    allowed.insert(allowed.end(), extra.begin(), extra.end());
  }
  for (const auto& [key, value] : flat.items()) {
    if (kReserved.count(key)) continue;
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const ParamSpec* p) { return p->name == key; });
    if (!known) throw InvalidArgument("unknown parameter '" + key + "' for task " + to_string(c.effective_task()));
  }
  for (const ParamSpec* p : allowed) {
    const Task owner = applies(*p, Task::sweep) ? Task::sweep : c.effective_task();
    json v = flat.contains(p->name) ? flat[p->name] : default_for(*p, owner);
    c.parameters[p->name] = coerce(*p, v);
  }
  if (c.task == Task::sweep && (c.parameters["axis"].is_null() || c.parameters["values"].is_null()))
    throw InvalidArgument("a sweep needs 'axis' and 'values'");
  validate(c);
  return c;
}

std::string default_output_dir() {
  const char* env = std::getenv("OTOCLAB_OUTPUT_DIR");
  return env && *env ? std::string(env) : std::string("otoc-lab-out");
}

namespace {
const json& get(const RunConfig& c, const std::string& name) {
  const auto it = c.parameters.find(name);
  if (it == c.parameters.end() || it->is_null()) throw InvalidArgument("parameter '" + name + "' is not set");
  return *it;
}
}  // namespace

long long param_int(const RunConfig& c, const std::string& name) {
  const auto& v = get(c, name);
  return v.is_number_integer() ? v.get<long long>() : static_cast<long long>(v.get<double>());
}
double param_real(const RunConfig& c, const std::string& name) { return get(c, name).get<double>(); }
std::string param_text(const RunConfig& c, const std::string& name) { return get(c, name).get<std::string>(); }
std::vector<long long> param_int_list(const RunConfig& c, const std::string& name) {
  return get(c, name).get<std::vector<long long>>();
}
std::vector<double> param_real_list(const RunConfig& c, const std::string& name) {
  return get(c, name).get<std::vector<double>>();
}
bool param_is_null(const RunConfig& c, const std::string& name) {
  const auto it = c.parameters.find(name);
  return it == c.parameters.end() || it->is_null();
}

}  // namespace otoclab::cli
