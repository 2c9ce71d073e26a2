#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace otoclab::cli {

enum class Task { map_otoc, map_rpr, chain_otoc, chain_spectrum, indicators, sweep };

std::string to_string(Task task);
/// Throws InvalidArgument for unknown names.
Task task_from_string(const std::string& name);

enum class ParamKind { integer, real, text, int_list, real_list };

struct ParamSpec {
  std::string name;  ///< flag name without the leading dashes; also the JSON key
  ParamKind kind;
  /// Either a value or an object keyed by task name when defaults differ per task.
  /// null means "unset" and is allowed to stay null.
  nlohmann::json default_value;
  std::string help;
  std::vector<Task> tasks;
};

const std::vector<ParamSpec>& parameter_registry();
std::vector<const ParamSpec*> parameters_for(Task task);
const ParamSpec* find_parameter(const std::string& name);

/// Converts flag text to JSON of the parameter's kind; lists are comma separated.
nlohmann::json parse_param_value(const ParamSpec& spec, const std::string& text);

/// A fully resolved run: every parameter of the task present, defaults filled in.
///
/// The JSON form is flat and mirrors the command-line flags, e.g.
///   {"task": "chain-otoc", "L": 9, "nup": 5, "l": [1, 2, 3], "seed": 7}.
/// A sweep carries its inner task in "inner" plus "axis" and "values".
struct RunConfig {
  Task task = Task::map_otoc;
  Task inner = Task::map_otoc;  ///< only for sweeps
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string output_dir;
  int workers = 1;
  bool plot = false;

  /// The task whose parameters apply: `inner` for sweeps, `task` otherwise.
  Task effective_task() const { return task == Task::sweep ? inner : task; }

  nlohmann::json to_json() const;
  /// The part of the config that determines numerical output (no paths, worker counts or plots).
  nlohmann::json canonical() const;
  std::string hash() const;

  /// Validates keys and types and fills defaults. Throws InvalidArgument.
  static RunConfig from_json(const nlohmann::json& flat);
};

/// $OTOCLAB_OUTPUT_DIR if set, else "otoc-lab-out".
std::string default_output_dir();

/// Typed accessors on resolved parameters.
long long param_int(const RunConfig& c, const std::string& name);
double param_real(const RunConfig& c, const std::string& name);
std::string param_text(const RunConfig& c, const std::string& name);
std::vector<long long> param_int_list(const RunConfig& c, const std::string& name);
std::vector<double> param_real_list(const RunConfig& c, const std::string& name);
bool param_is_null(const RunConfig& c, const std::string& name);

}  // namespace otoclab::cli
