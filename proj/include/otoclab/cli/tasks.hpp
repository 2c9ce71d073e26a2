#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "otoclab/cli/config.hpp"

namespace otoclab::cli {

/// One numeric CSV field; degenerate and absent values are written as markers, never as inf or nan.
struct Value {
  enum class Kind { number, absent, degenerate };
  Kind kind = Kind::absent;
  double x = 0.0;

  static Value number(double v) { return {Kind::number, v}; }
  static Value absent() { return {Kind::absent, 0.0}; }
  static Value degenerate() { return {Kind::degenerate, 0.0}; }
  bool has_number() const { return kind == Kind::number; }
  /// "%.17g", "" for absent, "degenerate" for the degenerate marker.
  std::string str() const;
};

/// Columns produced by one cell. Key columns identify a row within a cell (e.g. t, l);
/// value columns are averaged over realizations in the aggregate.
struct TaskSchema {
  std::string stem;
  std::vector<std::string> key_columns;
  std::vector<std::string> value_columns;
  /// The parameter a plain run is indexed by in the `param` column.
  std::string natural_axis;
};

TaskSchema task_schema(Task task);

/// Output of one (parameter value, realization) cell.
struct CellOutput {
  std::vector<std::vector<std::string>> keys;
  std::vector<std::vector<Value>> values;
  nlohmann::json meta = nlohmann::json::object();
};

/// Number of realizations a config asks for (1 for the deterministic map tasks).
int realization_count(const RunConfig& config);

/// Runs one cell of a non-sweep config. `cell_seed` seeds all randomness of the cell.
/// Throws on failure; the caller records it.
CellOutput run_cell(const RunConfig& config, std::uint64_t cell_seed);

}  // namespace otoclab::cli
