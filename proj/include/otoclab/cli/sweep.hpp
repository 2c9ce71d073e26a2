#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otoclab/cli/config.hpp"
#include "otoclab/cli/tasks.hpp"
#include "otoclab/io/csv.hpp"

namespace otoclab::cli {

/// A task run over a list of values of one parameter, times a number of disorder realizations.
struct SweepSpec {
  std::string axis;
  std::vector<double> values;
  int realizations = 1;
  RunConfig inner;  ///< template; the axis parameter is overwritten per value
};

/// A plain run is a single-value sweep over the task's natural axis (K for maps, h for chains).
SweepSpec sweep_spec_from(const RunConfig& config);

/// The inner config with the axis set to values[index], revalidated.
RunConfig config_for_value(const SweepSpec& spec, std::size_t index);

struct CellRecord {
  int value_index = 0;
  int realization = 0;
  std::uint64_t seed = 0;
  std::optional<CellOutput> output;
  std::string error;  ///< set when output is empty
};

struct SweepResult {
  TaskSchema schema;
  std::vector<CellRecord> cells;  ///< ordered by (value index, realization)
  io::CsvTable cells_csv;
  io::CsvTable aggregate_csv;
  int failures = 0;
};

/// Seed of cell (value index, realization) under a master seed.
std::uint64_t cell_seed(std::uint64_t master, std::size_t value_index, int realization);

/// Runs all cells on `workers` threads and reduces them in cell order, so the tables
/// do not depend on the worker count. A failing cell is recorded and skipped.
SweepResult execute(const SweepSpec& spec, std::uint64_t master_seed, int workers);

/// Exit status of the command line.
enum ExitCode { kSuccess = 0, kConfigError = 1, kNumericalFailure = 2 };

/// Executes a config and writes CSVs, sidecars, optional plots and a failure manifest
/// into config.output_dir. Returns kSuccess or kNumericalFailure; config errors throw.
int run(const RunConfig& config);

}  // namespace otoclab::cli
