#include "otoclab/cli/sweep.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <thread>

#include "otoclab/common.hpp"
#include "otoclab/io/metadata.hpp"
#include "otoclab/io/plot.hpp"

namespace otoclab::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Accumulator {
  std::vector<std::vector<double>> samples;  // per value column
};

std::string value_text(const SweepSpec& spec, std::size_t i) { return io::format_double(spec.values[i]); }

json sidecar(const RunConfig& config, const SweepSpec& spec, const SweepResult& res, const std::string& what) {
  json m;
  m["content"] = what;
  m["code_version"] = io::code_version();
  m["config"] = config.to_json();
  m["config_hash"] = config.hash();
  m["seed"] = config.seed;
  m["axis"] = spec.axis;
  m["values"] = spec.values;
  m["realizations"] = spec.realizations;
  m["columns"] = res.cells_csv.header;
  m["failures"] = res.failures;
  m["conventions"] = io::pinned_conventions();
  for (const auto& c : res.cells)
    if (c.output) {
      m["cell_meta_example"] = c.output->meta;
      break;
    }
  return m;
}

void write_plots(const fs::path& dir, const RunConfig& config, const SweepSpec& spec, const SweepResult& res) {
  const Task task = config.effective_task();
  const auto& schema = res.schema;
  if (task == Task::map_otoc) {
    io::PlotSpec pc{"C(t), W=Q, V=P", "t", "C", true, {}};
    io::PlotSpec pf{"|F(t)|", "t", "|F|", true, {}};
    for (const auto& cell : res.cells) {
      if (!cell.output) continue;
      io::PlotSeries sc{spec.axis + "=" + value_text(spec, static_cast<std::size_t>(cell.value_index)), {}, {}};
      io::PlotSeries sf = sc;
      for (std::size_t i = 0; i < cell.output->keys.size(); ++i) {
        const double t = std::stod(cell.output->keys[i][0]);
        const auto& v = cell.output->values[i];
        sc.x.push_back(t);
        sc.y.push_back(v[0].x);
        sf.x.push_back(t);
        sf.y.push_back(std::hypot(v[1].x, v[2].x));
      }
      pc.series.push_back(sc);
      pf.series.push_back(sf);
    }
    io::write_svg_plot(dir / "map_otoc_C.svg", pc);
    io::write_svg_plot(dir / "map_otoc_absF.svg", pf);
    return;
  }
  if (task == Task::chain_otoc) {
    // mean C(l, t) per value and separation, read back from the aggregate
    std::map<std::pair<std::string, std::string>, io::PlotSeries> curves;
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& row : res.aggregate_csv.rows) {
      const auto key = std::make_pair(row[0], row[2]);
      if (!curves.count(key)) {
        curves[key].label = spec.axis + "=" + row[0] + " l=" + row[2];
        order.push_back(key);
      }
      curves[key].x.push_back(std::stod(row[1]));
      curves[key].y.push_back(row[3].empty() ? NAN : std::stod(row[3]));
    }
    io::PlotSpec p{"disorder-averaged C(l,t)", "t", "C", false, {}};
    for (const auto& k : order) p.series.push_back(curves[k]);
    io::write_svg_plot(dir / "chain_otoc_C.svg", p);
    return;
  }
  // one point per axis value: means of every value column against the axis
  io::PlotSpec p{schema.stem + " vs " + spec.axis, spec.axis, "mean", false, {}};
  for (std::size_t vc = 0; vc < schema.value_columns.size(); ++vc) {
    io::PlotSeries s{schema.value_columns[vc], {}, {}};
    for (const auto& row : res.aggregate_csv.rows) {
      if (!schema.key_columns.empty() && row[1] != "1") continue;  // map-rpr: leading resonance only
      const std::string& cell = row[1 + schema.key_columns.size() + 3 * vc];
      s.x.push_back(std::stod(row[0]));
      s.y.push_back(cell.empty() ? NAN : std::stod(cell));
    }
    p.series.push_back(s);
  }
  if (task == Task::indicators) {
    io::PlotSeries inv{"1/sigma_otoc", {}, {}};
    for (const auto& row : res.aggregate_csv.rows) {
      inv.x.push_back(std::stod(row[0]));
      inv.y.push_back(row[4].empty() ? NAN : 1.0 / std::stod(row[4]));
    }
    io::PlotSpec q{"OTOC indicators vs " + spec.axis, spec.axis, "value", false, {p.series[0], inv}};
    io::write_svg_plot(dir / "indicators_otoc.svg", q);
  }
  io::write_svg_plot(dir / (schema.stem + "_vs_" + spec.axis + ".svg"), p);
}

}  // namespace

SweepSpec sweep_spec_from(const RunConfig& config) {
  SweepSpec spec;
  if (config.task == Task::sweep) {
    RunConfig inner = config;
    inner.task = config.inner;
    spec.axis = param_text(config, "axis");
    spec.values = param_real_list(config, "values");
    inner.parameters.erase("axis");
    inner.parameters.erase("values");
    spec.inner = inner;
  } else {
    spec.inner = config;
    spec.axis = task_schema(config.task).natural_axis;
    spec.values = {param_real(config, spec.axis)};
  }
  spec.realizations = realization_count(spec.inner);
  return spec;
}

RunConfig config_for_value(const SweepSpec& spec, std::size_t index) {
  json flat = spec.inner.to_json();
  const ParamSpec* p = find_parameter(spec.axis);
  const double v = spec.values.at(index);
  if (p != nullptr && p->kind == ParamKind::integer)
    flat[spec.axis] = static_cast<long long>(v);
  else
    flat[spec.axis] = v;
  return RunConfig::from_json(flat);
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t value_index, int realization) {
  return derive_seed(master, static_cast<std::uint64_t>(value_index), static_cast<std::uint64_t>(realization));
}

SweepResult execute(const SweepSpec& spec, std::uint64_t master_seed, int workers) {
  if (spec.values.empty()) throw InvalidArgument("sweep: no values");
  if (spec.realizations < 1) throw InvalidArgument("sweep: realizations must be >= 1");
  if (workers < 1) throw InvalidArgument("sweep: workers must be >= 1");

  std::vector<RunConfig> configs;
  for (std::size_t i = 0; i < spec.values.size(); ++i) configs.push_back(config_for_value(spec, i));

  SweepResult res;
  res.schema = task_schema(spec.inner.task);
  const auto nv = spec.values.size();
  const auto nr = static_cast<std::size_t>(spec.realizations);
  res.cells.resize(nv * nr);
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t r = 0; r < nr; ++r) {
      auto& c = res.cells[i * nr + r];
      c.value_index = static_cast<int>(i);
      c.realization = static_cast<int>(r);
      c.seed = cell_seed(master_seed, i, static_cast<int>(r));
    }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < res.cells.size(); k = next++) {
      auto& c = res.cells[k];
      try {
        c.output = run_cell(configs[static_cast<std::size_t>(c.value_index)], c.seed);
      } catch (const std::exception& e) {
        c.error = e.what();
      }
    }
  };
  const int nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), res.cells.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const auto& sc = res.schema;
  res.cells_csv.header = {"param", "realization"};
  res.cells_csv.header.insert(res.cells_csv.header.end(), sc.key_columns.begin(), sc.key_columns.end());
  res.cells_csv.header.insert(res.cells_csv.header.end(), sc.value_columns.begin(), sc.value_columns.end());
  res.aggregate_csv.header = {"param"};
  res.aggregate_csv.header.insert(res.aggregate_csv.header.end(), sc.key_columns.begin(), sc.key_columns.end());
  for (const auto& v : sc.value_columns) {
    res.aggregate_csv.header.push_back("mean_" + v);
    res.aggregate_csv.header.push_back("stderr_" + v);
    res.aggregate_csv.header.push_back("n_" + v);
  }

  for (std::size_t i = 0; i < nv; ++i) {
    std::vector<std::vector<std::string>> key_order;
    std::map<std::vector<std::string>, Accumulator> acc;
    for (std::size_t r = 0; r < nr; ++r) {
      const auto& c = res.cells[i * nr + r];
      if (!c.output) {
        ++res.failures;
        continue;
      }
      for (std::size_t row = 0; row < c.output->keys.size(); ++row) {
        const auto& key = c.output->keys[row];
        const auto& vals = c.output->values[row];
        std::vector<std::string> line = {value_text(spec, i), std::to_string(r)};
        line.insert(line.end(), key.begin(), key.end());
        for (const auto& v : vals) line.push_back(v.str());
        res.cells_csv.add_row(std::move(line));

        auto [it, fresh] = acc.try_emplace(key);
        if (fresh) {
          key_order.push_back(key);
          it->second.samples.resize(vals.size());
        }
        for (std::size_t vc = 0; vc < vals.size(); ++vc)
          if (vals[vc].has_number()) it->second.samples[vc].push_back(vals[vc].x);
      }
    }
    for (const auto& key : key_order) {
      std::vector<std::string> line = {value_text(spec, i)};
      line.insert(line.end(), key.begin(), key.end());
      for (const auto& xs : acc[key].samples) {
        const auto n = xs.size();
        if (n == 0) {
          line.insert(line.end(), {"", "", "0"});
          continue;
        }
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(n);
        std::string se;
        if (n > 1) {
          double ss = 0.0;
          for (double x : xs) ss += (x - mean) * (x - mean);
          se = io::format_double(std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)));
        }
        line.push_back(io::format_double(mean));
        line.push_back(se);
        line.push_back(std::to_string(n));
      }
      res.aggregate_csv.add_row(std::move(line));
    }
  }
  return res;
}

int run(const RunConfig& config) {
  const SweepSpec spec = sweep_spec_from(config);
  const SweepResult res = execute(spec, config.seed, config.workers);
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const std::string stem = res.schema.stem;

  io::write_json(dir / "config.json", config.to_json());

  const fs::path cells = dir / (stem + ".csv");
  io::write_csv(cells, res.cells_csv);
  io::write_sidecar(cells, sidecar(config, spec, res, "one row per (param, realization" +
                                                         std::string(res.schema.key_columns.empty() ? "" : ", key") +
                                                         ")"));
  const fs::path agg = dir / (stem + "_aggregate.csv");
  io::write_csv(agg, res.aggregate_csv);
  io::write_sidecar(agg, sidecar(config, spec, res, "means and standard errors over realizations"));

  const Task task = spec.inner.task;
  if (task == Task::map_otoc && spec.values.size() == 1 && res.cells.front().output) {
    io::CsvTable t;
    t.header = {"t", "C", "ReF", "ImF", "D", "I"};
    const auto& out = *res.cells.front().output;
    for (std::size_t i = 0; i < out.keys.size(); ++i) {
      std::vector<std::string> line = {out.keys[i][0]};
      for (const auto& v : out.values[i]) line.push_back(v.str());
      t.add_row(std::move(line));
    }
    const fs::path p = dir / "otoc.csv";
    io::write_csv(p, t);
    io::write_sidecar(p, sidecar(config, spec, res, "OTOC series of the single map"));
  }
  if (task == Task::map_rpr) {
    json all = json::array();
    for (const auto& c : res.cells) {
      json e = c.output ? c.output->meta : json{{"error", c.error}};
      e["param"] = spec.values[static_cast<std::size_t>(c.value_index)];
      e["axis"] = spec.axis;
      all.push_back(e);
    }
    const fs::path p = dir / "rpr.json";
    io::write_json(p, json{{"estimates", all}, {"config_hash", config.hash()}});
    io::write_sidecar(p, sidecar(config, spec, res, "coarse-grained propagator eigenvalues"));
  }

  const fs::path manifest = dir / "failures.json";
  if (res.failures > 0) {
    json f = json::array();
    for (const auto& c : res.cells)
      if (!c.output)
        f.push_back({{"param", spec.values[static_cast<std::size_t>(c.value_index)]},
                     {"value_index", c.value_index},
                     {"realization", c.realization},
                     {"seed", c.seed},
                     {"error", c.error}});
    io::write_json(manifest, json{{"failures", f}, {"config_hash", config.hash()}});
    std::cerr << "otoc-lab: " << res.failures << " of " << res.cells.size() << " cells failed; see "
              << manifest.string() << "\n";
  } else if (fs::exists(manifest)) {
    fs::remove(manifest);
  }

  if (config.plot) write_plots(dir, config, spec, res);
  std::cout << "wrote " << cells.string() << " and " << agg.string() << " (" << res.cells.size() - res.failures
            << "/" << res.cells.size() << " cells)\n";
  return res.failures > 0 ? kNumericalFailure : kSuccess;
}

}  // namespace otoclab::cli
