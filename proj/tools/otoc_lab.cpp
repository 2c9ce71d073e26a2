// otoc-lab: command-line front end for the OTOC laboratory.

#include <iostream>
#include <map>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "otoclab/cli/config.hpp"
#include "otoclab/cli/sweep.hpp"
#include "otoclab/common.hpp"
#include "otoclab/io/metadata.hpp"

namespace cli = otoclab::cli;
using nlohmann::json;

namespace {

struct Flags {
  std::string config_file;
  std::map<std::string, std::string> values;  // parameter name -> raw text
  std::string seed, output_dir, workers, inner;
  bool plot = false;
};

void add_parameter_options(CLI::App* sub, Flags& f, const std::vector<const cli::ParamSpec*>& params) {
  std::set<std::string> seen;
  for (const auto* p : params) {
    if (!seen.insert(p->name).second) continue;
    sub->add_option("--" + p->name, f.values[p->name], p->help);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OTOC laboratory: quantized torus maps, spin chains and chaos indicators"};
  // "--h" is the disorder strength, so help is long-form only
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", otoclab::io::code_version());
  app.require_subcommand(1);

  const std::vector<cli::Task> tasks = {cli::Task::map_otoc,       cli::Task::map_rpr,    cli::Task::chain_otoc,
                                        cli::Task::chain_spectrum, cli::Task::indicators, cli::Task::sweep};
  const std::map<cli::Task, std::string> descriptions = {
      {cli::Task::map_otoc, "C(t), F(t), D(t), I(t) of a quantized map with W=Q, V=P"},
      {cli::Task::map_rpr, "leading Ruelle-Pollicott resonances from the coarse-grained propagator"},
      {cli::Task::chain_otoc, "disorder-averaged C(l,t) of the random-field Heisenberg chain"},
      {cli::Task::chain_spectrum, "Brody parameter, gap ratio and IPR per disorder realization"},
      {cli::Task::indicators, "xi_OTOC and sigma_OTOC with spectral indicators per realization"},
      {cli::Task::sweep, "any task over a list of values of one parameter"}};

  std::map<cli::Task, Flags> flags;
  std::map<cli::Task, CLI::App*> subs;
  for (cli::Task t : tasks) {
    auto* sub = app.add_subcommand(cli::to_string(t), descriptions.at(t));
    Flags& f = flags[t];
    sub->add_option("--config", f.config_file, "JSON config; flags override its values");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--output-dir", f.output_dir, "output directory (default $OTOCLAB_OUTPUT_DIR or otoc-lab-out)");
    sub->add_option("--workers", f.workers, "concurrent cells");
    sub->add_flag("--plot", f.plot, "also write SVG plots");
    if (t == cli::Task::sweep) {
      sub->add_option("--inner", f.inner, "task run at every value")->required();
      std::vector<const cli::ParamSpec*> all;
      for (cli::Task u : tasks) {
        const auto ps = cli::parameters_for(u);
        all.insert(all.end(), ps.begin(), ps.end());
      }
      add_parameter_options(sub, f, all);
    } else {
      add_parameter_options(sub, f, cli::parameters_for(t));
    }
    subs[t] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kSuccess : cli::kConfigError;
  }

  try {
    cli::Task task = cli::Task::map_otoc;
    for (cli::Task t : tasks)
      if (subs[t]->parsed()) task = t;
    const Flags& f = flags[task];

    json flat = json::object();
    if (!f.config_file.empty()) flat = otoclab::io::read_json(f.config_file);
    if (!flat.is_object()) throw otoclab::InvalidArgument("config file must hold a JSON object");
    if (flat.contains("task") && flat["task"] != cli::to_string(task))
      throw otoclab::InvalidArgument("config file is for task " + flat["task"].dump() + ", not " + cli::to_string(task));
    flat["task"] = cli::to_string(task);
    if (!f.inner.empty()) flat["inner"] = f.inner;
    for (const auto& [name, text] : f.values) {
      if (text.empty()) continue;
      flat[name] = cli::parse_param_value(*cli::find_parameter(name), text);
    }
    if (!f.seed.empty()) {
      try {
        flat["seed"] = std::stoull(f.seed);
      } catch (const std::exception&) {
        throw otoclab::InvalidArgument("--seed: cannot parse '" + f.seed + "'");
      }
    }
    if (!f.output_dir.empty()) flat["output-dir"] = f.output_dir;
    if (!f.workers.empty()) {
      try {
        flat["workers"] = std::stoi(f.workers);
      } catch (const std::exception&) {
        throw otoclab::InvalidArgument("--workers: cannot parse '" + f.workers + "'");
      }
    }
    if (f.plot) flat["plot"] = true;

    const auto config = cli::RunConfig::from_json(flat);
    return cli::run(config);
  } catch (const otoclab::InvalidArgument& e) {
    std::cerr << "otoc-lab: invalid configuration: " << e.what() << "\n";
    return cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "otoc-lab: failed: " << e.what() << "\n";
    return cli::kNumericalFailure;
  }
}
