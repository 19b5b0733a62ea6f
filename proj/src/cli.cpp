#include "monoband/cli.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "monoband/bands.hpp"
#include "monoband/distributions.hpp"
#include "monoband/errors.hpp"
#include "monoband/io.hpp"
#include "monoband/rng.hpp"
#include "monoband/simulate.hpp"

namespace monoband {

namespace {

DistributionSpec parse_distribution(const std::string& name) {
  // "table:<path>" loads a custom cdf table; everything else is a built-in.
  if (name.rfind("table:", 0) == 0) {
    return DistributionSpec::custom_table(
        read_cdf_table(name.substr(6), ','));
  }
  return DistributionSpec::parse(name);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

void emit(const std::string& output, const std::string& content) {
  if (output.empty()) {
    std::cout << content;
  } else {
    write_file(output, content);
  }
}

}  // namespace

int cmd_band(const BandCommand& cmd) {
  const auto raw = read_observations(cmd.input, cmd.column, cmd.delimiter);
  const auto map = Reparameterisation::parse(cmd.reparam);
  SampleStore store;
  for (const double x : raw) store.insert(map.apply(x));

  BandQuery query;
  query.points = uniform_grid(cmd.grid);
  query.delta = cmd.delta;
  query.method = parse_method(cmd.method);
  const BandResult band = compute_band(store, query);

  std::vector<double> ecdf(query.points.size());
  for (std::size_t i = 0; i < query.points.size(); ++i) {
    ecdf[i] = store.empirical_cdf(query.points[i]);
  }

  if (cmd.output_format == "csv") {
    emit(cmd.output, band_to_csv(band, ecdf));
  } else if (cmd.output_format == "json") {
    emit(cmd.output, band_to_json(band, ecdf));
  } else if (cmd.output_format == "svg") {
    emit(cmd.output, band_to_svg(band, ecdf));
  } else {
    throw input_error("unknown output format '" + cmd.output_format + "'");
  }
  return 0;
}

int cmd_simulate(const SimulateCommand& cmd) {
  SimConfig config;
  config.dist = parse_distribution(cmd.dist);
  config.method = parse_method(cmd.method);
  config.delta = cmd.delta;
  config.t_max = cmd.tmax;
  config.n_runs = cmd.runs;
  config.seed = cmd.seed;
  config.grid_size = cmd.grid;
  config.threads = cmd.threads;
  config.intersect = cmd.intersect;

  const CoverageReport report = run_coverage(config);
  std::cout << "method=" << report.method << " dist=" << report.distribution
            << " delta=" << format_number(report.delta)
            << " runs=" << report.n_runs << " t_max=" << report.t_max
            << " miss_count=" << report.miss_count
            << " miss_rate=" << format_number(report.miss_rate) << "\n";
  if (!cmd.output.empty()) {
    write_file(cmd.output + ".json", report_to_json(report));
    write_file(cmd.output + ".csv", report_to_csv(report));
  }
  return 0;
}

int cmd_compare(const CompareCommand& cmd) {
  const auto dist = parse_distribution(cmd.dist);
  std::vector<Method> methods;
  for (const auto& name : split_list(cmd.methods)) {
    methods.push_back(parse_method(name));
  }
  if (methods.empty()) throw input_error("empty method list");
  std::vector<std::size_t> sizes;
  for (const auto& token : split_list(cmd.t_list)) {
    const long long t = std::strtoll(token.c_str(), nullptr, 10);
    if (t <= 0) throw input_error("invalid sample size '" + token + "'");
    sizes.push_back(static_cast<std::size_t>(t));
  }
  if (sizes.empty()) throw input_error("empty sample size list");

  const auto grid = uniform_grid(cmd.grid);
  std::filesystem::create_directories(cmd.output_dir);

  std::vector<std::pair<std::size_t, std::vector<WidthProfile>>> panels;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    auto profiles = width_profile(dist, methods, cmd.delta, sizes[i],
                                  derive_seed(cmd.seed, i), grid);
    for (const auto& profile : profiles) {
      const std::string path = cmd.output_dir + "/profile_" +
                               method_name(profile.method) + "_T" +
                               std::to_string(sizes[i]) + ".csv";
      write_file(path, profile_to_csv(profile));
    }
    panels.emplace_back(sizes[i], std::move(profiles));
  }
  write_file(cmd.output_dir + "/compare.svg", profiles_to_svg(panels));
  std::cout << "wrote " << panels.size() * methods.size()
            << " profiles to " << cmd.output_dir << "\n";
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Anytime-valid confidence bands for monotone means and CDFs"};
  app.require_subcommand(1);

  BandCommand band;
  auto* band_cmd = app.add_subcommand(
      "band", "Compute a confidence band from a data file");
  band_cmd->add_option("--input", band.input, "Input data file")->required();
  band_cmd->add_option("--column", band.column,
                       "Value column name for delimited input");
  band_cmd->add_option("--delimiter", band.delimiter, "Field delimiter");
  band_cmd->add_option("--method", band.method, "Band method");
  band_cmd->add_option("--delta", band.delta, "Confidence level in (0,1]");
  band_cmd->add_option("--grid", band.grid, "Query grid size");
  band_cmd->add_option("--reparam", band.reparam,
                       "identity | affine:lo,hi | logistic:center,scale");
  band_cmd->add_option("--output", band.output, "Output path (default stdout)");
  band_cmd->add_option("--output-format", band.output_format,
                       "csv | json | svg");

  SimulateCommand sim;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo coverage estimation");
  sim_cmd->add_option("--dist", sim.dist,
                      "uniform | sine6 | jump-mixture | table:<path>");
  sim_cmd->add_option("--method", sim.method, "Band method");
  sim_cmd->add_option("--delta", sim.delta, "Confidence level in (0,1]");
  sim_cmd->add_option("--runs", sim.runs, "Number of independent runs");
  sim_cmd->add_option("--tmax", sim.tmax, "Observations per run");
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--grid", sim.grid, "Query grid size");
  sim_cmd->add_option("--threads", sim.threads,
                      "Worker threads (0 = available parallelism)");
  sim_cmd->add_flag("--intersect", sim.intersect,
                    "Intersect bands across time (slower)");
  sim_cmd->add_option("--output", sim.output,
                      "Report prefix; writes <prefix>.json and <prefix>.csv");

  CompareCommand compare;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Width profiles of several methods at several sample sizes");
  compare_cmd->add_option("--dist", compare.dist, "Distribution name");
  compare_cmd->add_option("--T", compare.t_list,
                          "Comma-separated sample sizes");
  compare_cmd->add_option("--methods", compare.methods,
                          "Comma-separated methods");
  compare_cmd->add_option("--delta", compare.delta, "Confidence level");
  compare_cmd->add_option("--seed", compare.seed, "Master seed");
  compare_cmd->add_option("--grid", compare.grid, "Query grid size");
  compare_cmd->add_option("--output-dir", compare.output_dir,
                          "Directory for tables and the combined svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (band_cmd->parsed()) return cmd_band(band);
    if (sim_cmd->parsed()) return cmd_simulate(sim);
    if (compare_cmd->parsed()) return cmd_compare(compare);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace monoband
