#pragma once

#include <cstdint>
#include <string>

namespace monoband {

// Command configurations mirror the CLI flags one to one so tests can drive
// the commands without spawning a process.

struct BandCommand {
  std::string input;
  std::string column;  // empty: one observation per line
  char delimiter = ',';
  std::string method = "kl-cdf";
  double delta = 0.05;
  std::size_t grid = 256;
  std::string reparam = "identity";
  std::string output;  // empty: stdout
  std::string output_format = "csv";  // csv | json | svg
};

struct SimulateCommand {
  std::string dist = "uniform";
  std::string method = "kl-cdf";
  double delta = 0.05;
  std::size_t runs = 1000;
  std::size_t tmax = 200;
  std::uint64_t seed = 0;
  std::size_t grid = 21;
  unsigned threads = 0;
  bool intersect = false;
  std::string output;  // prefix: writes <output>.json and <output>.csv
};

struct CompareCommand {
  std::string dist = "sine6";
  std::string t_list = "100,1000,10000";
  std::string methods = "kl-cdf,pinsker,anytime-baseline";
  double delta = 0.05;
  std::uint64_t seed = 0;
  std::size_t grid = 201;
  std::string output_dir = ".";
};

// Each returns the process exit code: 0 on success. run_cli additionally
// maps input_error/invalid_argument to 2 and std::domain_error to 3.
int cmd_band(const BandCommand& cmd);
int cmd_simulate(const SimulateCommand& cmd);
int cmd_compare(const CompareCommand& cmd);

int run_cli(int argc, const char* const* argv);

}  // namespace monoband
