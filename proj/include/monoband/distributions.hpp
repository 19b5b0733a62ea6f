#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace monoband {

// A named distribution on [0,1] used by the simulator: its CDF is evaluated
// both for inverse-transform sampling and as the ground truth in coverage
// checks. Atoms (jump locations) are declared explicitly so the generalized
// inverse can return them exactly.
class DistributionSpec {
 public:
  static DistributionSpec uniform();
  static DistributionSpec sine6();         // F(y) = sin(pi sqrt(y) / 2)^6
  static DistributionSpec jump_mixture();  // atom of mass 1/4 at y = 0.6

  // Piecewise-linear CDF through (y, F) knots; a repeated y encodes an atom.
  // Knots must start at y = 0, end at y = 1 with F = 1, and be non-decreasing.
  static DistributionSpec custom_table(
      std::vector<std::pair<double, double>> knots);

  // "uniform" | "sine6" | "jump-mixture"; throws input_error otherwise.
  static DistributionSpec parse(const std::string& name);

  const std::string& name() const { return name_; }
  double cdf(double y) const;
  double cdf_left(double y) const;  // left limit, differs from cdf at atoms
  const std::vector<double>& atoms() const { return atoms_; }

  // Generalized inverse inf{y : F(y) >= u} by bisection on the monotone CDF
  // (tolerance 1e-12), with atoms resolved exactly.
  double quantile(double u) const;

  // Checks monotonicity and the boundary values on a 10^4-point grid; throws
  // input_error on failure. Runs once on construction for the built-ins.
  void validate() const;

 private:
  DistributionSpec(std::string name, std::function<double(double)> cdf,
                   std::vector<std::pair<double, double>> atom_jumps);

  std::string name_;
  std::function<double(double)> cdf_;
  std::vector<double> atoms_;
  std::vector<std::pair<double, double>> atom_jumps_;  // (location, jump mass)
};

// n i.i.d. draws by inverse-transform sampling, deterministic in the seed.
std::vector<double> sample(const DistributionSpec& spec, std::size_t n,
                           std::uint64_t seed);

}  // namespace monoband
