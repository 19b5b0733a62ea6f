#pragma once

#include <cstdint>

namespace monoband {

// Counter-based stream: output i is a fixed mix of (seed, i), so draws can be
// reproduced from the seed alone and independent streams never share state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : base_(seed) {}

  std::uint64_t next_u64();
  double next_unit();  // uniform in [0, 1)

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Independent per-task seed derived from a master seed and a task index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace monoband
