#ifndef SICPROP_ACCEPTANCE_HPP
#define SICPROP_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sicprop {

// One verification criterion of the library-wide suite.  `measured` is the
// worst observed value of the criterion's figure of merit, compared against
// the pinned `threshold` (direction depends on the criterion and is baked
// into `passed`).
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

// Runs every criterion with a deterministic RNG stream.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

} // namespace sicprop

#endif
