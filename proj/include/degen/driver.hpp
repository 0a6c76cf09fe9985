#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "degen/constants.hpp"
#include "degen/graph.hpp"
#include "degen/vertex_set.hpp"

namespace degen {

/// Thrown when an AUTO budget would exceed the configured ceiling.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultBudgetCeiling = std::uint64_t{1} << 30;

/// ceil((2 - epsilon)^n); throws BudgetExceeded above `ceiling`.
std::uint64_t auto_budget(const Constants& consts, std::size_t n,
                          std::uint64_t ceiling = kDefaultBudgetCeiling);

struct SearchOptions {
  std::optional<std::uint64_t> budget;  // empty means AUTO
  std::uint64_t ceiling = kDefaultBudgetCeiling;
  std::uint64_t base_seed = 0;
  unsigned workers = 1;
  /// Stop at the first run whose output reaches this size.
  std::optional<std::size_t> target_size;
};

struct SearchReport {
  VertexSet best_set;
  std::size_t best_size = 0;
  std::uint64_t best_run = 0;  // run index that produced best_set
  std::uint64_t runs_executed = 0;
  std::uint64_t successes = 0;
  std::uint64_t budget = 0;
  std::uint64_t base_seed = 0;
  std::chrono::duration<double> wall_time{0};

  double success_rate() const {
    return runs_executed == 0 ? 0.0
                              : static_cast<double>(successes) / static_cast<double>(runs_executed);
  }
};

/// Runs the sampler `budget` times with streams (base_seed, run index) and
/// keeps the largest output, earliest run index first on ties. The report
/// (apart from wall_time) does not depend on the worker count.
SearchReport search_max(const Graph& g, const Constants& consts, const SearchOptions& options);

struct ProbabilityEstimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double lower = 0.0;  // 95% Wilson score interval
  double upper = 0.0;
};

ProbabilityEstimate wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = 1.959963984540054);

/// Fraction of runs (streams (base_seed, i), i < trials) that output exactly
/// `target`.
ProbabilityEstimate estimate_probability(const Graph& g, const Constants& consts,
                                         const VertexSet& target, std::uint64_t trials,
                                         std::uint64_t base_seed, unsigned workers = 1);

}  // namespace degen
