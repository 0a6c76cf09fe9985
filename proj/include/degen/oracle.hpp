#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "degen/constants.hpp"
#include "degen/graph.hpp"
#include "degen/vertex_set.hpp"

namespace degen {

/// Thrown when an exhaustive engine is asked to run above its size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kBruteForceCap = 22;
inline constexpr std::size_t kCensusCap = 20;
inline constexpr std::size_t kDistributionCap = 8;

/// For every subset mask of V(G), whether it induces a d-degenerate graph.
/// Requires n <= 30 (memory is 2^n bytes).
std::vector<bool> degenerate_subset_table(const Graph& g, std::size_t d);

/// A maximum-cardinality set inducing a d-degenerate graph, ties broken
/// toward the lexicographically smallest member sequence.
VertexSet brute_force_max(const Graph& g, std::size_t d, std::size_t cap = kBruteForceCap);

/// All inclusion-wise maximal sets inducing a d-degenerate graph, in
/// lexicographic order.
std::vector<VertexSet> enumerate_maximal(const Graph& g, std::size_t d,
                                         std::size_t cap = kCensusCap);

/// Exact output law of the sampler.
struct Distribution {
  std::map<VertexSet, double> outcomes;
  double failure_mass = 0.0;

  double probability_of(const VertexSet& x) const;
  double total() const;
};

/// Expands every random branch of the sampler. Uses the same dispatch and
/// branch enumeration as the sampler itself.
Distribution exact_distribution(const Graph& g, const Constants& consts,
                                std::size_t cap = kDistributionCap);

struct CensusCheck {
  std::size_t maximal_sets = 0;
  double bound = 0.0;  // (2 - epsilon)^n
  bool holds = false;
};

/// Compares the number of maximal sets against (2 - epsilon)^n.
CensusCheck check_census_bound(const Graph& g, const Constants& consts,
                               std::size_t cap = kCensusCap);

/// Audit of the sampler's decision tree restricted to branches consistent
/// with a fixed maximal set X.
struct PathAudit {
  /// Probability that the run ends with A = X exactly.
  double reach_probability = 0.0;
  /// Smallest ratio (consistent mass of a step) / M^-(vertices assigned),
  /// over all consistent steps; >= 1 means every step pays at most M per
  /// decided vertex.
  double worst_step_ratio = 0.0;
  /// Every greedy step offered exactly one consistent decision.
  bool greedy_unique = true;
  std::size_t steps_checked = 0;
};

PathAudit audit_target(const Graph& g, const Constants& consts, const VertexSet& target,
                       std::size_t cap = kDistributionCap);

}  // namespace degen
