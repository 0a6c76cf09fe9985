#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "degen/constants.hpp"
#include "degen/graph.hpp"
#include "degen/rng.hpp"
#include "degen/vertex_set.hpp"

namespace degen {

enum class RuleId : std::uint8_t {
  kDenseEdge = 1,  // random edge of a dense undecided part
  kGreedy = 2,     // geometric guess in a low-degree neighbourhood
  kHeavy = 3,      // drop a vertex with too many neighbours in the solution
  kFinish = 4,     // coin flips for the rest, then a degeneracy check
};

/// Thrown when an internal guarantee of the sampler is violated. Seeing one
/// is a bug, never an input problem.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Sampler state: vertices assumed inside the solution, assumed outside it,
/// and still undecided. The three sets always partition V(G).
class PartialAssignment {
 public:
  explicit PartialAssignment(std::size_t n)
      : inside_(n), outside_(n), undecided_(VertexSet::full(n)) {}

  const VertexSet& inside() const { return inside_; }
  const VertexSet& outside() const { return outside_; }
  const VertexSet& undecided() const { return undecided_; }
  std::size_t decided() const { return inside_.size() + outside_.size(); }

  void assign_inside(Vertex v);
  void assign_outside(Vertex v);

  /// Undecided vertices with fewer than kappa*d undecided neighbours.
  VertexSet low_degree(const Graph& g, const Constants& consts) const;
  /// Undecided vertices with more than d neighbours inside.
  VertexSet heavy(const Graph& g, std::size_t d) const;

  bool is_partition() const;

 private:
  VertexSet inside_;
  VertexSet outside_;
  VertexSet undecided_;
};

using VertexList = boost::container::small_vector<Vertex, 8>;

/// One random branch of a rule together with its probability.
struct Decision {
  double probability = 1.0;
  VertexList to_inside;
  VertexList to_outside;

  std::size_t assigned() const { return to_inside.size() + to_outside.size(); }
  void apply(PartialAssignment& state) const;
};

struct TraceStep {
  RuleId rule = RuleId::kFinish;
  std::size_t decision = 0;  // index among the rule's branches
  std::size_t branches = 1;
  double probability = 1.0;
  /// Greedy rule: the centre vertex. Dense-edge rule: lower edge endpoint.
  /// Heavy rule: the dropped vertex.
  Vertex pivot = 0;
  /// Greedy rule only: undecided neighbours of the pivot.
  std::size_t neighbour_count = 0;
  std::vector<Vertex> to_inside;
  std::vector<Vertex> to_outside;

  std::size_t assigned() const { return to_inside.size() + to_outside.size(); }
};

struct RuleTrace {
  std::vector<TraceStep> steps;

  /// Product of the step probabilities.
  double path_probability() const;
};

struct SampleOutcome {
  std::optional<VertexSet> set;  // empty on failure
  RuleTrace trace;

  bool success() const { return set.has_value(); }
};

/// The branches of whichever of the dense-edge, greedy and heavy rules fires
/// first. The sampler draws one branch; the exact-distribution oracle expands
/// all of them, so both share this dispatch.
class StepPlan {
 public:
  RuleId rule() const { return rule_; }
  std::size_t branch_count() const;
  Decision branch(std::size_t k) const;
  std::size_t sample(Rng& rng) const;
  Vertex pivot() const { return pivot_; }
  std::size_t neighbour_count() const { return neighbours_.size(); }

  static StepPlan dense_edge(const Graph& g, const PartialAssignment& state);
  static StepPlan greedy(const Graph& g, const PartialAssignment& state, Vertex v,
                         const Constants& consts);
  static StepPlan heavy(const Graph& g, const PartialAssignment& state, std::size_t d);

 private:
  RuleId rule_ = RuleId::kFinish;
  Vertex pivot_ = 0;
  std::vector<Edge> edges_;      // dense-edge rule
  VertexList neighbours_;        // greedy rule, ascending
  std::span<const double> law_;  // greedy rule
  std::vector<Vertex> heavy_;    // heavy rule, ascending
};

bool rule1_applicable(const Graph& g, const PartialAssignment& state, const Constants& consts);
std::optional<Vertex> rule2_candidate(const Graph& g, const PartialAssignment& state,
                                      const Constants& consts);
bool rule3_applicable(const Graph& g, const PartialAssignment& state, const Constants& consts);

/// Lowest-numbered applicable rule among the first three, or nothing when
/// only the finishing rule remains.
std::optional<StepPlan> plan_step(const Graph& g, const PartialAssignment& state,
                                  const Constants& consts);

TraceStep apply_rule1(const Graph& g, PartialAssignment& state, const Constants& consts, Rng& rng);
TraceStep apply_rule2(const Graph& g, PartialAssignment& state, Vertex v, const Constants& consts,
                      Rng& rng);
TraceStep apply_rule3(const Graph& g, PartialAssignment& state, const Constants& consts, Rng& rng);

/// Throws InvariantViolation unless |A u Z| > alpha n (or nothing is left).
void check_finish_entry(const Graph& g, const PartialAssignment& state, const Constants& consts);

/// Completes `state` by sending `joining` (a subset of the undecided
/// vertices) inside and the rest outside. Returns the inside set when it
/// induces a d-degenerate graph.
std::optional<VertexSet> finish_with(const Graph& g, const PartialAssignment& state,
                                     std::size_t d, const VertexSet& joining);

/// Finishing rule with fair coins. Requires the first three rules to be
/// inapplicable.
SampleOutcome apply_rule4(const Graph& g, PartialAssignment& state, const Constants& consts,
                          Rng& rng);

enum class TraceMode { kRecord, kSkip };

/// One complete run from A = Z = empty.
SampleOutcome run(const Graph& g, const Constants& consts, Rng& rng,
                  TraceMode mode = TraceMode::kRecord);

/// Replays `trace` on `g`, re-deriving every step's plan and probability.
/// Throws InvariantViolation if a recorded step does not match the dispatch.
double replay_probability(const Graph& g, const Constants& consts, const RuleTrace& trace);

}  // namespace degen
