#include "degen/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace degen {

void PartialAssignment::assign_inside(Vertex v) {
  if (!undecided_.contains(v)) {
    throw InvariantViolation("vertex " + std::to_string(v) + " is already decided");
  }
  undecided_.erase(v);
  inside_.insert(v);
}

void PartialAssignment::assign_outside(Vertex v) {
  if (!undecided_.contains(v)) {
    throw InvariantViolation("vertex " + std::to_string(v) + " is already decided");
  }
  undecided_.erase(v);
  outside_.insert(v);
}

VertexSet PartialAssignment::low_degree(const Graph& g, const Constants& consts) const {
  VertexSet out(g.n());
  for (Vertex v : undecided_) {
    if (g.neighbors(v).intersection_size(undecided_) <= consts.max_neighbours()) {
      out.insert(v);
    }
  }
  return out;
}

VertexSet PartialAssignment::heavy(const Graph& g, std::size_t d) const {
  VertexSet out(g.n());
  for (Vertex v : undecided_) {
    if (g.neighbors(v).intersection_size(inside_) > d) {
      out.insert(v);
    }
  }
  return out;
}

bool PartialAssignment::is_partition() const {
  return !inside_.intersects(outside_) && !inside_.intersects(undecided_) &&
         !outside_.intersects(undecided_) &&
         (inside_ | outside_ | undecided_) == VertexSet::full(inside_.universe());
}

void Decision::apply(PartialAssignment& state) const {
  for (Vertex v : to_outside) {
    state.assign_outside(v);
  }
  for (Vertex v : to_inside) {
    state.assign_inside(v);
  }
}

double RuleTrace::path_probability() const {
  double p = 1.0;
  for (const auto& step : steps) {
    p *= step.probability;
  }
  return p;
}

std::size_t StepPlan::branch_count() const {
  switch (rule_) {
    case RuleId::kDenseEdge:
      return 3 * edges_.size();
    case RuleId::kGreedy:
      return neighbours_.size() + 1;
    case RuleId::kHeavy:
      return heavy_.size();
    case RuleId::kFinish:
      break;
  }
  return 0;
}

Decision StepPlan::branch(std::size_t k) const {
  Decision out;
  switch (rule_) {
    case RuleId::kDenseEdge: {
      const auto [u, v] = edges_.at(k / 3);
      out.probability = 1.0 / static_cast<double>(3 * edges_.size());
      switch (k % 3) {
        case 0:
          out.to_inside.push_back(u);
          out.to_outside.push_back(v);
          break;
        case 1:
          out.to_outside.push_back(u);
          out.to_inside.push_back(v);
          break;
        default:
          out.to_outside.push_back(u);
          out.to_outside.push_back(v);
          break;
      }
      break;
    }
    case RuleId::kGreedy: {
      const std::size_t r = neighbours_.size();
      if (k > r) {
        throw std::out_of_range("greedy branch index");
      }
      out.probability = law_[k];
      out.to_outside.assign(neighbours_.begin(), neighbours_.begin() + static_cast<long>(k));
      out.to_inside.push_back(k < r ? neighbours_[k] : pivot_);
      break;
    }
    case RuleId::kHeavy:
      out.probability = 1.0 / static_cast<double>(heavy_.size());
      out.to_outside.push_back(heavy_.at(k));
      break;
    case RuleId::kFinish:
      throw std::logic_error("the finishing rule has no step plan");
  }
  return out;
}

std::size_t StepPlan::sample(Rng& rng) const {
  if (rule_ == RuleId::kGreedy) {
    const double u = rng.uniform_real();
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < law_.size(); ++k) {
      cumulative += law_[k];
      if (u < cumulative) {
        return k;
      }
    }
    return law_.size() - 1;
  }
  return static_cast<std::size_t>(rng.uniform_index(branch_count()));
}

StepPlan StepPlan::dense_edge(const Graph& g, const PartialAssignment& state) {
  StepPlan plan;
  plan.rule_ = RuleId::kDenseEdge;
  plan.edges_ = edge_list_within(g, state.undecided());
  plan.pivot_ = plan.edges_.empty() ? 0 : plan.edges_.front().first;
  return plan;
}

StepPlan StepPlan::greedy(const Graph& g, const PartialAssignment& state, Vertex v,
                          const Constants& consts) {
  StepPlan plan;
  plan.rule_ = RuleId::kGreedy;
  plan.pivot_ = v;
  for (Vertex u : g.neighbors(v) & state.undecided()) {
    plan.neighbours_.push_back(u);
  }
  plan.law_ = consts.greedy_law(plan.neighbours_.size());
  return plan;
}

StepPlan StepPlan::heavy(const Graph& g, const PartialAssignment& state, std::size_t d) {
  StepPlan plan;
  plan.rule_ = RuleId::kHeavy;
  plan.heavy_ = state.heavy(g, d).to_vector();
  plan.pivot_ = plan.heavy_.empty() ? 0 : plan.heavy_.front();
  return plan;
}

namespace {

// count >= (base + excess) * d * size, decided on the integer slack so that
// excesses far below double spacing still count as strictly positive.
bool meets_threshold(std::size_t count, std::int64_t base, double excess, std::size_t d,
                     std::size_t size) {
  const auto slack =
      static_cast<std::int64_t>(count) - base * static_cast<std::int64_t>(d * size);
  return slack >= 0 &&
         static_cast<double>(slack) >= excess * static_cast<double>(d) * static_cast<double>(size);
}

}  // namespace

bool rule1_applicable(const Graph& g, const PartialAssignment& state, const Constants& consts) {
  const std::size_t edges = edges_within(g, state.undecided());
  return edges >= 1 && meets_threshold(edges, 4, consts.parameters().lambda_excess, consts.d(),
                                       state.undecided().size());
}

std::optional<Vertex> rule2_candidate(const Graph& g, const PartialAssignment& state,
                                      const Constants& consts) {
  for (Vertex v : state.undecided()) {
    const auto& nb = g.neighbors(v);
    if (nb.intersection_size(state.undecided()) <= consts.max_neighbours() &&
        nb.intersection_size(state.inside()) <= consts.d()) {
      return v;
    }
  }
  return std::nullopt;
}

bool rule3_applicable(const Graph& g, const PartialAssignment& state, const Constants& consts) {
  const std::size_t heavy = state.heavy(g, consts.d()).size();
  return heavy >= 1 && meets_threshold(heavy, 2, consts.parameters().c_excess, consts.d(),
                                       state.inside().size());
}

std::optional<StepPlan> plan_step(const Graph& g, const PartialAssignment& state,
                                  const Constants& consts) {
  if (rule1_applicable(g, state, consts)) {
    return StepPlan::dense_edge(g, state);
  }
  if (auto v = rule2_candidate(g, state, consts)) {
    return StepPlan::greedy(g, state, *v, consts);
  }
  if (rule3_applicable(g, state, consts)) {
    return StepPlan::heavy(g, state, consts.d());
  }
  return std::nullopt;
}

namespace {

TraceStep record(const StepPlan& plan, std::size_t k, const Decision& decision) {
  TraceStep step;
  step.rule = plan.rule();
  step.decision = k;
  step.branches = plan.branch_count();
  step.probability = decision.probability;
  step.pivot = plan.pivot();
  if (plan.rule() == RuleId::kDenseEdge) {
    Vertex lo = std::numeric_limits<Vertex>::max();
    for (Vertex v : decision.to_inside) lo = std::min(lo, v);
    for (Vertex v : decision.to_outside) lo = std::min(lo, v);
    step.pivot = lo;
  }
  if (plan.rule() == RuleId::kGreedy) {
    step.neighbour_count = plan.neighbour_count();
  }
  step.to_inside.assign(decision.to_inside.begin(), decision.to_inside.end());
  step.to_outside.assign(decision.to_outside.begin(), decision.to_outside.end());
  return step;
}

TraceStep apply_plan(const StepPlan& plan, PartialAssignment& state, Rng& rng) {
  const std::size_t k = plan.sample(rng);
  const Decision decision = plan.branch(k);
  decision.apply(state);
  return record(plan, k, decision);
}

SampleOutcome finish_run(const Graph& g, PartialAssignment& state, const Constants& consts,
                         Rng& rng, TraceMode mode) {
  check_finish_entry(g, state, consts);
  VertexSet joining(g.n());
  for (Vertex v : state.undecided()) {
    if (rng.coin()) {
      joining.insert(v);
    }
  }
  SampleOutcome out;
  out.set = finish_with(g, state, consts.d(), joining);
  if (mode == TraceMode::kRecord) {
    TraceStep step;
    step.rule = RuleId::kFinish;
    const std::size_t q = state.undecided().size();
    step.probability = std::ldexp(1.0, -static_cast<int>(q));
    step.branches = q < 64 ? (std::size_t{1} << q) : std::numeric_limits<std::size_t>::max();
    std::size_t index = 0;
    std::size_t bit = 0;
    for (Vertex v : state.undecided()) {
      if (joining.contains(v)) {
        step.to_inside.push_back(v);
        if (bit < 64) index |= std::size_t{1} << bit;
      } else {
        step.to_outside.push_back(v);
      }
      ++bit;
    }
    step.decision = q <= 64 ? index : 0;
    out.trace.steps.push_back(std::move(step));
  }
  for (Vertex v : state.undecided()) {
    if (joining.contains(v)) {
      state.assign_inside(v);
    } else {
      state.assign_outside(v);
    }
  }
  return out;
}

}  // namespace

TraceStep apply_rule1(const Graph& g, PartialAssignment& state, const Constants& consts,
                      Rng& rng) {
  if (!rule1_applicable(g, state, consts)) {
    throw InvariantViolation("dense-edge rule applied while inapplicable");
  }
  return apply_plan(StepPlan::dense_edge(g, state), state, rng);
}

TraceStep apply_rule2(const Graph& g, PartialAssignment& state, Vertex v, const Constants& consts,
                      Rng& rng) {
  if (!state.undecided().contains(v) ||
      g.neighbors(v).intersection_size(state.undecided()) > consts.max_neighbours() ||
      g.neighbors(v).intersection_size(state.inside()) > consts.d()) {
    throw InvariantViolation("greedy rule applied to a vertex that does not qualify");
  }
  return apply_plan(StepPlan::greedy(g, state, v, consts), state, rng);
}

TraceStep apply_rule3(const Graph& g, PartialAssignment& state, const Constants& consts,
                      Rng& rng) {
  if (!rule3_applicable(g, state, consts)) {
    throw InvariantViolation("heavy-vertex rule applied while inapplicable");
  }
  return apply_plan(StepPlan::heavy(g, state, consts.d()), state, rng);
}

void check_finish_entry(const Graph& g, const PartialAssignment& state, const Constants& consts) {
  if (state.undecided().empty()) {
    return;
  }
  const double threshold = consts.alpha() * static_cast<double>(g.n());
  if (!(static_cast<double>(state.decided()) > threshold)) {
    throw InvariantViolation("finishing rule entered with |A u Z| = " +
                             std::to_string(state.decided()) + " <= alpha * n = " +
                             std::to_string(threshold));
  }
}

std::optional<VertexSet> finish_with(const Graph& g, const PartialAssignment& state,
                                     std::size_t d, const VertexSet& joining) {
  if (!joining.is_subset_of(state.undecided())) {
    throw InvariantViolation("completion assigns an already decided vertex");
  }
  VertexSet result = state.inside() | joining;
  if (is_degenerate(g, result, d)) {
    return result;
  }
  return std::nullopt;
}

SampleOutcome apply_rule4(const Graph& g, PartialAssignment& state, const Constants& consts,
                          Rng& rng) {
  if (plan_step(g, state, consts)) {
    throw InvariantViolation("finishing rule applied while a branching rule is applicable");
  }
  return finish_run(g, state, consts, rng, TraceMode::kRecord);
}

SampleOutcome run(const Graph& g, const Constants& consts, Rng& rng, TraceMode mode) {
  PartialAssignment state(g.n());
  RuleTrace trace;
  std::size_t applications = 0;
  while (auto plan = plan_step(g, state, consts)) {
    const std::size_t k = plan->sample(rng);
    const Decision decision = plan->branch(k);
    if (decision.assigned() == 0) {
      throw InvariantViolation("a branching rule assigned no vertex");
    }
    decision.apply(state);
    if (mode == TraceMode::kRecord) {
      trace.steps.push_back(record(*plan, k, decision));
    }
    if (++applications > g.n()) {
      throw InvariantViolation("more branching steps than vertices");
    }
  }
  SampleOutcome out = finish_run(g, state, consts, rng, mode);
  if (mode == TraceMode::kRecord) {
    trace.steps.insert(trace.steps.end(), out.trace.steps.begin(), out.trace.steps.end());
    out.trace = std::move(trace);
  }
  return out;
}

double replay_probability(const Graph& g, const Constants& consts, const RuleTrace& trace) {
  PartialAssignment state(g.n());
  double probability = 1.0;
  for (const auto& step : trace.steps) {
    auto plan = plan_step(g, state, consts);
    if (!plan) {
      if (step.rule != RuleId::kFinish) {
        throw InvariantViolation("trace continues branching after dispatch reached the finish");
      }
      check_finish_entry(g, state, consts);
      VertexSet joining = VertexSet::from_members(g.n(), step.to_inside);
      VertexSet leaving = VertexSet::from_members(g.n(), step.to_outside);
      if ((joining | leaving) != state.undecided() || joining.intersects(leaving)) {
        throw InvariantViolation("finishing step does not cover the undecided vertices");
      }
      probability *= std::ldexp(1.0, -static_cast<int>(state.undecided().size()));
      for (Vertex v : joining) state.assign_inside(v);
      for (Vertex v : leaving) state.assign_outside(v);
      continue;
    }
    if (plan->rule() != step.rule || step.decision >= plan->branch_count()) {
      throw InvariantViolation("trace step does not match the dispatched rule");
    }
    const Decision decision = plan->branch(step.decision);
    if (!std::equal(decision.to_inside.begin(), decision.to_inside.end(), step.to_inside.begin(),
                    step.to_inside.end()) ||
        !std::equal(decision.to_outside.begin(), decision.to_outside.end(),
                    step.to_outside.begin(), step.to_outside.end())) {
      throw InvariantViolation("trace step assignments differ from the replayed decision");
    }
    probability *= decision.probability;
    decision.apply(state);
  }
  return probability;
}

}  // namespace degen
