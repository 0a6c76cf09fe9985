#include "degen/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "degen/sampler.hpp"

namespace degen {

namespace {

void require_cap(const Graph& g, std::size_t cap, const char* engine) {
  if (g.n() > cap) {
    throw CapExceeded(std::string(engine) + " is capped at n = " + std::to_string(cap) +
                      " (got n = " + std::to_string(g.n()) + ")");
  }
}

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

std::vector<bool> degenerate_subset_table(const Graph& g, std::size_t d) {
  const std::size_t n = g.n();
  if (n > 30) {
    throw CapExceeded("subset table needs n <= 30");
  }
  std::vector<std::uint32_t> nb(n);
  for (Vertex v = 0; v < n; ++v) {
    nb[v] = static_cast<std::uint32_t>(g.neighbors(v).mask());
  }
  const std::uint32_t limit = std::uint32_t{1} << n;
  std::vector<bool> table(limit, false);
  table[0] = true;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    // A vertex of degree <= d can be peeled without changing the answer, so
    // the lowest such vertex decides the whole set.
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (static_cast<std::size_t>(std::popcount(nb[v] & mask)) <= d) {
        table[mask] = table[mask & ~(std::uint32_t{1} << v)];
        break;
      }
    }
  }
  return table;
}

VertexSet brute_force_max(const Graph& g, std::size_t d, std::size_t cap) {
  require_cap(g, cap, "brute_force_max");
  const auto table = degenerate_subset_table(g, d);
  std::uint32_t best = 0;
  int best_size = 0;
  for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
    if (!table[mask]) {
      continue;
    }
    const int size = std::popcount(mask);
    if (size > best_size ||
        (size == best_size && VertexSet::from_mask(g.n(), mask) < VertexSet::from_mask(g.n(), best))) {
      best = mask;
      best_size = size;
    }
  }
  return VertexSet::from_mask(g.n(), best);
}

std::vector<VertexSet> enumerate_maximal(const Graph& g, std::size_t d, std::size_t cap) {
  require_cap(g, cap, "enumerate_maximal");
  const auto table = degenerate_subset_table(g, d);
  const std::uint32_t all = static_cast<std::uint32_t>(table.size() - 1);
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    if (!table[mask]) {
      continue;
    }
    bool maximal = true;
    for (std::uint32_t rest = all & ~mask; rest != 0 && maximal; rest &= rest - 1) {
      maximal = !table[mask | (rest & (~rest + 1))];
    }
    if (maximal) {
      out.push_back(VertexSet::from_mask(g.n(), mask));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Distribution::probability_of(const VertexSet& x) const {
  const auto it = outcomes.find(x);
  return it == outcomes.end() ? 0.0 : it->second;
}

double Distribution::total() const {
  CompensatedSum sum;
  for (const auto& [set, p] : outcomes) {
    sum.add(p);
  }
  sum.add(failure_mass);
  return sum.value();
}

namespace {

/// Calls visit(joining) for every subset of the undecided vertices.
template <typename Visit>
void for_each_completion(const PartialAssignment& state, Visit&& visit) {
  const auto undecided = state.undecided().to_vector();
  const std::size_t q = undecided.size();
  VertexSet joining(state.undecided().universe());
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << q); ++bits) {
    for (std::size_t i = 0; i < q; ++i) {
      if (((bits >> i) & 1U) != 0) {
        joining.insert(undecided[i]);
      } else {
        joining.erase(undecided[i]);
      }
    }
    visit(joining);
  }
}

struct Expansion {
  const Graph& g;
  const Constants& consts;
  std::map<VertexSet, CompensatedSum> outcomes;
  CompensatedSum failure;

  void expand(const PartialAssignment& state, double probability) {
    if (auto plan = plan_step(g, state, consts)) {
      for (std::size_t k = 0; k < plan->branch_count(); ++k) {
        const Decision decision = plan->branch(k);
        PartialAssignment child = state;
        decision.apply(child);
        expand(child, probability * decision.probability);
      }
      return;
    }
    check_finish_entry(g, state, consts);
    const double leaf =
        probability * std::ldexp(1.0, -static_cast<int>(state.undecided().size()));
    for_each_completion(state, [&](const VertexSet& joining) {
      if (auto set = finish_with(g, state, consts.d(), joining)) {
        outcomes[*set].add(leaf);
      } else {
        failure.add(leaf);
      }
    });
  }
};

}  // namespace

Distribution exact_distribution(const Graph& g, const Constants& consts, std::size_t cap) {
  require_cap(g, cap, "exact_distribution");
  Expansion expansion{g, consts, {}, {}};
  expansion.expand(PartialAssignment(g.n()), 1.0);
  Distribution out;
  for (const auto& [set, sum] : expansion.outcomes) {
    out.outcomes.emplace(set, sum.value());
  }
  out.failure_mass = expansion.failure.value();
  return out;
}

CensusCheck check_census_bound(const Graph& g, const Constants& consts, std::size_t cap) {
  CensusCheck out;
  out.maximal_sets = enumerate_maximal(g, consts.d(), cap).size();
  out.bound = consts.base_power(g.n());
  out.holds = static_cast<double>(out.maximal_sets) <= out.bound;
  return out;
}

namespace {

struct Auditor {
  const Graph& g;
  const Constants& consts;
  const VertexSet& target;
  double worst_cost;  // M = 2 - worst deficit
  CompensatedSum reach;
  PathAudit audit;

  bool consistent(const Decision& decision) const {
    return std::all_of(decision.to_inside.begin(), decision.to_inside.end(),
                       [&](Vertex v) { return target.contains(v); }) &&
           std::none_of(decision.to_outside.begin(), decision.to_outside.end(),
                        [&](Vertex v) { return target.contains(v); });
  }

  void walk(const PartialAssignment& state, double probability) {
    auto plan = plan_step(g, state, consts);
    if (!plan) {
      check_finish_entry(g, state, consts);
      reach.add(probability * std::ldexp(1.0, -static_cast<int>(state.undecided().size())));
      return;
    }
    double mass = 0.0;
    std::size_t assigned = 0;
    std::size_t matches = 0;
    std::vector<Decision> next;
    for (std::size_t k = 0; k < plan->branch_count(); ++k) {
      Decision decision = plan->branch(k);
      if (consistent(decision)) {
        mass += decision.probability;
        assigned = decision.assigned();
        ++matches;
        next.push_back(std::move(decision));
      }
    }
    if (plan->rule() == RuleId::kGreedy && matches != 1) {
      audit.greedy_unique = false;
    }
    if (matches == 0) {
      return;
    }
    const double ratio = mass * std::pow(worst_cost, static_cast<double>(assigned));
    audit.worst_step_ratio =
        audit.steps_checked == 0 ? ratio : std::min(audit.worst_step_ratio, ratio);
    ++audit.steps_checked;
    for (const auto& decision : next) {
      PartialAssignment child = state;
      decision.apply(child);
      walk(child, probability * decision.probability);
    }
  }
};

}  // namespace

PathAudit audit_target(const Graph& g, const Constants& consts, const VertexSet& target,
                       std::size_t cap) {
  require_cap(g, cap, "audit_target");
  Auditor auditor{g, consts, target, consts.base().costs.worst(), {}, {}};
  auditor.audit.worst_step_ratio = 1.0;
  auditor.walk(PartialAssignment(g.n()), 1.0);
  auditor.audit.reach_probability = auditor.reach.value();
  return auditor.audit;
}

}  // namespace degen
