#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "degen/oracle.hpp"
#include "degen/rng.hpp"
#include "degen/sampler.hpp"
#include "support/oracles.hpp"

namespace degen {
namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

std::vector<VertexSet> sets_of_size(std::size_t n, std::size_t size) {
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const VertexSet s = VertexSet::from_mask(n, mask);
    if (s.size() == size) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_max(Graph::cycle(5), 1).size(), 4u);
  EXPECT_EQ(brute_force_max(Graph::cycle(5), 1), VertexSet(5, {0, 1, 2, 3}));
  EXPECT_EQ(brute_force_max(Graph::complete(4), 1), VertexSet(4, {0, 1}));
  EXPECT_EQ(brute_force_max(Graph::edgeless(7), 1), VertexSet::full(7));
  EXPECT_THROW(brute_force_max(Graph::edgeless(23), 1), CapExceeded);
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_maximal(Graph::cycle(5), 1), sets_of_size(5, 4));
  EXPECT_EQ(enumerate_maximal(Graph::complete(4), 1), sets_of_size(4, 2));
  EXPECT_EQ(enumerate_maximal(Graph::path(3), 1), std::vector<VertexSet>{VertexSet::full(3)});
  EXPECT_THROW(enumerate_maximal(Graph::edgeless(21), 1), CapExceeded);
}

TEST(Enumerate, MatchesDefinitionAndSemanticMaximality) {
  std::mt19937_64 rng(2);
  std::vector<Graph> corpus;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (Graph& g : testing::all_labelled_graphs(n)) corpus.push_back(std::move(g));
  }
  for (int i = 0; i < 150; ++i) corpus.push_back(testing::random_graph(5 + i % 2, 0.5, rng));
  for (const Graph& g : corpus) {
    const testing::Matrix m(g);
    for (std::size_t d = 1; d <= 2; ++d) {
      const auto maximal = enumerate_maximal(g, d);
      std::vector<std::uint64_t> masks;
      for (const auto& x : maximal) masks.push_back(x.mask());
      std::sort(masks.begin(), masks.end());
      EXPECT_EQ(masks, testing::maximal_masks(m, static_cast<int>(d)));
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n()); ++mask) {
        const VertexSet x = VertexSet::from_mask(g.n(), mask);
        const bool listed = std::binary_search(maximal.begin(), maximal.end(), x);
        EXPECT_EQ(listed, is_maximal_degenerate(g, x, d));
      }
      std::size_t largest = 0;
      for (const auto& x : maximal) largest = std::max(largest, x.size());
      EXPECT_EQ(brute_force_max(g, d).size(), largest);
    }
  }
}

TEST(Distribution, Examples) {
  const Constants k1 = defaults(1);
  const Distribution edgeless = exact_distribution(Graph::edgeless(3), k1);
  ASSERT_EQ(edgeless.outcomes.size(), 1u);
  EXPECT_EQ(edgeless.probability_of(VertexSet::full(3)), 1.0);
  EXPECT_EQ(edgeless.failure_mass, 0.0);

  const Edge e[] = {{0, 1}};
  const Distribution k2 = exact_distribution(Graph::from_edges(2, e), k1);
  EXPECT_NEAR(k2.probability_of(VertexSet::full(2)), 1.0 / kPhi, 1e-9);
  EXPECT_NEAR(k2.probability_of(VertexSet(2, {0})), 1.0 / (kPhi * kPhi), 1e-9);
  EXPECT_EQ(k2.failure_mass, 0.0);

  const Graph c5 = Graph::cycle(5);
  const Distribution dc5 = exact_distribution(c5, k1);
  EXPECT_NEAR(dc5.total(), 1.0, 1e-9);
  for (const VertexSet& x : enumerate_maximal(c5, 1)) {
    EXPECT_GE(dc5.probability_of(x), std::pow(1.99991, -5));
  }
  EXPECT_THROW(exact_distribution(Graph::edgeless(9), k1), CapExceeded);
}

TEST(Distribution, TotalsAndSupport) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 80; ++i) {
    const std::size_t d = 1 + i % 2;
    const Graph g = testing::random_graph(2 + i % 6, 0.6, rng);
    const Distribution dist = exact_distribution(g, defaults(d));
    EXPECT_NEAR(dist.total(), 1.0, 1e-9);
    EXPECT_GE(dist.failure_mass, 0.0);
    for (const auto& [set, p] : dist.outcomes) {
      EXPECT_GT(p, 0.0);
      EXPECT_TRUE(is_degenerate(g, set, d));
    }
  }
}

// Every outcome seen in sampling carries positive exact mass, and frequent
// outcomes match their exact probability.
TEST(Distribution, AgreesWithSampling) {
  std::mt19937_64 gen(31);
  const Constants k = defaults(1);
  for (int i = 0; i < 6; ++i) {
    const Graph g = testing::random_graph(6, 0.5, gen);
    const Distribution dist = exact_distribution(g, k);
    const int trials = 20000;
    std::map<VertexSet, int> seen;
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng = Rng::stream(i, t);
      const SampleOutcome out = run(g, k, rng, TraceMode::kSkip);
      if (out.set) {
        ++seen[*out.set];
      } else {
        ++failures;
      }
    }
    for (const auto& [set, count] : seen) EXPECT_GT(dist.probability_of(set), 0.0);
    for (const auto& [set, p] : dist.outcomes) {
      if (p < 0.01) continue;
      const double se = std::sqrt(p * (1 - p) / trials);
      EXPECT_NEAR(seen[set] / static_cast<double>(trials), p, 4 * se);
    }
    const double pf = dist.failure_mass;
    EXPECT_NEAR(failures / static_cast<double>(trials), pf,
                4 * std::sqrt(pf * (1 - pf) / trials) + 1e-12);
  }
}

TEST(Census, Examples) {
  const Constants k1 = defaults(1);
  const CensusCheck c5 = check_census_bound(Graph::cycle(5), k1);
  EXPECT_EQ(c5.maximal_sets, 5u);
  EXPECT_NEAR(c5.bound, std::pow(2.0 - k1.epsilon(), 5), 1e-12);
  EXPECT_TRUE(c5.holds);
  const CensusCheck k4 = check_census_bound(Graph::complete(4), k1);
  EXPECT_EQ(k4.maximal_sets, 6u);
  EXPECT_TRUE(k4.holds);
  const CensusCheck edgeless = check_census_bound(Graph::edgeless(6), defaults(3));
  EXPECT_EQ(edgeless.maximal_sets, 1u);
  EXPECT_TRUE(edgeless.holds);
}

// Along the branches consistent with a maximal X: the greedy rule offers a
// single consistent decision and every step keeps mass >= M^-(assigned).
TEST(Audit, PerStepCostBound) {
  std::mt19937_64 gen(41);
  std::vector<Graph> corpus = {Graph::cycle(5), Graph::complete(4), Graph::complete(7)};
  for (int i = 0; i < 40; ++i) corpus.push_back(testing::random_graph(4 + i % 4, 0.5, gen));
  for (const Graph& g : corpus) {
    for (std::size_t d = 1; d <= 2; ++d) {
      const Constants k = defaults(d);
      const Distribution dist = exact_distribution(g, k);
      for (const VertexSet& x : enumerate_maximal(g, d)) {
        const PathAudit audit = audit_target(g, k, x);
        EXPECT_TRUE(audit.greedy_unique);
        EXPECT_GE(audit.worst_step_ratio, 1.0 - 1e-12);
        EXPECT_GT(audit.steps_checked, 0u);
        EXPECT_LE(audit.reach_probability, dist.probability_of(x) * (1 + 1e-12));
        EXPECT_GE(audit.reach_probability, k.success_lower_bound(g.n()) * (1 - 1e-12));
      }
    }
  }
}

}  // namespace
}  // namespace degen
