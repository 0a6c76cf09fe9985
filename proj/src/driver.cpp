#include "degen/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "degen/rng.hpp"
#include "degen/sampler.hpp"

namespace degen {

std::uint64_t auto_budget(const Constants& consts, std::size_t n, std::uint64_t ceiling) {
  const double runs = std::ceil(consts.base_power(n));
  if (!(runs <= static_cast<double>(ceiling))) {
    throw BudgetExceeded("AUTO budget (2 - eps)^n = " + std::to_string(runs) +
                         " runs exceeds the ceiling of " + std::to_string(ceiling));
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(runs));
}

namespace {

struct BlockResult {
  std::uint64_t runs = 0;
  std::uint64_t successes = 0;
  std::optional<VertexSet> best;
  std::uint64_t best_run = 0;
  bool hit_target = false;
};

/// Runs `work(worker_index)` on `workers` threads (the caller is one of them)
/// and rethrows the first exception.
template <typename Work>
void run_workers(unsigned workers, Work&& work) {
  workers = std::max(1U, workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto guarded = [&](unsigned index) {
    try {
      work(index);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back(guarded, w);
  }
  guarded(0);
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

}  // namespace

SearchReport search_max(const Graph& g, const Constants& consts, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t budget =
      options.budget ? *options.budget : auto_budget(consts, g.n(), options.ceiling);
  if (budget == 0) {
    throw std::invalid_argument("search budget must be at least 1");
  }

  // Blocks are claimed in index order; a block is scanned sequentially and
  // stops at its first run reaching the target size.
  const std::uint64_t block_size = std::max<std::uint64_t>(256, (budget + 65535) / 65536);
  const std::uint64_t block_count = (budget + block_size - 1) / block_size;
  std::vector<BlockResult> blocks(block_count);
  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> first_hit{std::numeric_limits<std::uint64_t>::max()};

  run_workers(options.workers, [&](unsigned) {
    while (true) {
      const std::uint64_t b = next_block.fetch_add(1);
      if (b >= block_count || b > first_hit.load()) {
        return;
      }
      BlockResult& result = blocks[b];
      const std::uint64_t end = std::min(budget, (b + 1) * block_size);
      for (std::uint64_t i = b * block_size; i < end; ++i) {
        Rng rng = Rng::stream(options.base_seed, i);
        SampleOutcome outcome = run(g, consts, rng, TraceMode::kSkip);
        ++result.runs;
        if (!outcome.set) {
          continue;
        }
        ++result.successes;
        if (!result.best || outcome.set->size() > result.best->size()) {
          result.best = std::move(outcome.set);
          result.best_run = i;
        }
        if (options.target_size && result.best->size() >= *options.target_size) {
          result.hit_target = true;
          std::uint64_t seen = first_hit.load();
          while (b < seen && !first_hit.compare_exchange_weak(seen, b)) {
          }
          break;
        }
      }
    }
  });

  SearchReport report;
  report.budget = budget;
  report.base_seed = options.base_seed;
  report.best_set = g.empty_set();
  const std::uint64_t last = std::min(block_count - 1, first_hit.load());
  bool have_best = false;
  for (std::uint64_t b = 0; b <= last; ++b) {
    const BlockResult& result = blocks[b];
    report.runs_executed += result.runs;
    report.successes += result.successes;
    // Strictly larger only: earlier blocks win ties.
    if (result.best && (!have_best || result.best->size() > report.best_size)) {
      report.best_set = *result.best;
      report.best_size = result.best->size();
      report.best_run = result.best_run;
      have_best = true;
    }
  }
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

ProbabilityEstimate wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  ProbabilityEstimate out;
  out.hits = hits;
  out.trials = trials;
  if (trials == 0) {
    out.upper = 1.0;
    return out;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  out.estimate = p;
  out.lower = std::max(0.0, centre - half);
  out.upper = std::min(1.0, centre + half);
  return out;
}

ProbabilityEstimate estimate_probability(const Graph& g, const Constants& consts,
                                         const VertexSet& target, std::uint64_t trials,
                                         std::uint64_t base_seed, unsigned workers) {
  if (trials == 0) {
    throw std::invalid_argument("at least one trial is required");
  }
  workers = std::max(1U, workers);
  std::vector<std::uint64_t> hits(workers, 0);
  run_workers(workers, [&](unsigned w) {
    for (std::uint64_t i = w; i < trials; i += workers) {
      Rng rng = Rng::stream(base_seed, i);
      const SampleOutcome outcome = run(g, consts, rng, TraceMode::kSkip);
      if (outcome.set && *outcome.set == target) {
        ++hits[w];
      }
    }
  });
  std::uint64_t total = 0;
  for (auto h : hits) {
    total += h;
  }
  return wilson_interval(total, trials);
}

}  // namespace degen
