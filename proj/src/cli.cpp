#include "degen/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "degen/constants.hpp"
#include "degen/driver.hpp"
#include "degen/graph.hpp"
#include "degen/graph_io.hpp"
#include "degen/oracle.hpp"
#include "degen/sampler.hpp"

namespace degen {

namespace {

using nlohmann::json;

/// Usage and input errors; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::size_t d = 1;
  std::optional<std::uint64_t> seed;
  std::string budget = "auto";
  std::uint64_t runs = 1;
  unsigned workers = 1;
  std::string input;
  std::string format = "edgelist";
  bool json = false;
  bool trace = false;
  bool tune = false;
  std::optional<std::string> lambda;
  std::optional<std::string> kappa;
  std::optional<std::string> c;
  std::optional<std::size_t> target_size;
  // gen
  std::string model = "gnp";
  std::size_t n = 0;
  double p = 0.5;
  std::size_t m = 0;
  std::string output;
};

json set_json(const VertexSet& s) { return s.to_vector(); }

std::string set_text(const VertexSet& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (Vertex v : s) {
    out << (first ? "" : ", ") << v;
    first = false;
  }
  out << '}';
  return out.str();
}

/// Decimal text of base + offset, e.g. 2 - eps. Offsets below long double
/// resolution are written symbolically instead.
std::string near_text(long double base, double offset, int digits = 21) {
  std::ostringstream out;
  if (offset != 0.0 && std::abs(offset) < 1e-17 * static_cast<double>(base)) {
    out << static_cast<double>(base) << (offset < 0 ? " - " : " + ") << std::setprecision(6)
        << std::abs(offset);
    return out.str();
  }
  out << std::setprecision(digits) << base + static_cast<long double>(offset);
  return out.str();
}

std::string rule_name(RuleId rule) {
  switch (rule) {
    case RuleId::kDenseEdge:
      return "dense-edge";
    case RuleId::kGreedy:
      return "greedy";
    case RuleId::kHeavy:
      return "heavy";
    case RuleId::kFinish:
      return "finish";
  }
  return "?";
}

double excess_from_text(const std::string& text, long double base, const char* name) {
  std::size_t used = 0;
  long double value = 0;
  try {
    value = std::stold(text, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string("--") + name + " expects a number, got '" + text + "'");
  }
  if (used != text.size()) {
    throw UsageError(std::string("--") + name + " expects a number, got '" + text + "'");
  }
  return static_cast<double>(value - base);
}

struct ConstantsChoice {
  Constants consts;
  std::string source;
};

ConstantsChoice choose_constants(const RunConfig& cfg) {
  if (cfg.d < 1) {
    throw UsageError("--d must be at least 1");
  }
  std::optional<Constants> start;
  std::string source;
  try {
    if (cfg.tune || cfg.d > published_rows().size()) {
      start = tune(cfg.d);
      source = "tuned";
    } else {
      start = defaults(cfg.d);
      source = "reference";
    }
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  if (!cfg.lambda && !cfg.kappa && !cfg.c) {
    return {*start, source};
  }
  Parameters p = start->parameters();
  if (cfg.lambda) p.lambda_excess = excess_from_text(*cfg.lambda, 4.0L, "lambda");
  if (cfg.kappa) p.kappa = static_cast<double>(excess_from_text(*cfg.kappa, 0.0L, "kappa"));
  if (cfg.c) p.c_excess = excess_from_text(*cfg.c, 2.0L, "c");
  try {
    return {Constants(p), "override"};
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid constants: ") + e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("invalid constants: ") + e.what());
  }
}

json constants_json(const Constants& k, const std::string& source) {
  const auto& p = k.parameters();
  const auto& costs = k.base().costs;
  return {
      {"source", source},
      {"d", k.d()},
      {"lambda", k.lambda()},
      {"lambda_excess", p.lambda_excess},
      {"lambda_text", near_text(4.0L, p.lambda_excess)},
      {"kappa", k.kappa()},
      {"c", k.c()},
      {"c_excess", p.c_excess},
      {"c_text", near_text(2.0L, p.c_excess)},
      {"alpha", k.alpha()},
      {"max_neighbours", k.max_neighbours()},
      {"gamma_max", k.gamma(k.max_neighbours()).value},
      {"gamma_max_deficit", k.gamma(k.max_neighbours()).deficit},
      {"branch_cost_deficits",
       {{"dense_edge", costs.dense_edge}, {"greedy", costs.greedy}, {"heavy", costs.heavy}}},
      {"epsilon", k.epsilon()},
      {"base", k.base().value()},
      {"base_text", near_text(2.0L, -k.epsilon())},
  };
}

Graph load_graph(const RunConfig& cfg, std::istream& in, std::vector<std::string>& warnings) {
  GraphFormat format;
  try {
    format = parse_format(cfg.format);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::string text;
  if (cfg.input.empty() || cfg.input == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream file(cfg.input);
    if (!file) {
      throw UsageError("cannot open input file '" + cfg.input + "'");
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  try {
    ParsedGraph parsed = parse_graph(text, format);
    warnings = std::move(parsed.warnings);
    return std::move(parsed.graph);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("cannot parse graph: ") + e.what());
  }
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) {
    return *cfg.seed;
  }
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

std::uint64_t budget_ceiling() {
  if (const char* env = std::getenv(kCeilingEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string(kCeilingEnv) + " must be a positive integer");
    }
  }
  return kDefaultBudgetCeiling;
}

json trace_json(const RuleTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"rule", static_cast<int>(s.rule)},
                     {"rule_name", rule_name(s.rule)},
                     {"decision", s.decision},
                     {"branches", s.branches},
                     {"probability", s.probability},
                     {"pivot", s.pivot},
                     {"neighbour_count", s.neighbour_count},
                     {"to_inside", s.to_inside},
                     {"to_outside", s.to_outside}});
  }
  return steps;
}

class Command {
 public:
  Command(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err)
      : cfg_(cfg), in_(in), out_(out), err_(err) {}

  int execute() {
    const auto start = std::chrono::steady_clock::now();
    doc_["command"] = cfg_.subcommand;
    if (cfg_.subcommand == "gen") {
      return generate();
    }
    const ConstantsChoice choice = choose_constants(cfg_);
    doc_["config"] = {{"d", cfg_.d}, {"constants", constants_json(choice.consts, choice.source)}};
    if (cfg_.subcommand == "constants") {
      report_constants(choice.consts);
    } else {
      std::vector<std::string> warnings;
      const Graph g = load_graph(cfg_, in_, warnings);
      for (const auto& w : warnings) {
        err_ << "warning: " << w << '\n';
      }
      doc_["config"]["input"] = cfg_.input.empty() ? "-" : cfg_.input;
      doc_["config"]["format"] = cfg_.format;
      doc_["graph"] = {{"n", g.n()}, {"m", g.m()}};
      doc_["warnings"] = warnings;
      if (cfg_.subcommand == "sample") {
        sample(g, choice.consts);
      } else if (cfg_.subcommand == "search") {
        search(g, choice.consts);
      } else if (cfg_.subcommand == "census") {
        census(g, choice.consts);
      } else if (cfg_.subcommand == "dist") {
        dist(g, choice.consts);
      } else if (cfg_.subcommand == "brute") {
        brute(g, choice.consts);
      }
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    doc_["timing"] = {{"seconds", elapsed.count()}};
    if (cfg_.json) {
      out_ << doc_.dump(2) << '\n';
    }
    return 0;
  }

 private:
  void report_constants(const Constants& k) {
    json& result = doc_["result"];
    result = doc_["config"]["constants"];
    std::optional<PublishedRow> row;
    for (const auto& r : published_rows()) {
      if (r.d == k.d() && doc_["config"]["constants"]["source"] == "reference") {
        row = r;
      }
    }
    if (row) {
      result["reference"] = {{"lambda", row->lambda_text},
                             {"kappa", std::to_string(static_cast<int>(row->kappa_numerator)) +
                                           "/" +
                                           std::to_string(static_cast<int>(row->kappa_denominator))},
                             {"c", row->c_text},
                             {"alpha", row->alpha},
                             {"base", row->base_text}};
    }
    if (cfg_.json) {
      return;
    }
    const auto& costs = k.base().costs;
    out_ << std::left;
    out_ << std::setw(12) << "d" << k.d() << '\n';
    out_ << std::setw(12) << "lambda" << near_text(4.0L, k.parameters().lambda_excess) << '\n';
    out_ << std::setw(12) << "kappa" << std::setprecision(17) << k.kappa() << '\n';
    out_ << std::setw(12) << "c" << near_text(2.0L, k.parameters().c_excess) << '\n';
    out_ << std::setw(12) << "alpha" << std::setprecision(8) << k.alpha() << '\n';
    out_ << std::setw(12) << "2-eps_d" << near_text(2.0L, -k.epsilon()) << "  (eps_d = "
         << std::setprecision(6) << k.epsilon() << ")\n";
    out_ << std::setw(12) << "gamma_max" << "gamma(" << k.max_neighbours()
         << ") = 2 - " << std::setprecision(6) << k.gamma(k.max_neighbours()).deficit << '\n';
    out_ << std::setw(12) << "costs" << "2 - {" << costs.dense_edge << ", " << costs.greedy
         << ", " << costs.heavy << "}\n";
    if (row) {
      out_ << std::setw(12) << "reference" << "lambda " << row->lambda_text << ", c "
           << row->c_text << ", alpha " << row->alpha << ", 2-eps_d " << row->base_text << '\n';
    }
  }

  void sample(const Graph& g, const Constants& k) {
    const std::uint64_t seed = resolve_seed(cfg_);
    doc_["config"]["seed"] = seed;
    doc_["config"]["runs"] = cfg_.runs;
    if (!cfg_.json && !cfg_.seed) {
      err_ << "seed: " << seed << '\n';
    }
    json runs = json::array();
    for (std::uint64_t i = 0; i < cfg_.runs; ++i) {
      Rng rng = Rng::stream(seed, i);
      const SampleOutcome outcome = run(g, k, rng);
      std::map<int, int> per_rule;
      for (const auto& s : outcome.trace.steps) {
        ++per_rule[static_cast<int>(s.rule)];
      }
      json entry = {{"run", i},
                    {"success", outcome.success()},
                    {"path_probability", outcome.trace.path_probability()},
                    {"steps", outcome.trace.steps.size()}};
      if (outcome.set) {
        entry["set"] = set_json(*outcome.set);
        entry["size"] = outcome.set->size();
        entry["maximal"] = is_maximal_degenerate(g, *outcome.set, k.d());
      }
      json counts = json::object();
      for (const auto& [rule, count] : per_rule) {
        counts[rule_name(static_cast<RuleId>(rule))] = count;
      }
      entry["rule_counts"] = counts;
      if (cfg_.trace) {
        entry["trace"] = trace_json(outcome.trace);
      }
      if (!cfg_.json) {
        out_ << "run " << i << ": "
             << (outcome.set ? "success " + set_text(*outcome.set) + " (size " +
                                   std::to_string(outcome.set->size()) + ")"
                             : std::string("failure"))
             << ", " << outcome.trace.steps.size() << " steps, path probability "
             << std::setprecision(6) << outcome.trace.path_probability() << '\n';
        for (const auto& [rule, count] : per_rule) {
          out_ << "  " << rule_name(static_cast<RuleId>(rule)) << ": " << count << '\n';
        }
        if (cfg_.trace) {
          for (const auto& s : outcome.trace.steps) {
            out_ << "    [" << rule_name(s.rule) << "] decision " << s.decision << "/"
                 << s.branches << " p=" << s.probability << " in="
                 << set_text(VertexSet::from_members(g.n(), s.to_inside))
                 << " out=" << set_text(VertexSet::from_members(g.n(), s.to_outside)) << '\n';
          }
        }
      }
      runs.push_back(std::move(entry));
    }
    doc_["result"] = {{"runs", runs}};
  }

  void search(const Graph& g, const Constants& k) {
    SearchOptions options;
    options.base_seed = resolve_seed(cfg_);
    options.workers = std::max(1U, cfg_.workers);
    options.ceiling = budget_ceiling();
    options.target_size = cfg_.target_size;
    if (cfg_.budget != "auto") {
      try {
        std::size_t used = 0;
        options.budget = std::stoull(cfg_.budget, &used);
        if (used != cfg_.budget.size() || *options.budget == 0) {
          throw std::invalid_argument("budget");
        }
      } catch (const std::exception&) {
        throw UsageError("--budget expects a positive integer or 'auto'");
      }
    }
    if (!cfg_.json && !cfg_.seed) {
      err_ << "seed: " << options.base_seed << '\n';
    }
    const SearchReport report = search_max(g, k, options);
    doc_["config"]["seed"] = options.base_seed;
    doc_["config"]["budget"] = cfg_.budget;
    doc_["config"]["budget_ceiling"] = options.ceiling;
    doc_["config"]["workers"] = options.workers;
    if (cfg_.target_size) {
      doc_["config"]["target_size"] = *cfg_.target_size;
    }
    doc_["result"] = {{"best_set", set_json(report.best_set)},
                      {"best_size", report.best_size},
                      {"best_run", report.best_run},
                      {"runs_executed", report.runs_executed},
                      {"budget", report.budget},
                      {"successes", report.successes},
                      {"success_rate", report.success_rate()},
                      {"base_seed", report.base_seed},
                      {"wall_time_seconds", report.wall_time.count()}};
    if (!cfg_.json) {
      out_ << "best size " << report.best_size << ": " << set_text(report.best_set) << '\n'
           << "runs " << report.runs_executed << " of budget " << report.budget
           << ", success rate " << std::setprecision(4) << report.success_rate() << ", seed "
           << report.base_seed << '\n';
    }
  }

  void census(const Graph& g, const Constants& k) {
    const auto sets = enumerate_maximal(g, k.d());
    const CensusCheck check = check_census_bound(g, k);
    json list = json::array();
    for (const auto& s : sets) {
      list.push_back(set_json(s));
    }
    doc_["result"] = {{"maximal_sets", list},
                      {"count", check.maximal_sets},
                      {"bound", check.bound},
                      {"holds", check.holds}};
    if (!cfg_.json) {
      for (const auto& s : sets) {
        out_ << set_text(s) << '\n';
      }
      out_ << check.maximal_sets << " maximal sets; bound (2-eps_d)^n = " << std::setprecision(10)
           << check.bound << (check.holds ? " holds" : " VIOLATED") << '\n';
    }
  }

  void dist(const Graph& g, const Constants& k) {
    const Distribution law = exact_distribution(g, k);
    const double floor = k.success_lower_bound(g.n());
    json outcomes = json::array();
    for (const auto& [set, p] : law.outcomes) {
      const bool maximal = is_maximal_degenerate(g, set, k.d());
      outcomes.push_back({{"set", set_json(set)},
                          {"probability", p},
                          {"maximal", maximal},
                          {"meets_bound", !maximal || p >= floor}});
      if (!cfg_.json) {
        out_ << std::setw(24) << set_text(set) << ' ' << std::setprecision(10) << p
             << (maximal ? "  maximal" : "") << '\n';
      }
    }
    doc_["result"] = {{"outcomes", outcomes},
                      {"failure_mass", law.failure_mass},
                      {"total", law.total()},
                      {"lower_bound", floor}};
    if (!cfg_.json) {
      out_ << "failure " << law.failure_mass << ", total " << law.total()
           << ", bound (2-eps_d)^-n = " << floor << '\n';
    }
  }

  void brute(const Graph& g, const Constants& k) {
    const VertexSet best = brute_force_max(g, k.d());
    doc_["result"] = {{"best_set", set_json(best)}, {"best_size", best.size()}};
    if (!cfg_.json) {
      out_ << "maximum size " << best.size() << ": " << set_text(best) << '\n';
    }
  }

  int generate() {
    const std::uint64_t seed = resolve_seed(cfg_);
    GraphFormat format;
    try {
      format = parse_format(cfg_.format);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    Graph g;
    try {
      if (cfg_.model == "gnp") {
        g = generate_gnp(cfg_.n, cfg_.p, seed);
      } else if (cfg_.model == "gnm") {
        g = generate_gnm(cfg_.n, cfg_.m, seed);
      } else {
        throw UsageError("--model must be gnp or gnm");
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const std::string text = serialize_graph(g, format);
    if (cfg_.output.empty() || cfg_.output == "-") {
      out_ << text;
    } else {
      std::ofstream file(cfg_.output);
      if (!file) {
        throw UsageError("cannot write '" + cfg_.output + "'");
      }
      file << text;
    }
    if (!cfg_.seed) {
      err_ << "seed: " << seed << '\n';
    }
    return 0;
  }

  const RunConfig& cfg_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  json doc_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Sampling and search for maximum induced d-degenerate subgraphs", "degen"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_constants = [&](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "degeneracy bound d >= 1")->capture_default_str();
    sub->add_flag("--tune", cfg.tune, "tune lambda and c numerically instead of the reference row");
    sub->add_option("--lambda", cfg.lambda, "override lambda (> 4)");
    sub->add_option("--kappa", cfg.kappa, "override kappa (> 2 lambda)");
    sub->add_option("--c", cfg.c, "override c (> 2)");
    sub->add_flag("--json", cfg.json, "emit a single JSON document");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "graph file, '-' or omitted for stdin");
    sub->add_option("--format", cfg.format, "edgelist or dimacs")->capture_default_str();
  };

  auto* constants_cmd = app.add_subcommand("constants", "report the algorithm constants");
  add_constants(constants_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "run the sampler and print outcome and trace");
  add_constants(sample_cmd);
  add_input(sample_cmd);
  sample_cmd->add_option("--seed", cfg.seed, "base seed");
  sample_cmd->add_option("--runs", cfg.runs, "number of runs")->check(CLI::PositiveNumber);
  sample_cmd->add_flag("--trace", cfg.trace, "print every rule application");

  auto* search_cmd = app.add_subcommand("search", "amplified search for a maximum set");
  add_constants(search_cmd);
  add_input(search_cmd);
  search_cmd->add_option("--seed", cfg.seed, "base seed");
  search_cmd->add_option("--budget", cfg.budget, "number of runs or 'auto'")->capture_default_str();
  search_cmd->add_option("--runs", cfg.budget, "alias of --budget");
  search_cmd->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  search_cmd->add_option("--target-size", cfg.target_size, "stop once a set of this size is found");

  auto* census_cmd = app.add_subcommand("census", "enumerate all maximal sets and check the count bound");
  add_constants(census_cmd);
  add_input(census_cmd);

  auto* dist_cmd = app.add_subcommand("dist", "exact output distribution of the sampler");
  add_constants(dist_cmd);
  add_input(dist_cmd);

  auto* brute_cmd = app.add_subcommand("brute", "exhaustive maximum");
  add_constants(brute_cmd);
  add_input(brute_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "emit a random graph");
  gen_cmd->add_option("--model", cfg.model, "gnp or gnm")->capture_default_str();
  gen_cmd->add_option("--n", cfg.n, "vertex count")->required();
  gen_cmd->add_option("--p", cfg.p, "edge probability (gnp)")->capture_default_str();
  gen_cmd->add_option("--m", cfg.m, "edge count (gnm)");
  gen_cmd->add_option("--seed", cfg.seed, "seed");
  gen_cmd->add_option("--format", cfg.format, "edgelist or dimacs")->capture_default_str();
  gen_cmd->add_option("--output,-o", cfg.output, "output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  for (auto* sub : app.get_subcommands()) {
    cfg.subcommand = sub->get_name();
  }

  try {
    Command command(cfg, in, out, err);
    return command.execute();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace degen
