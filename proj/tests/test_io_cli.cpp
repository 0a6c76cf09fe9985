#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "degen/cli.hpp"
#include "degen/graph_io.hpp"

namespace degen {
namespace {

using nlohmann::json;

TEST(Parse, EdgeList) {
  const ParsedGraph k2 = parse_graph("n 2\n0 1\n", GraphFormat::kEdgeList);
  EXPECT_EQ(k2.graph, Graph::complete(2));
  EXPECT_TRUE(k2.warnings.empty());
  const ParsedGraph implicit = parse_graph("# comment\n0 1\n\n2 1  # trailing\n", GraphFormat::kEdgeList);
  EXPECT_EQ(implicit.graph, Graph::path(3));
  EXPECT_EQ(parse_graph("n 4\n", GraphFormat::kEdgeList).graph, Graph::edgeless(4));
  EXPECT_EQ(parse_graph("", GraphFormat::kEdgeList).graph.n(), 0u);
  const ParsedGraph dup = parse_graph("0 1\n1 0\n", GraphFormat::kEdgeList);
  EXPECT_EQ(dup.graph.m(), 1u);
  EXPECT_EQ(dup.warnings.size(), 1u);
}

TEST(Parse, Dimacs) {
  const ParsedGraph c5 =
      parse_graph("p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n", GraphFormat::kDimacs);
  EXPECT_EQ(c5.graph, Graph::cycle(5));
  EXPECT_TRUE(c5.warnings.empty());
  const ParsedGraph short_count = parse_graph("c hi\np edge 3 2\ne 1 2\n", GraphFormat::kDimacs);
  EXPECT_EQ(short_count.graph.m(), 1u);
  EXPECT_EQ(short_count.warnings.size(), 1u);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_graph("0 0", GraphFormat::kEdgeList), ParseError);
  EXPECT_THROW(parse_graph("n 2\n0 2\n", GraphFormat::kEdgeList), ParseError);
  EXPECT_THROW(parse_graph("0 x\n", GraphFormat::kEdgeList), ParseError);
  EXPECT_THROW(parse_graph("0 1 2\n", GraphFormat::kEdgeList), ParseError);
  EXPECT_THROW(parse_graph("n 3\nn 3\n", GraphFormat::kEdgeList), ParseError);
  EXPECT_THROW(parse_graph("e 1 2\n", GraphFormat::kDimacs), ParseError);
  EXPECT_THROW(parse_graph("p edge 2 1\ne 0 1\n", GraphFormat::kDimacs), ParseError);
  EXPECT_THROW(parse_graph("p edge 2 1\ne 1 3\n", GraphFormat::kDimacs), ParseError);
  EXPECT_THROW(parse_graph("c only\n", GraphFormat::kDimacs), ParseError);
  try {
    parse_graph("0 1\n\n1 1\n", GraphFormat::kEdgeList);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(Generate, Models) {
  EXPECT_EQ(generate_gnp(7, 0.0, 1), Graph::edgeless(7));
  EXPECT_EQ(generate_gnp(7, 1.0, 1), Graph::complete(7));
  EXPECT_EQ(generate_gnm(5, 5, 3).m(), 5u);
  EXPECT_EQ(generate_gnm(6, 15, 3), Graph::complete(6));
  EXPECT_EQ(generate_gnp(30, 0.3, 77), generate_gnp(30, 0.3, 77));
  EXPECT_NE(generate_gnp(30, 0.3, 77), generate_gnp(30, 0.3, 78));
  EXPECT_THROW(generate_gnp(3, 1.5, 1), std::invalid_argument);
  EXPECT_THROW(generate_gnm(4, 7, 1), std::invalid_argument);
}

TEST(Generate, RoughlyUniformPairs) {
  // Each pair of G(8, 10) is present with probability 10/28.
  std::vector<int> hits(28, 0);
  const int trials = 4000;
  for (int s = 0; s < trials; ++s) {
    const Graph g = generate_gnm(8, 10, s);
    int pair = 0;
    for (Vertex u = 0; u < 8; ++u) {
      for (Vertex v = u + 1; v < 8; ++v, ++pair) hits[pair] += g.adjacent(u, v);
    }
  }
  const double p = 10.0 / 28.0;
  const double se = std::sqrt(p * (1 - p) / trials);
  for (int h : hits) EXPECT_NEAR(h / static_cast<double>(trials), p, 5 * se);
}

TEST(RoundTrip, BothFormats) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = seed % 2 ? generate_gnp(1 + seed, 0.4, seed) : generate_gnm(2 + seed, seed, seed);
    for (GraphFormat f : {GraphFormat::kEdgeList, GraphFormat::kDimacs}) {
      const ParsedGraph back = parse_graph(serialize_graph(g, f), f);
      EXPECT_EQ(back.graph, g);
      EXPECT_TRUE(back.warnings.empty());
    }
  }
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kC5 = "n 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";

TEST(Cli, ConstantsReport) {
  const CliResult r = cli({"constants", "--d", "1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["command"], "constants");
  EXPECT_NEAR(doc["result"]["alpha"].get<double>(), 0.050203, 1e-6);
  EXPECT_NEAR(doc["result"]["base"].get<double>(), 1.99991, 1e-5);
  EXPECT_EQ(doc["result"]["reference"]["kappa"], "9/1");
  const CliResult text = cli({"constants", "--d", "1"});
  EXPECT_NE(text.out.find("0.050202"), std::string::npos);
  const CliResult tuned = cli({"constants", "--d", "9", "--json"});
  ASSERT_EQ(tuned.code, 0);
  EXPECT_EQ(json::parse(tuned.out)["result"]["source"], "tuned");
}

TEST(Cli, Overrides) {
  const CliResult r = cli({"constants", "--d", "1", "--lambda", "4.5", "--kappa", "10", "--c", "2.5", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["source"], "override");
  EXPECT_DOUBLE_EQ(doc["result"]["lambda"].get<double>(), 4.5);
  EXPECT_EQ(cli({"constants", "--lambda", "3.9"}).code, 2);
  EXPECT_EQ(cli({"constants", "--kappa", "8"}).code, 2);
  EXPECT_EQ(cli({"constants", "--c", "abc"}).code, 2);
  EXPECT_EQ(cli({"constants", "--d", "0"}).code, 2);
}

TEST(Cli, DistOnK2) {
  const CliResult r = cli({"dist", "--d", "1", "--json"}, "0 1\n");
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  bool found = false;
  for (const auto& o : doc["result"]["outcomes"]) {
    if (o["set"] == json::array({0, 1})) {
      EXPECT_NEAR(o["probability"].get<double>(), 0.6180339887, 1e-9);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_NEAR(doc["result"]["total"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, SearchIsReplayable) {
  const CliResult a = cli({"search", "--d", "1", "--budget", "auto", "--seed", "4", "--json"}, kC5);
  ASSERT_EQ(a.code, 0) << a.err;
  const json doc = json::parse(a.out);
  for (const char* key : {"seed", "budget", "budget_ceiling", "workers", "constants"}) {
    EXPECT_TRUE(doc["config"].contains(key)) << key;
  }
  EXPECT_EQ(doc["result"]["budget"], 32);
  EXPECT_EQ(doc["result"]["best_size"], 4);
  const CliResult b =
      cli({"search", "--d", "1", "--runs", "32", "--seed", "4", "--workers", "3", "--json"}, kC5);
  const json again = json::parse(b.out);
  EXPECT_EQ(again["result"]["best_set"], doc["result"]["best_set"]);
  EXPECT_EQ(again["result"]["best_run"], doc["result"]["best_run"]);
  EXPECT_EQ(again["result"]["successes"], doc["result"]["successes"]);
}

TEST(Cli, SampleAndCensusAndBrute) {
  const CliResult s = cli({"sample", "--seed", "1", "--runs", "3", "--trace", "--json"}, kC5);
  ASSERT_EQ(s.code, 0) << s.err;
  const json doc = json::parse(s.out);
  ASSERT_EQ(doc["result"]["runs"].size(), 3u);
  EXPECT_FALSE(doc["result"]["runs"][0]["trace"].empty());
  const CliResult c = cli({"census", "--json"}, kC5);
  EXPECT_EQ(json::parse(c.out)["result"]["count"], 5);
  const CliResult b = cli({"brute"}, kC5);
  EXPECT_NE(b.out.find("maximum size 4"), std::string::npos);
  const CliResult dimacs = cli({"brute", "--format", "dimacs", "--json"}, "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
  EXPECT_EQ(json::parse(dimacs.out)["result"]["best_size"], 2);
}

TEST(Cli, GenRoundTrips) {
  const CliResult g = cli({"gen", "--model", "gnm", "--n", "9", "--m", "12", "--seed", "3"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(parse_graph(g.out, GraphFormat::kEdgeList).graph, generate_gnm(9, 12, 3));
  const CliResult d = cli({"gen", "--n", "6", "--p", "1", "--format", "dimacs", "--seed", "1"});
  EXPECT_EQ(parse_graph(d.out, GraphFormat::kDimacs).graph, Graph::complete(6));
  EXPECT_EQ(cli({"gen", "--n", "4", "--model", "gnm", "--m", "9"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"brute"}, "0 0\n").code, 2);
  EXPECT_EQ(cli({"brute", "/nonexistent/graph.txt"}).code, 2);
  EXPECT_EQ(cli({"search", "--budget", "0"}, kC5).code, 2);
  EXPECT_EQ(cli({"search", "--budget", "lots"}, kC5).code, 2);
  EXPECT_EQ(cli({"dist"}, "n 9\n").code, 1);
  EXPECT_EQ(cli({"brute"}, "n 23\n").code, 1);
  EXPECT_EQ(cli({"search"}, "n 60\n").code, 1);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, CeilingFromEnvironment) {
  ::setenv(kCeilingEnv, "10", 1);
  const CliResult r = cli({"search", "--seed", "1"}, kC5);
  ::unsetenv(kCeilingEnv);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ceiling"), std::string::npos);
}

}  // namespace
}  // namespace degen
