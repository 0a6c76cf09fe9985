#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "degen/constants.hpp"
#include "degen/driver.hpp"
#include "degen/graph.hpp"
#include "degen/graph_io.hpp"
#include "degen/oracle.hpp"
#include "degen/rng.hpp"
#include "degen/sampler.hpp"

namespace py = pybind11;
using namespace degen;

namespace {

VertexSet to_set(const Graph& g, const std::vector<Vertex>& members) {
  for (Vertex v : members) {
    if (v >= g.n()) {
      throw py::value_error("vertex " + std::to_string(v) + " is not in the graph");
    }
  }
  return VertexSet::from_members(g.n(), members);
}

const char* rule_name(RuleId rule) {
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

py::dict trace_step(const TraceStep& s) {
  py::dict out;
  out["rule"] = rule_name(s.rule);
  out["decision"] = s.decision;
  out["branches"] = s.branches;
  out["probability"] = s.probability;
  out["pivot"] = s.pivot;
  out["to_inside"] = s.to_inside;
  out["to_outside"] = s.to_outside;
  return out;
}

GraphFormat format_of(const std::string& name) { return parse_format(name); }

}  // namespace

PYBIND11_MODULE(degen, m) {
  m.doc() = "Randomized sampling and exact oracles for maximum induced d-degenerate subgraphs";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_AssertionError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) {
             return Graph::from_edges(n, edges);
           }),
           py::arg("n"), py::arg("edges") = std::vector<Edge>{})
      .def_static("edgeless", &Graph::edgeless)
      .def_static("complete", &Graph::complete)
      .def_static("cycle", &Graph::cycle)
      .def_static("path", &Graph::path)
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("edges", &Graph::edges)
      .def("neighbors", [](const Graph& g, Vertex v) { return g.neighbors(v).to_vector(); })
      .def("degree", &Graph::degree)
      .def("adjacent", &Graph::adjacent)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.m()) + ")";
      });

  m.def("is_degenerate", [](const Graph& g, const std::vector<Vertex>& s, std::size_t d) {
    return is_degenerate(g, to_set(g, s), d);
  });
  m.def("is_maximal_degenerate", [](const Graph& g, const std::vector<Vertex>& s, std::size_t d) {
    return is_maximal_degenerate(g, to_set(g, s), d);
  });
  m.def("degeneracy", [](const Graph& g, std::optional<std::vector<Vertex>> s) {
    return degeneracy(g, s ? to_set(g, *s) : g.vertices());
  }, py::arg("g"), py::arg("vertices") = py::none());
  m.def("edges_within", [](const Graph& g, const std::vector<Vertex>& s) {
    return edges_within(g, to_set(g, s));
  });

  m.def("solve_gamma", [](std::size_t r) {
    const GammaRoot root = solve_gamma(r);
    return py::make_tuple(root.value, root.deficit);
  }, "Root of gamma^-1 + ... + gamma^-(r+1) = 1 as (value, 2 - value).");

  py::class_<Constants>(m, "Constants")
      .def(py::init([](std::size_t d, double lambda_excess, double kappa, double c_excess) {
             return Constants(Parameters{d, lambda_excess, kappa, c_excess});
           }),
           py::arg("d"), py::arg("lambda_excess"), py::arg("kappa"), py::arg("c_excess"))
      .def_property_readonly("d", &Constants::d)
      .def_property_readonly("lambda_", &Constants::lambda)
      .def_property_readonly("lambda_excess", [](const Constants& k) { return k.parameters().lambda_excess; })
      .def_property_readonly("kappa", &Constants::kappa)
      .def_property_readonly("c", &Constants::c)
      .def_property_readonly("c_excess", [](const Constants& k) { return k.parameters().c_excess; })
      .def_property_readonly("alpha", &Constants::alpha)
      .def_property_readonly("epsilon", &Constants::epsilon)
      .def_property_readonly("base", [](const Constants& k) { return k.base().value(); })
      .def_property_readonly("max_neighbours", &Constants::max_neighbours)
      .def("base_power", &Constants::base_power)
      .def("success_lower_bound", &Constants::success_lower_bound)
      .def("__repr__", [](const Constants& k) {
        return "Constants(d=" + std::to_string(k.d()) + ", alpha=" + std::to_string(k.alpha()) +
               ", epsilon=" + py::str(py::float_(k.epsilon())).cast<std::string>() + ")";
      });
  m.def("defaults", &defaults, py::arg("d"));
  m.def("tune", &tune, py::arg("d"));

  m.def("sample", [](const Graph& g, const Constants& k, std::uint64_t seed, std::uint64_t stream) {
    Rng rng = Rng::stream(seed, stream);
    const SampleOutcome out = run(g, k, rng);
    py::dict result;
    result["set"] = out.set ? py::cast(out.set->to_vector()) : py::none();
    result["path_probability"] = out.trace.path_probability();
    py::list steps;
    for (const auto& s : out.trace.steps) steps.append(trace_step(s));
    result["trace"] = steps;
    return result;
  }, py::arg("g"), py::arg("consts"), py::arg("seed"), py::arg("stream") = 0);

  m.def("exact_distribution", [](const Graph& g, const Constants& k) {
    Distribution dist;
    {
      py::gil_scoped_release release;
      dist = exact_distribution(g, k);
    }
    py::dict outcomes;
    for (const auto& [set, p] : dist.outcomes) {
      outcomes[py::tuple(py::cast(set.to_vector()))] = p;
    }
    py::dict result;
    result["outcomes"] = outcomes;
    result["failure_mass"] = dist.failure_mass;
    result["total"] = dist.total();
    return result;
  });

  m.def("enumerate_maximal", [](const Graph& g, std::size_t d) {
    std::vector<std::vector<Vertex>> out;
    for (const auto& s : enumerate_maximal(g, d)) out.push_back(s.to_vector());
    return out;
  });
  m.def("brute_force_max", [](const Graph& g, std::size_t d) {
    return brute_force_max(g, d).to_vector();
  });
  m.def("check_census_bound", [](const Graph& g, const Constants& k) {
    const CensusCheck c = check_census_bound(g, k);
    py::dict out;
    out["count"] = c.maximal_sets;
    out["bound"] = c.bound;
    out["holds"] = c.holds;
    return out;
  });

  m.def("auto_budget", &auto_budget, py::arg("consts"), py::arg("n"),
        py::arg("ceiling") = kDefaultBudgetCeiling);
  m.def("search_max",
        [](const Graph& g, const Constants& k, std::optional<std::uint64_t> budget,
           std::uint64_t seed, unsigned workers, std::optional<std::size_t> target_size,
           std::uint64_t ceiling) {
          SearchOptions opt;
          opt.budget = budget;
          opt.base_seed = seed;
          opt.workers = workers;
          opt.target_size = target_size;
          opt.ceiling = ceiling;
          SearchReport r;
          {
            py::gil_scoped_release release;
            r = search_max(g, k, opt);
          }
          py::dict out;
          out["best_set"] = r.best_set.to_vector();
          out["best_size"] = r.best_size;
          out["best_run"] = r.best_run;
          out["runs_executed"] = r.runs_executed;
          out["successes"] = r.successes;
          out["budget"] = r.budget;
          out["base_seed"] = r.base_seed;
          out["wall_time"] = r.wall_time.count();
          return out;
        },
        py::arg("g"), py::arg("consts"), py::arg("budget") = py::none(), py::arg("seed") = 0,
        py::arg("workers") = 1, py::arg("target_size") = py::none(),
        py::arg("ceiling") = kDefaultBudgetCeiling);

  m.def("estimate_probability",
        [](const Graph& g, const Constants& k, const std::vector<Vertex>& target,
           std::uint64_t trials, std::uint64_t seed, unsigned workers) {
          const VertexSet t = to_set(g, target);
          ProbabilityEstimate e;
          {
            py::gil_scoped_release release;
            e = estimate_probability(g, k, t, trials, seed, workers);
          }
          py::dict out;
          out["hits"] = e.hits;
          out["trials"] = e.trials;
          out["estimate"] = e.estimate;
          out["lower"] = e.lower;
          out["upper"] = e.upper;
          return out;
        },
        py::arg("g"), py::arg("consts"), py::arg("target"), py::arg("trials"),
        py::arg("seed") = 0, py::arg("workers") = 1);

  m.def("parse_graph", [](const std::string& text, const std::string& format) {
    ParsedGraph parsed = parse_graph(text, format_of(format));
    return py::make_tuple(std::move(parsed.graph), parsed.warnings);
  }, py::arg("text"), py::arg("format") = "edgelist");
  m.def("serialize_graph", [](const Graph& g, const std::string& format) {
    return serialize_graph(g, format_of(format));
  }, py::arg("g"), py::arg("format") = "edgelist");
  m.def("generate_gnp", &generate_gnp, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("generate_gnm", &generate_gnm, py::arg("n"), py::arg("m"), py::arg("seed"));
}
