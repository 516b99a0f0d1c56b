#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "vmlab/gfourier.hpp"
#include "vmlab/harness.hpp"
#include "vmlab/quadpoly.hpp"
#include "vmlab/rankcensus.hpp"
#include "vmlab/vminor.hpp"

namespace py = pybind11;
using namespace vmlab;

namespace {

F2Vector vec_from_bits(const std::vector<int>& bits) {
  return F2Vector::from_bits(bits);
}

py::object bigint_to_py(const BigInt& v) {
  const std::string s = v.str();
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(s.c_str(), nullptr, 10));
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::kYes:
      return "yes";
    case Verdict::kNo:
      return "no";
    default:
      return "unknown";
  }
}

nlohmann::json pydict_to_json(const py::dict& d) {
  const std::string dumped =
      py::module_::import("json").attr("dumps")(d).cast<std::string>();
  return nlohmann::json::parse(dumped);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GF(2) graph rewriting laboratory: local complementation, "
            "pivots, vertex-minor universality experiments";

  py::class_<F2Matrix>(m, "F2Matrix")
      .def(py::init<std::size_t, std::size_t>(), py::arg("rows"),
           py::arg("cols"))
      .def_static("parse", &F2Matrix::parse)
      .def_static("identity", &F2Matrix::identity)
      .def_property_readonly("rows", &F2Matrix::rows)
      .def_property_readonly("cols", &F2Matrix::cols)
      .def("get", &F2Matrix::get)
      .def("set", &F2Matrix::set)
      .def("__eq__", [](const F2Matrix& a, const F2Matrix& b) { return a == b; })
      .def("__repr__", &F2Matrix::to_string);

  m.def("rank", [](const F2Matrix& a) { return rank(a); });
  m.def("transpose", [](const F2Matrix& a) { return transpose(a); });
  m.def("invert", [](const F2Matrix& a) -> py::object {
    const auto inv = invert(a);
    return inv ? py::cast(*inv) : py::none();
  });
  m.def("multiply",
        [](const F2Matrix& a, const F2Matrix& b) { return multiply(a, b); });
  m.def("tensor", &tensor);
  m.def("off_diag", &off_diag);
  m.def("solve_unit_upper_triangular",
        [](const F2Matrix& x, const F2Matrix& z) -> py::object {
          const auto q = solve_unit_upper_triangular(x, z);
          return q ? py::cast(*q) : py::none();
        });

  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_static("from_edges", &Graph::from_edges)
      .def_static("complete", &Graph::complete)
      .def_property_readonly("n", &Graph::vertex_count)
      .def_property_readonly("labels", &Graph::labels)
      .def("edges", &Graph::edges)
      .def("has_edge", &Graph::has_edge)
      .def("set_edge", &Graph::set_edge)
      .def("adjacency", &Graph::adjacency)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(graph6='" + to_graph6(g) + "')";
      });

  m.def("local_complement", &local_complement);
  m.def("pivot", &pivot);
  m.def("pivot_tripartite", &pivot_tripartite);
  m.def("induced", &induced);
  m.def("symmetric_difference", &symmetric_difference);
  m.def("to_graph6", &to_graph6);
  m.def("from_graph6", &from_graph6);

  py::class_<LCInstance>(m, "LCInstance")
      .def(py::init([](Graph g, std::vector<int> u, std::vector<int> w) {
             LCInstance inst{std::move(g), std::move(u), std::move(w)};
             inst.validate();
             return inst;
           }),
           py::arg("g"), py::arg("u_set"), py::arg("w_order"))
      .def_readonly("g", &LCInstance::g)
      .def_readonly("u_set", &LCInstance::u_set)
      .def_readonly("w_order", &LCInstance::w_order);

  m.def("sequential_delta", &sequential_delta);
  m.def("build_l", &build_l);
  m.def("build_m", &build_m);
  m.def("delta_via_m", [](const LCInstance& inst) {
    const DeltaCertificate cert = delta_via_m(inst);
    py::dict d;
    d["x"] = cert.x;
    d["l"] = cert.l;
    d["m"] = cert.m;
    std::vector<std::string> zs;
    for (const F2Vector& z : cert.z_cols) zs.push_back(z.to_string());
    d["z_cols"] = zs;
    d["delta"] = cert.delta;
    return d;
  });
  m.def("verify_instance", [](const LCInstance& inst) {
    const DeltaCheck c = verify_instance(inst);
    py::dict d;
    d["delta_match"] = c.delta_match;
    d["l_unit_upper"] = c.l_unit_upper;
    d["m_symmetric"] = c.m_symmetric;
    d["m_invertible"] = c.m_invertible;
    d["z_recurrence"] = c.z_recurrence;
    d["all"] = c.all();
    return d;
  });

  py::class_<QuadPoly>(m, "QuadPoly")
      .def(py::init<std::size_t>(), py::arg("m"))
      .def_property_readonly("m", &QuadPoly::variable_count)
      .def("set_constant", &QuadPoly::set_constant)
      .def("set_linear",
           [](QuadPoly& f, std::size_t i, bool b) { f.set_linear(i, b); })
      .def("flip_pair", &QuadPoly::flip_pair)
      .def("coef2", &QuadPoly::coef2)
      .def("evaluate", [](const QuadPoly& f, const std::vector<int>& x) {
        return f.evaluate(vec_from_bits(x));
      });

  m.def("sign_expectation_exact", &sign_expectation_exact, py::arg("f"),
        py::arg("p"), py::arg("cap") = 24);
  m.def("sign_expectation_mc", [](const QuadPoly& f, double p,
                                  std::uint64_t samples, std::uint64_t seed) {
    const McEstimate est = sign_expectation_mc(f, p, samples, seed);
    return py::make_tuple(est.mean, est.std_error);
  });
  m.def("rank_sign_bound", &rank_sign_bound);
  m.def("multilinearize_product",
        [](const std::vector<int>& lin1, bool c1, const std::vector<int>& lin2,
           bool c2) {
          return multilinearize_product({vec_from_bits(lin1), c1},
                                        {vec_from_bits(lin2), c2});
        });

  m.def("census_exhaustive", [](std::size_t s) {
    py::dict d;
    for (const auto& [a, count] : census_exhaustive(s).counts)
      d[py::int_(a)] = bigint_to_py(count);
    return d;
  });
  m.def("census_formula", [](std::size_t s, std::size_t a) {
    return bigint_to_py(census_formula(s, a));
  });
  m.def("census_bound", &census_bound);
  m.def("census_bound_holds", &census_bound_holds);

  py::class_<GraphDist>(m, "GraphDist")
      .def_readonly("u_size", &GraphDist::u_size)
      .def_readonly("probs", &GraphDist::probs)
      .def_static("uniform", &GraphDist::uniform)
      .def_static("point_mass", &GraphDist::point_mass);
  py::class_<FourierSpectrum>(m, "FourierSpectrum")
      .def_readonly("u_size", &FourierSpectrum::u_size)
      .def_readonly("coeffs", &FourierSpectrum::coeffs);

  m.def("fourier_transform", &fourier_transform);
  m.def("inverse_fourier", &inverse_fourier);
  m.def("tv_to_uniform", &tv_to_uniform);
  m.def("fourier_tv_bound", &fourier_tv_bound);
  m.def("delta_distribution_exact",
        [](std::size_t s, const Graph& gw, double p) {
          return delta_distribution_exact(s, gw, p);
        });
  m.def("delta_distribution_mc", &delta_distribution_mc);
  m.def("delta_fourier_bound", &delta_fourier_bound);
  m.def("delta_fourier_bound_floor", &delta_fourier_bound_floor);
  m.def("uniformity_tv_bound",
        [](std::size_t s, std::size_t r, double q) -> py::object {
          const auto b = uniformity_tv_bound(s, r, q);
          return b ? py::cast(*b) : py::none();
        });
  m.def("coupled_final_distribution", &coupled_final_distribution);
  m.def("edge_marginal_closed_form", &edge_marginal_closed_form);
  m.def("tensor_structure_check",
        [](std::size_t s, const Graph& gw, double p, std::uint64_t f_mask) {
          const TensorCheck c = tensor_structure_check(s, gw, p, f_mask);
          py::dict d;
          d["coef2_matches"] = c.coef2_matches;
          d["expectation"] = c.expectation;
          d["mu_hat"] = c.mu_hat;
          d["passed"] = c.passed();
          return d;
        });

  py::class_<Orbit>(m, "Orbit")
      .def_property_readonly("size",
                             [](const Orbit& o) { return o.members.size(); })
      .def_readonly("truncated", &Orbit::truncated)
      .def_readonly("layer_sizes", &Orbit::layer_sizes)
      .def("member_graph", &Orbit::member_graph)
      .def("word", &Orbit::word);

  m.def("lc_orbit", &lc_orbit, py::arg("g"),
        py::arg("member_cap") = kDefaultOrbitCap);
  m.def("is_vertex_minor", [](const Graph& g, const Graph& h,
                              std::size_t cap) {
    const MinorDecision d = is_vertex_minor(g, h, cap);
    py::dict out;
    out["verdict"] = verdict_str(d.verdict);
    if (d.witness) {
      out["word"] = d.witness->word;
      out["member"] = d.witness->member;
    }
    return out;
  }, py::arg("g"), py::arg("h"), py::arg("member_cap") = kDefaultOrbitCap);
  m.def("is_k_vm_universal", [](const Graph& g, std::size_t k,
                                std::size_t cap, std::uint64_t budget) {
    const UniversalResult r = is_k_vm_universal(g, k, cap, budget);
    py::dict out;
    out["verdict"] = verdict_str(r.verdict);
    out["orbit_size"] = r.orbit_size;
    out["subsets_checked"] = r.subsets_checked;
    if (r.counterexample) {
      out["subset"] = r.counterexample->subset;
      out["missing"] = r.counterexample->missing;
    }
    return out;
  }, py::arg("g"), py::arg("k"), py::arg("member_cap") = kDefaultOrbitCap,
     py::arg("budget") = 2'000'000'000ULL);

  py::class_<OrderedBipartiteGraph>(m, "OrderedBipartiteGraph")
      .def(py::init<std::vector<int>, std::vector<int>, F2Matrix>(),
           py::arg("left"), py::arg("right"), py::arg("biadj"))
      .def_readonly("left", &OrderedBipartiteGraph::left)
      .def_readonly("right", &OrderedBipartiteGraph::right)
      .def_readonly("biadj", &OrderedBipartiteGraph::biadj)
      .def("unordered", &OrderedBipartiteGraph::unordered)
      .def("__eq__", [](const OrderedBipartiteGraph& a,
                        const OrderedBipartiteGraph& b) { return a == b; });

  m.def("bipartite_pivot", &bipartite_pivot);
  m.def("find_pivot_pairs", [](const OrderedBipartiteGraph& g) {
    const PivotPairing pairing = find_pivot_pairs(g);
    py::dict out;
    out["pairs"] = pairing.pairs;
    out["all_certified"] = pairing.all_certified();
    return out;
  });
  m.def("bipartite_delta_via_m",
        [](const OrderedBipartiteGraph& g, const std::vector<int>& ul,
           const std::vector<int>& ur,
           const std::vector<std::pair<int, int>>& pairs) {
          PivotPairing pairing;
          pairing.pairs = pairs;
          const BipDeltaCertificate cert =
              bipartite_delta_via_m(g, ul, ur, pairing);
          py::dict out;
          out["delta"] = cert.delta;
          out["delta_matches_zsum"] = cert.delta_matches_zsum;
          out["q_left_solved"] = cert.q_left_solved;
          out["q_right_solved"] = cert.q_right_solved;
          out["delta_matches_m"] = cert.delta_matches_m;
          out["refutation"] = cert.refutation();
          return out;
        });
  m.def("rank_tail_bound", &rank_tail_bound);
  m.def("rank_tail_experiment", [](std::size_t r, double p,
                                   std::uint64_t trials, std::uint64_t seed) {
    const RankTailResult res = rank_tail_experiment(r, p, trials, seed);
    py::dict out;
    out["frequency"] = res.frequency;
    out["std_error"] = res.std_error;
    out["bound"] = res.bound;
    out["low_rank_count"] = res.low_rank_count;
    return out;
  });

  m.def("sample_gnp", &sample_gnp);
  m.def("sample_bipartite", &sample_bipartite);
  m.def("universality_parameters", [](std::size_t n, double p) {
    const std::string dumped = universality_parameters(n, p).to_json().dump();
    return py::module_::import("json").attr("loads")(dumped);
  });
  m.def(
      "run_experiment",
      [](const std::string& name, const py::dict& params, std::uint64_t seed,
         std::uint64_t trials, int threads) {
        ExperimentConfig cfg;
        cfg.name = name;
        cfg.master_seed = seed;
        cfg.trials = trials;
        cfg.threads = threads;
        cfg.params = pydict_to_json(params);
        const ExperimentReport report = run_experiment(cfg);
        return py::make_tuple(report.jsonl, report.csv, report.ok);
      },
      py::arg("name"), py::arg("params") = py::dict(), py::arg("seed") = 0,
      py::arg("trials") = 0, py::arg("threads") = 1);
}
