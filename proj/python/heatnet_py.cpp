// Python bindings for the core operations: network realization and exact
// counters, the parallel averaging construction, affine flow sampling, the
// closed-form/quadrature solution oracle, sup-error certification, the
// Monte Carlo builder, and the count/constant arithmetic.  All
// arbitrary-precision integers cross the boundary as Python ints, so the
// astronomically large theoretical counts survive the trip exactly.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heatnet/builder.hpp"
#include "heatnet/constants.hpp"
#include "heatnet/flow.hpp"
#include "heatnet/network.hpp"
#include "heatnet/network_calculus.hpp"
#include "heatnet/oracle.hpp"
#include "heatnet/property_suite.hpp"
#include "heatnet/sup_error.hpp"

namespace py = pybind11;
namespace hn = heatnet;

namespace {

py::int_ to_py_int(const mpz_class& z) {
  PyObject* p = PyLong_FromString(z.get_str().c_str(), nullptr, 10);
  if (p == nullptr) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(p);
}

mpz_class to_mpz(const py::int_& v) {
  return mpz_class(static_cast<std::string>(py::str(v)));
}

py::dict counts_dict(const hn::NetworkCounts& c) {
  py::dict d;
  d["params"] = to_py_int(c.params);
  d["nonzero_params"] = to_py_int(c.nonzero_params);
  d["neurons"] = to_py_int(c.neurons);
  d["depth"] = to_py_int(c.depth);
  return d;
}

hn::SupMethod parse_method(const std::string& name, Eigen::Index dim) {
  if (name == "grid") return hn::SupMethod::tensor_grid;
  if (name == "sobol") return hn::SupMethod::low_discrepancy;
  if (name == "auto")
    return dim <= 3 ? hn::SupMethod::tensor_grid
                    : hn::SupMethod::low_discrepancy;
  throw std::invalid_argument("method must be one of grid, sobol, auto");
}

using MapPair = std::pair<Eigen::MatrixXd, Eigen::VectorXd>;

std::vector<hn::AffineMap> to_affine_maps(const std::vector<MapPair>& maps) {
  std::vector<hn::AffineMap> out;
  out.reserve(maps.size());
  for (const auto& [G, delta] : maps) out.push_back({G, delta});
  return out;
}

std::string kind_name(hn::InitialCondition::Kind k) {
  switch (k) {
    case hn::InitialCondition::Kind::ridge_softplus: return "ridge_softplus";
    case hn::InitialCondition::Kind::ridge: return "ridge";
    case hn::InitialCondition::Kind::linear: return "linear";
    case hn::InitialCondition::Kind::squared_norm: return "squared_norm";
  }
  throw std::logic_error("unknown initial-condition kind");
}

}  // namespace

PYBIND11_MODULE(_heatnet, m) {
  m.doc() =
      "Monte Carlo averaging construction for constant-coefficient "
      "diffusion PDEs: build wide shallow networks whose realization "
      "approximates u(T, .) on a cube, with certified sup error and exact "
      "complexity counters.";

  py::class_<hn::Network>(m, "Network",
                          "Feedforward network; affine layers with a "
                          "componentwise activation on all but the last.")
      .def_property_readonly(
          "activation",
          [](const hn::Network& n) { return hn::to_string(n.activation); })
      .def_property_readonly(
          "shape",
          [](const hn::Network& n) {
            std::vector<std::int64_t> s;
            for (auto v : n.shape()) s.push_back(v);
            return s;
          },
          "Layer sizes (l_0, ..., l_L).")
      .def_property_readonly(
          "input_dim",
          [](const hn::Network& n) { return std::int64_t(n.input_dim()); })
      .def_property_readonly(
          "output_dim",
          [](const hn::Network& n) { return std::int64_t(n.output_dim()); })
      .def(
          "realize",
          [](const hn::Network& n, const Eigen::VectorXd& x) {
            return hn::realize(n, x);
          },
          py::arg("x"), "Evaluate the realization at one point.")
      .def(
          "realize_many",
          [](const hn::Network& n, const Eigen::MatrixXd& X) {
            return hn::realize_many(n, X);
          },
          py::arg("X"),
          "Evaluate at every column of X; outputs come back as columns.")
      .def(
          "gradient",
          [](const hn::Network& n, const Eigen::VectorXd& x) {
            return hn::gradient(n, x);
          },
          py::arg("x"),
          "Reverse-mode gradient of the scalar realization.")
      .def(
          "counts",
          [](const hn::Network& n) { return counts_dict(hn::counters(n)); },
          "Exact counters: params, nonzero_params, neurons, depth.")
      .def(
          "to_json",
          [](const hn::Network& n) { return hn::to_json(n).dump(); },
          "Serialize; doubles round-trip exactly.")
      .def_static(
          "from_json",
          [](const std::string& s) {
            return hn::network_from_json(nlohmann::json::parse(s));
          },
          py::arg("text"))
      .def(
          "save",
          [](const hn::Network& n, const std::string& path) {
            hn::save_network(n, path);
          },
          py::arg("path"))
      .def_static(
          "load",
          [](const std::string& path) { return hn::load_network(path); },
          py::arg("path"))
      .def("__repr__", [](const hn::Network& n) {
        std::string s = "Network(shape=[";
        const auto shape = n.shape();
        for (std::size_t i = 0; i < shape.size(); ++i) {
          if (i) s += ", ";
          s += std::to_string(shape[i]);
        }
        s += "], activation=" + hn::to_string(n.activation) + ")";
        return s;
      });

  m.def("softplus_ridge_network", &hn::softplus_ridge_network, py::arg("w"),
        py::arg("K"),
        "Two-layer network realizing ln(1 + e^{w.x - K}) + K exactly.");

  m.def(
      "precompose_affine",
      [](const hn::Network& net, const Eigen::MatrixXd& G,
         const Eigen::VectorXd& delta) {
        return hn::precompose_affine(net, G, delta);
      },
      py::arg("net"), py::arg("G"), py::arg("delta"),
      "Network realizing x -> R(net)(G x + delta); only the first layer "
      "changes.");

  m.def(
      "average_ensemble",
      [](const hn::Network& net, const std::vector<MapPair>& maps) {
        return hn::average_ensemble(net, to_affine_maps(maps));
      },
      py::arg("net"), py::arg("maps"),
      "Parallel average over affine maps [(G_k, d_k)]: the result realizes "
      "(1/n) sum_k R(net)(G_k x + d_k) exactly, with block-diagonal hidden "
      "layers.");

  py::class_<hn::FlowSpec>(
      m, "FlowSpec",
      "Constant-coefficient equation data du/dt = A : grad^2 u + mu . "
      "grad u; the matching flow is x + T mu + sqrt(2A) W_T.")
      .def(py::init<Eigen::VectorXd, Eigen::MatrixXd, double>(),
           py::arg("mu"), py::arg("A"), py::arg("T"))
      .def_property_readonly("mu",
                             [](const hn::FlowSpec& s) { return s.mu; })
      .def_property_readonly("A", [](const hn::FlowSpec& s) { return s.A; })
      .def_property_readonly("T", [](const hn::FlowSpec& s) { return s.T; })
      .def_property_readonly("S", [](const hn::FlowSpec& s) { return s.S; },
                             "Diffusion square root sqrt(2A).")
      .def_property_readonly(
          "dim", [](const hn::FlowSpec& s) { return std::int64_t(s.dim()); })
      .def("__repr__", [](const hn::FlowSpec& s) {
        return "FlowSpec(dim=" + std::to_string(s.dim()) +
               ", T=" + std::to_string(s.T) + ")";
      });

  m.def(
      "heat_flow",
      [](std::int64_t dim, double T) {
        return hn::FlowSpec(Eigen::VectorXd::Zero(dim),
                            Eigen::MatrixXd::Identity(dim, dim), T);
      },
      py::arg("dim"), py::arg("T") = 1.0,
      "Plain heat equation: mu = 0, A = I.");

  m.def(
      "sample_affine_flows",
      [](const hn::FlowSpec& spec, std::int64_t n, std::uint64_t seed,
         std::uint32_t sub) {
        std::vector<MapPair> out;
        out.reserve(std::size_t(n));
        for (const auto& s : hn::sample_affine_flows(spec, n, seed, sub))
          out.emplace_back(s.Wmat, s.Bvec);
        return out;
      },
      py::arg("spec"), py::arg("n"), py::arg("seed"), py::arg("sub") = 0,
      "n Monte Carlo flow realizations as affine pairs (W, b), counter-"
      "indexed so prefixes agree across different n.");

  py::class_<hn::InitialCondition>(
      m, "InitialCondition",
      "Initial data whose time-T solution admits an independent "
      "high-accuracy evaluation.")
      .def("__call__",
           [](const hn::InitialCondition& ic, const Eigen::VectorXd& x) {
             return ic(x);
           })
      .def_property_readonly(
          "kind",
          [](const hn::InitialCondition& ic) { return kind_name(ic.kind); })
      .def_property_readonly(
          "dim",
          [](const hn::InitialCondition& ic) { return std::int64_t(ic.dim); })
      .def("lipschitz_on_cube", &hn::InitialCondition::lipschitz_on_cube,
           py::arg("a"), py::arg("b"),
           "sup ||grad phi|| over [a,b]^d; also bounds the solution's "
           "cube Lipschitz constant for every supported flow.")
      .def(
          "to_json",
          [](const hn::InitialCondition& ic) {
            return hn::ic_to_json(ic).dump();
          })
      .def_static(
          "from_json",
          [](const std::string& s) {
            return hn::ic_from_json(nlohmann::json::parse(s));
          },
          py::arg("text"))
      .def("__repr__", [](const hn::InitialCondition& ic) {
        return "InitialCondition(kind=" + kind_name(ic.kind) +
               ", dim=" + std::to_string(ic.dim) + ")";
      });

  m.def("ridge_softplus_ic", &hn::ridge_softplus_ic, py::arg("w"),
        py::arg("K"), "ln(1 + e^{w.x - K}) + K.");
  m.def("ridge_ic", &hn::ridge_ic, py::arg("profile"), py::arg("w"),
        py::arg("b"), "g(w.x + b) for a named 1D profile.");
  m.def("linear_ic", &hn::linear_ic, py::arg("w"), py::arg("b"),
        "w.x + b; solution is phi(x + T mu) exactly.");
  m.def("squared_norm_ic", &hn::squared_norm_ic, py::arg("dim"),
        py::arg("c0"),
        "||x||^2 + c0; heat solution adds 2 d T exactly.");

  m.def("oracle_supports", &hn::oracle_supports, py::arg("ic"),
        py::arg("spec"));
  m.def("exact_solution", &hn::exact_solution, py::arg("ic"), py::arg("spec"),
        py::arg("x"), py::arg("nodes") = 200, py::arg("max_nodes") = 8192,
        "u(T, x) by closed form or adaptive Gauss-Hermite quadrature; "
        "raises when the node-doubling residual stays above 1e-9.");
  m.def(
      "kernel_convolution",
      [](const std::function<double(const Eigen::VectorXd&)>& phi, double c,
         double gamma, double T, const Eigen::VectorXd& x,
         int nodes_per_axis) {
        return hn::kernel_convolution(phi, hn::GrowthEnvelope{c, gamma}, T, x,
                                      nodes_per_axis);
      },
      py::arg("phi"), py::arg("c"), py::arg("gamma"), py::arg("T"),
      py::arg("x"), py::arg("nodes_per_axis") = 40,
      "Heat-kernel convolution of an arbitrary callable (A = I, mu = 0) by "
      "tensor quadrature; phi must satisfy |phi| <= c (1 + ||.||^gamma).");
  m.def(
      "mc_reference",
      [](const hn::InitialCondition& ic, const hn::FlowSpec& spec,
         const Eigen::VectorXd& x, std::int64_t n, std::uint64_t seed) {
        const auto est = hn::mc_reference(ic, spec, x, n, seed);
        return std::make_pair(est.estimate, est.stderr_est);
      },
      py::arg("ic"), py::arg("spec"), py::arg("x"), py::arg("n"),
      py::arg("seed"),
      "Plain Monte Carlo mean and standard error on a stream disjoint from "
      "the builder's.");

  m.def(
      "sup_error",
      [](const hn::Network& psi, const hn::InitialCondition& ic,
         const hn::FlowSpec& spec, double a, double b,
         const std::string& method, int resolution) {
        const auto est = hn::sup_error(psi, ic, spec, a, b,
                                       parse_method(method, spec.dim()),
                                       resolution);
        py::dict d;
        d["grid_sup"] = est.grid_sup;
        if (est.has_certified)
          d["certified_sup"] = est.certified_sup;
        else
          d["certified_sup"] = py::none();
        d["points_used"] = est.points_used;
        d["method"] = est.method == hn::SupMethod::tensor_grid
                          ? "tensor_grid"
                          : "low_discrepancy";
        return d;
      },
      py::arg("psi"), py::arg("ic"), py::arg("spec"), py::arg("a"),
      py::arg("b"), py::arg("method") = "auto", py::arg("resolution") = 0,
      "sup_{[a,b]^d} |u(T,.) - R(psi)|.  The grid method also returns a "
      "certified upper bound; the low-discrepancy method reports a lower "
      "bound only (certified_sup is None).");

  py::class_<hn::BuiltApproximation>(
      m, "BuiltApproximation",
      "One finished averaging construction plus its certification record.")
      .def_property_readonly(
          "psi", [](const hn::BuiltApproximation& b) { return b.psi; })
      .def_property_readonly(
          "n_used", [](const hn::BuiltApproximation& b) { return b.n_used; })
      .def_property_readonly(
          "n_theoretical",
          [](const hn::BuiltApproximation& b) -> py::object {
            if (!b.n_theoretical_known) return py::none();
            return to_py_int(b.n_theoretical);
          },
          "Closed-form sample count, exact; None when the growth-constant "
          "family is not pinned down for this problem.")
      .def_property_readonly(
          "seed", [](const hn::BuiltApproximation& b) { return b.seed; })
      .def_property_readonly(
          "restarts",
          [](const hn::BuiltApproximation& b) { return b.restarts; })
      .def_property_readonly(
          "restart_index",
          [](const hn::BuiltApproximation& b) { return b.restart_index; })
      .def_property_readonly(
          "counts",
          [](const hn::BuiltApproximation& b) { return counts_dict(b.counts); })
      .def_property_readonly(
          "grid_sup_error",
          [](const hn::BuiltApproximation& b) { return b.grid_sup_error; })
      .def_property_readonly(
          "certified_sup",
          [](const hn::BuiltApproximation& b) -> py::object {
            if (!b.has_certified_sup) return py::none();
            return py::float_(b.certified_sup);
          })
      .def_property_readonly(
          "certified",
          [](const hn::BuiltApproximation& b) { return b.certified; })
      .def_property_readonly(
          "domain",
          [](const hn::BuiltApproximation& b) {
            return std::make_pair(b.domain_a, b.domain_b);
          })
      .def_property_readonly(
          "eps", [](const hn::BuiltApproximation& b) { return b.eps; })
      .def_property_readonly(
          "T", [](const hn::BuiltApproximation& b) { return b.T; })
      .def("__repr__", [](const hn::BuiltApproximation& b) {
        return "BuiltApproximation(n_used=" + std::to_string(b.n_used) +
               ", grid_sup_error=" + std::to_string(b.grid_sup_error) +
               ", certified=" + (b.certified ? std::string("True")
                                             : std::string("False")) +
               ")";
      });

  m.def("build", &hn::build, py::arg("ic"), py::arg("phi"), py::arg("spec"),
        py::arg("a"), py::arg("b"), py::arg("eps"), py::arg("n"),
        py::arg("seed"), py::arg("restarts") = 1,
        py::arg("sup_resolution") = 0,
        "Average n sampled flows onto phi, once per restart; the restart "
        "with the smallest grid sup error wins.");
  m.def("build_doubling", &hn::build_doubling, py::arg("ic"), py::arg("phi"),
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("eps"),
        py::arg("seed"), py::arg("restarts") = 1, py::arg("n_start") = 64,
        py::arg("n_max") = 65536, py::arg("sup_resolution") = 0,
        "Double n from n_start until the sup error certifies at eps or "
        "n_max is passed; uncertified searches return the best attempt.");
  m.def(
      "metadata_json",
      [](const hn::BuiltApproximation& built, const hn::InitialCondition& ic,
         const hn::FlowSpec& spec) {
        return hn::metadata_json(built, ic, spec).dump(2);
      },
      py::arg("built"), py::arg("ic"), py::arg("spec"),
      "Self-contained sidecar (problem data, counts, certification); "
      "byte-stable because it carries no timing.");

  py::class_<hn::GrowthConstants>(
      m, "GrowthConstants",
      "Growth data of an approximating family and its equation: value, "
      "gradient, representation-error, and parameter-count envelopes.")
      .def(py::init<>())
      .def_readwrite("c", &hn::GrowthConstants::c)
      .def_readwrite("v", &hn::GrowthConstants::v)
      .def_readwrite("vv", &hn::GrowthConstants::vv)
      .def_readwrite("w", &hn::GrowthConstants::w)
      .def_readwrite("ww", &hn::GrowthConstants::ww)
      .def_readwrite("z", &hn::GrowthConstants::z)
      .def_readwrite("zz", &hn::GrowthConstants::zz)
      .def_readwrite("alpha", &hn::GrowthConstants::alpha)
      .def_readwrite("beta", &hn::GrowthConstants::beta)
      .def_readwrite("p_count", &hn::GrowthConstants::p_count)
      .def_readwrite("q_count", &hn::GrowthConstants::q_count)
      .def("validate", &hn::GrowthConstants::validate);

  m.def("softplus_family_growth_constants",
        &hn::softplus_family_growth_constants, py::arg("c0"), py::arg("pK"),
        "Growth constants of the softplus ridge family with |K_d| <= c0 "
        "d^pK under the plain heat equation.");

  py::class_<hn::TheoreticalConstants>(
      m, "TheoreticalConstants",
      "The four closed-form constants of the averaging construction.")
      .def_readonly("Ccal", &hn::TheoreticalConstants::Ccal)
      .def_readonly("Cbold", &hn::TheoreticalConstants::Cbold)
      .def_readonly("pexp", &hn::TheoreticalConstants::pexp)
      .def_readonly("pfrak", &hn::TheoreticalConstants::pfrak)
      .def_readonly("r", &hn::TheoreticalConstants::r)
      .def_readonly("feasible", &hn::TheoreticalConstants::feasible);

  m.def("theoretical_constants", &hn::theoretical_constants, py::arg("gc"),
        py::arg("T"), py::arg("a"), py::arg("b"), py::arg("r"));
  m.def(
      "theoretical_sample_count",
      [](const hn::TheoreticalConstants& tc, int d, double eps) {
        return to_py_int(hn::theoretical_sample_count(tc, d, eps));
      },
      py::arg("tc"), py::arg("d"), py::arg("eps"),
      "ceil(Cbold d^pexp eps^-2) as an exact Python int.");
  m.def("inner_accuracy", &hn::inner_accuracy, py::arg("tc"), py::arg("gc"),
        py::arg("d"), py::arg("eps"));
  m.def(
      "averaged_neuron_count",
      [](const std::vector<long>& shape, const py::int_& n) {
        return to_py_int(hn::averaged_neuron_count(shape, to_mpz(n)));
      },
      py::arg("shape"), py::arg("n"),
      "Exact neuron count of the n-fold average over a network of the "
      "given layer sizes, without building it.");
  m.def(
      "averaged_param_count",
      [](const std::vector<long>& shape, const py::int_& n) {
        return to_py_int(hn::averaged_param_count(shape, to_mpz(n)));
      },
      py::arg("shape"), py::arg("n"),
      "Exact parameter count of the n-fold average.");
  m.def(
      "softplus_count_bound_check",
      [](double c0, double pK, double T, double a, double b, int d, int k) {
        const auto res = hn::softplus_count_bound_check(c0, pK, T, a, b, d, k);
        py::dict out;
        out["count"] = to_py_int(res.count);
        out["bound"] = to_py_int(res.bound);
        out["ok"] = res.ok;
        return out;
      },
      py::arg("c0"), py::arg("pK"), py::arg("T"), py::arg("a"), py::arg("b"),
      py::arg("d"), py::arg("k"),
      "Exact-integer verdict on the polynomial-count claim at eps = 2^-k.");

  m.def(
      "verify_bounds",
      [](bool full) {
        const auto cfg = full ? hn::PropertySuiteConfig::full()
                              : hn::PropertySuiteConfig::none();
        const auto reports = hn::run_property_suite(cfg);
        std::vector<std::string> failing;
        for (const auto& r : reports)
          if (!r.ok) failing.push_back(r.context);
        py::dict out;
        out["checks"] = reports.size();
        out["failures"] = failing.size();
        out["failing"] = failing;
        return out;
      },
      py::arg("full") = true,
      "Run the inequality battery behind the construction's error "
      "analysis; failures come back by context string.");
}
