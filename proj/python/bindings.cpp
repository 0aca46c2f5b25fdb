#include "nonclass/closed_forms.hpp"
#include "nonclass/core.hpp"
#include "nonclass/discord.hpp"
#include "nonclass/fano.hpp"
#include "nonclass/measure.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace nonclass;

namespace {

DensityOperator state(const Matrix& rho, int m, int n) { return DensityOperator(rho, m, n); }

OptimizerConfig config(int restarts, std::uint64_t seed, bool dispatch) {
  OptimizerConfig c;
  c.restarts = restarts;
  c.seed = seed;
  c.closed_form_dispatch = dispatch;
  return c;
}

py::dict measure_dict(const MeasureResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["method"] = to_string(r.method);
  d["unitary"] = r.optimizer_u.matrix();
  d["eigenbasis"] = r.eigenbasis;
  d["restarts_used"] = r.restarts_used;
  d["iterations"] = r.iterations;
  d["residual"] = r.residual;
  d["converged"] = r.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Local-unitary non-classicality measure for bipartite density matrices";

  py::register_exception<InvalidState>(mod, "InvalidState", PyExc_ValueError);
  py::register_exception<DimensionMismatch>(mod, "DimensionMismatch", PyExc_ValueError);

  mod.def(
      "validate", [](const Matrix& rho, int m, int n) { return state(rho, m, n).matrix(); }, py::arg("rho"),
      py::arg("m"), py::arg("n"), "Validated (and symmetrized) copy of rho; raises InvalidState.");
  mod.def("partial_trace", [](const Matrix& rho, int m, int n, char keep) {
    if (keep != 'A' && keep != 'B') throw std::invalid_argument("keep must be 'A' or 'B'");
    return partial_trace(state(rho, m, n), keep == 'A' ? Subsystem::A : Subsystem::B);
  }, py::arg("rho"), py::arg("m"), py::arg("n"), py::arg("keep"));
  mod.def(
      "random_density", [](int m, int n, int rank, std::uint64_t seed) { return random_density(m, n, rank, seed).matrix(); },
      py::arg("m"), py::arg("n"), py::arg("rank"), py::arg("seed"));
  mod.def(
      "random_unitary", [](int m, std::uint64_t seed) { return random_haar_unitary(m, seed).matrix(); }, py::arg("m"),
      py::arg("seed"));

  mod.def(
      "d_given_u",
      [](const Matrix& rho, int m, int n, const Matrix& u) { return d_given_u(state(rho, m, n), UnitaryOperator(u)); },
      py::arg("rho"), py::arg("m"), py::arg("n"), py::arg("u"));
  mod.def(
      "minimize_d",
      [](const Matrix& rho, int m, int n, int restarts, std::uint64_t seed, bool dispatch) {
        const DensityOperator s = state(rho, m, n);
        MeasureResult r;
        {
          py::gil_scoped_release release;
          r = minimize_d(s, config(restarts, seed, dispatch));
        }
        return measure_dict(r);
      },
      py::arg("rho"), py::arg("m"), py::arg("n"), py::arg("restarts") = 32, py::arg("seed") = 20120401,
      py::arg("closed_form_dispatch") = true);

  mod.def(
      "d_closed_2xN", [](const Matrix& rho, int n) { return d_closed_2xN(state(rho, 2, n)); }, py::arg("rho"),
      py::arg("n"));
  mod.def(
      "bounds_2xN",
      [](const Matrix& rho, int n) {
        const DensityOperator s = state(rho, 2, n);
        return py::make_tuple(lower_bound_2xN(s), upper_bound_2xN(s));
      },
      py::arg("rho"), py::arg("n"), "(lower, upper)");
  mod.def(
      "horodecki_m", [](const Matrix& rho) { return horodecki_m(state(rho, 2, 2)); }, py::arg("rho"));

  mod.def(
      "werner_state", [](int d, double p) { return werner_state(WernerParams(d, p)).matrix(); }, py::arg("d"),
      py::arg("p"));
  mod.def(
      "werner_d", [](int d, double p) { return werner_d(WernerParams(d, p)); }, py::arg("d"), py::arg("p"));
  mod.def(
      "werner_discord", [](int d, double p) { return werner_discord(WernerParams(d, p)); }, py::arg("d"),
      py::arg("p"));
  mod.def("bell_state", [] { return bell_state().density().matrix(); });
  mod.def(
      "schmidt_pure_state", [](double a) { return schmidt_pure_state(a).density().matrix(); }, py::arg("a"));

  mod.def(
      "fano_decompose",
      [](const Matrix& rho, int m, int n) {
        const FanoForm f = fano_decompose(state(rho, m, n));
        py::dict d;
        d["r_a"] = f.r_a;
        d["r_b"] = f.r_b;
        d["t"] = f.t;
        std::vector<std::string> la, lb;
        for (const GeneratorTag& t : f.basis_a.index_map) la.push_back(t.label());
        for (const GeneratorTag& t : f.basis_b.index_map) lb.push_back(t.label());
        d["labels_a"] = la;
        d["labels_b"] = lb;
        return d;
      },
      py::arg("rho"), py::arg("m"), py::arg("n"));

  mod.def(
      "discord",
      [](const Matrix& rho, int n) {
        const DensityOperator s = state(rho, 2, n);
        py::gil_scoped_release release;
        return discord_numeric(s);
      },
      py::arg("rho"), py::arg("n"));
  mod.def(
      "classify",
      [](const Matrix& rho, int m, int n) {
        const ClassificationReport r = classify(state(rho, m, n));
        py::dict d;
        d["D"] = r.d;
        d["discord"] = r.discord ? py::object(py::float_(*r.discord)) : py::object(py::none());
        d["classical_basis_found"] = r.classical_basis_found;
        d["defect"] = r.defect;
        return d;
      },
      py::arg("rho"), py::arg("m"), py::arg("n"));
}
