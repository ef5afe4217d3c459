#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slcert/defining_family.hpp"
#include "slcert/geometry_probes.hpp"
#include "slcert/report.hpp"
#include "slcert/slc_criterion.hpp"

namespace py = pybind11;
using namespace slcert;

namespace {

template <class Run>
py::tuple outcome_of(Run run) {
  CommandOutcome out;
  {
    py::gil_scoped_release release;
    out = run();
  }
  return py::make_tuple(static_cast<int>(out.exit_code), dump_report(out.report),
                        records_csv(out.records));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = kVersion;

  m.def("r_eps", [](cplx s, cplx p, double eps) { return r_eps(PointC2(s, p), EpsilonParam(eps)); },
        py::arg("s"), py::arg("p"), py::arg("eps"));
  m.def("gradient",
        [](cplx s, cplx p) {
          const WirtingerGradient g = r_eps_gradient(PointC2(s, p));
          return py::make_tuple(g.r_s, g.r_p);
        },
        py::arg("s"), py::arg("p"));
  m.def("membership",
        [](cplx s, cplx p, double eps, double tol) {
          return std::string(to_string(membership(PointC2(s, p), EpsilonParam(eps), tol)));
        },
        py::arg("s"), py::arg("p"), py::arg("eps"), py::arg("tol") = 1e-10);
  m.def("admissible_radius", [](double eps) { return admissible_radius(EpsilonParam(eps)); },
        py::arg("eps"));
  m.def("boundary_s_from_p",
        [](cplx p, double eps) { return boundary_s_from_p(p, EpsilonParam(eps)); }, py::arg("p"),
        py::arg("eps"));
  m.def("canonical_tangent",
        [](cplx s, cplx p) {
          const TangentVectorC2 x = canonical_tangent(r_eps_gradient(PointC2(s, p)));
          return py::make_tuple(x.xs(), x.xp());
        },
        py::arg("s"), py::arg("p"));
  m.def("quadratic_criterion_margin", &quadratic_criterion_margin, py::arg("a"), py::arg("b"),
        py::arg("c"));
  m.def("margin8",
        [](cplx s, cplx p, double eps, cplx xs, cplx xp) {
          return margin8(BoundarySample::at(PointC2(s, p), EpsilonParam(eps)),
                         TangentVectorC2(xs, xp));
        },
        py::arg("s"), py::arg("p"), py::arg("eps"), py::arg("xs"), py::arg("xp"));
  m.def("margin10", [](cplx s, cplx p) { return margin10(PointC2(s, p)); }, py::arg("s"),
        py::arg("p"));
  m.def("margin11", [](cplx p, double eps) { return margin11(p, EpsilonParam(eps)); },
        py::arg("p"), py::arg("eps"));
  m.def("margin12", [](cplx p, double eps) { return margin12(p, EpsilonParam(eps)); },
        py::arg("p"), py::arg("eps"));
  m.def("phi",
        [](cplx s, cplx p) {
          const PointC2 w = phi(PointC2(s, p));
          return py::make_tuple(w.s(), w.p());
        },
        py::arg("s"), py::arg("p"));

  m.def("certify",
        [](double eps, int grid, const std::string& method, std::uint64_t seed, bool richardson) {
          const CertifyOptions opts{.eps = eps, .grid = grid, .method = parse_method(method),
                                    .seed = seed, .richardson = richardson};
          return outcome_of([&] { return run_certify(opts); });
        },
        py::arg("eps") = 0.25, py::arg("grid") = 200, py::arg("method") = "closed",
        py::arg("seed") = 0, py::arg("richardson") = false);
  m.def("slice",
        [](double eps, long lines, int res, std::uint64_t seed) {
          const SliceOptions opts{.eps = eps, .lines = lines, .resolution = res, .seed = seed};
          return outcome_of([&] { return run_slice(opts); });
        },
        py::arg("eps") = 0.25, py::arg("lines") = 200, py::arg("res") = 256, py::arg("seed") = 42);
  m.def("exhaust",
        [](std::vector<double> eps_list, long samples, std::uint64_t seed) {
          const ExhaustOptions opts{.eps_list = std::move(eps_list), .samples = samples,
                                    .seed = seed};
          return outcome_of([&] { return run_exhaust(opts); });
        },
        py::arg("eps_list") = std::vector<double>{0.4, 0.2, 0.1, 0.05, 0.01},
        py::arg("samples") = 10000, py::arg("seed") = 42);
  m.def("witness",
        [](double eps, const std::string& mode, long samples, std::uint64_t seed) {
          const WitnessOptions opts{.eps = eps, .mode = parse_witness_mode(mode),
                                    .samples = samples, .seed = seed};
          return outcome_of([&] { return run_witness(opts); });
        },
        py::arg("eps") = 0.01, py::arg("mode") = "nonconvex-D", py::arg("samples") = 1000000,
        py::arg("seed") = 42);
}
