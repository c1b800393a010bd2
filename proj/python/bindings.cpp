#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "semzk/cli.hpp"
#include "semzk/config.hpp"
#include "semzk/dynamics.hpp"
#include "semzk/integrators.hpp"
#include "semzk/littlewood_paley.hpp"
#include "semzk/norms.hpp"
#include "semzk/probes.hpp"
#include "semzk/scenarios.hpp"
#include "semzk/snapshot.hpp"
#include "semzk/spectral.hpp"

namespace py = pybind11;
using namespace semzk;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

// Fields cross the boundary as (nx, ny) arrays in the grid's row-major layout.
RealField to_field(const Grid2D& g, const RealArray& a) {
    if (a.ndim() != 2 || a.shape(0) != g.nx() || a.shape(1) != g.ny()) {
        throw Error("expected an array of shape (" + std::to_string(g.nx()) + ", " + std::to_string(g.ny()) + ")");
    }
    return RealField(g, std::vector<double>(a.data(), a.data() + a.size()));
}

SpectralField to_spectral(const Grid2D& g, const ComplexArray& a) {
    if (a.ndim() != 2 || a.shape(0) != g.nx() || a.shape(1) != g.ny()) {
        throw Error("expected an array of shape (" + std::to_string(g.nx()) + ", " + std::to_string(g.ny()) + ")");
    }
    return SpectralField(g, std::vector<Complex>(a.data(), a.data() + a.size()));
}

RealArray to_array(const RealField& f) {
    RealArray out({f.grid().nx(), f.grid().ny()});
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

ComplexArray to_array(const SpectralField& f) {
    ComplexArray out({f.grid().nx(), f.grid().ny()});
    std::copy(f.coeffs().begin(), f.coeffs().end(), out.mutable_data());
    return out;
}

Equation equation_from(const std::string& name, double omega, double x0) {
    return Equation::parse(name, SolitonParams{omega, x0});
}

py::object json_loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

RunConfig config_from(const std::string& text, const py::dict& overrides) {
    RunConfig cfg = parse_config(text);
    for (const auto& [k, v] : overrides) {
        apply_setting(cfg, py::str(k), py::str(v));
    }
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral solver, norms and estimate probes for ZK-type equations on periodic rectangles";

    // Translators are tried newest first, so the derived type goes last.
    py::register_exception<Error>(m, "SemzkError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Grid2D>(m, "Grid2D")
        .def(py::init<int, int, double, double>(), py::arg("nx"), py::arg("ny"), py::arg("lx"), py::arg("ly"))
        .def_property_readonly("nx", &Grid2D::nx)
        .def_property_readonly("ny", &Grid2D::ny)
        .def_property_readonly("lx", &Grid2D::lx)
        .def_property_readonly("ly", &Grid2D::ly)
        .def_property_readonly("dx", &Grid2D::dx)
        .def_property_readonly("dy", &Grid2D::dy)
        .def_property_readonly("area", &Grid2D::area)
        .def("x", [](const Grid2D& g) {
            py::array_t<double> out(g.nx());
            for (int i = 0; i < g.nx(); ++i) out.mutable_at(i) = g.x(i);
            return out;
        })
        .def("y", [](const Grid2D& g) {
            py::array_t<double> out(g.ny());
            for (int j = 0; j < g.ny(); ++j) out.mutable_at(j) = g.y(j);
            return out;
        })
        .def("__eq__", &Grid2D::operator==)
        .def("__repr__", [](const Grid2D& g) {
            std::ostringstream s;
            s << "Grid2D(" << g.nx() << ", " << g.ny() << ", " << g.lx() << ", " << g.ly() << ")";
            return s.str();
        });

    // spectral-core
    m.def("forward_transform", [](const Grid2D& g, const RealArray& u) { return to_array(forward_transform(to_field(g, u))); },
          py::arg("grid"), py::arg("u"), "Fourier-series coefficients; a constant c maps to c at mode (0, 0).");
    m.def("inverse_transform", [](const Grid2D& g, const ComplexArray& c) { return to_array(inverse_transform(to_spectral(g, c))); },
          py::arg("grid"), py::arg("coeffs"));
    m.def("multiplier", [](const Grid2D& g, const std::string& kind) {
              static const std::map<std::string, MultiplierKind> kinds = {
                  {"m1", MultiplierKind::m1}, {"m2", MultiplierKind::m2}, {"laplacian", MultiplierKind::laplacian},
                  {"poisson_dx", MultiplierKind::poisson_dx}};
              const auto it = kinds.find(kind);
              if (it == kinds.end()) throw Error("unknown multiplier " + kind);
              const MultiplierTable t = make_multiplier(it->second, g);
              ComplexArray out({g.nx(), g.ny()});
              std::copy(t.weights().begin(), t.weights().end(), out.mutable_data());
              return out;
          },
          py::arg("grid"), py::arg("kind"), "Weights of m1, m2, laplacian or poisson_dx per mode.");
    m.def("solve_potential", [](const Grid2D& g, const RealArray& u) { return to_array(solve_potential(to_field(g, u))); },
          py::arg("grid"), py::arg("u"));
    m.def("poisson_residual", [](const Grid2D& g, const RealArray& u, const RealArray& phi) {
              return poisson_residual(to_field(g, u), to_field(g, phi));
          },
          py::arg("grid"), py::arg("u"), py::arg("phi"));

    // dynamics
    m.def("propagate", [](const Grid2D& g, const RealArray& u, double t) {
              return to_array(inverse_transform(propagator_apply(forward_transform(to_field(g, u)), t)));
          },
          py::arg("grid"), py::arg("u"), py::arg("t"), "Free evolution U(t)u.");
    m.def("nonlinear_zk", [](const Grid2D& g, const RealArray& u) { return to_array(nonlinear_zk(to_field(g, u))); },
          py::arg("grid"), py::arg("u"));
    m.def("nonlinear_sem", [](const Grid2D& g, const RealArray& u) { return to_array(nonlinear_sem(to_field(g, u))); },
          py::arg("grid"), py::arg("u"));
    m.def("soliton_profile", [](const Grid2D& g, double omega, double x0, double t) {
              return to_array(soliton_profile({omega, x0}, t, g));
          },
          py::arg("grid"), py::arg("omega") = 1.0, py::arg("x0") = 0.0, py::arg("t") = 0.0);
    m.def("potential_profile", [](const Grid2D& g, double omega, double x0, double t) {
              return to_array(potential_profile({omega, x0}, t, g));
          },
          py::arg("grid"), py::arg("omega") = 1.0, py::arg("x0") = 0.0, py::arg("t") = 0.0);

    // integrators
    m.def("evolve", [](const Grid2D& g, const RealArray& u0, const std::string& equation, double T, double dt,
                       int stride, double omega, double x0) {
              EvolveOptions opts;
              opts.sample_stride = stride;
              const TrajectoryPath p = evolve(to_field(g, u0), equation_from(equation, omega, x0), T, dt, opts);
              py::list fields;
              for (const RealField& f : p.fields) fields.append(to_array(f));
              return py::make_tuple(p.times, fields);
          },
          py::arg("grid"), py::arg("u0"), py::arg("equation"), py::arg("T"), py::arg("dt"), py::arg("stride") = 1,
          py::arg("omega") = 1.0, py::arg("x0") = 0.0,
          "IFRK4 march; returns (times, fields) sampled every `stride` steps plus the final state.");
    m.def("suggested_dt", [](const Grid2D& g, const RealArray& u, const std::string& equation, double omega, double x0) {
              return suggested_dt(to_field(g, u), equation_from(equation, omega, x0));
          },
          py::arg("grid"), py::arg("u"), py::arg("equation"), py::arg("omega") = 1.0, py::arg("x0") = 0.0);
    m.def("picard_solve", [](const Grid2D& g, const RealArray& u0, const std::string& equation, double T, int nodes,
                             double tol, int max_iter) {
              PicardOptions opts;
              opts.tol = tol;
              opts.max_iter = max_iter;
              auto [path, r] = picard_solve(to_field(g, u0), equation_from(equation, 1.0, 0.0), T, nodes, opts);
              py::dict out;
              out["iterates"] = r.iterates;
              out["distances"] = r.distances;
              out["ratios"] = r.ratios;
              out["converged"] = r.converged;
              out["times"] = path.times;
              out["final"] = to_array(path.fields.back());
              return out;
          },
          py::arg("grid"), py::arg("u0"), py::arg("equation"), py::arg("T"), py::arg("nodes") = 101,
          py::arg("tol") = 1e-10, py::arg("max_iter") = 50);

    // norms-diagnostics
    m.def("conserved_I1", [](const Grid2D& g, const RealArray& u) { return conserved_I1(to_field(g, u)); },
          py::arg("grid"), py::arg("u"));
    m.def("conserved_I2", [](const Grid2D& g, const RealArray& u) { return conserved_I2(to_field(g, u)); },
          py::arg("grid"), py::arg("u"));
    m.def("l2_norm", [](const Grid2D& g, const RealArray& u) { return l2_norm(to_field(g, u)); }, py::arg("grid"),
          py::arg("u"));
    m.def("sobolev_norm", [](const Grid2D& g, const RealArray& u, double s) { return sobolev_norm(to_field(g, u), s); },
          py::arg("grid"), py::arg("u"), py::arg("s"));
    m.def("mixed_norm", [](const Grid2D& g, const RealArray& u, const std::string& descriptor) {
              return mixed_norm(to_field(g, u), MixedNormDescriptor::parse(descriptor));
          },
          py::arg("grid"), py::arg("u"), py::arg("descriptor"), "Spatial mixed norm, e.g. \"x:2,y:inf\".");

    // littlewood-paley
    m.def("bump_eta", &bump_eta, py::arg("s"));
    m.def("bump_zeta", &bump_zeta, py::arg("s"));
    m.def("dyadic_weight", &dyadic_weight, py::arg("r"), py::arg("n"));
    m.def("project_PN", [](const Grid2D& g, const RealArray& u, int n) {
              return to_array(inverse_transform(project_PN(forward_transform(to_field(g, u)), n)));
          },
          py::arg("grid"), py::arg("u"), py::arg("n"));
    m.def("bilinear_bound", &bilinear_bound, py::arg("n1"), py::arg("l1"), py::arg("n2"), py::arg("l2"));

    // scenarios-cli
    m.def("write_snapshot", [](const std::filesystem::path& path, const Grid2D& g, const RealArray& u, double time,
                               int tag) { write_snapshot(path, to_field(g, u), time, static_cast<Equation::Tag>(tag)); },
          py::arg("path"), py::arg("grid"), py::arg("u"), py::arg("time"), py::arg("equation_tag") = 0);
    m.def("read_snapshot", [](const std::filesystem::path& path) {
              Snapshot s = read_snapshot(path);
              return py::make_tuple(s.field.grid(), to_array(s.field), s.time, static_cast<int>(s.equation));
          },
          py::arg("path"), "Returns (grid, field, time, equation_tag).");
    m.def("resolve_config", [](const std::string& text, const py::dict& overrides) {
              return json_loads(config_from(text, overrides).to_json());
          },
          py::arg("text") = "", py::arg("overrides") = py::dict(), "Resolved configuration as a dict.");
    m.def("soliton_bench", [](const std::string& text, const py::dict& overrides) {
              const RunConfig cfg = config_from(text, overrides);
              return json_loads(run_soliton_benchmark(cfg).summary_json(cfg));
          },
          py::arg("text") = "", py::arg("overrides") = py::dict());
    m.def("instability", [](const std::string& text, const py::dict& overrides) {
              const RunConfig cfg = config_from(text, overrides);
              const InstabilityReport r = run_instability(cfg);
              py::dict out = json_loads(r.summary_json(cfg));
              out["series"] = r.series;
              return out;
          },
          py::arg("text") = "", py::arg("overrides") = py::dict());
    m.def("simulate", [](const std::string& text, const py::dict& overrides) {
              const RunConfig cfg = config_from(text, overrides);
              const SimulationResult r = simulate(cfg);
              return py::make_tuple(to_array(r.final_state), r.diagnostics_csv());
          },
          py::arg("text") = "", py::arg("overrides") = py::dict(), "Returns (final field, diagnostics CSV text).");
    m.def("cli", [](const std::vector<std::string>& args) {
              std::vector<std::string> argv = {"semzk"};
              argv.insert(argv.end(), args.begin(), args.end());
              std::ostringstream out, err;
              const int code = cli_main(argv, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs the command line; returns (exit code, stdout, stderr).");
}
