#include <vector>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bohmtoa/arrival.hpp"
#include "bohmtoa/bohm_dynamics.hpp"
#include "bohmtoa/detection.hpp"
#include "bohmtoa/error.hpp"
#include "bohmtoa/gaussian_states.hpp"
#include "bohmtoa/symplectic.hpp"
#include "bohmtoa/validation.hpp"

namespace py = pybind11;
using namespace bohmtoa;
using namespace py::literals;

namespace {

// Element-wise over a float or array argument; floats stay floats.
template <class F>
py::object map_values(py::object x, F&& f) {
    if (PyFloat_Check(x.ptr()) || PyLong_Check(x.ptr())) return py::float_(f(x.cast<double>()));
    auto in = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(x);
    if (!in) throw py::type_error("expected a float or an array of floats");
    py::array_t<double> out(std::vector<py::ssize_t>(in.shape(), in.shape() + in.ndim()));
    const double* src = in.data();
    double* dst = out.mutable_data();
    for (py::ssize_t i = 0; i < in.size(); ++i) dst[i] = f(src[i]);
    return std::move(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bohmian arrival times for squeezed oscillator states";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SingularLimitError>(m, "SingularLimitError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<OscillatorConfig>(m, "OscillatorConfig")
        .def(py::init<double, double, double>(), "mass"_a = 1.0, "omega"_a = 0.5, "hbar"_a = 1.0)
        .def_property_readonly("mass", &OscillatorConfig::mass)
        .def_property_readonly("omega", &OscillatorConfig::omega)
        .def_property_readonly("hbar", &OscillatorConfig::hbar)
        .def_property_readonly("proper_length", &OscillatorConfig::proper_length)
        .def_property_readonly("ground_energy", &OscillatorConfig::ground_energy)
        .def("__repr__", [](const OscillatorConfig& c) {
            return "OscillatorConfig(mass=" + py::repr(py::float_(c.mass())).cast<std::string>() +
                   ", omega=" + py::repr(py::float_(c.omega())).cast<std::string>() +
                   ", hbar=" + py::repr(py::float_(c.hbar())).cast<std::string>() + ")";
        });

    py::class_<SqueezeParams>(m, "SqueezeParams")
        .def(py::init<double, double>(), "r"_a, "phi"_a = 0.0)
        .def_property_readonly("r", &SqueezeParams::r)
        .def_property_readonly("phi", &SqueezeParams::phi)
        .def_property_readonly("xi_x", &SqueezeParams::xi_x)
        .def_property_readonly("xi_y", &SqueezeParams::xi_y);

    py::class_<Symplectic2>(m, "Symplectic2")
        .def(py::init<double, double, double, double>(), "a"_a, "b"_a, "c"_a, "d"_a)
        .def_readonly("a", &Symplectic2::a)
        .def_readonly("b", &Symplectic2::b)
        .def_readonly("c", &Symplectic2::c)
        .def_readonly("d", &Symplectic2::d)
        .def("det", &Symplectic2::det)
        .def("__matmul__", [](const Symplectic2& x, const Symplectic2& y) { return x * y; })
        .def("to_list", [](const Symplectic2& s) {
            return std::vector<std::vector<double>>{{s.a, s.b}, {s.c, s.d}};
        });

    m.def("squeeze_matrix", &squeeze_matrix, "squeeze"_a, "cfg"_a);
    m.def("evolution_matrix", &evolution_matrix, "t"_a, "cfg"_a);
    m.def("exp_squeeze_generator",
          [](const SqueezeParams& s, const OscillatorConfig& c) { return exp_generator(squeeze_generator(s, c)); },
          "squeeze"_a, "cfg"_a);

    py::class_<GaussianState>(m, "GaussianState")
        .def_property_readonly("amplitude", &GaussianState::amplitude)
        .def_property_readonly("width", &GaussianState::width)
        .def_property_readonly("variance", &GaussianState::variance)
        .def("__call__", [](const GaussianState& s, double x) { return s(x); }, "x"_a)
        .def(
            "density",
            [](const GaussianState& s, py::object x) { return map_values(x, [&](double v) { return density(s, v); }); },
            "x"_a);

    m.def("vacuum_state", &vacuum_state, "cfg"_a);
    m.def("evolved_state", &evolved_state, "squeeze"_a, "t"_a, "cfg"_a);
    m.def("sample_initial_conditions", &sample_initial_conditions, "state"_a, "n"_a, "seed"_a);

    m.def(
        "bohm_velocity",
        [](py::object q, double t, const SqueezeParams& s, const OscillatorConfig& c) {
            return map_values(q, [&](double v) { return bohm_velocity(v, t, s, c); });
        },
        "q"_a, "t"_a, "squeeze"_a, "cfg"_a);
    m.def(
        "trajectory",
        [](double q0, py::object t, const SqueezeParams& s, const OscillatorConfig& c) {
            return map_values(t, [&](double v) { return trajectory(q0, v, s, c); });
        },
        "q0"_a, "t"_a, "squeeze"_a, "cfg"_a);
    m.def(
        "trajectory_ode",
        [](double q0, const std::vector<double>& grid, const SqueezeParams& s, const OscillatorConfig& c) {
            return trajectory_ode_oracle(q0, grid, s, c);
        },
        "q0"_a, "t_grid"_a, "squeeze"_a, "cfg"_a);
    m.def(
        "trajectory_extrema",
        [](double q0, const SqueezeParams& s) {
            const auto e = trajectory_extrema(q0, s);
            return py::make_tuple(e.q_min, e.q_max);
        },
        "q0"_a, "squeeze"_a);
    m.def(
        "forbidden_region_slopes",
        [](const SqueezeParams& s, const OscillatorConfig& c) {
            const auto f = forbidden_region_slopes(s, c);
            return py::make_tuple(f.slope_plus, f.slope_minus);
        },
        "squeeze"_a, "cfg"_a);

    py::class_<ArrivalSetup>(m, "ArrivalSetup")
        .def(py::init<double, SqueezeParams, OscillatorConfig>(), "detector"_a, "squeeze"_a, "cfg"_a)
        .def_property_readonly("detector", &ArrivalSetup::detector)
        .def_property_readonly("squeeze", &ArrivalSetup::squeeze)
        .def_property_readonly("cfg", &ArrivalSetup::cfg);

    m.def(
        "initial_condition_interval",
        [](const ArrivalSetup& s) {
            const auto iv = initial_condition_interval(s);
            return py::make_tuple(iv.q0_min, iv.q0_max);
        },
        "setup"_a);
    m.def("critical_phase", &critical_phase, "r"_a);
    m.def(
        "time_of_arrival",
        [](py::object q0, const ArrivalSetup& s) {
            return map_values(q0, [&](double v) { return time_of_arrival(v, s); });
        },
        "q0"_a, "setup"_a);
    m.def("detection_probability", &detection_probability, "setup"_a);
    m.def("mean_toa", &mean_toa, "setup"_a);

    py::class_<ToaDistribution>(m, "ToaDistribution")
        .def_property_readonly("t_min", &ToaDistribution::t_min)
        .def_property_readonly("t_max", &ToaDistribution::t_max)
        .def_property_readonly("z", &ToaDistribution::z)
        .def_property_readonly("log_z", &ToaDistribution::log_z)
        .def(
            "__call__", [](const ToaDistribution& d, py::object tau) { return map_values(tau, d); }, "tau"_a)
        .def("mode", &ToaDistribution::mode)
        .def("mean", &ToaDistribution::mean);
    m.def("toa_pdf", &toa_pdf, "setup"_a);

    m.def(
        "toa_histogram_mc",
        [](const ArrivalSetup& s, std::size_t n, std::uint64_t seed, std::size_t bins) {
            const ToaMonteCarlo mc = toa_histogram_mc(s, n, seed, bins);
            py::dict out;
            std::vector<double> edges;
            for (std::size_t i = 0; i < mc.histogram.bins(); ++i) edges.push_back(mc.histogram.bin_lower(i));
            edges.push_back(mc.histogram.upper());
            out["edges"] = edges;
            out["counts"] = mc.histogram.counts();
            out["samples"] = mc.samples;
            out["accepted"] = mc.accepted;
            out["accepted_fraction"] = mc.accepted_fraction;
            out["expected_fraction"] = mc.expected_fraction;
            out["standard_error"] = mc.standard_error;
            return out;
        },
        "setup"_a, "n"_a, "seed"_a, "bins"_a = 32);

    py::class_<DetectionWindow>(m, "DetectionWindow")
        .def(py::init<double, double, double>(), "duration"_a, "bin_width"_a, "detector"_a)
        .def_static("with_default_duration", &DetectionWindow::with_default_duration, "bin_width"_a, "detector"_a,
                    "squeeze"_a, "cfg"_a)
        .def_property_readonly("duration", &DetectionWindow::duration)
        .def_property_readonly("bin_width", &DetectionWindow::bin_width)
        .def_property_readonly("detector", &DetectionWindow::detector);

    auto measure = [](bool jacobian) {
        CountOptions o;
        if (jacobian) o.measure = InnerMeasure::jacobian_weighted;
        return o;
    };
    m.def(
        "standard_count",
        [](const DetectionWindow& w, const SqueezeParams& s, const OscillatorConfig& c) {
            return standard_count(w, s, c);
        },
        "window"_a, "squeeze"_a, "cfg"_a);
    m.def(
        "bohmian_count",
        [measure](const DetectionWindow& w, const SqueezeParams& s, const OscillatorConfig& c, bool jacobian) {
            return bohmian_count(w, s, c, measure(jacobian));
        },
        "window"_a, "squeeze"_a, "cfg"_a, "jacobian"_a = false);

    m.def(
        "validate",
        [](std::uint64_t seed) {
            py::list out;
            for (const auto& c : validation::run_validation({seed, false})) {
                out.append(py::dict("name"_a = c.name, "passed"_a = c.passed, "measured"_a = c.measured,
                                    "tolerance"_a = c.tolerance, "detail"_a = c.detail));
            }
            return out;
        },
        "seed"_a = 20250101);
}
