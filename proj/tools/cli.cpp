#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "bohmtoa/arrival.hpp"
#include "bohmtoa/bohm_dynamics.hpp"
#include "bohmtoa/detection.hpp"
#include "bohmtoa/error.hpp"
#include "bohmtoa/gaussian_states.hpp"
#include "bohmtoa/validation.hpp"
#include "json.hpp"
#include "sweep.hpp"

namespace bohmtoa::cli {

namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

// Failure of a validation step; maps to exit code 1.
struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double r = 1.0;
    double phi = 0.0;
    bool degrees = false;
    double omega = 0.5;
    double mass = 1.0;
    double hbar = 1.0;
    std::string L = "1";
    std::optional<double> dL;
    std::optional<double> T;
    std::string q0;
    std::optional<std::size_t> n;
    std::uint64_t seed = 20250101;
    std::optional<std::size_t> bins;
    std::optional<double> t_max;
    std::string sweep;
    std::string output = "-";
    std::string format = "csv";
    bool format_given = false;
    bool jacobian = false;
    bool perturb = false;
};

struct Point {
    double r = 0.0;
    double phi = 0.0;
    double omega = 0.0;
    double mass = 0.0;
    double hbar = 0.0;
    double L = 0.0;
    std::optional<double> dL;
    std::optional<double> T;
    std::vector<double> coords;

    OscillatorConfig cfg() const { return {mass, omega, hbar}; }
    SqueezeParams squeeze() const { return {r, phi}; }
};

struct Table {
    std::vector<std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json summary;
};

std::string num(double v) { return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v); }

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

std::size_t count_or(const std::optional<std::size_t>& v, std::size_t fallback, std::size_t minimum,
                     const char* what) {
    const std::size_t value = v.value_or(fallback);
    if (value < minimum) throw std::invalid_argument(fmt::format("{} must be >= {}", what, minimum));
    return value;
}

// ---------------------------------------------------------------------------
// Sweep expansion

struct Plan {
    std::vector<SweepAxis> axes;
    std::vector<Point> points;
};

Plan expand(const Options& opt, bool detector_list_is_axis) {
    Plan plan;
    if (!opt.sweep.empty()) plan.axes = parse_sweep(opt.sweep);
    const double angle = opt.degrees ? kPi / 180.0 : 1.0;
    const std::vector<double> Ls = parse_list(opt.L);
    bool has_detector_axis = false;
    for (const SweepAxis& a : plan.axes) has_detector_axis = has_detector_axis || a.name == "L" || a.name == "L/l";
    if (detector_list_is_axis && !has_detector_axis && Ls.size() > 1) plan.axes.push_back({"L", Ls});

    std::vector<std::size_t> index(plan.axes.size(), 0);
    while (true) {
        Point p{opt.r, opt.phi * angle, opt.omega, opt.mass, opt.hbar, Ls.front(), opt.dL, opt.T, {}};
        std::optional<double> L_over_l;
        for (std::size_t k = 0; k < plan.axes.size(); ++k) {
            const std::string& name = plan.axes[k].name;
            const double v = plan.axes[k].values[index[k]];
            p.coords.push_back(v);
            if (name == "r") p.r = v;
            else if (name == "phi") p.phi = v * angle;
            else if (name == "omega") p.omega = v;
            else if (name == "mass") p.mass = v;
            else if (name == "hbar") p.hbar = v;
            else if (name == "L") p.L = v;
            else if (name == "L/l") L_over_l = v;
            else if (name == "dL") p.dL = v;
            else if (name == "T") p.T = v;
        }
        if (L_over_l) p.L = *L_over_l * p.cfg().proper_length();
        plan.points.push_back(p);

        std::size_t k = 0;
        while (k < index.size() && ++index[k] == plan.axes[k].values.size()) index[k++] = 0;
        if (k == index.size()) break;
    }
    return plan;
}

std::vector<std::string> axis_columns(const Plan& plan) {
    std::vector<std::string> cols;
    for (const SweepAxis& a : plan.axes) cols.push_back(column_name(a.name));
    return cols;
}

std::vector<double> prefixed(const Point& p, std::initializer_list<double> values) {
    std::vector<double> row = p.coords;
    row.insert(row.end(), values);
    return row;
}

void describe(Table& t, const Options& opt, const std::string& command) {
    t.meta.push_back("bohmtoa " + command);
    t.meta.push_back(fmt::format("r = {}", num(opt.r)));
    t.meta.push_back(fmt::format("phi = {}{}", num(opt.phi), opt.degrees ? " deg" : " rad"));
    t.meta.push_back(fmt::format("omega = {}, mass = {}, hbar = {}", num(opt.omega), num(opt.mass), num(opt.hbar)));
    t.meta.push_back("L = " + opt.L);
    if (!opt.sweep.empty()) t.meta.push_back("sweep = " + opt.sweep);
}

std::string coords_label(const Plan& plan, const Point& p) {
    std::string s;
    for (std::size_t k = 0; k < plan.axes.size(); ++k) {
        s += fmt::format("{}{} = {}", k ? ", " : "", column_name(plan.axes[k].name), num(p.coords[k]));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Commands

Table cmd_density(const Options& opt) {
    const Plan plan = expand(opt, false);
    Table t;
    describe(t, opt, "density");
    t.columns = axis_columns(plan);
    t.columns.insert(t.columns.end(), {"t", "x", "density"});
    const std::size_t bins = count_or(opt.bins, 101, 2, "--bins");
    for (const Point& p : plan.points) {
        const OscillatorConfig cfg = p.cfg();
        const SqueezeParams sq = p.squeeze();
        const double half = 5.0 * cfg.proper_length() * std::exp(sq.r());
        const auto xs = linspace(-half, half, bins);
        for (double time : linspace(0.0, opt.t_max.value_or(2.0 * kPi / cfg.omega()), bins)) {
            const GaussianState st = evolved_state(sq, time, cfg);
            for (double x : xs) t.rows.push_back(prefixed(p, {time, x, density(st, x)}));
        }
    }
    return t;
}

std::vector<double> initial_positions(const Options& opt, const Point& p) {
    if (!opt.q0.empty()) return parse_list(opt.q0);
    const std::size_t n = count_or(opt.n, 200, 1, "--n");
    return sample_initial_conditions(evolved_state(p.squeeze(), 0.0, p.cfg()), n, opt.seed);
}

Table cmd_trajectories(const Options& opt, bool with_velocity) {
    const Plan plan = expand(opt, false);
    Table t;
    describe(t, opt, with_velocity ? "phase-space" : "trajectories");
    t.meta.push_back(fmt::format("seed = {}", opt.seed));
    t.columns = axis_columns(plan);
    t.columns.insert(t.columns.end(), {"trajectory_id", "t", "q"});
    if (with_velocity) {
        t.columns.push_back("qdot");
        t.meta.push_back("trajectory_id -1 and -2: forbidden-region lines qdot = +/- 2 omega sinh(2r) q at q = max |q|");
    }
    const std::size_t bins = count_or(opt.bins, 201, 2, "--bins");
    for (const Point& p : plan.points) {
        const OscillatorConfig cfg = p.cfg();
        const SqueezeParams sq = p.squeeze();
        const std::vector<double> q0s = initial_positions(opt, p);
        const ForbiddenRegion wedge = forbidden_region_slopes(sq, cfg);
        for (double time : linspace(0.0, opt.t_max.value_or(2.0 * kPi / cfg.omega()), bins)) {
            double reach = 0.0;
            for (std::size_t id = 0; id < q0s.size(); ++id) {
                const PhasePoint pp = phase_point(q0s[id], time, sq, cfg);
                reach = std::max(reach, std::abs(pp.q));
                if (with_velocity) {
                    t.rows.push_back(prefixed(p, {static_cast<double>(id), time, pp.q, pp.qdot}));
                } else {
                    t.rows.push_back(prefixed(p, {static_cast<double>(id), time, pp.q}));
                }
            }
            if (with_velocity) {
                t.rows.push_back(prefixed(p, {-1.0, time, reach, wedge.slope_plus * reach}));
                t.rows.push_back(prefixed(p, {-2.0, time, reach, wedge.slope_minus * reach}));
            }
        }
    }
    return t;
}

Table cmd_toa_pdf(const Options& opt) {
    const Plan plan = expand(opt, true);
    Table t;
    describe(t, opt, "toa-pdf");
    t.columns = axis_columns(plan);
    t.columns.insert(t.columns.end(), {"tau", "omega_tau_minus_phi", "pdf"});
    const std::size_t bins = count_or(opt.bins, 201, 2, "--bins");
    for (const Point& p : plan.points) {
        const ToaDistribution pdf = toa_pdf(ArrivalSetup(p.L, p.squeeze(), p.cfg()));
        const std::string where = coords_label(plan, p);
        t.meta.push_back(fmt::format("{}Z = {}, log_Z = {}, mode = {}", where.empty() ? "" : where + ": ",
                                     num(pdf.z()), num(pdf.log_z()), num(pdf.mode())));
        for (double tau : linspace(pdf.t_min(), pdf.t_max(), bins)) {
            t.rows.push_back(prefixed(p, {tau, p.omega * tau - p.phi, pdf(tau)}));
        }
    }
    t.meta.push_back("quadrature: relative tolerance 1e-13 for Z");
    return t;
}

Table cmd_toa_mc(const Options& opt) {
    const Plan plan = expand(opt, true);
    Table t;
    describe(t, opt, "toa-mc");
    t.meta.push_back(fmt::format("seed = {}", opt.seed));
    t.columns = axis_columns(plan);
    t.columns.insert(t.columns.end(), {"bin_lower", "bin_upper", "count", "expected"});
    const std::size_t n = count_or(opt.n, 100000, 10000, "--n");
    const std::size_t bins = count_or(opt.bins, 32, 2, "--bins");
    json summaries = json::array();
    bool all_passed = true;
    for (const Point& p : plan.points) {
        const ArrivalSetup setup(p.L, p.squeeze(), p.cfg());
        const ToaDistribution pdf = toa_pdf(setup);
        const ToaMonteCarlo mc = toa_histogram_mc(setup, n, opt.seed, bins);
        const auto chi = numerics::chi_square_gof(mc.histogram, [&](double x) { return pdf(x); }, 0.001);
        const double z_score = std::abs(mc.accepted_fraction - mc.expected_fraction) / mc.standard_error;
        const bool passed = chi.passed && z_score <= 3.0;
        all_passed = all_passed && passed;

        const auto& h = mc.histogram;
        std::size_t fullest = 0;
        for (std::size_t i = 0; i < h.bins(); ++i) {
            const double mass = numerics::integrate([&](double x) { return pdf(x); }, h.bin_lower(i), h.bin_upper(i),
                                                    1e-13, 1e-11).value;
            t.rows.push_back(prefixed(p, {h.bin_lower(i), h.bin_upper(i), static_cast<double>(h.counts()[i]),
                                          static_cast<double>(mc.accepted) * mass}));
            if (h.counts()[i] > h.counts()[fullest]) fullest = i;
        }
        json s;
        for (std::size_t k = 0; k < plan.axes.size(); ++k) s[column_name(plan.axes[k].name)] = p.coords[k];
        s["samples"] = mc.samples;
        s["accepted"] = mc.accepted;
        s["accepted_fraction"] = mc.accepted_fraction;
        s["expected_fraction"] = mc.expected_fraction;
        s["standard_error"] = mc.standard_error;
        s["acceptance_z"] = z_score;
        s["chi2"] = chi.statistic;
        s["dof"] = chi.degrees_of_freedom;
        s["critical_value"] = chi.critical_value;
        s["p_value"] = chi.p_value;
        s["alpha"] = 0.001;
        s["mode_bin_centre"] = h.bin_centre(fullest);
        s["passed"] = passed;
        summaries.push_back(s);
        t.meta.push_back(fmt::format("{}accepted_fraction = {}, chi2 = {}, passed = {}",
                                     plan.axes.empty() ? "" : coords_label(plan, p) + ": ",
                                     num(mc.accepted_fraction), num(chi.statistic), passed));
    }
    t.summary = summaries.size() == 1 ? summaries.front() : summaries;
    if (!all_passed) t.summary["__failed"] = true;
    return t;
}

Table cmd_mean_toa(const Options& opt) {
    const Plan plan = expand(opt, true);
    Table t;
    describe(t, opt, "mean-toa");
    t.columns = axis_columns(plan);
    t.columns.insert(t.columns.end(), {"value_2wT_minus_phi", "mean_toa"});
    for (const Point& p : plan.points) {
        const double m = mean_toa(ArrivalSetup(p.L, p.squeeze(), p.cfg()));
        t.rows.push_back(prefixed(p, {2.0 * p.omega * m - p.phi, m}));
    }
    return t;
}

Table cmd_counts(const Options& opt) {
    Plan plan = expand(opt, false);
    bool detector_swept = false;
    for (const SweepAxis& a : plan.axes) detector_swept = detector_swept || a.name == "L" || a.name == "L/l";
    Table t;
    describe(t, opt, "counts");
    t.meta.push_back(opt.jacobian ? "inner measure: Jacobian-weighted" : "inner measure: as displayed (no Jacobian)");
    t.columns = axis_columns(plan);
    t.columns.insert(t.columns.end(), {"L", "N_standard", "N_bohmian", "ratio"});
    CountOptions copts;
    if (opt.jacobian) copts.measure = InnerMeasure::jacobian_weighted;
    for (const Point& p : plan.points) {
        const OscillatorConfig cfg = p.cfg();
        const std::vector<double> detectors = detector_swept ? std::vector<double>{p.L} : parse_list(opt.L);
        const WindowTemplate window{p.dL.value_or(0.01 * cfg.proper_length()), p.T.value_or(0.0)};
        for (const CountRow& row : count_report(detectors, window, p.squeeze(), cfg, copts)) {
            t.rows.push_back(prefixed(p, {row.detector, row.standard, row.bohmian, row.ratio}));
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Output

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path), out_(&fallback) {
        if (path != "-") {
            file_.open(path, std::ios::out | std::ios::trunc);
            if (!file_) throw std::invalid_argument("cannot open output path '" + path + "'");
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }
    bool is_file() const { return path_ != "-"; }

private:
    std::string path_;
    std::ofstream file_;
    std::ostream* out_;
};

void write_table(const Table& t, const Options& opt, const std::string& command, std::ostream& out) {
    if (opt.format == "json") {
        json doc;
        doc["command"] = command;
        doc["metadata"] = t.meta;
        doc["columns"] = t.columns;
        doc["rows"] = t.rows;
        if (!t.summary.is_null()) {
            json s = t.summary;
            s.erase("__failed");
            doc["summary"] = s;
        }
        out << doc.dump(1) << '\n';
        return;
    }
    for (const std::string& m : t.meta) out << "# " << m << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    std::string line;
    for (const auto& row : t.rows) {
        line.clear();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += ',';
            line += num(row[i]);
        }
        out << line << '\n';
    }
}

int emit(const Table& t, const Options& opt, const std::string& command, std::ostream& out) {
    Sink sink(opt.output, out);
    write_table(t, opt, command, sink.stream());
    bool failed = false;
    if (!t.summary.is_null()) {
        json s = t.summary;
        failed = s.contains("__failed");
        s.erase("__failed");
        if (sink.is_file() && opt.format == "csv") {
            std::ofstream js(opt.output + ".json");
            if (!js) throw std::invalid_argument("cannot open output path '" + opt.output + ".json'");
            js << s.dump(1) << '\n';
        }
    }
    if (!sink.stream()) throw std::runtime_error("write to output failed");
    return failed ? kExitValidation : kExitOk;
}

int cmd_validate(const Options& opt, std::ostream& out) {
    const auto results = validation::run_validation({opt.seed, opt.perturb});
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    Sink sink(opt.output, out);
    std::ostream& os = sink.stream();
    const bool as_csv = opt.format_given && opt.format == "csv";
    if (as_csv) {
        os << "# bohmtoa validate\n# seed = " << opt.seed << "\nname,passed,measured,tolerance,detail\n";
        for (const auto& r : results) {
            os << r.name << ',' << (r.passed ? 1 : 0) << ',' << num(r.measured) << ',' << num(r.tolerance) << ",\""
               << r.detail << "\"\n";
        }
    } else {
        json doc;
        doc["command"] = "validate";
        doc["seed"] = opt.seed;
        doc["perturbed"] = opt.perturb;
        doc["passed"] = all;
        doc["checks"] = json::array();
        for (const auto& r : results) {
            doc["checks"].push_back({{"name", r.name},
                                     {"passed", r.passed},
                                     {"measured", r.measured},
                                     {"tolerance", r.tolerance},
                                     {"detail", r.detail}});
        }
        os << doc.dump(1) << '\n';
    }
    return all ? kExitOk : kExitValidation;
}

void add_common_options(CLI::App& app, Options& opt) {
    app.add_option("--r", opt.r, "squeezing modulus r >= 0")->capture_default_str();
    app.add_option("--phi", opt.phi, "squeezing phase (radians unless --degrees)")->capture_default_str();
    app.add_flag("--degrees", opt.degrees, "read --phi and phi sweeps in degrees");
    app.add_option("--omega", opt.omega, "oscillator angular frequency")->capture_default_str();
    app.add_option("--mass", opt.mass, "particle mass")->capture_default_str();
    app.add_option("--hbar", opt.hbar, "reduced Planck constant")->capture_default_str();
    app.add_option("--L", opt.L, "detector position(s), comma separated")->capture_default_str();
    app.add_option("--dL", opt.dL, "detector bin width (default 0.01 l)");
    app.add_option("--T", opt.T, "detection window (default (phi + pi) / (2 omega))");
    app.add_option("--q0", opt.q0, "pinned initial positions, comma separated");
    app.add_option("--n", opt.n, "number of trajectories or Monte Carlo samples");
    app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
    app.add_option("--bins", opt.bins, "grid points per axis, or histogram bins for toa-mc");
    app.add_option("--t-max", opt.t_max, "time horizon (default 2 pi / omega)");
    app.add_option("--sweep", opt.sweep, "sweep spec, e.g. 'r=0.25:3:12;L/l=0.5,1,2,5'");
    app.add_option("--output", opt.output, "output path, '-' for stdout")->capture_default_str();
    app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bohmian arrival times in squeezed oscillator states", "bohmtoa"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    add_common_options(app, opt);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"density", "|Psi(x,t)|^2 on a (t, x) grid"},
        {"trajectories", "Bohmian trajectories from thermal or pinned initial positions"},
        {"phase-space", "trajectories with velocities and the forbidden-region lines"},
        {"toa-pdf", "arrival-time density at the detector"},
        {"toa-mc", "Monte Carlo arrival-time histogram with chi-square check"},
        {"mean-toa", "mean arrival time, 2 omega <t> - phi"},
        {"counts", "standard vs Bohmian click counts in a detector bin"},
        {"validate", "run the self-check suite"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);
    app.get_subcommand("counts")->add_flag("--jacobian", opt.jacobian, "weight the inner integral by the flow Jacobian");
    app.get_subcommand("validate")->add_flag("--perturb", opt.perturb)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadArguments;
    }
    opt.format_given = app.count("--format") > 0;

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "validate") return cmd_validate(opt, out);
        Table t;
        if (command == "density") t = cmd_density(opt);
        else if (command == "trajectories") t = cmd_trajectories(opt, false);
        else if (command == "phase-space") t = cmd_trajectories(opt, true);
        else if (command == "toa-pdf") t = cmd_toa_pdf(opt);
        else if (command == "toa-mc") t = cmd_toa_mc(opt);
        else if (command == "mean-toa") t = cmd_mean_toa(opt);
        else t = cmd_counts(opt);
        return emit(t, opt, command, out);
    } catch (const std::invalid_argument& e) {
        err << "bohmtoa " << command << ": " << e.what() << '\n';
        return kExitBadArguments;
    } catch (const std::domain_error& e) {
        err << "bohmtoa " << command << ": " << e.what() << '\n';
        return kExitBadArguments;
    } catch (const std::exception& e) {
        err << "bohmtoa " << command << ": " << e.what() << '\n';
        return kExitValidation;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv = {"bohmtoa"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bohmtoa::cli
