#include "heis/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "heis/analysis.hpp"
#include "heis/connections.hpp"
#include "heis/curves.hpp"
#include "heis/distance.hpp"
#include "heis/geodesics.hpp"
#include "heis/rational.hpp"
#include "heis/series.hpp"

namespace heis::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kFlags{"mode", "jet",  "omega", "theta0", "eps",    "t-end", "step",
                                      "window", "seed", "out", "format", "point", "from",  "order"};

const std::map<std::string, std::vector<std::string>> kCommandFlags{
    {"distance", {"point", "from"}},
    {"geodesic", {"omega", "theta0", "t-end", "step"}},
    {"integrate", {"jet", "t-end", "step"}},
    {"verify-theorem", {"mode", "jet", "window", "step", "seed", "order"}},
    {"verify-riemannian", {"jet", "eps", "window"}},
    {"spiral", {"jet", "t-end", "step"}},
    {"isometry", {"jet", "t-end", "step", "seed"}},
    {"series-dump", {"mode", "jet", "order"}},
};

// Assertion thresholds, one per checked invariant.
constexpr double kGeodesicDistanceTol = 1e-9;
constexpr double kUnitSpeedTol = 1e-8;
constexpr double kHorizontalityTol = 1e-8;
constexpr double kSixthOrderFitRelTol = 0.02;
constexpr double kRiemannianFitRelTol = 0.05;
constexpr double kEnergyDriftTol = 1e-10;
constexpr double kSpiralTol = 1e-6;
constexpr double kCircleTol = 1e-8;
constexpr double kIsometryTol = 1e-8;
constexpr int kSixthOrderSamples = 40;
constexpr int kRandomJets = 5;

struct Report {
    std::string command;
    json parameters = json::object();
    json results = json::object();
    json assertions = json::array();
    bool all_pass = true;

    void check(const std::string& name, bool pass, const std::string& detail)
    {
        assertions.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
    }
    json to_json() const
    {
        return {{"command", command}, {"parameters", parameters}, {"results", results}, {"assertions", assertions}};
    }
};

class Params {
public:
    explicit Params(const ExperimentConfig& c) : c_(c) {}

    bool has(const std::string& key) const { return c_.parameters.count(key) != 0; }

    const std::string& raw(const std::string& key) const
    {
        auto it = c_.parameters.find(key);
        if (it == c_.parameters.end()) {
            throw ConfigError("command '" + c_.command + "' requires --" + key);
        }
        return it->second;
    }

    template <typename F>
    auto parse(const std::string& key, F&& f) const -> decltype(f(std::string_view{}))
    {
        const std::string& text = raw(key);
        try {
            return f(text);
        } catch (const std::exception& e) {
            throw ConfigError("--" + key + " '" + text + "': " + e.what());
        }
    }

    Rational exact(const std::string& key) const { return parse(key, [](std::string_view s) { return parse_rational(s); }); }

    double real(const std::string& key) const { return to_double(exact(key)); }
    double real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

    std::vector<Rational> exact_list(const std::string& key) const
    {
        return parse(key, [](std::string_view s) { return parse_rational_list(s); });
    }

    std::vector<double> real_list(const std::string& key) const
    {
        std::vector<double> out;
        for (const Rational& q : exact_list(key)) {
            out.push_back(to_double(q));
        }
        return out;
    }

    long integer(const std::string& key, long fallback) const
    {
        if (!has(key)) {
            return fallback;
        }
        const Rational q = exact(key);
        if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
            throw ConfigError("--" + key + " must be an integer");
        }
        return q.get_num().get_si();
    }

private:
    const ExperimentConfig& c_;
};

json point_json(const Point& p)
{
    return json::array({p.x, p.y, p.z});
}

Point parse_point(const Params& p, const std::string& key)
{
    const std::vector<double> v = p.real_list(key);
    if (v.size() != 3) {
        throw ConfigError("--" + key + " needs three comma-separated coordinates");
    }
    return {v[0], v[1], v[2]};
}

double positive(const Params& p, const std::string& key, double fallback)
{
    const double v = p.real(key, fallback);
    if (!(v > 0) || !std::isfinite(v)) {
        throw ConfigError("--" + key + " must be positive");
    }
    return v;
}

std::string fmt_g(double v)
{
    return fmt::format("{:.17g}", v);
}

std::string csv_trajectory(const std::vector<TrajectorySample>& samples)
{
    std::string out = "t,x,y,z,theta\n";
    for (const TrajectorySample& s : samples) {
        out += fmt::format("{},{},{},{},{}\n", fmt_g(s.t), fmt_g(s.point.x), fmt_g(s.point.y), fmt_g(s.point.z),
                           fmt_g(s.theta));
    }
    return out;
}

std::vector<std::string> rational_strings(const std::vector<Rational>& v)
{
    std::vector<std::string> out;
    for (const Rational& q : v) {
        out.push_back(to_string(q));
    }
    return out;
}

std::pair<double, double> window_or(const Params& p, double lo, double hi)
{
    if (!p.has("window")) {
        return {lo, hi};
    }
    const std::vector<double> w = p.real_list("window");
    if (w.size() != 2 || !(w[0] > 0) || !(w[1] > w[0])) {
        throw ConfigError("--window needs two times 0 < t_min < t_max");
    }
    return {w[0], w[1]};
}

std::string mode_of(const Params& p)
{
    const std::string& m = p.raw("mode");
    if (m != "exact" && m != "numeric") {
        throw ConfigError("--mode must be 'exact' or 'numeric'");
    }
    return m;
}

json fit_json(const FitReport& fit)
{
    json coeffs = json::object();
    for (const auto& [power, est] : fit.coefficients) {
        coeffs[std::to_string(power)] = {{"estimate", est.estimate}, {"stderr", est.std_error}};
    }
    return {{"coefficients", coeffs},
            {"window", json::array({fit.window.first, fit.window.second})},
            {"model_powers", fit.model_powers},
            {"residual_norm", fit.residual_norm}};
}

// ---------------------------------------------------------------------------

struct Outcome {
    Report report;
    std::optional<std::string> csv;
};

void cmd_distance(const Params& p, Outcome& o)
{
    const Point to = parse_point(p, "point");
    const Point from = p.has("from") ? parse_point(p, "from") : Point{};
    const double d = distance(from, to);
    o.report.results["distance"] = d;
    o.report.check("distance.finite_nonnegative", std::isfinite(d) && d >= 0, fmt::format("d = {}", fmt_g(d)));
}

void cmd_geodesic(const Params& p, Outcome& o)
{
    GeodesicParams g;
    g.omega = p.real("omega", 0.0);
    g.theta0 = p.real("theta0", 0.0);
    const double t_end = positive(p, "t-end", 1.0);
    const double step = positive(p, "step", 1e-3);
    const auto n = static_cast<std::size_t>(std::ceil(t_end / step - 1e-9));
    std::vector<TrajectorySample> samples;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = t_end * static_cast<double>(i) / static_cast<double>(n);
        samples.push_back({t, geodesic_point(g, t), g.omega * t + g.theta0});
    }
    const double horizon = minimality_horizon(g);
    const Point end = samples.back().point;
    const double d = distance_from_origin(end);
    o.report.results["horizon"] = std::isfinite(horizon) ? json(horizon) : json("inf");
    o.report.results["end_point"] = point_json(end);
    o.report.results["end_distance"] = d;
    o.report.results["samples"] = samples.size();
    if (t_end < horizon) {
        o.report.check("geodesics.distance_equals_length", std::abs(d - t_end) <= kGeodesicDistanceTol,
                       fmt::format("|d - t| = {:.3e}, tol {:.0e}", std::abs(d - t_end), kGeodesicDistanceTol));
    }
    o.csv = csv_trajectory(samples);
}

ThetaProfile numeric_profile(const Params& p)
{
    return ThetaProfile::from_exact(p.exact_list("jet"));
}

void cmd_integrate(const Params& p, Outcome& o)
{
    const ThetaProfile profile = numeric_profile(p);
    const double t_end = positive(p, "t-end", 1.0);
    const double step = positive(p, "step", 1e-3);
    const Trajectory traj = integrate_curve(profile, t_end, step);
    o.report.results["end_point"] = point_json(traj.samples.back().point);
    o.report.results["error_estimate"] = traj.error_estimate;
    o.report.results["method"] = traj.method;
    o.report.results["samples"] = traj.samples.size();
    if (traj.samples.size() >= 6) {
        const double us = unit_speed_residual(traj);
        const double hz = horizontality_residual(traj);
        o.report.results["unit_speed_residual"] = us;
        o.report.results["horizontality_residual"] = hz;
        o.report.check("curves.unit_speed", us <= kUnitSpeedTol, fmt::format("max |speed^2 - 1| = {:.3e}", us));
        o.report.check("curves.horizontality", hz <= kHorizontalityTol,
                       fmt::format("max |z' - (x y' - y x')/2| = {:.3e}", hz));
    }
    o.csv = csv_trajectory(traj.samples);
}

std::vector<Rational> random_jet(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    std::vector<Rational> jet;
    for (int i = 0; i < 5; ++i) {
        jet.push_back(make_rational(num(rng), den(rng)));
    }
    if (jet[2] == 0) {
        jet[2] = 1;
    }
    return jet;
}

bool sixth_order_shape(const PowerSeries& d2, const Rational& expected)
{
    return d2[0] == 0 && d2[1] == 0 && d2[2] == 1 && d2[3] == 0 && d2[4] == 0 && d2[5] == 0 && d2[6] == expected;
}

Rational expected_t6(const std::vector<Rational>& jet)
{
    const Rational k0 = jet.size() > 2 ? Rational(2 * jet[2]) : Rational(0);
    return Rational(-k0 * k0 / 720);
}

void cmd_verify_theorem(const Params& p, Outcome& o)
{
    const std::string mode = mode_of(p);
    if (mode == "exact") {
        const std::vector<Rational> jet = p.exact_list("jet");
        const long order = p.integer("order", kDefaultSeriesOrder);
        if (order < 6) {
            throw ConfigError("--order must be at least 6");
        }
        const PowerSeries d2 = distance_sq_series(jet, static_cast<int>(order));
        const Rational expected = expected_t6(jet);
        o.report.results["coefficients"] = fraction_strings(d2);
        o.report.results["t6_coefficient"] = to_string(d2[6]);
        o.report.results["expected"] = to_string(expected);
        o.report.check("series.t2_coefficient_is_one", d2[0] == 0 && d2[1] == 0 && d2[2] == 1,
                       "d^2 = t^2 + ...: got " + to_string(d2[2]) + " t^2");
        o.report.check("series.t3_t5_coefficients_vanish", d2[3] == 0 && d2[4] == 0 && d2[5] == 0,
                       fmt::format("t^3, t^4, t^5 coefficients: {}, {}, {}", to_string(d2[3]), to_string(d2[4]),
                                   to_string(d2[5])));
        o.report.check("series.t6_equals_minus_k0_sq_over_720", d2[6] == expected,
                       "t^6 coefficient " + to_string(d2[6]) + ", expected " + to_string(expected));
        if (p.has("seed")) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 0)));
            json jets = json::array();
            bool ok = true;
            std::string first_bad;
            for (int i = 0; i < kRandomJets; ++i) {
                const std::vector<Rational> rj = random_jet(rng);
                const PowerSeries rd2 = distance_sq_series(rj, static_cast<int>(order));
                const Rational re = expected_t6(rj);
                const bool pass = sixth_order_shape(rd2, re);
                if (!pass && first_bad.empty()) {
                    first_bad = fmt::format("jet {}", fmt::join(rational_strings(rj), ","));
                }
                ok = ok && pass;
                jets.push_back({{"jet", rational_strings(rj)},
                                {"t6_coefficient", to_string(rd2[6])},
                                {"expected", to_string(re)},
                                {"pass", pass}});
            }
            o.report.results["random_jets"] = jets;
            o.report.check("series.random_jets_t6_equals_minus_k0_sq_over_720", ok,
                           ok ? fmt::format("{} random jets", kRandomJets) : "failed on " + first_bad);
        }
        return;
    }

    const std::vector<Rational> jet = p.exact_list("jet");
    const Rational expected_q = expected_t6(jet);
    if (expected_q == 0) {
        throw ConfigError("numeric mode needs k(0) = 2 * jet[2] != 0 for a relative check");
    }
    const auto [lo, hi] = window_or(p, kSixthOrderWindowMin, kSixthOrderWindowMax);
    const double step = positive(p, "step", 1e-3);
    const FitReport fit =
        fit_distance_expansion(ThetaProfile::from_exact(jet), lo, hi, kSixthOrderPowers, step, kSixthOrderSamples);
    const double c6 = fit.coefficient(6);
    const double expected = to_double(expected_q);
    const double rel = std::abs(c6 - expected) / std::abs(expected);
    o.report.results["fit"] = fit_json(fit);
    o.report.results["t6_coefficient"] = c6;
    o.report.results["expected"] = to_string(expected_q);
    o.report.results["relative_error"] = rel;
    o.report.check("analysis.sixth_order_fit_within_2pct", rel <= kSixthOrderFitRelTol,
                   fmt::format("c6 = {}, expected {}, relative error {:.3e}", fmt_g(c6), fmt_g(expected), rel));
}

void cmd_verify_riemannian(const Params& p, Outcome& o)
{
    const ThetaProfile profile = numeric_profile(p);
    const double eps_value = positive(p, "eps", 0.1);
    const EpsMetric eps(eps_value);
    std::vector<double> times = riemannian_fit_times(eps);
    if (p.has("window")) {
        const auto [lo, hi] = window_or(p, 0, 0);
        const std::size_t n = times.size();
        for (std::size_t i = 0; i < n; ++i) {
            times[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
        }
    }
    const double h0 = characteristic_deviation(profile, 0.0);
    if (h0 == 0) {
        throw ConfigError("verify-riemannian needs h(0) = jet[1] != 0 for a relative check");
    }
    const FitReport fit = eps_expansion_check(profile, eps, times);

    double drift = 0;
    for (double t : times) {
        const Trajectory traj = integrate_curve(profile, t, t / 200.0);
        const ShootingResult shot = shoot_eps_geodesic(eps, Point{}, traj.samples.back().point);
        drift = std::max(drift, integrate_eps_geodesic(eps, Point{}, shot.covector, 1.0, 1e-3).energy_drift);
    }
    const double c4 = fit.coefficient(4);
    const double expected = -h0 * h0 / 12.0;
    const double rel = std::abs(c4 - expected) / std::abs(expected);
    o.report.results["fit"] = fit_json(fit);
    o.report.results["t4_coefficient"] = c4;
    o.report.results["expected"] = expected;
    o.report.results["relative_error"] = rel;
    o.report.results["energy_drift"] = drift;
    o.report.check("connections.eps_fit_c4_within_5pct", rel <= kRiemannianFitRelTol,
                   fmt::format("c4 = {}, expected {}, relative error {:.3e}", fmt_g(c4), fmt_g(expected), rel));
    o.report.check("connections.shooting_energy_drift", drift <= kEnergyDriftTol,
                   fmt::format("max energy drift {:.3e}", drift));
}

void cmd_spiral(const Params& p, Outcome& o)
{
    const std::vector<double> jet = p.real_list("jet");
    if (jet.size() > 3) {
        throw ConfigError("spiral needs constant geodesic curvature: --jet theta0,h0,k/2");
    }
    const ThetaProfile profile(jet);
    const double t_end = positive(p, "t-end", 1.0);
    const double step = positive(p, "step", 1e-3);
    const double h0 = profile.derivative(1, 0.0);
    const double k = profile.derivative(2, 0.0);
    const PlanarCurve pc = project(integrate_curve(profile, t_end, step));
    if (pc.samples.size() < 6) {
        throw ConfigError("spiral needs at least six samples; lower --step");
    }
    if (k != 0) {
        const SpiralMatch m = match_euler_spiral(pc, k);
        o.report.results["shape"] = "euler-spiral";
        o.report.results["a"] = m.a;
        o.report.results["b"] = m.b;
        o.report.results["c"] = m.c;
        o.report.results["reflect"] = m.reflect;
        o.report.results["residual"] = m.residual;
        o.report.check("analysis.spiral_matches_fresnel", m.residual <= kSpiralTol,
                       fmt::format("max distance to transformed Fresnel curve {:.3e}", m.residual));
    } else if (h0 != 0) {
        const CircleMatch m = match_circle(pc, h0);
        o.report.results["shape"] = "circle";
        o.report.results["center"] = json::array({m.center_x, m.center_y});
        o.report.results["radius"] = m.radius;
        o.report.results["residual"] = m.residual;
        o.report.check("curves.projection_is_circle_of_radius_1_over_h", m.residual <= kCircleTol,
                       fmt::format("max radius error {:.3e}", m.residual));
    } else {
        throw ConfigError("h = k = 0 projects to a line; nothing to match");
    }
}

void cmd_isometry(const Params& p, Outcome& o)
{
    std::vector<double> coeffs = p.real_list("jet");
    const double t_end = positive(p, "t-end", 1.0);
    const double step = positive(p, "step", 1e-4);
    std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 1)));
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

    auto synthesize = [&](json& desc) {
        std::vector<double> c = coeffs;
        if (c.empty()) {
            c.push_back(0.0);
        }
        c[0] = angle(rng);
        const Point start{coord(rng), coord(rng), coord(rng)};
        desc = {{"start", point_json(start)}, {"heading", c[0]}};
        return integrate_curve(ThetaProfile(c), t_end, step, start);
    };
    json d1;
    json d2;
    const Trajectory z1 = synthesize(d1);
    const Trajectory z2 = synthesize(d2);
    const Reconstruction r = reconstruct_isometry(z1, z2);
    o.report.results["curve1"] = d1;
    o.report.results["curve2"] = d2;
    o.report.results["isometry"] = {{"translation", point_json(r.isometry.translation)}, {"angle", r.isometry.angle}};
    o.report.results["residual"] = r.residual;
    o.report.check("analysis.isometry_reconstruction", r.residual <= kIsometryTol,
                   fmt::format("max pointwise distance {:.3e}", r.residual));
}

void cmd_series_dump(const Params& p, Outcome& o)
{
    if (p.has("mode") && mode_of(p) != "exact") {
        throw ConfigError("series-dump is exact only");
    }
    const std::vector<Rational> jet = p.exact_list("jet");
    const long order = p.integer("order", kDefaultSeriesOrder);
    if (order < 6 || order > 40) {
        throw ConfigError("--order must lie in [6, 40]");
    }
    const int n = static_cast<int>(order);
    const CurveSeries cs = curve_series(jet, n);
    o.report.results["theta"] = fraction_strings(theta_series(jet, n));
    o.report.results["z"] = fraction_strings(cs.z);
    o.report.results["radial_sq"] = fraction_strings(cs.radial_sq);
    o.report.results["distance_sq"] = fraction_strings(distance_sq_series(jet, n));
    o.report.results["phi"] = fraction_strings(phi_series(n));
    o.report.results["inv_sinc2_phi"] = fraction_strings(inv_sinc2_phi_series(n));
    const PowerSeries psi = psi_series(n);
    const bool round_trip = compose(psi, phi_series(n)) == PowerSeries::variable(n);
    o.report.check("series.psi_phi_round_trip", round_trip, "psi(phi(u)) = u to order " + std::to_string(n));
}

const std::map<std::string, std::function<void(const Params&, Outcome&)>> kHandlers{
    {"distance", cmd_distance},       {"geodesic", cmd_geodesic},
    {"integrate", cmd_integrate},     {"verify-theorem", cmd_verify_theorem},
    {"verify-riemannian", cmd_verify_riemannian},
    {"spiral", cmd_spiral},           {"isometry", cmd_isometry},
    {"series-dump", cmd_series_dump},
};

bool has_csv(const std::string& command)
{
    return command == "geodesic" || command == "integrate";
}

struct HelpRequested {
    std::string text;
};

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, _] : kCommandFlags) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

ExperimentConfig parse_command_line(int argc, const char* const* argv)
{
    CLI::App app{"Sub-Riemannian Heisenberg group experiments", "heis"};
    std::string command;
    app.add_option("command", command, "experiment to run")->required()->check(CLI::IsMember(command_names()));
    std::map<std::string, std::string> values;
    for (const std::string& flag : kFlags) {
        app.add_option("--" + flag, values[flag]);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    ExperimentConfig cfg;
    cfg.command = command;
    cfg.format = has_csv(command) ? OutputFormat::csv : OutputFormat::json;
    const auto& allowed = kCommandFlags.at(command);
    for (const std::string& flag : kFlags) {
        if (app.count("--" + flag) == 0) {
            continue;
        }
        const std::string& v = values[flag];
        if (flag == "out") {
            cfg.output_path = v;
        } else if (flag == "format") {
            if (v == "json") {
                cfg.format = OutputFormat::json;
            } else if (v == "csv" && has_csv(command)) {
                cfg.format = OutputFormat::csv;
            } else {
                throw ConfigError("--format " + v + " is not available for " + command);
            }
        } else if (std::find(allowed.begin(), allowed.end(), flag) == allowed.end()) {
            throw ConfigError("--" + flag + " does not apply to " + command);
        } else {
            cfg.parameters[flag] = v;
        }
    }
    return cfg;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err)
{
    auto handler = kHandlers.find(config.command);
    if (handler == kHandlers.end()) {
        throw ConfigError("unknown command '" + config.command + "'");
    }
    Outcome o;
    o.report.command = config.command;
    for (const auto& [k, v] : config.parameters) {
        o.report.parameters[k] = v;
    }
    const Params params(config);
    try {
        handler->second(params, o);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    } catch (const ConvergenceError& e) {
        o.report.check("solver.converged", false, e.what());
    }

    std::string artifact;
    if (config.format == OutputFormat::csv && o.csv) {
        artifact = *o.csv;
    } else {
        artifact = o.report.to_json().dump(2) + "\n";
    }
    if (config.output_path) {
        std::ofstream f(*config.output_path, std::ios::binary);
        if (!f) {
            throw ConfigError("cannot open " + *config.output_path);
        }
        f << artifact;
    } else {
        out << artifact;
    }
    for (const auto& a : o.report.assertions) {
        if (!a["pass"].get<bool>()) {
            err << "assertion failed: " << a["name"].get<std::string>() << ": " << a["detail"].get<std::string>()
                << "\n";
        }
    }
    return o.report.all_pass ? 0 : 1;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    try {
        return run(parse_command_line(argc, argv), out, err);
    } catch (const HelpRequested& h) {
        out << h.text;
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace heis::cli
