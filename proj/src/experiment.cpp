#include "leray/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "leray/field_io.hpp"
#include "leray/reference.hpp"

namespace leray {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string compact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// null <-> non-finite, so a report with a NaN still parses.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double getnum(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

double sup_difference(const FlowState& coarse_domain, const FlowState& larger, double r_max) {
    const VectorField a = coarse_domain.velocity();
    const double lam = larger.lambda;
    const VectorField b = interpolate_field(
        larger.velocity(), coarse_domain.grid, [lam](double, double) { return lam; },
        [](double, double) { return 0.0; });
    const auto& g = *coarse_domain.grid;
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n_r() && g.radius(i) <= r_max * (1.0 + 1e-12); ++i)
        for (std::size_t j = 0; j < g.n_theta(); ++j)
            worst = std::max(worst, std::hypot(a.w1(i, j) - b.w1(i, j), a.w2(i, j) - b.w2(i, j)));
    return worst;
}

SweepRow failure_row(double lambda, const GridPtr& g, const std::string& what) {
    SweepRow row;
    row.lambda = lambda;
    row.r_outer = g->r_outer();
    row.n_r = g->n_r();
    row.n_theta = g->n_theta();
    row.converged = false;
    row.failure = what;
    row.d_total = row.d_normalized = row.lambda0 = kNaN;
    return row;
}

// Minimal line chart, one polyline per outer radius, log-scaled x.
std::string svg_chart(const std::string& title, const std::string& ylabel,
                      const std::map<double, std::vector<std::pair<double, double>>>& series) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& [_, pts] : series)
        for (const auto& [x, y] : pts) {
            if (!(x > 0.0) || !std::isfinite(y)) continue;
            x0 = std::min(x0, std::log(x));
            x1 = std::max(x1, std::log(x));
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    std::ostringstream os;
    const double W = 640, H = 400, L = 70, B = 50, T = 40, Rm = 120;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
    if (!(x1 >= x0) || !(y1 >= y0)) {
        os << "</svg>\n";
        return os.str();
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    auto px = [&](double x) { return L + (std::log(x) - x0) / (x1 - x0) * (W - L - Rm); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - B - T); };
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - Rm << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (W - Rm + L) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">lambda (log scale)</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2 << ")\" text-anchor=\"middle\">" << ylabel
       << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(y0) << "\" text-anchor=\"end\" font-size=\"11\">" << compact(y0) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(y1) << "\" text-anchor=\"end\" font-size=\"11\">" << compact(y1) << "</text>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::size_t c = 0;
    for (const auto& [R, pts] : series) {
        const char* col = colors[c++ % 6];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts)
            if (x > 0.0 && std::isfinite(y)) os << px(x) << "," << py(y) << " ";
        os << "\"/>\n";
        for (const auto& [x, y] : pts)
            if (x > 0.0 && std::isfinite(y))
                os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        os << "<text x=\"" << W - Rm + 10 << "\" y=\"" << T + 18 * c << "\" fill=\"" << col << "\">R = " << compact(R) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::size_t GridPolicy::n_r(double r_outer) const {
    return static_cast<std::size_t>(std::lround(nodes_per_octave * std::log2(r_outer))) + 1;
}

GridPtr GridPolicy::build(double r_outer) const { return build_grid(n_r(r_outer), n_theta, r_outer); }

void ExperimentConfig::validate() const {
    if (radii.empty()) throw std::invalid_argument("ExperimentConfig: empty radii schedule");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        if (!(radii[k] > 1.0)) throw std::invalid_argument("ExperimentConfig: radii must exceed 1");
        if (k > 0 && !(radii[k] > radii[k - 1])) throw std::invalid_argument("ExperimentConfig: radii must increase strictly");
    }
    const double probe = diagnostics.contours.empty()
                             ? 1.0
                             : *std::max_element(diagnostics.contours.begin(), diagnostics.contours.end());
    if (!(radii.front() > probe))
        throw std::invalid_argument("ExperimentConfig: every R must exceed the largest force contour " + compact(probe));
    for (double l : lambdas)
        if (!(l >= 0.0 && l <= 0.5)) throw std::invalid_argument("ExperimentConfig: lambda " + compact(l) + " outside [0, 1/2]");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("ExperimentConfig: newton_tol must be positive");
    if (!(compare_radius > 1.0)) throw std::invalid_argument("ExperimentConfig: compare_radius must exceed 1");
    if (!(grid.nodes_per_octave >= 4.0)) throw std::invalid_argument("ExperimentConfig: fewer than 4 nodes per octave");
}

bool SweepRow::all_pass() const {
    return converged && std::all_of(slacks.begin(), slacks.end(), [](const auto& kv) { return kv.second.pass(); });
}

SweepRow analyse_state(const FlowState& state, const ExperimentConfig& cfg) {
    const auto& g = *state.grid;
    const double lam = state.lambda;
    SweepRow row;
    row.lambda = lam;
    row.r_outer = g.r_outer();
    row.n_r = g.n_r();
    row.n_theta = g.n_theta();
    row.newton_iters = state.newton_iters;
    row.residual_norm = state.residual_norm;

    const PressureField p = recover_pressure(state);
    const DiagnosticsReport rep = diagnose(state, p, cfg.diagnostics);
    row.d_total = rep.d_total;
    row.d_normalized = lam > 0.0 ? rep.d_total * std::abs(std::log(lam)) / (lam * lam) : 0.0;
    for (const auto& [r, f] : rep.force_by_contour) row.force_by_contour[r] = f.corrected;
    row.force = rep.force_by_contour.begin()->second.corrected;
    row.lambda0 = rep.lambda0;
    row.phi0 = rep.phi0;
    row.probe_radius = rep.probe_radius;
    row.pressure_defect = rep.pressure_defect;
    row.slacks = rep.slacks;
    row.info = rep.info;
    const auto gap = rep.info.find("bernoulli_gap");
    row.bernoulli_gap = gap == rep.info.end() ? kNaN : gap->second;
    if (rep.lambda0 > 0.0 && rep.lambda0 < 1.0)
        row.force_asymptotic = row.force.x / leading_order_force(rep.lambda0, {1.0, 0.0}).leading;

    if (lam > 0.0) {
        row.blowdown = blowdown(state, p, cfg.diagnostics.delta0);
    } else {
        row.blowdown.r_outer = g.r_outer();
        row.blowdown.zero_energy = true;
        row.blowdown.delta0 = cfg.diagnostics.delta0;
    }

    const VectorField w = state.velocity();
    row.tail.quarter = dirichlet_integral(w, 0.25 * g.r_outer(), g.r_outer());
    row.tail.half = dirichlet_integral(w, 0.5 * g.r_outer(), g.r_outer());
    return row;
}

SweepReport run_invading_sequence(const ExperimentConfig& cfg, double lambda) {
    cfg.validate();
    SweepReport out;
    out.config = cfg;
    out.config.lambdas = {lambda};
    std::optional<FlowState> prev;
    for (double R : cfg.radii) {
        const GridPtr grid = cfg.grid.build(R);
        SolveConfig sc;
        sc.lambda = lambda;
        sc.newton_tol = cfg.newton_tol;
        sc.max_newton = cfg.max_newton;
        sc.picard_warmup = cfg.picard_warmup;
        FlowState state;
        try {
            state = prev ? solve_stationary(grid, sc, transfer_state(*prev, grid, lambda)) : solve_stationary(grid, sc);
        } catch (const SolverError& e) {
            out.rows.push_back(failure_row(lambda, grid, e.what()));
            break;
        }
        SweepRow row = analyse_state(state, cfg);
        row.warm_start = prev.has_value();
        if (prev) row.leray_difference = sup_difference(*prev, state, std::min(cfg.compare_radius, prev->grid->r_outer()));
        out.rows.push_back(std::move(row));
        out.states.emplace(std::make_pair(lambda, R), state);
        prev = std::move(state);
    }
    return out;
}

SweepReport run_lambda_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<double> lambdas = cfg.lambdas;
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

    std::vector<SweepReport> parts(lambdas.size());
    std::vector<std::exception_ptr> errors(lambdas.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < lambdas.size();) {
            try {
                parts[k] = run_invading_sequence(cfg, lambdas[k]);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, lambdas.size())));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    SweepReport out;
    out.config = cfg;
    for (auto& part : parts) {
        for (auto& row : part.rows) out.rows.push_back(std::move(row));
        out.states.merge(part.states);
    }
    return out;
}

json to_json(const ExperimentConfig& cfg) {
    return {{"lambdas", cfg.lambdas},
            {"radii", cfg.radii},
            {"grid", {{"nodes_per_octave", cfg.grid.nodes_per_octave}, {"n_theta", cfg.grid.n_theta}}},
            {"newton_tol", cfg.newton_tol},
            {"max_newton", cfg.max_newton},
            {"picard_warmup", cfg.picard_warmup},
            {"diagnostics",
             {{"contours", cfg.diagnostics.contours},
              {"pair_radii", cfg.diagnostics.pair_radii},
              {"sigma_fraction", cfg.diagnostics.sigma_fraction},
              {"delta0", cfg.diagnostics.delta0},
              {"profile_samples", cfg.diagnostics.profile_samples}}},
            {"compare_radius", cfg.compare_radius},
            {"probe", "sqrt(R): fixed stand-in for the existence-only far-field radius"}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.lambdas = j.at("lambdas").get<std::vector<double>>();
    cfg.radii = j.at("radii").get<std::vector<double>>();
    cfg.grid.nodes_per_octave = j.at("grid").at("nodes_per_octave").get<double>();
    cfg.grid.n_theta = j.at("grid").at("n_theta").get<std::size_t>();
    cfg.newton_tol = j.at("newton_tol").get<double>();
    cfg.max_newton = j.at("max_newton").get<int>();
    cfg.picard_warmup = j.at("picard_warmup").get<int>();
    const json& d = j.at("diagnostics");
    cfg.diagnostics.contours = d.at("contours").get<std::vector<double>>();
    cfg.diagnostics.pair_radii = d.at("pair_radii").get<std::vector<double>>();
    cfg.diagnostics.sigma_fraction = d.at("sigma_fraction").get<double>();
    cfg.diagnostics.delta0 = d.at("delta0").get<double>();
    cfg.diagnostics.profile_samples = d.at("profile_samples").get<std::size_t>();
    cfg.compare_radius = j.at("compare_radius").get<double>();
    return cfg;
}

json to_json(const SweepRow& row) {
    json contours = json::array();
    for (const auto& [r, f] : row.force_by_contour) contours.push_back({{"r", r}, {"x", jnum(f.x)}, {"y", jnum(f.y)}});
    json slacks = json::object();
    for (const auto& [name, s] : row.slacks)
        slacks[name] = {{"value", jnum(s.value)}, {"tolerance", s.tolerance}, {"kind", s.kind}, {"pass", s.pass()}};
    json info = json::object();
    for (const auto& [name, v] : row.info) info[name] = jnum(v);
    const BlowDownReport& b = row.blowdown;
    return {{"lambda", row.lambda},
            {"r", row.r_outer},
            {"grid", {{"n_r", row.n_r}, {"n_theta", row.n_theta}}},
            {"converged", row.converged},
            {"failure", row.failure},
            {"newton_iters", row.newton_iters},
            {"residual_norm", jnum(row.residual_norm)},
            {"warm_start", row.warm_start},
            {"d_total", jnum(row.d_total)},
            {"d_normalized", jnum(row.d_normalized)},
            {"force", {{"x", jnum(row.force.x)}, {"y", jnum(row.force.y)}, {"contours", contours}}},
            {"lambda0", jnum(row.lambda0)},
            {"phi0", jnum(row.phi0)},
            {"probe_radius", jnum(row.probe_radius)},
            {"force_asymptotic", jnum(row.force_asymptotic)},
            {"bernoulli_gap", jnum(row.bernoulli_gap)},
            {"pressure_defect", jnum(row.pressure_defect)},
            {"slacks", slacks},
            {"info", info},
            {"blowdown",
             {{"lambda", b.lambda},
              {"r_outer", b.r_outer},
              {"epsilon_sq", jnum(b.epsilon_sq)},
              {"pressure_osc", jnum(b.pressure_osc)},
              {"osc_ratio", jnum(b.osc_ratio)},
              {"zero_energy", b.zero_energy},
              {"good_radius", jnum(b.good_radius)},
              {"good_circle_defect", jnum(b.good_circle_defect)},
              {"defect_ratio", jnum(b.defect_ratio)},
              {"near_min_fraction", jnum(b.near_min_fraction)},
              {"hardy_ratio", jnum(b.hardy_ratio)},
              {"delta0", b.delta0}}},
            {"tail", {{"quarter", jnum(row.tail.quarter)}, {"half", jnum(row.tail.half)}}},
            {"leray_difference", jnum(row.leray_difference)}};
}

SweepRow row_from_json(const json& j) {
    SweepRow row;
    row.lambda = j.at("lambda").get<double>();
    row.r_outer = j.at("r").get<double>();
    row.n_r = j.at("grid").at("n_r").get<std::size_t>();
    row.n_theta = j.at("grid").at("n_theta").get<std::size_t>();
    row.converged = j.at("converged").get<bool>();
    row.failure = j.at("failure").get<std::string>();
    row.newton_iters = j.at("newton_iters").get<int>();
    row.residual_norm = getnum(j.at("residual_norm"));
    row.warm_start = j.at("warm_start").get<bool>();
    row.d_total = getnum(j.at("d_total"));
    row.d_normalized = getnum(j.at("d_normalized"));
    row.force = {getnum(j.at("force").at("x")), getnum(j.at("force").at("y"))};
    for (const auto& c : j.at("force").at("contours"))
        row.force_by_contour[c.at("r").get<double>()] = {getnum(c.at("x")), getnum(c.at("y"))};
    row.lambda0 = getnum(j.at("lambda0"));
    row.phi0 = getnum(j.at("phi0"));
    row.probe_radius = getnum(j.at("probe_radius"));
    row.force_asymptotic = getnum(j.at("force_asymptotic"));
    row.bernoulli_gap = getnum(j.at("bernoulli_gap"));
    row.pressure_defect = getnum(j.at("pressure_defect"));
    for (const auto& [name, s] : j.at("slacks").items())
        row.slacks[name] = {getnum(s.at("value")), s.at("tolerance").get<double>(), s.at("kind").get<std::string>()};
    for (const auto& [name, v] : j.at("info").items()) row.info[name] = getnum(v);
    const json& b = j.at("blowdown");
    row.blowdown.lambda = b.at("lambda").get<double>();
    row.blowdown.r_outer = b.at("r_outer").get<double>();
    row.blowdown.epsilon_sq = getnum(b.at("epsilon_sq"));
    row.blowdown.pressure_osc = getnum(b.at("pressure_osc"));
    row.blowdown.osc_ratio = getnum(b.at("osc_ratio"));
    row.blowdown.zero_energy = b.at("zero_energy").get<bool>();
    row.blowdown.good_radius = getnum(b.at("good_radius"));
    row.blowdown.good_circle_defect = getnum(b.at("good_circle_defect"));
    row.blowdown.defect_ratio = getnum(b.at("defect_ratio"));
    row.blowdown.near_min_fraction = getnum(b.at("near_min_fraction"));
    row.blowdown.hardy_ratio = getnum(b.at("hardy_ratio"));
    row.blowdown.delta0 = b.at("delta0").get<double>();
    row.tail = {getnum(j.at("tail").at("quarter")), getnum(j.at("tail").at("half"))};
    row.leray_difference = getnum(j.at("leray_difference"));
    return row;
}

json report_json(const SweepReport& rep, bool with_metadata) {
    json rows = json::array();
    for (const auto& r : rep.rows) rows.push_back(to_json(r));
    json j = {{"config", to_json(rep.config)}, {"rows", rows}};
    if (with_metadata) {
        const auto now = std::chrono::system_clock::now();
        const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
        j["metadata"] = {{"generator", "leray"}, {"unix_time", secs}};
    }
    return j;
}

SweepReport read_report(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open report " + path.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed report " + path.string() + ": " + e.what());
    }
    SweepReport rep;
    rep.config = config_from_json(j.at("config"));
    for (const auto& r : j.at("rows")) rep.rows.push_back(row_from_json(r));
    return rep;
}

std::string report_csv(const SweepReport& rep) {
    std::ostringstream os;
    os << "lambda,r,n_r,n_theta,converged,newton_iters,residual_norm,d_total,d_normalized,force_x,force_y,"
          "lambda0,force_asymptotic,energy_identity,bernoulli_gap,epsilon_sq,osc_ratio,good_radius,defect_ratio,"
          "hardy_ratio,tail_quarter,tail_half,leray_difference,all_pass\n";
    for (const auto& r : rep.rows) {
        const auto eid = r.slacks.find("energy_identity");
        os << num(r.lambda) << ',' << num(r.r_outer) << ',' << r.n_r << ',' << r.n_theta << ',' << (r.converged ? 1 : 0) << ','
           << r.newton_iters << ',' << num(r.residual_norm) << ',' << num(r.d_total) << ',' << num(r.d_normalized) << ','
           << num(r.force.x) << ',' << num(r.force.y) << ',' << num(r.lambda0) << ',' << num(r.force_asymptotic) << ','
           << num(eid == r.slacks.end() ? kNaN : eid->second.value) << ',' << num(r.bernoulli_gap) << ','
           << num(r.blowdown.epsilon_sq) << ',' << num(r.blowdown.osc_ratio) << ',' << num(r.blowdown.good_radius) << ','
           << num(r.blowdown.defect_ratio) << ',' << num(r.blowdown.hardy_ratio) << ',' << num(r.tail.quarter) << ','
           << num(r.tail.half) << ',' << num(r.leray_difference) << ',' << (r.all_pass() ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string diagnostics_csv(const SweepReport& rep) {
    std::ostringstream os;
    os << "lambda,r,name,value,tolerance,kind,pass\n";
    for (const auto& r : rep.rows)
        for (const auto& [name, s] : r.slacks)
            os << num(r.lambda) << ',' << num(r.r_outer) << ',' << name << ',' << num(s.value) << ',' << num(s.tolerance) << ','
               << s.kind << ',' << (s.pass() ? 1 : 0) << '\n';
    return os.str();
}

std::string state_dir_name(double lambda, double r_outer) { return "state_l" + compact(lambda) + "_r" + compact(r_outer); }

void write_state(const FlowState& state, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_field(dir / "psi.field", state.psi);
    write_field(dir / "omega.field", state.omega);
    const auto& g = *state.grid;
    const json j = {{"lambda", state.lambda},
                    {"residual_norm", jnum(state.residual_norm)},
                    {"newton_iters", state.newton_iters},
                    {"grid", {{"n_r", g.n_r()}, {"n_theta", g.n_theta()}, {"r_inner", g.r_inner()}, {"r_outer", g.r_outer()}}}};
    write_text(dir / "state.json", j.dump(2) + "\n");
}

FlowState read_state(const std::filesystem::path& dir) {
    std::ifstream is(dir / "state.json");
    if (!is) throw std::runtime_error("cannot open " + (dir / "state.json").string());
    const json j = json::parse(is);
    ScalarField psi = read_scalar_field(dir / "psi.field");
    ScalarField omega = read_scalar_field(dir / "omega.field", psi.grid_ptr());
    const double lam = j.at("lambda").get<double>();
    FlowState s = FlowState::from_fields(std::move(psi), std::move(omega), lam);
    s.residual_norm = getnum(j.at("residual_norm"));
    s.newton_iters = j.at("newton_iters").get<int>();
    return s;
}

void emit_reports(const SweepReport& rep, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    write_text(dir / "report.json", report_json(rep).dump(2) + "\n");
    write_text(dir / "report.csv", report_csv(rep));
    write_text(dir / "diagnostics.csv", diagnostics_csv(rep));
    if (rep.config.write_svg && !rep.rows.empty()) {
        std::map<double, std::vector<std::pair<double, double>>> energy, osc;
        for (const auto& r : rep.rows) {
            if (!r.converged) continue;
            energy[r.r_outer].emplace_back(r.lambda, r.d_normalized);
            osc[r.r_outer].emplace_back(r.lambda, r.blowdown.osc_ratio);
        }
        write_text(dir / "energy_vs_lambda.svg", svg_chart("normalized energy D |ln lambda| / lambda^2", "D |ln l| / l^2", energy));
        write_text(dir / "osc_ratio_vs_lambda.svg", svg_chart("pressure oscillation ratio", "osc / eps^2", osc));
    }
    if (rep.config.write_fields)
        for (const auto& [key, state] : rep.states) write_state(state, dir / state_dir_name(key.first, key.second));
}

std::vector<std::string> check_report(const json& report) {
    std::vector<std::string> failed;
    for (const auto& r : report.at("rows")) {
        const std::string tag = "lambda=" + compact(r.at("lambda").get<double>()) + " R=" + compact(r.at("r").get<double>());
        if (!r.at("converged").get<bool>()) failed.push_back(tag + " solve: " + r.at("failure").get<std::string>());
        for (const auto& [name, s] : r.at("slacks").items()) {
            const Slack sl{getnum(s.at("value")), s.at("tolerance").get<double>(), s.at("kind").get<std::string>()};
            if (!sl.pass()) failed.push_back(tag + " " + name + " = " + num(sl.value));
        }
    }
    return failed;
}

}  // namespace leray
