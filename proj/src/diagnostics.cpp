#include "leray/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace leray {
namespace {

constexpr double kPi = std::numbers::pi;

std::string label(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", r);
    return buf;
}

void require_inside(const PolarGrid& g, double a, double b, const char* what) {
    if (!(a > g.r_inner() && a <= b && b < g.r_outer()))
        throw std::invalid_argument(std::string(what) + ": need r_inner < rho1 <= rho2 < r_outer");
}

// Value of per-ring totals at radius r, linear in ln r.
double ring_interpolate(const PolarGrid& g, const std::vector<double>& rings, double r) {
    const double pos = g.radial_position(r);
    auto i0 = static_cast<std::size_t>(std::floor(pos));
    if (i0 + 1 >= g.n_r()) i0 = g.n_r() - 2;
    const double t = pos - static_cast<double>(i0);
    return (1.0 - t) * rings[i0] + t * rings[i0 + 1];
}

}  // namespace

bool Slack::pass() const {
    if (!std::isfinite(value)) return false;
    if (kind == "abs") return std::abs(value) <= tolerance;
    if (kind == "upper") return value <= tolerance;
    return value >= -tolerance;
}

ContourForce force_on_obstacle(const FlowState& state, const PressureField& p, double r_contour) {
    const auto& g = *state.grid;
    if (!(r_contour >= g.r_inner() && r_contour < g.r_outer()))
        throw std::out_of_range("force_on_obstacle: contour radius " + label(r_contour) + " outside the domain");
    const VelocityGradient G = velocity_gradient(state);
    const VectorField w = state.velocity();

    std::vector<double> sx(g.n_r()), sy(g.n_r()), fx(g.n_r()), fy(g.n_r());
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        double ax = 0, ay = 0, bx = 0, by = 0;
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            const std::size_t k = g.index(i, j);
            const double c = g.cos_theta(j), s = g.sin_theta(j);
            const double t1 = 2.0 * G.d1w1[k] * c + (G.d2w1[k] + G.d1w2[k]) * s;
            const double t2 = (G.d1w2[k] + G.d2w1[k]) * c + 2.0 * G.d2w2[k] * s;
            ax += t1 - p.p[k] * c;
            ay += t2 - p.p[k] * s;
            const double wn = w.w1()[k] * c + w.w2()[k] * s;
            bx += wn * w.w1()[k];
            by += wn * w.w2()[k];
        }
        const double scale = g.radius(i) * g.dtheta();
        sx[i] = ax * scale;
        sy[i] = ay * scale;
        fx[i] = bx * scale;
        fy[i] = by * scale;
    }
    ContourForce out;
    out.raw = {ring_interpolate(g, sx, r_contour), ring_interpolate(g, sy, r_contour)};
    const Vec2 flux{ring_interpolate(g, fx, r_contour), ring_interpolate(g, fy, r_contour)};
    out.corrected = out.raw - flux;
    return out;
}

double energy_identity_slack(const FlowState& state, const PressureField& p) {
    const double d = dirichlet_integral(state.velocity());
    if (d == 0.0) return 0.0;
    const Vec2 f = force_on_obstacle(state, p, state.grid->r_inner()).corrected;
    return (d - f.x * state.lambda) / d;
}

double gw_pressure_slack(const FlowState& state, const PressureField& p, double rho1, double rho2) {
    require_inside(*state.grid, rho1, rho2, "gw_pressure_slack");
    if (rho1 == rho2) return 0.0;
    const double lhs = std::abs(circle_average(p.p, rho2) - circle_average(p.p, rho1));
    const double rhs = dirichlet_integral(state.velocity(), rho1, rho2) / (4.0 * kPi);
    return rhs - lhs;
}

VelocitySlack gw_velocity_slack(const FlowState& state, double rho1, double rho2) {
    const auto& g = *state.grid;
    require_inside(g, rho1, rho2, "gw_velocity_slack");
    if (rho1 == rho2) return {};
    const VectorField w = state.velocity();
    const double lhs = (circle_average(w, rho2) - circle_average(w, rho1)).norm();
    const double d = dirichlet_integral(w, rho1, rho2);
    const double base = std::sqrt(d / (2.0 * kPi));
    return {base * std::sqrt(std::log(rho2 / rho1)) - lhs, base * std::sqrt(std::log(g.r_outer() / g.r_inner())) - lhs};
}

AngleSlack angle_variation_slack(const FlowState& state, double rho1, double rho2, double sigma) {
    const auto& g = *state.grid;
    require_inside(g, rho1, rho2, "angle_variation_slack");
    if (!(sigma > 0.0)) throw std::invalid_argument("angle_variation_slack: sigma must be positive");
    const VectorField w = state.velocity();

    std::vector<double> radii{rho1};
    for (double r : g.radii())
        if (r > rho1 && r < rho2) radii.push_back(r);
    if (rho2 > rho1) radii.push_back(rho2);

    AngleSlack out;
    out.min_speed = std::numeric_limits<double>::infinity();
    std::vector<double> phi;
    for (double r : radii) {
        const Vec2 m = circle_average(w, r);
        out.min_speed = std::min(out.min_speed, m.norm());
        double a = std::atan2(m.y, m.x);
        if (!phi.empty()) {
            while (a - phi.back() > kPi) a -= 2.0 * kPi;
            while (a - phi.back() < -kPi) a += 2.0 * kPi;
        }
        phi.push_back(a);
    }
    out.precondition_ok = out.min_speed >= sigma;
    if (!out.precondition_ok) return out;
    if (rho1 == rho2) return out;

    const double lhs = std::abs(phi.back() - phi.front());
    const Gradient gw = gradient(state.omega);
    const VelocityGradient G = gradient(w);
    ScalarField density(state.grid);
    for (std::size_t i = 0; i < g.n_r(); ++i)
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            const std::size_t k = g.index(i, j);
            density[k] = std::hypot(gw.dx[k], gw.dy[k]) / g.radius(i) + G.frobenius_sq(k);
        }
    const double rhs = annulus_integral(density, rho1, rho2) / (4.0 * kPi * sigma * sigma);
    out.value = rhs - lhs;
    return out;
}

ScalarField bernoulli_pressure(const FlowState& state, const PressureField& p) {
    const VectorField w = state.velocity();
    ScalarField phi(state.grid);
    for (std::size_t k = 0; k < phi.size(); ++k)
        phi[k] = p.p[k] + 0.5 * (w.w1()[k] * w.w1()[k] + w.w2()[k] * w.w2()[k]);
    return phi;
}

double probe_radius(const PolarGrid& g) { return std::sqrt(g.r_outer()); }

BernoulliResult bernoulli_analysis(const FlowState& state, const PressureField& p, double r1, double r2) {
    const auto& g = *state.grid;
    if (!(r1 > g.r_inner() && r1 < r2 && r2 < g.r_outer()))
        throw std::invalid_argument("bernoulli_analysis: need r_inner < r1 < r2 < r_outer");
    const ScalarField phi = bernoulli_pressure(state, p);

    BernoulliResult out;
    out.interior_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        if (!(g.radius(i) > r1 && g.radius(i) < r2)) continue;
        for (std::size_t j = 0; j < g.n_theta(); ++j) out.interior_max = std::max(out.interior_max, phi(i, j));
    }
    const auto inner = circle_values(phi, r1);
    const auto outer = circle_values(phi, r2);
    const double inner_max = *std::max_element(inner.begin(), inner.end());
    const double outer_max = *std::max_element(outer.begin(), outer.end());
    const double outer_min = *std::min_element(outer.begin(), outer.end());
    out.boundary_max = std::max(inner_max, outer_max);
    if (!std::isfinite(out.interior_max)) out.interior_max = out.boundary_max;

    out.lambda0 = circle_average(state.velocity(), probe_radius(g)).norm();
    out.gap = outer_min - inner_max - state.lambda / 3.0 * (state.lambda - out.lambda0);
    return out;
}

bool DiagnosticsReport::all_pass() const {
    return std::all_of(slacks.begin(), slacks.end(), [](const auto& kv) { return kv.second.pass(); });
}

DiagnosticsReport diagnose(const FlowState& state, const PressureField& p, const DiagnosticsOptions& opt) {
    const auto& g = *state.grid;
    const double lam = state.lambda;
    const VectorField w = state.velocity();

    DiagnosticsReport rep;
    rep.lambda = lam;
    rep.r_outer = g.r_outer();
    rep.d_total = dirichlet_integral(w, g.r_inner(), g.r_outer());
    rep.pressure_defect = p.compatibility_defect;
    rep.probe_radius = probe_radius(g);
    rep.far_field_velocity = circle_average(w, rep.probe_radius);
    rep.lambda0 = rep.far_field_velocity.norm();
    rep.phi0 = rep.lambda0 > 0.0 ? std::atan2(rep.far_field_velocity.y, rep.far_field_velocity.x) : 0.0;

    std::vector<double> pr;
    for (double r : opt.pair_radii)
        if (r > g.r_inner() && r < g.r_outer()) pr.push_back(r);
    std::vector<double> cr;
    for (double r : opt.contours)
        if (r >= g.r_inner() && r < g.r_outer()) cr.push_back(r);

    // Dirichlet energy on consecutive probe annuli.
    {
        std::vector<double> edges{g.r_inner()};
        edges.insert(edges.end(), pr.begin(), pr.end());
        edges.push_back(g.r_outer());
        for (std::size_t a = 0; a + 1 < edges.size(); ++a)
            rep.d_annulus.push_back({edges[a], {edges[a + 1], dirichlet_integral(w, edges[a], edges[a + 1])}});
    }

    rep.force_by_contour[g.r_inner()] = force_on_obstacle(state, p, g.r_inner());
    for (double r : cr) rep.force_by_contour[r] = force_on_obstacle(state, p, r);

    // Circle profiles.
    const ScalarField phi = bernoulli_pressure(state, p);
    const double sigma = opt.sigma_fraction * lam;
    const std::size_t stride = std::max<std::size_t>(1, (g.n_r() - 1) / std::max<std::size_t>(1, opt.profile_samples));
    for (std::size_t i = 0; i < g.n_r(); i += stride) {
        const double r = g.radius(i);
        rep.mean_pressure_profile.push_back({r, {circle_average(p.p, r)}});
        const Vec2 m = circle_average(w, r);
        rep.mean_velocity_profile.push_back({r, {m.x, m.y}});
        if (lam > 0.0 && m.norm() >= sigma) rep.direction_profile.push_back({r, {std::atan2(m.y, m.x)}});
        double hi = phi(i, 0), lo = phi(i, 0);
        for (std::size_t j = 1; j < g.n_theta(); ++j) {
            hi = std::max(hi, phi(i, j));
            lo = std::min(lo, phi(i, j));
        }
        rep.bernoulli_extrema.push_back({r, {hi, lo}});
    }

    const double l2 = lam * lam;
    rep.slacks["energy_identity"] = {energy_identity_slack(state, p), 0.02, "abs"};

    if (cr.size() >= 2) {
        const Vec2 f0 = rep.force_by_contour.at(cr.front()).corrected;
        double spread = 0.0;
        for (double a : cr)
            for (double b : cr)
                spread = std::max(spread, (rep.force_by_contour.at(a).corrected - rep.force_by_contour.at(b).corrected).norm());
        rep.slacks["force_contour_spread"] = {f0.norm() > 0.0 ? spread / f0.norm() : 0.0, 0.01, "upper"};
    }

    for (std::size_t a = 0; a < pr.size(); ++a)
        for (std::size_t b = a + 1; b < pr.size(); ++b) {
            const std::string tag = label(pr[a]) + "_" + label(pr[b]);
            rep.slacks["gw_pressure_" + tag] = {gw_pressure_slack(state, p, pr[a], pr[b]), 1e-8 * l2, "lower"};
            const VelocitySlack vs = gw_velocity_slack(state, pr[a], pr[b]);
            rep.slacks["gw_velocity_" + tag] = {vs.sharp, 1e-8 * lam, "lower"};
            rep.slacks["gw_velocity_printed_" + tag] = {vs.printed, 1e-8 * lam, "lower"};
            if (lam > 0.0) {
                const AngleSlack as = angle_variation_slack(state, pr[a], pr[b], sigma);
                if (as.precondition_ok)
                    rep.slacks["angle_" + tag] = {as.value, 1e-6, "lower"};
                else
                    rep.info["angle_precondition_failed_" + tag] = as.min_speed;
            }
        }

    // One-sided maximum principle on probe annuli and on [sqrt(R), (1 - delta0) R].
    std::vector<std::pair<double, double>> annuli;
    for (std::size_t a = 0; a + 1 < pr.size(); ++a) annuli.emplace_back(pr[a], pr[a + 1]);
    const double r_far = (1.0 - opt.delta0) * g.r_outer();
    if (rep.probe_radius < r_far) annuli.emplace_back(rep.probe_radius, r_far);
    for (const auto& [r1, r2] : annuli) {
        const BernoulliResult br = bernoulli_analysis(state, p, r1, r2);
        rep.slacks["bernoulli_max_" + label(r1) + "_" + label(r2)] = {br.boundary_max - br.interior_max, 1e-6 * l2, "lower"};
    }
    if (rep.probe_radius < r_far) {
        const BernoulliResult br = bernoulli_analysis(state, p, rep.probe_radius, r_far);
        rep.info["bernoulli_gap"] = br.gap;
        if (lam - rep.lambda0 > 0.05 * lam) rep.slacks["bernoulli_gap"] = {br.gap, 0.0, "lower"};
    }
    return rep;
}

}  // namespace leray
