#include "leray/blowdown.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leray {

RescaledFields rescale_to_unit_disc(const VectorField& w, const ScalarField& p, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("rescale_to_unit_disc: lambda must be positive");
    const auto& g = w.grid();
    const double R = g.r_outer();
    auto grid = std::make_shared<const PolarGrid>(g.scaled(1.0 / R));

    RescaledFields out;
    out.grid = grid;
    out.lambda = lambda;
    out.r_outer = R;
    out.v = VectorField(grid);
    out.p = ScalarField(grid);
    const double il = 1.0 / lambda, il2 = il * il;
    for (std::size_t k = 0; k < g.size(); ++k) {
        out.v.w1()[k] = w.w1()[k] * il;
        out.v.w2()[k] = w.w2()[k] * il;
        out.p[k] = p[k] * il2;
    }
    return out;
}

RescaledFields rescale_to_unit_disc(const FlowState& state, const PressureField& p) {
    return rescale_to_unit_disc(state.velocity(), p.p, state.lambda);
}

double pressure_oscillation(const ScalarField& q, double r_min, double r_max) {
    const auto& g = q.grid();
    double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double r = g.radius(i);
        if (r < r_min || r > r_max) continue;
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            hi = std::max(hi, q(i, j));
            lo = std::min(lo, q(i, j));
        }
    }
    return hi >= lo ? hi - lo : 0.0;
}

OscillationResult euler_oscillation_ratio(const VectorField& v, const ScalarField& q, double delta0) {
    if (!(delta0 > 0.0 && delta0 < 0.5)) throw std::invalid_argument("euler_oscillation_ratio: delta0 must lie in (0, 1/2)");
    const auto& g = v.grid();
    OscillationResult out;
    out.epsilon_sq = dirichlet_integral(v, g.r_inner(), g.r_outer());
    out.pressure_osc = pressure_oscillation(q, 0.5 * g.r_outer(), (1.0 - delta0) * g.r_outer());
    if (out.epsilon_sq == 0.0) {
        out.zero_energy = true;
        out.osc_ratio = 0.0;
    } else {
        out.osc_ratio = out.pressure_osc / out.epsilon_sq;
    }
    return out;
}

double circle_defect(const VectorField& v, const ScalarField& q, std::size_t i) {
    const auto& g = v.grid();
    // centred on the first sample so a constant q has exactly zero spread
    double mean = 0.0;
    for (std::size_t j = 0; j < g.n_theta(); ++j) mean += q(i, j) - q(i, 0);
    mean = q(i, 0) + mean / static_cast<double>(g.n_theta());
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n_theta(); ++j)
        worst = std::max(worst, std::hypot(v.w1(i, j) - 1.0, v.w2(i, j)) + std::abs(q(i, j) - mean));
    return worst;
}

GoodRadius find_good_radius(const VectorField& v, const ScalarField& q, double delta0) {
    if (!(delta0 > 0.0 && delta0 < 0.5)) throw std::invalid_argument("find_good_radius: delta0 must lie in (0, 1/2)");
    const auto& g = v.grid();
    const double lo = 0.5 * g.r_outer(), hi = (1.0 - delta0) * g.r_outer();
    GoodRadius best;
    best.defect = std::numeric_limits<double>::infinity();
    std::vector<double> defects;
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double r = g.radius(i);
        if (!(r > lo && r < hi)) continue;
        const double d = circle_defect(v, q, i);
        defects.push_back(d);
        if (d < best.defect) {
            best.defect = d;
            best.radius = r;
        }
    }
    best.candidates = defects.size();
    if (defects.empty()) throw std::runtime_error("find_good_radius: no grid circle inside (1/2, 1 - delta0)");
    const auto near = std::count_if(defects.begin(), defects.end(), [&](double d) { return d <= 2.0 * best.defect; });
    best.near_min_fraction = static_cast<double>(near) / static_cast<double>(defects.size());
    return best;
}

double hardy_boundary_ratio(const VectorField& v) {
    const auto& g = v.grid();
    const std::size_t n = g.n_r();
    const double r_top = g.radius(n - 2);
    const double r_bot = 0.5 * g.r_outer();
    if (!(r_bot < r_top)) throw std::runtime_error("hardy_boundary_ratio: grid too coarse near the outer circle");

    const ScalarField d1 = d_ds(v.w1()), d2 = d_ds(v.w2());
    ScalarField lhs(v.grid_ptr()), rhs(v.grid_ptr());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double r = g.radius(i), gap = g.r_outer() - r;
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            const std::size_t k = g.index(i, j);
            const double a = v.w1()[k] - 1.0, b = v.w2()[k];
            lhs[k] = (a * a + b * b) / (gap * gap);
            rhs[k] = (d1[k] * d1[k] + d2[k] * d2[k]) / (r * r);
        }
    }
    const double top = annulus_integral(lhs, r_bot, r_top);
    const double bottom = annulus_integral(rhs, r_bot, r_top);
    if (bottom == 0.0) return top == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return top / bottom;
}

BlowDownReport blowdown(const RescaledFields& f, double delta0) {
    BlowDownReport rep;
    rep.lambda = f.lambda;
    rep.r_outer = f.r_outer;
    rep.delta0 = delta0;
    const OscillationResult osc = euler_oscillation_ratio(f.v, f.p, delta0);
    rep.epsilon_sq = osc.epsilon_sq;
    rep.pressure_osc = osc.pressure_osc;
    rep.osc_ratio = osc.osc_ratio;
    rep.zero_energy = osc.zero_energy;
    const GoodRadius gr = find_good_radius(f.v, f.p, delta0);
    rep.good_radius = gr.radius;
    rep.good_circle_defect = gr.defect;
    rep.near_min_fraction = gr.near_min_fraction;
    rep.defect_ratio = rep.epsilon_sq > 0.0 ? gr.defect / rep.epsilon_sq : 0.0;
    rep.hardy_ratio = hardy_boundary_ratio(f.v);
    return rep;
}

BlowDownReport blowdown(const FlowState& state, const PressureField& p, double delta0) {
    return blowdown(rescale_to_unit_disc(state, p), delta0);
}

}  // namespace leray
