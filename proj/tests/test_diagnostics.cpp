#include <gtest/gtest.h>

#include <cmath>

#include "leray/diagnostics.hpp"

using namespace leray;

namespace {

const FlowState& flow() {
    static const FlowState s = [] {
        SolveConfig cfg;
        cfg.lambda = 0.1;
        return solve_stationary(build_grid(129, 64, 20.0), cfg);
    }();
    return s;
}

const PressureField& pressure() {
    static const PressureField p = recover_pressure(flow());
    return p;
}

// psi = lam y on the whole annulus with matching traces on both circles: the uniform stream.
FlowState uniform_stream(const GridPtr& g, double lam) {
    auto psi = [lam](double r, double t) { return lam * r * std::sin(t); };
    auto dpsi = [lam](double, double t) { return lam * std::sin(t); };
    return FlowState::from_fields(ScalarField::from_function(g, psi), ScalarField(g), lam,
                                  BoundaryData::from_functions(*g, psi, dpsi));
}

PressureField zero_pressure(const GridPtr& g) { return PressureField{ScalarField(g)}; }

}  // namespace

TEST(Slack, Kinds) {
    EXPECT_TRUE((Slack{-1e-9, 1e-8, "lower"}.pass()));
    EXPECT_FALSE((Slack{-1e-7, 1e-8, "lower"}.pass()));
    EXPECT_TRUE((Slack{-0.01, 0.02, "abs"}.pass()));
    EXPECT_FALSE((Slack{0.03, 0.02, "abs"}.pass()));
    EXPECT_TRUE((Slack{0.005, 0.01, "upper"}.pass()));
    EXPECT_FALSE((Slack{0.02, 0.01, "upper"}.pass()));
    EXPECT_FALSE((Slack{std::nan(""), 1.0, "lower"}.pass()));
}

TEST(Force, MotionlessStateFeelsNothing) {
    const auto g = build_grid(33, 32, 10.0);
    const FlowState s = FlowState::from_fields(ScalarField(g), ScalarField(g), 0.0);
    const PressureField p = recover_pressure(s);
    for (double r : {1.0, 2.0, 8.0}) {
        const ContourForce f = force_on_obstacle(s, p, r);
        EXPECT_EQ(f.corrected.x, 0.0);
        EXPECT_EQ(f.corrected.y, 0.0);
    }
    EXPECT_EQ(energy_identity_slack(s, p), 0.0);
    const BernoulliResult b = bernoulli_analysis(s, p, 2.0, 8.0);
    EXPECT_EQ(b.interior_max, 0.0);
    EXPECT_EQ(b.boundary_max, 0.0);
    EXPECT_EQ(b.gap, 0.0);
    EXPECT_EQ(b.lambda0, 0.0);
}

TEST(Force, SymmetricFlowHasNoLift) {
    const ContourForce f = force_on_obstacle(flow(), pressure(), 1.0);
    EXPECT_LE(std::abs(f.corrected.y), 1e-9 * flow().lambda);
    EXPECT_GT(f.corrected.x, 0.0);
    EXPECT_EQ(f.raw.x, f.corrected.x);
}

TEST(Force, ContourIndependentAfterFluxCorrection) {
    const Vec2 f2 = force_on_obstacle(flow(), pressure(), 2.0).corrected;
    for (double r : {4.0, 8.0}) {
        const ContourForce f = force_on_obstacle(flow(), pressure(), r);
        EXPECT_LE((f.corrected - f2).norm(), 0.01 * f2.norm());
    }
    EXPECT_THROW(force_on_obstacle(flow(), pressure(), 25.0), std::out_of_range);
}

TEST(Force, SpreadShrinksUnderRefinement) {
    SolveConfig cfg;
    cfg.lambda = 0.1;
    std::vector<double> spread, slack;
    for (auto [nr, nt] : {std::pair<std::size_t, std::size_t>{67, 64}, {133, 128}}) {
        const FlowState s = solve_stationary(build_grid(nr, nt, 10.0), cfg);
        const PressureField p = recover_pressure(s);
        const Vec2 a = force_on_obstacle(s, p, 2.0).corrected, b = force_on_obstacle(s, p, 8.0).corrected;
        spread.push_back((a - b).norm() / a.norm());
        slack.push_back(std::abs(energy_identity_slack(s, p)));
    }
    EXPECT_NEAR(std::log2(spread[0] / spread[1]), 2.0, 0.5);
    EXPECT_NEAR(std::log2(slack[0] / slack[1]), 2.0, 0.5);
}

TEST(EnergyIdentity, WithinBudget) {
    EXPECT_LE(std::abs(energy_identity_slack(flow(), pressure())), 0.02);
}

TEST(GilbargWeinberger, DegenerateAnnulus) {
    EXPECT_EQ(gw_pressure_slack(flow(), pressure(), 3.0, 3.0), 0.0);
    const VelocitySlack v = gw_velocity_slack(flow(), 3.0, 3.0);
    EXPECT_EQ(v.sharp, 0.0);
    EXPECT_EQ(v.printed, 0.0);
    const AngleSlack a = angle_variation_slack(flow(), 3.0, 3.0, 0.02);
    EXPECT_TRUE(a.precondition_ok);
    EXPECT_EQ(a.value, 0.0);
}

TEST(GilbargWeinberger, UniformStreamIsTight) {
    const auto g = build_grid(129, 256, 20.0);
    const double lam = 0.1;
    const FlowState s = uniform_stream(g, lam);
    const PressureField p = zero_pressure(g);
    // The discrete velocity reproduces (lam, 0) to O(h^2); squared differences of it are O(h^4).
    const double tiny = 1e-6 * lam * lam;
    EXPECT_NEAR(gw_pressure_slack(s, p, 2.0, 8.0), 0.0, tiny);
    EXPECT_GE(gw_pressure_slack(s, p, 2.0, 8.0), 0.0);
    const VelocitySlack v = gw_velocity_slack(s, 2.0, 8.0);
    EXPECT_NEAR(v.sharp, 0.0, 1e-3 * lam);
    EXPECT_GE(v.sharp, -1e-8 * lam);
    const AngleSlack a = angle_variation_slack(s, 2.0, 8.0, lam / 5.0);
    ASSERT_TRUE(a.precondition_ok);
    EXPECT_GE(a.value, 0.0);
    const BernoulliResult b = bernoulli_analysis(s, p, 2.0, 8.0);
    EXPECT_NEAR(b.interior_max, 0.5 * lam * lam, 1e-4 * lam * lam);
    EXPECT_NEAR(b.boundary_max, b.interior_max, 1e-4 * lam * lam);
    EXPECT_NEAR(b.lambda0, lam, 1e-4 * lam);
    // |w_h|^2 itself varies round a circle by about (h^2 / 3) lam^2, and the gap sees that.
    EXPECT_NEAR(b.gap, 0.0, g->h() * g->h() * lam * lam);
}

TEST(GilbargWeinberger, ConvergedSolveSatisfiesInequalities) {
    const double lam = flow().lambda;
    const std::vector<double> probes{2.0, 4.0, 8.0, 16.0};
    for (std::size_t a = 0; a < probes.size(); ++a)
        for (std::size_t b = a + 1; b < probes.size(); ++b) {
            EXPECT_GE(gw_pressure_slack(flow(), pressure(), probes[a], probes[b]), -1e-8 * lam * lam);
            const VelocitySlack v = gw_velocity_slack(flow(), probes[a], probes[b]);
            EXPECT_GE(v.sharp, -1e-8 * lam);
            EXPECT_GE(v.printed, v.sharp);
            const AngleSlack as = angle_variation_slack(flow(), probes[a], probes[b], lam / 5.0);
            if (as.precondition_ok) EXPECT_GE(as.value, -1e-6);
        }
    EXPECT_THROW(gw_pressure_slack(flow(), pressure(), 4.0, 2.0), std::invalid_argument);
}

TEST(Bernoulli, OneSidedMaximumPrinciple) {
    const double lam = flow().lambda;
    for (auto [r1, r2] : {std::pair{2.0, 4.0}, {4.0, 8.0}, {8.0, 16.0}, {std::sqrt(20.0), 19.0}}) {
        const BernoulliResult b = bernoulli_analysis(flow(), pressure(), r1, r2);
        EXPECT_LE(b.interior_max, b.boundary_max + 1e-6 * lam * lam) << r1 << " " << r2;
    }
    EXPECT_THROW(bernoulli_analysis(flow(), pressure(), 1.0, 4.0), std::invalid_argument);
}

TEST(Report, ConsistentWithDirectCalls) {
    const DiagnosticsReport rep = diagnose(flow(), pressure());
    EXPECT_EQ(rep.d_total, dirichlet_integral(flow().velocity(), 1.0, 20.0));
    EXPECT_EQ(rep.probe_radius, std::sqrt(20.0));
    EXPECT_EQ(rep.force_by_contour.size(), 4u);
    EXPECT_LE(std::abs(rep.far_field_velocity.y), 1e-9 * flow().lambda);
    for (const auto& d : rep.direction_profile) EXPECT_NEAR(d.values[0], 0.0, 1e-9);
    EXPECT_FALSE(rep.direction_profile.empty());
    // pairs from {2, 4, 8, 16}: 6 pressure, 6 + 6 velocity, 6 angle
    std::size_t gw = 0;
    for (const auto& [name, s] : rep.slacks)
        if (name.rfind("gw_", 0) == 0 || name.rfind("angle_", 0) == 0) {
            ++gw;
            EXPECT_TRUE(s.pass()) << name << " = " << s.value;
        }
    EXPECT_EQ(gw, 24u);
    for (const auto& [name, s] : rep.slacks)
        if (name.rfind("bernoulli_max", 0) == 0) EXPECT_TRUE(s.pass()) << name;
    EXPECT_TRUE(rep.slacks.at("energy_identity").pass());
    EXPECT_TRUE(rep.slacks.at("force_contour_spread").pass());
    EXPECT_LT(rep.lambda0, flow().lambda);
    EXPECT_TRUE(rep.info.count("bernoulli_gap"));
}

TEST(Report, ProbesOutsideDomainAreSkipped) {
    SolveConfig cfg;
    cfg.lambda = 0.05;
    const FlowState s = solve_stationary(build_grid(67, 32, 10.0), cfg);
    const DiagnosticsReport rep = diagnose(s, recover_pressure(s));
    for (const auto& [name, _] : rep.slacks) {
        EXPECT_EQ(name.find("_16_"), std::string::npos) << name;
        EXPECT_FALSE(name.ends_with("_16")) << name;
    }
}
