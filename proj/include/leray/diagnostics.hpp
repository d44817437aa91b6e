#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leray/solver.hpp"

namespace leray {

/// A checked inequality. `lower`: value >= -tolerance; `abs`: |value| <= tolerance;
/// `upper`: value <= tolerance.
struct Slack {
    double value = 0.0;
    double tolerance = 0.0;
    std::string kind = "lower";

    bool pass() const;
};

struct ContourForce {
    Vec2 raw;        ///< stress integral only
    Vec2 corrected;  ///< stress minus momentum flux (w . n) w; contour independent
};

/// Force exerted by the fluid on the obstacle, measured on the circle r_contour:
///   F = integral over S_r of [(grad w + grad w^T) e_r - p e_r - (w . e_r) w] ds.
/// On r = 1 the flux term vanishes and raw == corrected.
ContourForce force_on_obstacle(const FlowState& state, const PressureField& p, double r_contour);

/// (D - F(1) . w_inf) / D, zero for a motionless state.
double energy_identity_slack(const FlowState& state, const PressureField& p);

/// (1/4pi) D(rho1, rho2) - |pbar(rho2) - pbar(rho1)|.
double gw_pressure_slack(const FlowState& state, const PressureField& p, double rho1, double rho2);

struct VelocitySlack {
    /// Log factor ln(rho2/rho1) over the measured annulus.
    double sharp = 0.0;
    /// Log factor ln(R/r_inner) over the whole ring.
    double printed = 0.0;
};
VelocitySlack gw_velocity_slack(const FlowState& state, double rho1, double rho2);

struct AngleSlack {
    bool precondition_ok = false;
    double min_speed = 0.0;  ///< min |wbar(r)| over the radius sample
    double value = 0.0;      ///< RHS - LHS, meaningful only when precondition_ok
};
/// Direction of wbar(r) against (4 pi sigma^2)^-1 integral (|grad omega| / r + |grad w|^2).
AngleSlack angle_variation_slack(const FlowState& state, double rho1, double rho2, double sigma);

struct BernoulliResult {
    double interior_max = 0.0;  ///< max of Phi over nodes strictly inside (r1, r2)
    double boundary_max = 0.0;  ///< max of Phi over S_r1 and S_r2
    double gap = 0.0;           ///< min Phi(S_r2) - max Phi(S_r1) - (lambda/3)(lambda - lambda0)
    double lambda0 = 0.0;
};
/// Bernoulli pressure Phi = p + |w|^2 / 2.
ScalarField bernoulli_pressure(const FlowState& state, const PressureField& p);
BernoulliResult bernoulli_analysis(const FlowState& state, const PressureField& p, double r1, double r2);

/// Far-field probe radius sqrt(R).
double probe_radius(const PolarGrid& g);

struct DiagnosticsOptions {
    std::vector<double> contours{2.0, 4.0, 8.0};
    std::vector<double> pair_radii{2.0, 4.0, 8.0, 16.0};
    double sigma_fraction = 0.2;
    double delta0 = 0.05;
    std::size_t profile_samples = 64;
};

struct ProfileSample {
    double r = 0.0;
    std::vector<double> values;
};

struct DiagnosticsReport {
    double lambda = 0.0;
    double r_outer = 0.0;
    double d_total = 0.0;
    std::vector<ProfileSample> d_annulus;  ///< [r1, r2, D(r1, r2)] stored as r = r1, values = {r2, D}
    std::map<double, ContourForce> force_by_contour;
    std::vector<ProfileSample> mean_pressure_profile;
    std::vector<ProfileSample> mean_velocity_profile;
    std::vector<ProfileSample> direction_profile;
    std::vector<ProfileSample> bernoulli_extrema;  ///< per circle: {max, min}
    double probe_radius = 0.0;
    Vec2 far_field_velocity;
    double lambda0 = 0.0;
    double phi0 = 0.0;
    double pressure_defect = 0.0;
    std::map<std::string, Slack> slacks;
    std::map<std::string, double> info;

    bool all_pass() const;
};

DiagnosticsReport diagnose(const FlowState& state, const PressureField& p, const DiagnosticsOptions& opt = {});

}  // namespace leray
