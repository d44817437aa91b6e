#pragma once

#include "leray/solver.hpp"

namespace leray {

/// v(z) = w(R z) / lambda and q(z) = p(R z) / lambda^2 on the annulus 1/R <= |z| <= 1.
/// The hole |z| < 1/R is left out rather than filled with zero velocity.
struct RescaledFields {
    GridPtr grid;
    VectorField v;
    ScalarField p;
    double lambda = 0.0;
    double r_outer = 0.0;  ///< R of the source state
};

RescaledFields rescale_to_unit_disc(const FlowState& state, const PressureField& p);

/// Same as above for raw fields (w on any grid, rescaled by the grid's outer radius).
RescaledFields rescale_to_unit_disc(const VectorField& w, const ScalarField& p, double lambda);

struct OscillationResult {
    double epsilon_sq = 0.0;     ///< Dirichlet integral of v over the whole rescaled annulus
    double pressure_osc = 0.0;   ///< max - min of q over 1/2 <= |z| <= 1 - delta0
    double osc_ratio = 0.0;      ///< pressure_osc / epsilon_sq
    bool zero_energy = false;    ///< epsilon_sq == 0; ratio reported as 0
};
OscillationResult euler_oscillation_ratio(const VectorField& v, const ScalarField& q, double delta0 = 0.05);

/// max - min over nodes with r_min <= r <= r_max.
double pressure_oscillation(const ScalarField& q, double r_min, double r_max);

/// Per-circle defect max_{S_r} (|v - e1| + |q - mean_{S_r} q|) on grid circle i.
double circle_defect(const VectorField& v, const ScalarField& q, std::size_t i);

struct GoodRadius {
    double radius = 0.0;
    double defect = 0.0;
    /// Fraction of candidate radii whose defect is within twice the minimum.
    double near_min_fraction = 0.0;
    std::size_t candidates = 0;
};
/// Argmin of circle_defect over grid radii in (1/2, 1 - delta0); ties go to the smaller radius.
GoodRadius find_good_radius(const VectorField& v, const ScalarField& q, double delta0 = 0.05);

/// [integral |v - e1|^2 / (1 - r)^2] / [integral |d_r v|^2] over 1/2 <= |z| <= r_{n-2}
/// (the last radial cell is cut off). 0 when both sides vanish.
double hardy_boundary_ratio(const VectorField& v);

struct BlowDownReport {
    double lambda = 0.0;
    double r_outer = 0.0;
    double epsilon_sq = 0.0;
    double pressure_osc = 0.0;
    double osc_ratio = 0.0;
    bool zero_energy = false;
    double good_radius = 0.0;
    double good_circle_defect = 0.0;
    double defect_ratio = 0.0;  ///< good_circle_defect / epsilon_sq
    double near_min_fraction = 0.0;
    double hardy_ratio = 0.0;
    double delta0 = 0.05;
};

BlowDownReport blowdown(const FlowState& state, const PressureField& p, double delta0 = 0.05);
BlowDownReport blowdown(const RescaledFields& f, double delta0 = 0.05);

}  // namespace leray
