#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leray/calculus.hpp"
#include "leray/grid.hpp"

namespace leray {

/// Dirichlet data for psi and d psi / d r on both circles, one value per angular node.
/// The tangents (d psi / d theta along each circle) only feed the velocity.
struct BoundaryData {
    std::vector<double> psi_inner, psi_outer;
    std::vector<double> slope_inner, slope_outer;
    std::vector<double> tangent_inner, tangent_outer;

    /// psi = 0, d_r psi = 0 on r = r_inner; psi = lambda y, d_r psi = lambda sin(theta) on r = r_outer.
    static BoundaryData uniform_stream(const PolarGrid& g, double lambda);
    /// Traces of psi and its radial derivative for a closed-form psi(r, theta).
    template <class Psi, class DPsiDr>
    static BoundaryData from_functions(const PolarGrid& g, Psi&& psi, DPsiDr&& dpsi) {
        BoundaryData b;
        const double r0 = g.r_inner(), r1 = g.r_outer();
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            const double t = g.theta(j);
            b.psi_inner.push_back(psi(r0, t));
            b.psi_outer.push_back(psi(r1, t));
            b.slope_inner.push_back(dpsi(r0, t));
            b.slope_outer.push_back(dpsi(r1, t));
        }
        b.tangent_inner = trig_derivative(b.psi_inner);
        b.tangent_outer = trig_derivative(b.psi_outer);
        return b;
    }

    BoundarySlopes slopes() const { return {slope_inner, slope_outer, tangent_inner, tangent_outer}; }
    double max_abs() const;
};

struct SolveConfig {
    double lambda = 0.0;
    double newton_tol = 1e-10;
    int max_newton = 50;
    /// Initial step length of the damped Newton iteration.
    double damping = 1.0;
    /// Frozen-advection iterations before switching to the full Jacobian.
    int picard_warmup = 3;
    /// Manufactured-solution mode: Laplacian(omega) = (w . grad) omega + mms_source.
    std::optional<ScalarField> mms_source;
    /// Replaces the uniform-stream boundary data (manufactured solutions, tests).
    std::optional<BoundaryData> boundary;
    bool verbose = false;

    void validate() const;
};

/// Stream function, vorticity and the boundary data they were solved with.
struct FlowState {
    GridPtr grid;
    ScalarField psi;
    ScalarField omega;
    double lambda = 0.0;
    double residual_norm = 0.0;
    int newton_iters = 0;
    BoundaryData boundary;
    std::vector<double> residual_history;

    /// Wraps given fields; boundary slopes default to the uniform-stream data for lambda.
    static FlowState from_fields(ScalarField psi, ScalarField omega, double lambda,
                                 std::optional<BoundaryData> boundary = std::nullopt);

    /// Velocity with the imposed radial derivative on both circles, so w = 0 on
    /// the obstacle and w = (lambda, 0) on the outer circle hold exactly.
    VectorField velocity() const;
};

/// Cartesian velocity gradient from second derivatives of psi, using the
/// boundary slopes and the one-sided closure on both circles. Second order
/// everywhere including the obstacle surface.
VelocityGradient velocity_gradient(const FlowState& state);

/// Failure of the nonlinear iteration; carries the best iterate seen.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, FlowState best) : std::runtime_error(what), best_(std::move(best)) {}
    const FlowState& best_state() const { return best_; }

private:
    FlowState best_;
};

class NonConvergence : public SolverError {
public:
    using SolverError::SolverError;
};

class LineSearchFailure : public SolverError {
public:
    using SolverError::SolverError;
};

/// Truncated stationary Navier-Stokes problem on the annulus in
/// stream-function/vorticity form, viscosity 1:
///   Laplacian(psi) = omega,  Laplacian(omega) = (w . grad) omega [+ source]
/// with psi and d_r psi prescribed on both circles. Boundary vorticity comes
/// from the second-order one-sided closure of Laplacian(psi) = omega.
/// Without a guess the solve starts from potential flow past the disc.
FlowState solve_stationary(GridPtr grid, const SolveConfig& cfg, const std::optional<FlowState>& guess = {});

/// Continuation helper: interpolate a state onto another grid, far field psi = lambda y, omega = 0.
FlowState transfer_state(const FlowState& state, GridPtr dst, double lambda);

struct PressureField {
    ScalarField p;
    std::string normalization = "outer-circle mean zero";
    /// Mean (per unit area) compatibility defect removed from the Poisson source.
    double compatibility_defect = 0.0;
    bool defect_flagged = false;
};

/// Pressure from Laplacian(p) = -grad w : (grad w)^T with Neumann data
/// d_r p = [Laplacian(w) - (w . grad) w] . e_r on both circles.
PressureField recover_pressure(const FlowState& state);

/// |-Laplacian(w) + (w . grad) w + grad p| at interior nodes, zero on the circles.
/// Laplacian(w) is taken as (d2 omega, -d1 omega).
ScalarField momentum_residual(const FlowState& state, const PressureField& p);

}  // namespace leray
