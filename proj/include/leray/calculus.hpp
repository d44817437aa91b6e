#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "leray/grid.hpp"

namespace leray {

// Derivatives in s = ln r and theta. Second-order centered in the interior,
// second-order one-sided on the two boundary circles, periodic in theta.
ScalarField d_ds(const ScalarField& f);
ScalarField d_dtheta(const ScalarField& f);

/// Cartesian gradient via the chain rule from (s, theta) derivatives.
struct Gradient {
    ScalarField dx;
    ScalarField dy;
};
Gradient gradient(const ScalarField& f);

/// Cartesian velocity gradient, entry d<j>w<i> = d w_i / d x_j.
struct VelocityGradient {
    ScalarField d1w1, d2w1, d1w2, d2w2;

    double frobenius_sq(std::size_t k) const {
        return d1w1[k] * d1w1[k] + d2w1[k] * d2w1[k] + d1w2[k] * d1w2[k] + d2w2[k] * d2w2[k];
    }
};
VelocityGradient gradient(const VectorField& w);

/// omega = d2 w1 - d1 w2. This is minus the usual 2D curl; every formula in the
/// library uses this sign, so Laplacian(psi) = omega for w = (d2 psi, -d1 psi).
ScalarField curl(const VectorField& w);

/// (1/r^2)[d_s(r w_r) + d_theta(r w_theta)]. Uses the same d_s and d_theta
/// stencils as velocity_from_stream, which makes the discrete divergence of
/// any discrete stream-function velocity vanish to rounding.
ScalarField divergence(const VectorField& w);

/// Compact five-point Laplacian in the interior, one-sided four-point in s on
/// the boundary circles.
ScalarField laplacian(const ScalarField& f);

/// d psi / d r on the inner and outer circles, one value per angular node.
/// The optional tangents hold d psi / d theta on the same circles.
struct BoundarySlopes {
    std::vector<double> inner;
    std::vector<double> outer;
    std::vector<double> tangent_inner{};
    std::vector<double> tangent_outer{};
};

/// Derivative of a periodic sample on a uniform angular grid by trigonometric
/// interpolation. Exact for traces with fewer than n/2 modes.
std::vector<double> trig_derivative(const std::vector<double>& f);

/// w1 = d2 psi, w2 = -d1 psi. With slopes, the boundary rows use the supplied
/// derivatives instead of finite differences.
VectorField velocity_from_stream(const ScalarField& psi);
VectorField velocity_from_stream(const ScalarField& psi, const BoundarySlopes& slopes);

/// Values of f on the circle |z| = r, linear in ln r between grid circles.
std::vector<double> circle_values(const ScalarField& f, double r);

/// Mean of f over S_r (periodic trapezoidal rule).
double circle_average(const ScalarField& f, double r);
Vec2 circle_average(const VectorField& w, double r);

/// Integral of f over {r_min <= |z| <= r_max} with area element r dr dtheta.
/// f is trapezoidal in theta and piecewise linear in ln r; the r^2 weight of
/// the log-polar area element is integrated exactly on each cell, so the result
/// is additive over adjacent annuli.
double annulus_integral(const ScalarField& f, double r_min, double r_max);

/// Integral of |grad w|^2 (Frobenius, Cartesian) over the annulus.
double dirichlet_integral(const VectorField& w, double r_min, double r_max);
double dirichlet_integral(const VectorField& w);

/// Far-field value used for destination nodes beyond the source's outer radius.
using FieldFill = std::function<double(double r, double theta)>;

/// Bilinear interpolation in (ln r, theta). Identity when dst == src.
ScalarField interpolate_field(const ScalarField& f, GridPtr dst, const FieldFill& fill);
VectorField interpolate_field(const VectorField& w, GridPtr dst, const FieldFill& fill1,
                              const FieldFill& fill2);

/// Rotate a field by k angular steps: w'(r, theta + k dtheta) = Q w(r, theta).
VectorField rotate_field(const VectorField& w, std::size_t k);

}  // namespace leray
