#pragma once

#include <cmath>

#include "leray/solver.hpp"

namespace leray::mms {

// psi* = f(r) sin(theta), f = lam (r-1)^2 (R-r)^2 / (R-1)^4. Both traces and both
// radial slopes vanish, so the boundary data is zero.
struct Manufactured {
    double lam;
    double R;

    // f and its first four derivatives, from a = (r-1)(R-r), f = c a^2.
    void f_derivs(double r, double d[5]) const {
        const double c = lam / std::pow(R - 1.0, 4);
        const double a = (r - 1.0) * (R - r), a1 = -2.0 * r + R + 1.0, a2 = -2.0;
        d[0] = c * a * a;
        d[1] = c * 2.0 * a * a1;
        d[2] = c * 2.0 * (a1 * a1 + a * a2);
        d[3] = c * 6.0 * a1 * a2;
        d[4] = c * 6.0 * a2 * a2;
    }

    double psi(double r, double t) const {
        double d[5];
        f_derivs(r, d);
        return d[0] * std::sin(t);
    }

    double omega(double r, double t) const {
        double d[5];
        f_derivs(r, d);
        return (d[2] + d[1] / r - d[0] / (r * r)) * std::sin(t);
    }

    // Laplacian(omega*) - (w* . grad) omega*
    double source(double r, double t) const {
        double f[5];
        f_derivs(r, f);
        const double r2 = r * r, r3 = r2 * r, r4 = r3 * r;
        const double g = f[2] + f[1] / r - f[0] / r2;
        const double g1 = f[3] + f[2] / r - 2.0 * f[1] / r2 + 2.0 * f[0] / r3;
        const double g2 = f[4] + f[3] / r - 3.0 * f[2] / r2 + 6.0 * f[1] / r3 - 6.0 * f[0] / r4;
        const double s = std::sin(t), c = std::cos(t);
        return (g2 + g1 / r - g / r2) * s - (s * c / r) * (f[0] * g1 - f[1] * g);
    }

    SolveConfig config(const GridPtr& g) const {
        SolveConfig cfg;
        cfg.lambda = lam;
        cfg.mms_source = ScalarField::from_function(g, [this](double r, double t) { return source(r, t); });
        cfg.boundary = BoundaryData::from_functions(
            *g, [](double, double) { return 0.0; }, [](double, double) { return 0.0; });
        return cfg;
    }

    double psi_error(const FlowState& s) const {
        const auto& g = *s.grid;
        double e = 0.0;
        for (std::size_t i = 0; i < g.n_r(); ++i)
            for (std::size_t j = 0; j < g.n_theta(); ++j)
                e = std::max(e, std::abs(s.psi(i, j) - psi(g.radius(i), g.theta(j))));
        return e;
    }

    double omega_error(const FlowState& s) const {
        const auto& g = *s.grid;
        double e = 0.0;
        for (std::size_t i = 0; i < g.n_r(); ++i)
            for (std::size_t j = 0; j < g.n_theta(); ++j)
                e = std::max(e, std::abs(s.omega(i, j) - omega(g.radius(i), g.theta(j))));
        return e;
    }
};

}  // namespace leray::mms
