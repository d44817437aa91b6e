#include "leray/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leray {

ReferenceForce leading_order_force(double lambda0, Vec2 e0) {
    if (!(lambda0 > 0.0) || !(lambda0 < 1.0))
        throw std::domain_error("leading_order_force: lambda0 must lie in (0, 1)");
    const double n = e0.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw std::domain_error("leading_order_force: e0 must be nonzero");
    ReferenceForce f;
    f.lambda0 = lambda0;
    f.leading = 4.0 * std::numbers::pi * lambda0 / std::abs(std::log(lambda0));
    f.direction = n == 1.0 ? e0 : Vec2{e0.x / n, e0.y / n};
    return f;
}

FlowState potential_flow_guess(GridPtr grid, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("potential_flow_guess: lambda must be >= 0");
    const auto& g = *grid;
    ScalarField psi(grid);
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double r = g.radius(i);
        for (std::size_t j = 0; j < g.n_theta(); ++j) psi(i, j) = lambda * g.sin_theta(j) * (r - 1.0 / r);
    }
    return FlowState::from_fields(std::move(psi), ScalarField(grid), lambda);
}

}  // namespace leray
