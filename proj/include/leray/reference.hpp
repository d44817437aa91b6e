#pragma once

#include "leray/grid.hpp"
#include "leray/solver.hpp"

namespace leray {

/// Leading low-Reynolds force 4*pi*lambda0/|ln lambda0| along e0.
struct ReferenceForce {
    double lambda0 = 0.0;
    double leading = 0.0;
    Vec2 direction{1.0, 0.0};

    Vec2 vector() const { return leading * direction; }
};

/// Requires 0 < lambda0 < 1 and a nonzero e0 (normalized internally).
ReferenceForce leading_order_force(double lambda0, Vec2 e0);

/// Irrotational flow past the unit disc: psi = lambda sin(theta) (r - 1/r), omega = 0.
FlowState potential_flow_guess(GridPtr grid, double lambda);

}  // namespace leray
