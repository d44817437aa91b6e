#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "leray/grid.hpp"

using namespace leray;

TEST(PolarGrid, RadiiAreLogUniform) {
    const auto g = build_grid(9, 16, std::numbers::e);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(g->radius(i), std::exp(i / 8.0), 1e-14);
    for (std::size_t i = 0; i + 1 < 9; ++i) EXPECT_NEAR(g->radius(i + 1) / g->radius(i), std::exp(1.0 / 8.0), 1e-12);
}

TEST(PolarGrid, EndpointsExactAndMidpointIsGeometricMean) {
    const auto g = build_grid(129, 128, 40.0);
    EXPECT_EQ(g->radius(0), 1.0);
    EXPECT_EQ(g->radius(128), 40.0);
    EXPECT_NEAR(g->radius(64), std::sqrt(40.0), 1e-12);
    EXPECT_NEAR(g->radius(64), 6.324555320336759, 1e-12);
    for (std::size_t i = 0; i + 1 < g->n_r(); ++i) EXPECT_LT(g->radius(i), g->radius(i + 1));
}

TEST(PolarGrid, AnglesArePeriodicAndMirrored) {
    const auto g = build_grid(9, 16, 2.0);
    EXPECT_DOUBLE_EQ(g->theta(4), std::numbers::pi / 2.0);
    EXPECT_EQ(g->jp(15), 0u);
    EXPECT_EQ(g->jm(0), 15u);
    for (std::size_t j = 0; j < 16; ++j) {
        EXPECT_EQ(g->sin_theta(g->mirror(j)), -g->sin_theta(j));
        EXPECT_EQ(g->cos_theta(g->mirror(j)), g->cos_theta(j));
    }
}

TEST(PolarGrid, RejectsBadSizes) {
    EXPECT_THROW(build_grid(9, 8, 1.0), std::invalid_argument);
    EXPECT_THROW(build_grid(9, 8, 0.5), std::invalid_argument);
    EXPECT_THROW(build_grid(9, 9, 4.0), std::invalid_argument);
    EXPECT_THROW(build_grid(7, 8, 4.0), std::invalid_argument);
    EXPECT_THROW(build_grid(9, 6, 4.0), std::invalid_argument);
    EXPECT_NO_THROW(build_grid(8, 8, 1.5));
}

TEST(PolarGrid, RefinementNestsCoarseNodes) {
    const auto g = build_grid(17, 16, 10.0);
    const PolarGrid f = g->refined();
    ASSERT_EQ(f.n_r(), 33u);
    ASSERT_EQ(f.n_theta(), 32u);
    for (std::size_t i = 0; i < g->n_r(); ++i) EXPECT_NEAR(f.radius(2 * i), g->radius(i), 1e-13 * g->radius(i));
    for (std::size_t j = 0; j < g->n_theta(); ++j) EXPECT_NEAR(f.theta(2 * j), g->theta(j), 1e-14);
}

TEST(PolarGrid, RadialPositionInvertsRadii) {
    const auto g = build_grid(33, 16, 4.0);
    EXPECT_NEAR(g->radial_position(g->radius(7)), 7.0, 1e-10);
    EXPECT_NEAR(g->radial_position(2.0), 16.0, 1e-10);
    EXPECT_THROW(g->radial_position(0.9), std::out_of_range);
    EXPECT_THROW(g->radial_position(4.1), std::out_of_range);
}

TEST(PolarGrid, ScaledKeepsLayout) {
    const auto g = build_grid(17, 16, 10.0);
    const PolarGrid s = g->scaled(0.1);
    EXPECT_NEAR(s.r_inner(), 0.1, 1e-15);
    EXPECT_NEAR(s.r_outer(), 1.0, 1e-15);
    EXPECT_EQ(s.n_r(), g->n_r());
    EXPECT_NEAR(s.h(), g->h(), 1e-15);
}

TEST(Fields, SizesAndLayout) {
    const auto g = build_grid(9, 8, 3.0);
    ScalarField f = ScalarField::from_function(g, [](double r, double t) { return r + 10.0 * t; });
    EXPECT_EQ(f.size(), 72u);
    EXPECT_EQ(f[g->index(2, 3)], f(2, 3));
    EXPECT_DOUBLE_EQ(f(2, 3), g->radius(2) + 10.0 * g->theta(3));
    EXPECT_TRUE(f.all_finite());
    f(1, 1) = std::nan("");
    EXPECT_FALSE(f.all_finite());
    EXPECT_THROW(ScalarField(g, std::vector<double>(5)), std::invalid_argument);

    const VectorField w(g, 3.0, 4.0);
    EXPECT_DOUBLE_EQ(w.magnitude(0, 0), 5.0);
    EXPECT_DOUBLE_EQ(w.max_magnitude(), 5.0);
}
