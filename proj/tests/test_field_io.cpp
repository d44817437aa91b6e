#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "leray/field_io.hpp"

using namespace leray;

namespace {

ScalarField sample(const GridPtr& g) {
    return ScalarField::from_function(g, [](double r, double t) { return std::sin(3.0 * t) / r + 1e-300 * r - 1.0 / 3.0; });
}

}  // namespace

TEST(FieldIO, ScalarRoundTripIsBitExact) {
    const auto g = build_grid(9, 8, 7.5);
    const ScalarField f = sample(g);
    std::stringstream ss;
    write_field(ss, f);
    const auto back = std::get<ScalarField>(read_field(ss));
    EXPECT_EQ(back.grid().n_r(), 9u);
    EXPECT_EQ(back.grid().r_outer(), 7.5);
    for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(back[k], f[k]);
}

TEST(FieldIO, VectorRoundTripThroughFile) {
    const auto g = build_grid(9, 8, 3.0);
    const VectorField w(sample(g), ScalarField::from_function(g, [](double r, double) { return std::exp(-r); }));
    const auto path = std::filesystem::temp_directory_path() / "leray_field_io_test.field";
    write_field(path, w);
    const VectorField back = read_vector_field(path, g);
    EXPECT_EQ(back.grid_ptr(), g);
    for (std::size_t k = 0; k < g->size(); ++k) {
        EXPECT_EQ(back.w1()[k], w.w1()[k]);
        EXPECT_EQ(back.w2()[k], w.w2()[k]);
    }
    EXPECT_THROW(read_scalar_field(path), std::runtime_error);
    std::filesystem::remove(path);
}

TEST(FieldIO, HeaderLayout) {
    const auto g = build_grid(9, 8, 2.0);
    std::stringstream ss;
    write_field(ss, ScalarField(g, 0.5));
    std::string magic, header;
    std::getline(ss, magic);
    std::getline(ss, header);
    EXPECT_EQ(magic, "polar-field v1");
    EXPECT_EQ(header, "9 8 2 scalar");
}

TEST(FieldIO, RescaledGridKeepsInnerRadius) {
    const auto g = std::make_shared<const PolarGrid>(build_grid(9, 8, 40.0)->scaled(1.0 / 40.0));
    std::stringstream ss;
    write_field(ss, sample(g));
    const auto back = std::get<ScalarField>(read_field(ss));
    EXPECT_EQ(back.grid().r_inner(), g->r_inner());
    EXPECT_EQ(back.grid().r_outer(), g->r_outer());
}

TEST(FieldIO, RejectsMalformedInput) {
    std::stringstream bad_magic("polar-field v2\n9 8 2 scalar\n");
    EXPECT_THROW(read_field(bad_magic), std::runtime_error);
    std::stringstream bad_kind("polar-field v1\n9 8 2 tensor\n");
    EXPECT_THROW(read_field(bad_kind), std::runtime_error);
    std::stringstream truncated("polar-field v1\n9 8 2 scalar\n1\n2\n");
    EXPECT_THROW(read_field(truncated), std::runtime_error);
    std::stringstream garbage("polar-field v1\n9 8 2 scalar\nabc\n");
    EXPECT_THROW(read_field(garbage), std::runtime_error);
}
