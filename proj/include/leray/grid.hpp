#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace leray {

/// Log-polar annular mesh over {r_inner <= |z| <= r_outer}.
///
/// Nodes sit at r_i = r_inner * exp(i*h), h = ln(r_outer/r_inner)/(n_r-1), and
/// theta_j = 2*pi*j/n_theta (periodic). Storage for fields on the grid is
/// radial-major: node (i, j) lives at i*n_theta + j.
///
/// Grids are immutable after construction and shared between fields through
/// a shared_ptr, so handing fields to other threads is safe.
class PolarGrid {
public:
    PolarGrid(std::size_t n_r, std::size_t n_theta, double r_inner, double r_outer);

    std::size_t n_r() const { return n_r_; }
    std::size_t n_theta() const { return n_theta_; }
    std::size_t size() const { return n_r_ * n_theta_; }
    double r_inner() const { return radii_.front(); }
    double r_outer() const { return radii_.back(); }

    /// Spacing in s = ln r.
    double h() const { return h_; }
    double dtheta() const { return dtheta_; }

    double radius(std::size_t i) const { return radii_[i]; }
    double log_radius(std::size_t i) const { return log_inner_ + static_cast<double>(i) * h_; }
    std::span<const double> radii() const { return radii_; }

    double theta(std::size_t j) const { return static_cast<double>(j) * dtheta_; }
    double cos_theta(std::size_t j) const { return cos_[j]; }
    double sin_theta(std::size_t j) const { return sin_[j]; }

    std::size_t index(std::size_t i, std::size_t j) const { return i * n_theta_ + j; }
    std::size_t jp(std::size_t j) const { return j + 1 == n_theta_ ? 0 : j + 1; }
    std::size_t jm(std::size_t j) const { return j == 0 ? n_theta_ - 1 : j - 1; }
    /// Mirror node of theta_j under y -> -y.
    std::size_t mirror(std::size_t j) const { return j == 0 ? 0 : n_theta_ - j; }

    double x(std::size_t i, std::size_t j) const { return radii_[i] * cos_[j]; }
    double y(std::size_t i, std::size_t j) const { return radii_[i] * sin_[j]; }

    /// Fractional radial index of r in log space; r must lie in [r_inner, r_outer].
    double radial_position(double r) const;

    /// Same topology with every radius multiplied by factor.
    PolarGrid scaled(double factor) const;

    /// (2 n_r - 1, 2 n_theta) grid over the same annulus; every node here is a node there.
    PolarGrid refined() const;

    bool same_layout(const PolarGrid& other) const;

private:
    std::size_t n_r_;
    std::size_t n_theta_;
    double log_inner_;
    double h_;
    double dtheta_;
    std::vector<double> radii_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

using GridPtr = std::shared_ptr<const PolarGrid>;

/// Grid over 1 <= r <= r_outer. Requires n_r >= 8, even n_theta >= 8, r_outer > 1.
GridPtr build_grid(std::size_t n_r, std::size_t n_theta, double r_outer);

/// Same checks as build_grid, arbitrary inner radius.
GridPtr build_annulus(std::size_t n_r, std::size_t n_theta, double r_inner, double r_outer);

class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(GridPtr grid, double fill = 0.0);
    ScalarField(GridPtr grid, std::vector<double> values);

    template <class F>
    static ScalarField from_function(GridPtr grid, F&& f) {
        ScalarField out(grid);
        for (std::size_t i = 0; i < grid->n_r(); ++i)
            for (std::size_t j = 0; j < grid->n_theta(); ++j)
                out(i, j) = f(grid->radius(i), grid->theta(j));
        return out;
    }

    const PolarGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    double& operator()(std::size_t i, std::size_t j) { return values_[i * n_theta_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_theta_ + j]; }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }
    std::size_t size() const { return values_.size(); }

    double max_abs() const;
    bool all_finite() const;

private:
    GridPtr grid_;
    std::size_t n_theta_ = 0;
    std::vector<double> values_;
};

/// Two Cartesian components per node.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(GridPtr grid, double fill1 = 0.0, double fill2 = 0.0);
    VectorField(ScalarField w1, ScalarField w2);

    template <class F>
    static VectorField from_function(GridPtr grid, F&& f) {
        VectorField out(grid);
        for (std::size_t i = 0; i < grid->n_r(); ++i)
            for (std::size_t j = 0; j < grid->n_theta(); ++j) {
                auto [a, b] = f(grid->radius(i), grid->theta(j));
                out.w1(i, j) = a;
                out.w2(i, j) = b;
            }
        return out;
    }

    const PolarGrid& grid() const { return w1_.grid(); }
    const GridPtr& grid_ptr() const { return w1_.grid_ptr(); }

    ScalarField& w1() { return w1_; }
    ScalarField& w2() { return w2_; }
    const ScalarField& w1() const { return w1_; }
    const ScalarField& w2() const { return w2_; }
    double& w1(std::size_t i, std::size_t j) { return w1_(i, j); }
    double& w2(std::size_t i, std::size_t j) { return w2_(i, j); }
    double w1(std::size_t i, std::size_t j) const { return w1_(i, j); }
    double w2(std::size_t i, std::size_t j) const { return w2_(i, j); }

    double magnitude(std::size_t i, std::size_t j) const { return std::hypot(w1_(i, j), w2_(i, j)); }
    double max_magnitude() const;
    bool all_finite() const { return w1_.all_finite() && w2_.all_finite(); }

private:
    ScalarField w1_;
    ScalarField w2_;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

}  // namespace leray
