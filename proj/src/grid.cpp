#include "leray/grid.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace leray {

PolarGrid::PolarGrid(std::size_t n_r, std::size_t n_theta, double r_inner, double r_outer)
    : n_r_(n_r), n_theta_(n_theta) {
    if (n_r < 8) throw std::invalid_argument("PolarGrid: n_r must be >= 8, got " + std::to_string(n_r));
    if (n_theta < 8 || n_theta % 2 != 0)
        throw std::invalid_argument("PolarGrid: n_theta must be even and >= 8, got " +
                                    std::to_string(n_theta));
    if (!(r_inner > 0.0) || !std::isfinite(r_outer) || !(r_outer > r_inner))
        throw std::invalid_argument("PolarGrid: need 0 < r_inner < r_outer");

    log_inner_ = std::log(r_inner);
    h_ = std::log(r_outer / r_inner) / static_cast<double>(n_r - 1);
    dtheta_ = 2.0 * std::numbers::pi / static_cast<double>(n_theta);

    radii_.resize(n_r);
    for (std::size_t i = 0; i < n_r; ++i) radii_[i] = r_inner * std::exp(static_cast<double>(i) * h_);
    radii_.front() = r_inner;
    radii_.back() = r_outer;

    cos_.resize(n_theta);
    sin_.resize(n_theta);
    for (std::size_t j = 0; j < n_theta; ++j) {
        const double t = theta(j);
        cos_[j] = std::cos(t);
        sin_[j] = std::sin(t);
    }
    // Exact values at the axis nodes keep mirror symmetry bit-exact.
    const std::size_t q = n_theta / 4;
    sin_[0] = 0.0;
    cos_[0] = 1.0;
    sin_[n_theta / 2] = 0.0;
    cos_[n_theta / 2] = -1.0;
    if (n_theta % 4 == 0) {
        cos_[q] = 0.0;
        sin_[q] = 1.0;
        cos_[3 * q] = 0.0;
        sin_[3 * q] = -1.0;
    }
    for (std::size_t j = 1; j < n_theta / 2; ++j) {
        sin_[n_theta - j] = -sin_[j];
        cos_[n_theta - j] = cos_[j];
    }
}

double PolarGrid::radial_position(double r) const {
    if (!(r >= r_inner() * (1.0 - 1e-14) && r <= r_outer() * (1.0 + 1e-14)))
        throw std::out_of_range("radius " + std::to_string(r) + " outside grid [" +
                                std::to_string(r_inner()) + ", " + std::to_string(r_outer()) + "]");
    const double pos = (std::log(r) - log_inner_) / h_;
    return std::clamp(pos, 0.0, static_cast<double>(n_r_ - 1));
}

PolarGrid PolarGrid::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("PolarGrid::scaled: factor must be positive");
    PolarGrid out = *this;
    out.log_inner_ += std::log(factor);
    for (double& r : out.radii_) r *= factor;
    return out;
}

PolarGrid PolarGrid::refined() const {
    return PolarGrid(2 * n_r_ - 1, 2 * n_theta_, r_inner(), r_outer());
}

bool PolarGrid::same_layout(const PolarGrid& other) const {
    return n_r_ == other.n_r_ && n_theta_ == other.n_theta_ && r_inner() == other.r_inner() &&
           r_outer() == other.r_outer();
}

GridPtr build_grid(std::size_t n_r, std::size_t n_theta, double r_outer) {
    if (!(r_outer > 1.0)) throw std::invalid_argument("build_grid: r_outer must exceed 1");
    return std::make_shared<const PolarGrid>(n_r, n_theta, 1.0, r_outer);
}

GridPtr build_annulus(std::size_t n_r, std::size_t n_theta, double r_inner, double r_outer) {
    return std::make_shared<const PolarGrid>(n_r, n_theta, r_inner, r_outer);
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), n_theta_(grid_->n_theta()), values_(grid_->size(), fill) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), n_theta_(grid_->n_theta()), values_(std::move(values)) {
    if (values_.size() != grid_->size())
        throw std::invalid_argument("ScalarField: value count does not match grid");
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

VectorField::VectorField(GridPtr grid, double fill1, double fill2) : w1_(grid, fill1), w2_(grid, fill2) {}

VectorField::VectorField(ScalarField w1, ScalarField w2) : w1_(std::move(w1)), w2_(std::move(w2)) {
    if (w1_.grid_ptr() != w2_.grid_ptr() && !w1_.grid().same_layout(w2_.grid()))
        throw std::invalid_argument("VectorField: components live on different grids");
}

double VectorField::max_magnitude() const {
    double m = 0.0;
    for (std::size_t k = 0; k < w1_.size(); ++k) m = std::max(m, std::hypot(w1_[k], w2_[k]));
    return m;
}

}  // namespace leray
