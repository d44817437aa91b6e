#include "leray/calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leray {
namespace {

// Gauss-Legendre, 6 nodes on [0, 1].
constexpr std::array<double, 6> kGaussX = {0.033765242898423986, 0.16939530676686774, 0.38069040695840156,
                                           0.61930959304159844,  0.83060469323313226, 0.96623475710157601};
constexpr std::array<double, 6> kGaussW = {0.085662246189585173, 0.18038078652406930, 0.23395696728634552,
                                           0.23395696728634552,  0.18038078652406930, 0.085662246189585173};

// Integral over s in [s_i + t0 h, s_i + t1 h] of (a (1 - t) + b t) e^{2s} ds.
double cell_weighted(double a, double b, double s_i, double h, double t0, double t1) {
    double acc = 0.0;
    const double len = t1 - t0;
    for (std::size_t q = 0; q < kGaussX.size(); ++q) {
        const double t = t0 + len * kGaussX[q];
        acc += kGaussW[q] * (a * (1.0 - t) + b * t) * std::exp(2.0 * (s_i + t * h));
    }
    return acc * len * h;
}

std::vector<double> ring_sums(const ScalarField& f) {
    const auto& g = f.grid();
    std::vector<double> sums(g.n_r(), 0.0);
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.n_theta(); ++j) acc += f(i, j);
        sums[i] = acc * g.dtheta();
    }
    return sums;
}

}  // namespace

ScalarField d_ds(const ScalarField& f) {
    const auto& g = f.grid();
    const std::size_t n = g.n_r();
    const double inv2h = 0.5 / g.h();
    ScalarField out(f.grid_ptr());
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
        out(0, j) = (4.0 * (f(1, j) - f(0, j)) - (f(2, j) - f(0, j))) * inv2h;
        for (std::size_t i = 1; i + 1 < n; ++i) out(i, j) = (f(i + 1, j) - f(i - 1, j)) * inv2h;
        out(n - 1, j) = (4.0 * (f(n - 1, j) - f(n - 2, j)) - (f(n - 1, j) - f(n - 3, j))) * inv2h;
    }
    return out;
}

ScalarField d_dtheta(const ScalarField& f) {
    const auto& g = f.grid();
    const double inv2 = 0.5 / g.dtheta();
    ScalarField out(f.grid_ptr());
    for (std::size_t i = 0; i < g.n_r(); ++i)
        for (std::size_t j = 0; j < g.n_theta(); ++j) out(i, j) = (f(i, g.jp(j)) - f(i, g.jm(j))) * inv2;
    return out;
}

Gradient gradient(const ScalarField& f) {
    const auto& g = f.grid();
    const ScalarField fs = d_ds(f);
    const ScalarField ft = d_dtheta(f);
    Gradient out{ScalarField(f.grid_ptr()), ScalarField(f.grid_ptr())};
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double inv_r = 1.0 / g.radius(i);
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            const double c = g.cos_theta(j), s = g.sin_theta(j);
            const double fr = fs(i, j) * inv_r;
            const double fth = ft(i, j) * inv_r;
            out.dx(i, j) = c * fr - s * fth;
            out.dy(i, j) = s * fr + c * fth;
        }
    }
    return out;
}

VelocityGradient gradient(const VectorField& w) {
    Gradient g1 = gradient(w.w1());
    Gradient g2 = gradient(w.w2());
    return {std::move(g1.dx), std::move(g1.dy), std::move(g2.dx), std::move(g2.dy)};
}

ScalarField curl(const VectorField& w) {
    const Gradient g1 = gradient(w.w1());
    const Gradient g2 = gradient(w.w2());
    ScalarField out(w.grid_ptr());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = g1.dy[k] - g2.dx[k];
    return out;
}

ScalarField divergence(const VectorField& w) {
    const auto& g = w.grid();
    ScalarField rwr(w.grid_ptr()), rwt(w.grid_ptr());
    for (std::size_t i = 0; i < g.n_r(); ++i)
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            const double c = g.cos_theta(j), s = g.sin_theta(j), r = g.radius(i);
            rwr(i, j) = r * (c * w.w1(i, j) + s * w.w2(i, j));
            rwt(i, j) = r * (-s * w.w1(i, j) + c * w.w2(i, j));
        }
    const ScalarField a = d_ds(rwr);
    const ScalarField b = d_dtheta(rwt);
    ScalarField out(w.grid_ptr());
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double inv_r2 = 1.0 / (g.radius(i) * g.radius(i));
        for (std::size_t j = 0; j < g.n_theta(); ++j) out(i, j) = (a(i, j) + b(i, j)) * inv_r2;
    }
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    const auto& g = f.grid();
    const std::size_t n = g.n_r();
    const double ih2 = 1.0 / (g.h() * g.h());
    const double it2 = 1.0 / (g.dtheta() * g.dtheta());
    ScalarField out(f.grid_ptr());
    for (std::size_t i = 0; i < n; ++i) {
        const double inv_r2 = 1.0 / (g.radius(i) * g.radius(i));
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            double fss;
            if (i == 0)
                fss = (2.0 * f(0, j) - 5.0 * f(1, j) + 4.0 * f(2, j) - f(3, j)) * ih2;
            else if (i + 1 == n)
                fss = (2.0 * f(n - 1, j) - 5.0 * f(n - 2, j) + 4.0 * f(n - 3, j) - f(n - 4, j)) * ih2;
            else
                fss = (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) * ih2;
            const double ftt = (f(i, g.jp(j)) - 2.0 * f(i, j) + f(i, g.jm(j))) * it2;
            out(i, j) = (fss + ftt) * inv_r2;
        }
    }
    return out;
}

VectorField velocity_from_stream(const ScalarField& psi) {
    const Gradient g = gradient(psi);
    ScalarField w2(psi.grid_ptr());
    for (std::size_t k = 0; k < w2.size(); ++k) w2[k] = -g.dx[k];
    return VectorField(g.dy, std::move(w2));
}

std::vector<double> trig_derivative(const std::vector<double>& f) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 3) return out;
    const double two_pi = 2.0 * std::numbers::pi;
    // The Nyquist mode of an even sample has no derivative that stays real; drop it.
    const std::size_t kmax = (n - 1) / 2;
    for (std::size_t k = 1; k <= kmax; ++k) {
        double a = 0.0, b = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = two_pi * static_cast<double>(k * j % n) / static_cast<double>(n);
            a += f[j] * std::cos(t);
            b += f[j] * std::sin(t);
        }
        a *= 2.0 / static_cast<double>(n);
        b *= 2.0 / static_cast<double>(n);
        const double kk = static_cast<double>(k);
        for (std::size_t j = 0; j < n; ++j) {
            const double t = two_pi * static_cast<double>(k * j % n) / static_cast<double>(n);
            out[j] += kk * (b * std::cos(t) - a * std::sin(t));
        }
    }
    return out;
}

VectorField velocity_from_stream(const ScalarField& psi, const BoundarySlopes& slopes) {
    const auto& g = psi.grid();
    const std::size_t nt = g.n_theta();
    if (slopes.inner.size() != nt || slopes.outer.size() != nt)
        throw std::invalid_argument("velocity_from_stream: boundary slope count must equal n_theta");
    ScalarField ps = d_ds(psi);
    const std::size_t last = g.n_r() - 1;
    for (std::size_t j = 0; j < nt; ++j) {
        ps(0, j) = g.radius(0) * slopes.inner[j];
        ps(last, j) = g.radius(last) * slopes.outer[j];
    }
    ScalarField pt = d_dtheta(psi);
    const bool has_tangents = !slopes.tangent_inner.empty() || !slopes.tangent_outer.empty();
    if (has_tangents) {
        if (slopes.tangent_inner.size() != nt || slopes.tangent_outer.size() != nt)
            throw std::invalid_argument("velocity_from_stream: boundary tangent count must equal n_theta");
        for (std::size_t j = 0; j < nt; ++j) {
            pt(0, j) = slopes.tangent_inner[j];
            pt(last, j) = slopes.tangent_outer[j];
        }
    }
    VectorField w(psi.grid_ptr());
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double inv_r = 1.0 / g.radius(i);
        for (std::size_t j = 0; j < nt; ++j) {
            const double c = g.cos_theta(j), s = g.sin_theta(j);
            const double pr = ps(i, j) * inv_r, pth = pt(i, j) * inv_r;
            w.w1(i, j) = s * pr + c * pth;
            w.w2(i, j) = -(c * pr - s * pth);
        }
    }
    return w;
}

std::vector<double> circle_values(const ScalarField& f, double r) {
    const auto& g = f.grid();
    const double pos = g.radial_position(r);
    auto i0 = static_cast<std::size_t>(std::floor(pos));
    if (i0 + 1 >= g.n_r()) i0 = g.n_r() - 2;
    const double t = pos - static_cast<double>(i0);
    std::vector<double> out(g.n_theta());
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
        out[j] = t == 0.0 ? f(i0, j) : (t == 1.0 ? f(i0 + 1, j) : (1.0 - t) * f(i0, j) + t * f(i0 + 1, j));
    }
    return out;
}

double circle_average(const ScalarField& f, double r) {
    const auto vals = circle_values(f, r);
    double acc = 0.0;
    for (double v : vals) acc += v;
    return acc / static_cast<double>(vals.size());
}

Vec2 circle_average(const VectorField& w, double r) {
    return {circle_average(w.w1(), r), circle_average(w.w2(), r)};
}

double annulus_integral(const ScalarField& f, double r_min, double r_max) {
    if (!(r_min < r_max)) throw std::invalid_argument("annulus_integral: need r_min < r_max");
    const auto& g = f.grid();
    const double p0 = g.radial_position(r_min);
    const double p1 = g.radial_position(r_max);
    const std::vector<double> rings = ring_sums(f);

    double total = 0.0;
    const auto first = static_cast<std::size_t>(std::floor(p0));
    for (std::size_t i = first; i + 1 < g.n_r(); ++i) {
        const double lo = static_cast<double>(i), hi = lo + 1.0;
        if (lo >= p1) break;
        const double t0 = std::max(p0, lo) - lo;
        const double t1 = std::min(p1, hi) - lo;
        if (t1 <= t0) continue;
        total += cell_weighted(rings[i], rings[i + 1], g.log_radius(i), g.h(), t0, t1);
    }
    return total;
}

double dirichlet_integral(const VectorField& w, double r_min, double r_max) {
    if (!(r_min < r_max)) throw std::invalid_argument("dirichlet_integral: inverted bounds");
    const VelocityGradient gw = gradient(w);
    ScalarField density(w.grid_ptr());
    for (std::size_t k = 0; k < density.size(); ++k) density[k] = gw.frobenius_sq(k);
    return annulus_integral(density, r_min, r_max);
}

double dirichlet_integral(const VectorField& w) {
    return dirichlet_integral(w, w.grid().r_inner(), w.grid().r_outer());
}

ScalarField interpolate_field(const ScalarField& f, GridPtr dst, const FieldFill& fill) {
    const auto& src = f.grid();
    if (src.same_layout(*dst)) return ScalarField(dst, std::vector<double>(f.values().begin(), f.values().end()));

    ScalarField out(dst);
    const double s_in = src.log_radius(0);
    const double r_max = src.r_outer() * (1.0 + 1e-13);
    for (std::size_t i = 0; i < dst->n_r(); ++i) {
        const double r = dst->radius(i);
        const bool outside = r > r_max || r < src.r_inner() * (1.0 - 1e-13);
        double pos = (std::log(r) - s_in) / src.h();
        pos = std::clamp(pos, 0.0, static_cast<double>(src.n_r() - 1));
        auto i0 = static_cast<std::size_t>(std::floor(pos));
        if (i0 + 1 >= src.n_r()) i0 = src.n_r() - 2;
        const double tr = pos - static_cast<double>(i0);
        for (std::size_t j = 0; j < dst->n_theta(); ++j) {
            const double th = dst->theta(j);
            if (outside) {
                out(i, j) = fill ? fill(r, th) : 0.0;
                continue;
            }
            const double q = th / src.dtheta();
            auto j0 = static_cast<std::size_t>(std::floor(q)) % src.n_theta();
            const std::size_t j1 = src.jp(j0);
            const double tt = q - std::floor(q);
            const double a = (1.0 - tt) * f(i0, j0) + tt * f(i0, j1);
            const double b = (1.0 - tt) * f(i0 + 1, j0) + tt * f(i0 + 1, j1);
            out(i, j) = (1.0 - tr) * a + tr * b;
        }
    }
    return out;
}

VectorField interpolate_field(const VectorField& w, GridPtr dst, const FieldFill& fill1, const FieldFill& fill2) {
    return VectorField(interpolate_field(w.w1(), dst, fill1), interpolate_field(w.w2(), dst, fill2));
}

VectorField rotate_field(const VectorField& w, std::size_t k) {
    const auto& g = w.grid();
    const std::size_t nt = g.n_theta();
    const double a = static_cast<double>(k % nt) * g.dtheta();
    const double c = std::cos(a), s = std::sin(a);
    VectorField out(w.grid_ptr());
    for (std::size_t i = 0; i < g.n_r(); ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            const std::size_t jt = (j + k) % nt;
            out.w1(i, jt) = c * w.w1(i, j) - s * w.w2(i, j);
            out.w2(i, jt) = s * w.w1(i, j) + c * w.w2(i, j);
        }
    return out;
}

}  // namespace leray
