#include "leray/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "leray/reference.hpp"

namespace leray {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

double BoundaryData::max_abs() const {
    double m = 0.0;
    for (const auto* v : {&psi_inner, &psi_outer, &slope_inner, &slope_outer, &tangent_inner, &tangent_outer})
        for (double x : *v) m = std::max(m, std::abs(x));
    return m;
}

BoundaryData BoundaryData::uniform_stream(const PolarGrid& g, double lambda) {
    BoundaryData b;
    const std::size_t nt = g.n_theta();
    b.psi_inner.assign(nt, 0.0);
    b.slope_inner.assign(nt, 0.0);
    b.tangent_inner.assign(nt, 0.0);
    b.psi_outer.resize(nt);
    b.slope_outer.resize(nt);
    b.tangent_outer.resize(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        b.psi_outer[j] = lambda * g.r_outer() * g.sin_theta(j);
        b.slope_outer[j] = lambda * g.sin_theta(j);
        b.tangent_outer[j] = lambda * g.r_outer() * g.cos_theta(j);
    }
    return b;
}

void SolveConfig::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("SolveConfig: lambda must be >= 0");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("SolveConfig: newton_tol must be > 0");
    if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("SolveConfig: damping must lie in (0, 1]");
    if (max_newton < 0 || picard_warmup < 0) throw std::invalid_argument("SolveConfig: negative iteration count");
}

FlowState FlowState::from_fields(ScalarField psi, ScalarField omega, double lambda,
                                 std::optional<BoundaryData> boundary) {
    FlowState s;
    s.grid = psi.grid_ptr();
    s.lambda = lambda;
    s.boundary = boundary ? std::move(*boundary) : BoundaryData::uniform_stream(*s.grid, lambda);
    s.psi = std::move(psi);
    s.omega = std::move(omega);
    return s;
}

VectorField FlowState::velocity() const { return velocity_from_stream(psi, boundary.slopes()); }

namespace {

// Second derivatives of psi in (s, theta) with the boundary closure.
struct StreamDerivatives {
    ScalarField ps, pt, pss, pst, ptt;
};

StreamDerivatives stream_derivatives(const FlowState& st) {
    const auto& g = *st.grid;
    const std::size_t n = g.n_r(), nt = g.n_theta();
    const double h = g.h(), ih2 = 1.0 / (h * h), it2 = 1.0 / (g.dtheta() * g.dtheta());
    const ScalarField& psi = st.psi;

    StreamDerivatives d{d_ds(psi), d_dtheta(psi), ScalarField(st.grid), ScalarField(st.grid), ScalarField(st.grid)};
    for (std::size_t j = 0; j < nt; ++j) {
        d.ps(0, j) = g.radius(0) * st.boundary.slope_inner[j];
        d.ps(n - 1, j) = g.radius(n - 1) * st.boundary.slope_outer[j];
    }
    d.pst = d_dtheta(d.ps);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < nt; ++j) {
            d.ptt(i, j) = (psi(i, g.jp(j)) - 2.0 * psi(i, j) + psi(i, g.jm(j))) * it2;
            if (i == 0)
                d.pss(i, j) = (8.0 * psi(1, j) - psi(2, j) - 7.0 * psi(0, j) - 6.0 * h * d.ps(0, j)) * 0.5 * ih2;
            else if (i + 1 == n)
                d.pss(i, j) =
                    (8.0 * psi(n - 2, j) - psi(n - 3, j) - 7.0 * psi(n - 1, j) + 6.0 * h * d.ps(n - 1, j)) * 0.5 * ih2;
            else
                d.pss(i, j) = (psi(i + 1, j) - 2.0 * psi(i, j) + psi(i - 1, j)) * ih2;
        }
    return d;
}

// Unknowns interleaved per node: x[2k] = psi_k, x[2k+1] = omega_k. Row 2k is the
// stream-function equation at node k, row 2k+1 the vorticity equation (or the
// boundary-vorticity closure on the two circles). Interior rows are divided by
// r^2 so residuals are in physical units.
class StreamVorticitySystem {
public:
    StreamVorticitySystem(GridPtr grid, const BoundaryData& bc, const ScalarField* source)
        : grid_(std::move(grid)), bc_(bc), source_(source) {}

    std::size_t size() const { return 2 * grid_->size(); }

    void residual(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
        const auto& g = *grid_;
        const std::size_t n = g.n_r(), nt = g.n_theta();
        const double h = g.h(), ih2 = 1.0 / (h * h), it2 = 1.0 / (g.dtheta() * g.dtheta());
        const double i2h = 0.5 / h, i2t = 0.5 / g.dtheta();
        f.resize(static_cast<Eigen::Index>(size()));
        auto P = [&](std::size_t i, std::size_t j) { return x[static_cast<Eigen::Index>(2 * g.index(i, j))]; };
        auto W = [&](std::size_t i, std::size_t j) { return x[static_cast<Eigen::Index>(2 * g.index(i, j) + 1)]; };

        for (std::size_t i = 0; i < n; ++i) {
            const double r = g.radius(i), ir2 = 1.0 / (r * r);
            for (std::size_t j = 0; j < nt; ++j) {
                const auto k = static_cast<Eigen::Index>(2 * g.index(i, j));
                const std::size_t jp = g.jp(j), jm = g.jm(j);
                const double ptt = (P(i, jp) - 2.0 * P(i, j) + P(i, jm)) * it2;
                if (i == 0 || i + 1 == n) {
                    const bool inner = i == 0;
                    const double data = inner ? bc_.psi_inner[j] : bc_.psi_outer[j];
                    const double q = r * (inner ? bc_.slope_inner[j] : bc_.slope_outer[j]);
                    const std::size_t a = inner ? 1 : n - 2, b = inner ? 2 : n - 3;
                    const double sign = inner ? -1.0 : 1.0;
                    const double pss = (8.0 * P(a, j) - P(b, j) - 7.0 * P(i, j) + sign * 6.0 * h * q) * 0.5 * ih2;
                    f[k] = P(i, j) - data;
                    f[k + 1] = W(i, j) - (pss + ptt) * ir2;
                    continue;
                }
                const double pss = (P(i + 1, j) - 2.0 * P(i, j) + P(i - 1, j)) * ih2;
                const double wss = (W(i + 1, j) - 2.0 * W(i, j) + W(i - 1, j)) * ih2;
                const double wtt = (W(i, jp) - 2.0 * W(i, j) + W(i, jm)) * it2;
                const double ps = (P(i + 1, j) - P(i - 1, j)) * i2h, pt = (P(i, jp) - P(i, jm)) * i2t;
                const double ws = (W(i + 1, j) - W(i - 1, j)) * i2h, wt = (W(i, jp) - W(i, jm)) * i2t;
                f[k] = (pss + ptt) * ir2 - W(i, j);
                f[k + 1] = (wss + wtt - (pt * ws - ps * wt)) * ir2;
                if (source_) f[k + 1] -= (*source_)(i, j);
            }
        }
    }

    // Full Newton Jacobian when `full`, otherwise the frozen-advection (Picard)
    // operator. Both share one sparsity pattern so the symbolic LU is reused.
    SpMat jacobian(const Eigen::VectorXd& x, bool full) const {
        const auto& g = *grid_;
        const std::size_t n = g.n_r(), nt = g.n_theta();
        const double h = g.h(), ih2 = 1.0 / (h * h), it2 = 1.0 / (g.dtheta() * g.dtheta());
        const double i2h = 0.5 / h, i2t = 0.5 / g.dtheta();
        auto P = [&](std::size_t i, std::size_t j) { return x[static_cast<Eigen::Index>(2 * g.index(i, j))]; };
        auto W = [&](std::size_t i, std::size_t j) { return x[static_cast<Eigen::Index>(2 * g.index(i, j) + 1)]; };
        auto pcol = [&](std::size_t i, std::size_t j) { return static_cast<int>(2 * g.index(i, j)); };
        auto wcol = [&](std::size_t i, std::size_t j) { return static_cast<int>(2 * g.index(i, j) + 1); };

        std::vector<Triplet> t;
        t.reserve(size() * 10);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = g.radius(i), ir2 = 1.0 / (r * r);
            for (std::size_t j = 0; j < nt; ++j) {
                const int row = pcol(i, j);
                const std::size_t jp = g.jp(j), jm = g.jm(j);
                if (i == 0 || i + 1 == n) {
                    const bool inner = i == 0;
                    const std::size_t a = inner ? 1 : n - 2, b = inner ? 2 : n - 3;
                    t.emplace_back(row, pcol(i, j), 1.0);
                    t.emplace_back(row + 1, wcol(i, j), 1.0);
                    t.emplace_back(row + 1, pcol(a, j), -8.0 * 0.5 * ih2 * ir2);
                    t.emplace_back(row + 1, pcol(b, j), 1.0 * 0.5 * ih2 * ir2);
                    t.emplace_back(row + 1, pcol(i, j), (7.0 * 0.5 * ih2 + 2.0 * it2) * ir2);
                    t.emplace_back(row + 1, pcol(i, jp), -it2 * ir2);
                    t.emplace_back(row + 1, pcol(i, jm), -it2 * ir2);
                    continue;
                }
                // psi equation
                t.emplace_back(row, pcol(i + 1, j), ih2 * ir2);
                t.emplace_back(row, pcol(i - 1, j), ih2 * ir2);
                t.emplace_back(row, pcol(i, jp), it2 * ir2);
                t.emplace_back(row, pcol(i, jm), it2 * ir2);
                t.emplace_back(row, pcol(i, j), -2.0 * (ih2 + it2) * ir2);
                t.emplace_back(row, wcol(i, j), -1.0);

                // omega equation: (wss + wtt - pt ws + ps wt) / r^2
                const double ps = (P(i + 1, j) - P(i - 1, j)) * i2h, pt = (P(i, jp) - P(i, jm)) * i2t;
                const double ws = (W(i + 1, j) - W(i - 1, j)) * i2h, wt = (W(i, jp) - W(i, jm)) * i2t;
                const int wr = row + 1;
                t.emplace_back(wr, wcol(i + 1, j), (ih2 - pt * i2h) * ir2);
                t.emplace_back(wr, wcol(i - 1, j), (ih2 + pt * i2h) * ir2);
                t.emplace_back(wr, wcol(i, jp), (it2 + ps * i2t) * ir2);
                t.emplace_back(wr, wcol(i, jm), (it2 - ps * i2t) * ir2);
                t.emplace_back(wr, wcol(i, j), -2.0 * (ih2 + it2) * ir2);
                const double c = full ? 1.0 : 0.0;
                t.emplace_back(wr, pcol(i, jp), -c * ws * i2t * ir2);
                t.emplace_back(wr, pcol(i, jm), c * ws * i2t * ir2);
                t.emplace_back(wr, pcol(i + 1, j), c * wt * i2h * ir2);
                t.emplace_back(wr, pcol(i - 1, j), -c * wt * i2h * ir2);
            }
        }
        const auto dim = static_cast<Eigen::Index>(size());
        SpMat J(dim, dim);
        J.setFromTriplets(t.begin(), t.end());
        J.makeCompressed();
        return J;
    }

private:
    GridPtr grid_;
    const BoundaryData& bc_;
    const ScalarField* source_;
};

Eigen::VectorXd pack(const FlowState& s) {
    const std::size_t n = s.grid->size();
    Eigen::VectorXd x(static_cast<Eigen::Index>(2 * n));
    for (std::size_t k = 0; k < n; ++k) {
        x[static_cast<Eigen::Index>(2 * k)] = s.psi[k];
        x[static_cast<Eigen::Index>(2 * k + 1)] = s.omega[k];
    }
    return x;
}

void unpack(const Eigen::VectorXd& x, FlowState& s) {
    for (std::size_t k = 0; k < s.grid->size(); ++k) {
        s.psi[k] = x[static_cast<Eigen::Index>(2 * k)];
        s.omega[k] = x[static_cast<Eigen::Index>(2 * k + 1)];
    }
}

// The psi rows on both circles are Dirichlet data; hold them exactly rather than
// to the rounding of the linear solve.
void impose_traces(const PolarGrid& g, const BoundaryData& bc, Eigen::VectorXd& x) {
    const std::size_t nt = g.n_theta(), last = (g.n_r() - 1) * nt;
    for (std::size_t j = 0; j < nt; ++j) {
        x[static_cast<Eigen::Index>(2 * j)] = bc.psi_inner[j];
        x[static_cast<Eigen::Index>(2 * (last + j))] = bc.psi_outer[j];
    }
}

double max_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

template <class Solver>
Eigen::VectorXd solve_refined(const Solver& lu, const SpMat& A, const Eigen::VectorXd& rhs) {
    Eigen::VectorXd x = lu.solve(rhs);
    const double bn = rhs.norm();
    for (int pass = 0; pass < 3; ++pass) {
        const Eigen::VectorXd res = rhs - A * x;
        if (res.norm() <= 1e-13 * bn) break;
        x += lu.solve(res);
    }
    return x;
}

}  // namespace

VelocityGradient velocity_gradient(const FlowState& st) {
    const auto& g = *st.grid;
    const StreamDerivatives d = stream_derivatives(st);
    VelocityGradient out{ScalarField(st.grid), ScalarField(st.grid), ScalarField(st.grid), ScalarField(st.grid)};
    for (std::size_t i = 0; i < g.n_r(); ++i) {
        const double r = g.radius(i), ir2 = 1.0 / (r * r);
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            const double c = g.cos_theta(j), s = g.sin_theta(j);
            const double a = (d.pss(i, j) - d.ps(i, j)) * ir2;  // psi_rr
            const double b = (d.ps(i, j) + d.ptt(i, j)) * ir2;  // psi_r / r + psi_tt / r^2
            const double e = (d.pst(i, j) - d.pt(i, j)) * ir2;  // psi_rt / r - psi_t / r^2
            const double pxx = c * c * a + s * s * b - 2.0 * s * c * e;
            const double pyy = s * s * a + c * c * b + 2.0 * s * c * e;
            const double pxy = s * c * (a - b) + (c * c - s * s) * e;
            out.d1w1(i, j) = pxy;
            out.d2w1(i, j) = pyy;
            out.d1w2(i, j) = -pxx;
            out.d2w2(i, j) = -pxy;
        }
    }
    return out;
}

FlowState transfer_state(const FlowState& state, GridPtr dst, double lambda) {
    ScalarField psi = interpolate_field(state.psi, dst, [lambda](double r, double t) { return lambda * r * std::sin(t); });
    ScalarField omega = interpolate_field(state.omega, dst, [](double, double) { return 0.0; });
    return FlowState::from_fields(std::move(psi), std::move(omega), lambda);
}

FlowState solve_stationary(GridPtr grid, const SolveConfig& cfg, const std::optional<FlowState>& guess) {
    cfg.validate();
    const auto& g = *grid;
    if (cfg.mms_source && !cfg.mms_source->grid().same_layout(g))
        throw std::invalid_argument("solve_stationary: mms_source lives on a different grid");

    FlowState state = !guess                             ? potential_flow_guess(grid, cfg.lambda)
                      : guess->grid->same_layout(g) ? *guess
                                                        : transfer_state(*guess, grid, cfg.lambda);
    state.grid = grid;
    state.lambda = cfg.lambda;
    state.boundary = cfg.boundary ? *cfg.boundary : BoundaryData::uniform_stream(g, cfg.lambda);
    state.residual_history.clear();
    state.newton_iters = 0;

    const ScalarField* src = cfg.mms_source ? &*cfg.mms_source : nullptr;
    StreamVorticitySystem sys(grid, state.boundary, src);

    Eigen::VectorXd x = pack(state);
    impose_traces(g, state.boundary, x);
    Eigen::VectorXd f;
    sys.residual(x, f);
    double norm = max_norm(f);

    double scale = std::max(cfg.lambda, src ? src->max_abs() : 0.0);
    if (scale == 0.0) scale = norm;
    const double target = cfg.newton_tol * scale;
    state.residual_history.push_back(norm);

    auto log = [&](int it, const char* kind, double step) {
        if (!cfg.verbose) return;
        std::cerr << "  [newton] it=" << it << ' ' << kind << " step=" << step << " |F|=" << std::scientific
                  << std::setprecision(3) << norm << " target=" << target << std::defaultfloat << '\n';
    };

    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    bool analyzed = false;
    double alpha = cfg.damping;
    int iters = 0;

    auto best_state = [&]() {
        FlowState best = state;
        unpack(x, best);
        best.residual_norm = norm;
        best.newton_iters = iters;
        return best;
    };

    while (norm > target) {
        if (iters >= cfg.max_newton) {
            std::ostringstream msg;
            msg << "Newton iteration did not converge in " << cfg.max_newton << " iterations (residual " << norm
                << ", target " << target << ")";
            throw NonConvergence(msg.str(), best_state());
        }
        const bool full = iters >= cfg.picard_warmup;
        const SpMat J = sys.jacobian(x, full);
        if (!analyzed) {
            lu.analyzePattern(J);
            analyzed = true;
        }
        lu.factorize(J);
        if (lu.info() != Eigen::Success) throw NonConvergence("Jacobian factorization failed: " + lu.lastErrorMessage(), best_state());
        const Eigen::VectorXd delta = solve_refined(lu, J, Eigen::VectorXd(-f));

        const double f0 = f.norm();
        double step = alpha;
        Eigen::VectorXd xt, ft;
        for (;;) {
            xt = x + step * delta;
            impose_traces(g, state.boundary, xt);
            sys.residual(xt, ft);
            if (ft.norm() < (1.0 - 1e-4 * step) * f0 || max_norm(ft) <= target) break;
            step *= 0.5;
            if (step < 1.0 / 1024.0) {
                std::ostringstream msg;
                msg << "line search failed to reduce the residual (residual " << norm << ", target " << target << ")";
                throw LineSearchFailure(msg.str(), best_state());
            }
        }
        alpha = std::min(1.0, 2.0 * step);
        x = std::move(xt);
        f = std::move(ft);
        norm = max_norm(f);
        ++iters;
        state.residual_history.push_back(norm);
        log(iters, full ? "newton" : "picard", step);
    }

    unpack(x, state);
    state.residual_norm = norm;
    state.newton_iters = iters;
    return state;
}

PressureField recover_pressure(const FlowState& state) {
    const auto& g = *state.grid;
    const std::size_t n = g.n_r(), nt = g.n_theta(), N = g.size();
    const double h = g.h(), ih2 = 1.0 / (h * h), it2 = 1.0 / (g.dtheta() * g.dtheta());

    const VelocityGradient G = velocity_gradient(state);
    const VectorField w = state.velocity();
    const ScalarField wt = d_dtheta(state.omega);

    // Laplacian(p) = -(d1w1^2 + 2 d2w1 d1w2 + d2w2^2)
    std::vector<double> src(N);
    for (std::size_t k = 0; k < N; ++k)
        src[k] = -(G.d1w1[k] * G.d1w1[k] + 2.0 * G.d2w1[k] * G.d1w2[k] + G.d2w2[k] * G.d2w2[k]);

    // q = r d_r p = r [Laplacian(w) - (w . grad) w] . e_r, with Laplacian(w) . e_r = omega_theta / r.
    auto flux = [&](std::size_t i, std::size_t j) {
        const std::size_t k = g.index(i, j);
        const double c = g.cos_theta(j), s = g.sin_theta(j), r = g.radius(i);
        const double a1 = w.w1()[k] * G.d1w1[k] + w.w2()[k] * G.d2w1[k];
        const double a2 = w.w1()[k] * G.d1w2[k] + w.w2()[k] * G.d2w2[k];
        return wt(i, j) - r * (c * a1 + s * a2);
    };

    std::vector<double> weight(n, h);
    weight.front() = weight.back() = 0.5 * h;

    std::vector<double> q_in(nt), q_out(nt);
    double defect = 0.0, area = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
        q_in[j] = flux(0, j);
        q_out[j] = flux(n - 1, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = g.radius(i) * g.radius(i);
        double ring = 0.0;
        for (std::size_t j = 0; j < nt; ++j) ring += src[g.index(i, j)];
        defect += weight[i] * r2 * ring;
        area += weight[i] * r2 * static_cast<double>(nt);
    }
    for (std::size_t j = 0; j < nt; ++j) defect += q_in[j] - q_out[j];
    const double mean_defect = defect / area;

    // Half-cell (ghost point) Neumann rows; the weighted operator is symmetric
    // with constants in its kernel. One row is traded for the pin p(0, 0) = 0.
    std::vector<Triplet> t;
    t.reserve(N * 5);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(N));
    const std::size_t pinned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = g.radius(i) * g.radius(i);
        for (std::size_t j = 0; j < nt; ++j) {
            const auto k = static_cast<int>(g.index(i, j));
            if (static_cast<std::size_t>(k) == pinned) {
                t.emplace_back(k, k, 1.0);
                rhs[k] = 0.0;
                continue;
            }
            const double wi = weight[i];
            double diag = -2.0 * wi * it2;
            t.emplace_back(k, static_cast<int>(g.index(i, g.jp(j))), wi * it2);
            t.emplace_back(k, static_cast<int>(g.index(i, g.jm(j))), wi * it2);
            if (i > 0) {
                t.emplace_back(k, static_cast<int>(g.index(i - 1, j)), wi * ih2 * (i + 1 == n ? 2.0 : 1.0));
                diag -= wi * ih2 * (i + 1 == n ? 2.0 : 1.0);
            }
            if (i + 1 < n) {
                t.emplace_back(k, static_cast<int>(g.index(i + 1, j)), wi * ih2 * (i == 0 ? 2.0 : 1.0));
                diag -= wi * ih2 * (i == 0 ? 2.0 : 1.0);
            }
            t.emplace_back(k, k, diag);
            double b = wi * r2 * (src[static_cast<std::size_t>(k)] - mean_defect);
            if (i == 0) b += q_in[j];
            if (i + 1 == n) b -= q_out[j];
            rhs[k] = b;
        }
    }
    SpMat A(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    A.setFromTriplets(t.begin(), t.end());
    A.makeCompressed();
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw std::runtime_error("recover_pressure: singular pressure system");
    const Eigen::VectorXd sol = solve_refined(lu, A, rhs);

    PressureField out;
    out.p = ScalarField(state.grid);
    double outer_mean = 0.0;
    for (std::size_t j = 0; j < nt; ++j) outer_mean += sol[static_cast<Eigen::Index>(g.index(n - 1, j))];
    outer_mean /= static_cast<double>(nt);
    for (std::size_t k = 0; k < N; ++k) out.p[k] = sol[static_cast<Eigen::Index>(k)] - outer_mean;
    out.compatibility_defect = mean_defect;
    out.defect_flagged = std::abs(mean_defect) > 1e-6 * state.lambda * state.lambda;
    return out;
}

ScalarField momentum_residual(const FlowState& state, const PressureField& p) {
    const auto& g = *state.grid;
    if (!p.p.grid().same_layout(g)) throw std::invalid_argument("momentum_residual: grids differ");
    const VectorField w = state.velocity();
    const VelocityGradient G = velocity_gradient(state);
    // Laplacian(w) = (d2 omega, -d1 omega) for divergence-free w; differencing w twice
    // would lose consistency next to the circles, where w carries the exact slopes.
    const Gradient go = gradient(state.omega);
    const Gradient gp = gradient(p.p);
    ScalarField out(state.grid);
    for (std::size_t i = 1; i + 1 < g.n_r(); ++i)
        for (std::size_t j = 0; j < g.n_theta(); ++j) {
            const std::size_t k = g.index(i, j);
            const double a1 = w.w1()[k] * G.d1w1[k] + w.w2()[k] * G.d2w1[k];
            const double a2 = w.w1()[k] * G.d1w2[k] + w.w2()[k] * G.d2w2[k];
            out[k] = std::hypot(-go.dy[k] + a1 + gp.dx[k], go.dx[k] + a2 + gp.dy[k]);
        }
    return out;
}

}  // namespace leray
