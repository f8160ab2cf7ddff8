#include "heckeproj/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

namespace heckeproj {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;
constexpr double kMaxStep = 10.0;
constexpr int kStagnationWindow = 150;
constexpr int kStagnationStart = 400;
constexpr double kCommutingGap = 1e-4;
constexpr double kResidualFloor = 1e-12;

struct Legs {
    CMatrix p1;
    CMatrix p2;
};

Legs legs_of(const CMatrix& u, int n) {
    const CMatrix p = u * u.adjoint();
    return {kron(p, identity(n)), kron(identity(n), p)};
}

// tr(X Y) without forming the product.
double trace_of_product(const CMatrix& x, const CMatrix& y) {
    return x.cwiseProduct(y.transpose()).sum().real();
}

struct Value {
    double F = 0.0;
    double gap = 0.0;  // t₁ − t₂
};

Value certificate_value(const CMatrix& u, int n) {
    const Legs l = legs_of(u, n);
    const CMatrix x = l.p1 * l.p2;
    const double rn = static_cast<double>(u.cols()) * n;
    const double t1 = x.trace().real();
    const double t2 = trace_of_product(x, x);
    const double a = rn - t1;
    Value v;
    v.gap = t1 - t2;
    if (a <= 1e-14) return v;
    const double alpha0 = v.gap / a;
    const CMatrix h = x * l.p1 - l.p2 * x - alpha0 * (l.p1 - l.p2);
    v.F = a * 0.5 * h.squaredNorm();
    return v;
}

struct Evaluation {
    Value value;
    CMatrix grad;  // ambient
};

CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

// Gradient of the trace polynomial, plus the certificate value, sharing products.
Evaluation evaluate(const CMatrix& u, int n, bool certificate) {
    const Legs l = legs_of(u, n);
    const CMatrix x = l.p1 * l.p2;
    const CMatrix x2 = x * x;
    const CMatrix p2x = l.p2 * x;
    const CMatrix xp1 = x * l.p1;
    const double rn = static_cast<double>(u.cols()) * n;
    const double t1 = x.trace().real();
    const double t2 = x2.trace().real();
    const double t3 = trace_of_product(x2, x);
    const double a = rn - t1;
    const double c = t2 - t3;
    const double half_b = t2 - t1;

    Evaluation e;
    e.value.gap = t1 - t2;
    if (certificate) {
        if (a > 1e-14) {
            const double alpha0 = e.value.gap / a;
            const CMatrix h = xp1 - p2x - alpha0 * (l.p1 - l.p2);
            e.value.F = a * 0.5 * h.squaredNorm();
        }
    } else {
        e.value.F = a * c - half_b * half_b;
    }

    // dt_m = m tr[(ptr₃(P₂X^{m−1}) + ptr₁(X^{m−1}P₁)) dP]
    const CMatrix g1 = partial_trace(l.p2, n, 3, 3) + partial_trace(l.p1, n, 3, 1);
    const CMatrix g2 = 2.0 * (partial_trace(p2x, n, 3, 3) + partial_trace(xp1, n, 3, 1));
    const CMatrix g3 = 3.0 * (partial_trace(CMatrix(l.p2 * x2), n, 3, 3) + partial_trace(CMatrix(x2 * l.p1), n, 3, 1));
    const CMatrix dF = -c * g1 + a * (g2 - g3) - 2.0 * half_b * (g2 - g1);
    e.grad = 2.0 * hermitian_part(dF) * u;
    return e;
}

double real_inner(const CMatrix& x, const CMatrix& y) { return (x.adjoint() * y).trace().real(); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct DescentOutcome {
    CMatrix u;
    double F = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

// Riemannian conjugate gradient (Polak–Ribière+) with QR retraction and
// Armijo backtracking. F never increases along an accepted step.
DescentOutcome descend(CMatrix u, int n, double f_tol, int max_iters, double step0, bool watch_stagnation) {
    Evaluation e = evaluate(u, n, true);
    CMatrix g = riemannian_gradient(u, e.grad);
    CMatrix d = -g;
    double f = e.value.F;
    double gap = e.value.gap;
    double step = step0;
    std::vector<double> history;
    int it = 0;
    for (; it < max_iters; ++it) {
        if (f < f_tol) break;
        const double gg = g.squaredNorm();
        if (gg == 0.0) break;
        double slope = real_inner(g, d);
        if (slope >= 0.0) {
            d = -g;
            slope = -gg;
        }

        bool accepted = false;
        CMatrix u_next;
        Value v_next;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            for (double t = step; t >= kMinStep; t *= 0.5) {
                u_next = qr_isometry(u + t * d);
                v_next = certificate_value(u_next, n);
                if (v_next.F <= f + kArmijo * t * slope) {
                    accepted = true;
                    step = std::min(2.0 * t, kMaxStep);
                    break;
                }
            }
            if (!accepted) {
                if (slope == -gg) break;  // already steepest descent
                d = -g;
                slope = -gg;
                step = step0;
            }
        }
        if (!accepted) break;

        const Evaluation e_next = evaluate(u_next, n, false);
        const CMatrix g_next = riemannian_gradient(u_next, e_next.grad);
        const CMatrix g_moved = riemannian_gradient(u_next, g);
        const CMatrix d_moved = riemannian_gradient(u_next, d);
        const double beta = std::max(0.0, real_inner(g_next, g_next - g_moved) / gg);
        d = -g_next + beta * d_moved;
        g = g_next;
        u = std::move(u_next);
        f = v_next.F;
        gap = v_next.gap;

        if (watch_stagnation) {
            if (gap < kCommutingGap && it > 200) {
                ++it;
                break;
            }
            history.push_back(f);
            const auto h = static_cast<int>(history.size());
            if (h > kStagnationStart && f > 0.1 * history[static_cast<std::size_t>(h - 1 - kStagnationWindow)]) {
                ++it;
                break;
            }
        }
    }
    return {std::move(u), f, gap, it};
}

struct StartOutcome {
    int index = 0;
    DescentOutcome descent;
    std::optional<Projection> polished;
    std::optional<SolutionReport> report;
    double polished_F = std::numeric_limits<double>::infinity();
    bool verified = false;
};

StartOutcome run_start(const SearchConfig& cfg, int index) {
    const Eigen::Index dim = static_cast<Eigen::Index>(cfg.n) * cfg.n;
    CMatrix u0 = (index == 0 && cfg.initial) ? range_isometry(*cfg.initial)
                                              : random_isometry(dim, cfg.r, splitmix64(cfg.seed ^ splitmix64(index)));
    StartOutcome out;
    out.index = index;
    out.descent = descend(std::move(u0), cfg.n, cfg.f_tol, cfg.max_iters, cfg.step0, true);
    if (out.descent.F >= cfg.f_tol) return out;
    try {
        CMatrix p = out.descent.u * out.descent.u.adjoint();
        out.polished = polish(p);
        out.polished_F = objective(range_isometry(*out.polished), cfg.n);
        out.report = classify(*out.polished);
        const auto cls = out.report->cls;
        out.verified = (cls == SolutionClass::HeckeGeneric || cls == SolutionClass::TemperleyLieb) &&
                       out.report->hecke_residual < 1e-8 && out.polished_F < cfg.f_tol;
    } catch (const Error&) {
        out.verified = false;
    }
    return out;
}

// Residuals below kResidualFloor are rounding noise and compare equal.
bool better_verified(const StartOutcome& x, const StartOutcome& y) {
    const double rx = std::max(x.report->hecke_residual, kResidualFloor);
    const double ry = std::max(y.report->hecke_residual, kResidualFloor);
    if (rx != ry) return rx < ry;
    if (x.report->k != y.report->k) return x.report->k < y.report->k;
    return x.index < y.index;
}

}  // namespace

void validate_config(const SearchConfig& c) {
    if (c.n < 2) throw Error(ErrorKind::BadConfig, "n must be >= 2");
    if (checked_pow(c.n, 3, 4096) < 0) throw Error(ErrorKind::BadConfig, "n too large for dense search");
    if (c.r < 1 || c.r > c.n * c.n - 1) throw Error(ErrorKind::BadConfig, "r must lie in [1, n²−1]");
    if (c.starts < 1) throw Error(ErrorKind::BadConfig, "starts must be positive");
    if (c.max_iters < 0) throw Error(ErrorKind::BadConfig, "max_iters must be non-negative");
    if (!(c.f_tol > 0.0) || !(c.step0 > 0.0) || !(c.polish_tol > 0.0)) {
        throw Error(ErrorKind::BadConfig, "tolerances and step0 must be positive");
    }
    if (c.threads < 0) throw Error(ErrorKind::BadConfig, "threads must be >= 0");
    if (c.initial && (c.initial->n() != c.n || c.initial->r() != c.r)) {
        throw Error(ErrorKind::BadConfig, "initial projection does not match (n, r)");
    }
}

CMatrix riemannian_gradient(const CMatrix& u, const CMatrix& ambient) {
    return ambient - u * hermitian_part(u.adjoint() * ambient);
}

double objective(const CMatrix& u, int n) {
    const CMatrix gram = u.adjoint() * u;
    if ((gram - CMatrix::Identity(u.cols(), u.cols())).norm() > 1e-8) {
        throw Error(ErrorKind::NotIsometry, "U*U differs from the identity");
    }
    if (u.rows() != static_cast<Eigen::Index>(n) * n) throw Error(ErrorKind::DimensionMismatch, "U must have n² rows");
    return certificate_value(u, n).F;
}

double objective_trace_form(const CMatrix& u, int n) {
    const Legs l = legs_of(u, n);
    const CMatrix x = l.p1 * l.p2;
    const CMatrix x2 = x * x;
    const double rn = static_cast<double>(u.cols()) * n;
    const double t1 = x.trace().real();
    const double t2 = x2.trace().real();
    const double t3 = trace_of_product(x2, x);
    return (rn - t1) * (t2 - t3) - (t1 - t2) * (t1 - t2);
}

CMatrix ambient_gradient(const CMatrix& u, int n) { return evaluate(u, n, false).grad; }

double gradient_check(int n, int r, int samples, std::uint64_t seed, double h) {
    const Eigen::Index dim = static_cast<Eigen::Index>(n) * n;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const CMatrix u = random_isometry(dim, r, splitmix64(seed + static_cast<std::uint64_t>(s)));
        const CMatrix grad = ambient_gradient(u, n);
        CMatrix fd(dim, r);
        for (Eigen::Index j = 0; j < r; ++j) {
            for (Eigen::Index i = 0; i < dim; ++i) {
                Complex deriv;
                for (const Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
                    CMatrix up = u, dn = u;
                    up(i, j) += h * dir;
                    dn(i, j) -= h * dir;
                    const double slope = (objective_trace_form(up, n) - objective_trace_form(dn, n)) / (2.0 * h);
                    deriv += slope * dir;
                }
                fd(i, j) = deriv;
            }
        }
        const double scale = std::max(grad.norm(), 1e-12);
        worst = std::max(worst, (fd - grad).norm() / scale);
    }
    return worst;
}

Projection polish(const CMatrix& p_in, int max_iters) {
    require_hermitian(p_in, 1e-2, "polish");
    const CMatrix p = hermitian_part(p_in);
    if ((p * p - p).norm() >= 0.1) throw Error(ErrorKind::NotIdempotent, "polish: ‖P² − P‖_F >= 0.1");
    const Eigen::Index dim = p.rows();
    const int n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(dim))));
    if (static_cast<Eigen::Index>(n) * n != dim) throw Error(ErrorKind::BadDimension, "polish: size is not n²");

    const auto eig = jacobi_eigh(p, true);
    int r = 0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values(i) > 0.5) ++r;
    if (r != static_cast<int>(std::llround(p.trace().real()))) {
        throw Error(ErrorKind::RankDrift, "spectral rounding changed the rank");
    }
    if (r == 0 || r == dim) {
        return Projection::validate(r == 0 ? CMatrix(CMatrix::Zero(dim, dim)) : CMatrix(CMatrix::Identity(dim, dim)), 1e-12);
    }
    CMatrix u = qr_isometry(eig.vectors.rightCols(r));
    if (max_iters > 0) u = descend(std::move(u), n, 0.0, max_iters, 0.1, false).u;
    return Projection::validate(hermitian_part(u * u.adjoint()), 1e-12);
}

Projection polish(const Projection& p, int max_iters) { return polish(p.mat(), max_iters); }

SearchResult minimize(const SearchConfig& config) {
    validate_config(config);
    const double grad_err = gradient_check(config.n, config.r, 1, config.seed);
    if (grad_err > 1e-6) {
        throw Error(ErrorKind::GradientMismatch, "analytic gradient disagrees with finite differences: " +
                                                     std::to_string(grad_err));
    }

    std::vector<StartOutcome> outcomes(static_cast<std::size_t>(config.starts));
    int threads = config.threads == 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                                      : config.threads;
    threads = std::min(threads, config.starts);
    if (threads <= 1) {
        for (int i = 0; i < config.starts; ++i) outcomes[static_cast<std::size_t>(i)] = run_start(config, i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int i = t; i < config.starts; i += threads) outcomes[static_cast<std::size_t>(i)] = run_start(config, i);
            });
        }
        for (auto& th : pool) th.join();
    }

    const StartOutcome* best = nullptr;
    int converged = 0;
    for (const auto& o : outcomes) {
        if (!o.verified) continue;
        ++converged;
        if (!best || better_verified(o, *best)) best = &o;
    }
    if (best) {
        return SearchResult{best->polished_F, *best->polished, *best->report, best->descent.iterations, true,
                            best->index, converged};
    }

    // No verified start: report the lowest F reached.
    const StartOutcome* lowest = &outcomes.front();
    for (const auto& o : outcomes)
        if (o.descent.F < lowest->descent.F) lowest = &o;
    CMatrix p = lowest->descent.u * lowest->descent.u.adjoint();
    Projection proj = Projection::validate(hermitian_part(p), 1e-9);
    try {
        proj = polish(proj);
    } catch (const Error&) {
    }
    SolutionReport report = classify(proj);
    return SearchResult{lowest->descent.F, proj, report, lowest->descent.iterations, false, lowest->index, 0};
}

}  // namespace heckeproj
