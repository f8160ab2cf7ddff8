#pragma once

#include <cstdint>
#include <optional>

#include "heckeproj/hecke.hpp"

namespace heckeproj {

struct SearchConfig {
    int n = 2;
    int r = 1;
    int starts = 32;
    int max_iters = 5000;
    double f_tol = 1e-18;
    double step0 = 0.1;
    std::uint64_t seed = 0;
    double polish_tol = 1e-12;
    int threads = 1;                     // 0 = hardware concurrency
    std::optional<Projection> initial;   // replaces the first random start
};

/// Throws BadConfig.
void validate_config(const SearchConfig& config);

struct SearchResult {
    double best_F = 0.0;
    Projection projection;
    SolutionReport report;
    int iterations = 0;
    bool converged = false;
    int best_start = 0;
    int converged_starts = 0;
};

/// F[UU*] for an isometry U, evaluated as a·½‖H_{α₀}‖²_F, which equals
/// (rn − t₁)(t₂ − t₃) − (t₁ − t₂)² on projections without the cancellation
/// of the trace form. Throws NotIsometry.
double objective(const CMatrix& U, int n);

/// The trace polynomial (rn − t₁)(t₂ − t₃) − (t₁ − t₂)² of P = UU*, defined
/// for any U (r = number of columns).
double objective_trace_form(const CMatrix& U, int n);

/// Exact Euclidean gradient of objective_trace_form with respect to U under
/// ⟨X, Y⟩ = Re tr(X* Y).
CMatrix ambient_gradient(const CMatrix& U, int n);

/// Projection of an ambient gradient onto the tangent space of the Stiefel
/// manifold at U.
CMatrix riemannian_gradient(const CMatrix& U, const CMatrix& ambient);

/// Largest relative error between ambient_gradient and central finite
/// differences (step h) along random directions at `samples` random
/// isometries.
double gradient_check(int n, int r, int samples, std::uint64_t seed, double h = 1e-5);

/// Hermitize, round the spectrum to {0, 1} at the trace rank, then run a
/// short descent on F. Throws NotIdempotent (far from a projection) or
/// RankDrift.
Projection polish(const CMatrix& p, int max_iters = 200);
Projection polish(const Projection& p, int max_iters = 200);

/// Multi-start Riemannian descent for global minima of F over rank-r
/// projections on C^{n²}. Returns the best start with converged = false
/// when no start reaches a verified solution.
SearchResult minimize(const SearchConfig& config);

}  // namespace heckeproj
