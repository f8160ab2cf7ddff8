#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heckeproj/projection.hpp"

namespace heckeproj {

/// Thresholds used by classification. Defaults are the library defaults;
/// the CLI exposes each one as a flag.
struct Tolerances {
    double validate = kDefaultProjectionTol;
    double rank = kDefaultRankTol;
    double cluster = kDefaultClusterTol;
    double solution = 1e-8;
    double estimator_agreement = 1e-6;
    double commuting = 1e-12;
};

/// t_m = tr((P₁P₂)^m) on n³ for m = 1..m_max. Throws NonRealTrace.
std::vector<double> trace_sequence(const Projection& p, int m_max);

/// Quadratic-in-α data of ½·tr(H_α²) with H_α = P₁P₂P₁ − P₂P₁P₂ − α(P₁ − P₂).
struct FunctionalCertificate {
    int n = 0;
    int r = 0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double alpha0 = 0.0;
    double F = 0.0;
    std::vector<double> t;  // t_1 .. t_3
};

FunctionalCertificate functional_F(const Projection& p);

/// Q = sqrt((rn − t₁)/(t₁ − t₂)). Throws CommutingProjections when t₁ − t₂ ≤ 1e-12.
double estimate_Q(const FunctionalCertificate& cert, double commuting_tol = 1e-12);

/// H_α built explicitly on n³.
CMatrix certificate_matrix(const Projection& p, double alpha);

struct Residuals {
    double hecke = 0.0;
    double tl = 0.0;
};

/// Normalized residuals of Q²(P₁P₂P₁ − P₂P₁P₂) = P₁ − P₂ and of the two
/// Temperley-Lieb relations.
Residuals residuals(const Projection& p, double Q);

enum class SolutionClass { TrivialZero, TrivialIdentity, TemperleyLieb, HeckeGeneric, NonSolution };

std::string_view to_string(SolutionClass c) noexcept;
SolutionClass solution_class_from_string(std::string_view s);

inline bool is_solution(SolutionClass c) noexcept { return c != SolutionClass::NonSolution; }

struct BoundFlag {
    std::string name;
    bool applicable = false;
    bool passed = true;
    std::string detail;
};

struct BoundsReport {
    std::vector<BoundFlag> flags;

    bool all_ok() const;
    const BoundFlag* find(std::string_view name) const;
};

/// Parameter relations a nontrivial solution must satisfy:
///   kbounds         r(n²−r)/(2n) ≤ k ≤ min(rn, n³−rn)
///   Qrn0            rn − k + k/Q ≤ r²
///   kQmin1          non-TL, 1 < r < n
///   kQmin2          non-TL, n²−n < r < n²
///   Qle2_small_r    Q ≤ 2 excludes n ≥ 2r except (Q,n,r) = (2,2,1)
///   Qle2_large_r    Q ≤ 2 excludes 2r ≥ 2n²−n except (Q,n,r) = (2,2,3)
///   tl_Q2_integral  TL at Q = 2 needs √(n²−4r) ∈ ℤ
BoundsReport check_bounds(int n, int r, int k, double Q, bool is_tl, double slack = 1e-9);

/// q on the branch with q + 1/q = Q: real q ≥ 1 for Q ≥ 2, e^{iθ} with
/// 2cos θ = Q for 0 < Q < 2; q = 1 when |Q − 2| ≤ 1e-10.
Complex q_from_Q(double Q);

struct SolutionReport {
    int n = 0;
    int r = 0;
    int k = 0;
    double Q = 0.0;            // NaN when not a solution
    double Q_trace = 0.0;      // trace-based estimate (NaN if unavailable)
    double Q_spectral = 0.0;   // spectral estimate (NaN if unavailable)
    Complex q{0.0, 0.0};       // branch per q_from_Q, NaN when Q is NaN
    SolutionClass cls = SolutionClass::NonSolution;
    double hecke_residual = 0.0;
    double tl_residual = 0.0;
    bool bounds_ok = true;
    BoundsReport bounds;
    Tolerances tolerances;
};

/// Full pipeline: trivial detection, spectral test, both Q estimators,
/// residuals, bounds. Throws InconsistentEstimators when a residual-verified
/// solution has disagreeing Q or k estimates.
SolutionReport classify(const Projection& p, const Tolerances& tol = {});

struct DefectResult {
    int defect = 0;
    std::optional<CMatrix> pi3;  // projection on n³, absent when Q ≤ 1
};

/// rank(Q²P₁P₂P₁ − P₁) = rn − k and the auxiliary projection Π₃ built from
/// the dual. Throws NotASolution or DefectMismatch.
DefectResult rank_defect_and_pi3(const Projection& p, double Q);

}  // namespace heckeproj
