#pragma once

#include "heckeproj/projection.hpp"

namespace heckeproj {

/// R = q·I − Q·P with Q = q + 1/q.
struct RMatrix {
    int n = 0;
    Complex q{1.0, 0.0};
    double Q = 2.0;
    CMatrix mat;
    CMatrix projection;  // the generating P (n² square)
};

/// Throws NonRealQ unless q ≠ 0 and q + 1/q is real and positive.
RMatrix build_R(const Projection& p, Complex q);

/// τ(g_i) = I^{⊗(i−1)} ⊗ R ⊗ I^{⊗(N−i−1)} on `strands` tensor legs. Uses R.mat.
CMatrix hecke_generator(const RMatrix& R, int strands, int site);

struct RelationResiduals {
    double quad = 0.0;          // τ² = 1 + (q − 1/q) τ
    double braid = 0.0;         // adjacent braid relation
    double far = 0.0;           // commutation for |i − m| ≥ 2
    double herm_or_unit = 0.0;  // hermiticity if Q ≥ 2, unitarity otherwise
    double hermiticity = 0.0;
    double unitarity = 0.0;
};

/// All residuals are Frobenius norms divided by (1 + ‖τ‖_F). Throws
/// DimensionOverflow when n^strands exceeds the cap.
RelationResiduals relation_check(const RMatrix& R, int strands);

/// Max normalized residual of e² = Q e, e_i e_{i±1} e_i = e_i and far
/// commutation with e_i = Q·embed(P, strands, i).
double tl_relation_check(const Projection& p, double Q, int strands);

/// Ř(λ) = λR − λ⁻¹R⁻¹.
struct BaxterizedR {
    int n = 0;
    Complex lambda{1.0, 0.0};
    CMatrix mat;
};

/// Throws SingularR when |det R| ≤ 1e-12, BadParameters when λ = 0.
BaxterizedR baxterize(const RMatrix& R, Complex lambda);

/// ‖Ř₁(λ)Ř₂(λμ)Ř₁(μ) − Ř₂(μ)Ř₁(λμ)Ř₂(λ)‖_F / (1 + ‖Ř₁(λ)Ř₂(λμ)Ř₁(μ)‖_F) on
/// three strands. Uses only R.mat.
double baxterize_check(const RMatrix& R, Complex lambda, Complex mu);

}  // namespace heckeproj
