#pragma once

#include <map>
#include <optional>
#include <vector>

#include "heckeproj/projection.hpp"

namespace heckeproj {

// Notation for frame matrices V:
//   V̄  entrywise conjugate   -> V.conjugate()
//   Vᵗ plain transpose       -> V.transpose()
//   V* conjugate transpose   -> V.adjoint()

/// Matrices V₁..V_r of size n with tr(V_s* V_m) = δ_sm.
class Frame {
public:
    int n() const noexcept { return n_; }
    int r() const noexcept { return static_cast<int>(mats_.size()); }
    const std::vector<CMatrix>& mats() const noexcept { return mats_; }

private:
    friend Frame validate_frame(std::vector<CMatrix> mats, double tol);
    friend Frame orthonormalize(std::vector<CMatrix> mats);

    Frame(int n, std::vector<CMatrix> mats) : n_(n), mats_(std::move(mats)) {}

    int n_ = 0;
    std::vector<CMatrix> mats_;
};

/// Gram matrix G_sm = tr(V_s* V_m).
CMatrix frame_gram(const std::vector<CMatrix>& mats);

/// Throws DimensionMismatch, RankDeficientFamily, NotOrthonormal.
Frame validate_frame(std::vector<CMatrix> mats, double tol = 1e-10);

/// Modified Gram–Schmidt under ⟨X, Y⟩ = tr(X* Y). Throws RankDeficientFamily.
Frame orthonormalize(std::vector<CMatrix> mats);

/// P_T = Σ_s Σ_{abcd} (V_s)_ab (V̄_s)_cd E_ac ⊗ E_bd, i.e. Σ_s vec(V_s) vec(V_s)*
/// with row-major vec.
Projection to_projection(const Frame& f);

/// Frame built from an orthonormal eigenbasis of the range of p.
Frame frame_from_projection(const Projection& p);

struct FrameAnalysis {
    CMatrix W;
    CMatrix A;
    std::vector<EigenCluster> a_spectrum;
    std::map<int, double> g_values;  // k -> G[A; k], k = 1..rn
    std::vector<int> g_roots;        // k with |G| < 1e-8 (1 + tr A)²
    bool tl_flag = false;
    std::optional<double> q_from_A;
    std::optional<int> k_from_A;
};

/// W = Σ_sm E_sm ⊗ V_m V̄_s, A = W W*.
CMatrix coupling_W(const Frame& f);

FrameAnalysis coupling_analysis(const Frame& f, double cluster_tol = kDefaultClusterTol);

/// max_m |tr((P_T)₁(P_T)₂)^m − tr(A^m)| for m = 1..m_max.
double trace_equivalence_check(const Frame& f, int m_max);

/// G[A; k] = (k − rn + tr A)² − k (k − rn + tr A²), rn = dim A.
double functional_G(const CMatrix& A, int k);
double functional_G(const FrameAnalysis& analysis, int k);

}  // namespace heckeproj
