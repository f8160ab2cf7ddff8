#pragma once

#include <cstdint>
#include <vector>

#include "heckeproj/matkit.hpp"

namespace heckeproj {

inline constexpr double kDefaultProjectionTol = 1e-9;
inline constexpr std::int64_t kStrandDimensionCap = 4096;

/// A Hermitian idempotent on C^{n²} with its rank cached.
class Projection {
public:
    /// Checks hermiticity and idempotency at tol (relative to 1 + ‖mat‖_F).
    /// Throws BadDimension, NotHermitian or NotIdempotent.
    static Projection validate(const CMatrix& mat, double tol = kDefaultProjectionTol);

    int n() const noexcept { return n_; }
    int r() const noexcept { return r_; }
    const CMatrix& mat() const noexcept { return mat_; }

    /// P₁ = P ⊗ I_n and P₂ = I_n ⊗ P on n³.
    CMatrix leg1() const;
    CMatrix leg2() const;

private:
    Projection(int n, int r, CMatrix mat) : n_(n), r_(r), mat_(std::move(mat)) {}

    int n_ = 0;
    int r_ = 0;
    CMatrix mat_;
};

/// I_n^{⊗(site-1)} ⊗ P ⊗ I_n^{⊗(strands-site-1)}.
CMatrix embed(const Projection& p, int strands, int site, std::int64_t cap = kStrandDimensionCap);

/// I − P, rank n² − r.
Projection dual(const Projection& p);

/// Clustered spectrum of K_P = P₁ − P₂ and the quantities derived from it.
struct SpectralReport {
    std::vector<EigenCluster> eigs;
    int k = 0;
    double lambda_plus = 0.0;
    double q_estimate = 0.0;  // NaN unless lambda_plus lies in (0, 1)
    bool is_solution_spectrum = false;
    int plus_multiplicity = 0;
    int minus_multiplicity = 0;
};

CMatrix difference_operator(const Projection& p);

/// k = rank(K_P)/2 and the ±λ pairing test. Throws OddRank.
SpectralReport k_and_spectrum(const Projection& p, double cluster_tol = kDefaultClusterTol,
                              double rank_tol = kDefaultRankTol);

/// U·U* for a seeded Haar-random n²×r isometry. Throws BadRank.
Projection random_projection(int n, int r, std::uint64_t seed);

/// n²×r isometry from QR of a seeded complex Gaussian, R's diagonal made
/// real positive.
CMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Orthonormalizes columns with the R-diagonal sign convention above.
CMatrix qr_isometry(const CMatrix& m);

/// Orthonormal basis of the range of p (eigenvectors with eigenvalue 1).
CMatrix range_isometry(const Projection& p);

/// Conjugation by u ⊗ u for a unitary u on C^n.
Projection conjugate_local(const Projection& p, const CMatrix& u);

}  // namespace heckeproj
