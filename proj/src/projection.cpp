#include "heckeproj/projection.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace heckeproj {

namespace {

int perfect_square_root(Eigen::Index size) {
    const auto root = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(size))));
    for (auto c = std::max<Eigen::Index>(root - 1, 0); c <= root + 1; ++c) {
        if (c * c == size) return static_cast<int>(c);
    }
    return -1;
}

}  // namespace

Projection Projection::validate(const CMatrix& mat, double tol) {
    if (mat.rows() != mat.cols()) {
        throw Error(ErrorKind::BadDimension, "projection matrix must be square");
    }
    const int n = perfect_square_root(mat.rows());
    if (n < 2) {
        throw Error(ErrorKind::BadDimension,
                    "size " + std::to_string(mat.rows()) + " is not n² for an integer n >= 2");
    }
    if (!mat.allFinite()) throw Error(ErrorKind::BadParameters, "projection matrix has non-finite entries");

    const double scale = 1.0 + mat.norm();
    const double herm = hermitian_defect(mat);
    if (herm > tol * scale) {
        throw Error(ErrorKind::NotHermitian, "‖P − P*‖_F = " + std::to_string(herm));
    }
    const double idem = (mat * mat - mat).norm();
    if (idem > tol * scale) {
        throw Error(ErrorKind::NotIdempotent, "‖P² − P‖_F = " + std::to_string(idem));
    }
    const double trace = mat.trace().real();
    const int r = static_cast<int>(std::llround(trace));
    if (rank_eps(mat, kDefaultRankTol) != r) {
        throw Error(ErrorKind::NotIdempotent, "rank disagrees with trace " + std::to_string(trace));
    }
    return Projection(n, r, mat);
}

CMatrix Projection::leg1() const { return kron(mat_, identity(n_)); }

CMatrix Projection::leg2() const { return kron(identity(n_), mat_); }

CMatrix embed(const Projection& p, int strands, int site, std::int64_t cap) {
    return embed_local(p.mat(), p.n(), strands, site, cap);
}

Projection dual(const Projection& p) {
    const auto d = static_cast<Eigen::Index>(p.n()) * p.n();
    return Projection::validate(identity(d) - p.mat());
}

CMatrix difference_operator(const Projection& p) { return p.leg1() - p.leg2(); }

SpectralReport k_and_spectrum(const Projection& p, double cluster_tol, double rank_tol) {
    const CMatrix kp = difference_operator(p);
    SpectralReport rep;

    const auto eig = jacobi_eigh(kp, false);
    rep.eigs = cluster_values(eig.values, cluster_tol);

    const double top = eig.values.cwiseAbs().maxCoeff();
    int rank = 0;
    if (top > 0.0) {
        for (Eigen::Index i = 0; i < eig.values.size(); ++i)
            if (std::abs(eig.values(i)) > rank_tol * top) ++rank;
    }
    if (rank % 2 != 0) {
        throw Error(ErrorKind::OddRank, "rank of K_P is " + std::to_string(rank));
    }
    rep.k = rank / 2;

    std::vector<EigenCluster> nonzero;
    for (const auto& c : rep.eigs)
        if (std::abs(c.value) > cluster_tol) nonzero.push_back(c);

    rep.lambda_plus = top;
    if (nonzero.size() == 2 && nonzero[0].value < 0.0 && nonzero[1].value > 0.0) {
        const auto& minus = nonzero[0];
        const auto& plus = nonzero[1];
        rep.plus_multiplicity = plus.multiplicity;
        rep.minus_multiplicity = minus.multiplicity;
        rep.lambda_plus = 0.5 * (plus.value - minus.value);
        rep.is_solution_spectrum = std::abs(plus.value + minus.value) <= cluster_tol &&
                                   plus.multiplicity == minus.multiplicity && rep.lambda_plus < 1.0;
    }
    if (rep.lambda_plus > 0.0 && rep.lambda_plus < 1.0) {
        rep.q_estimate = 1.0 / std::sqrt(1.0 - rep.lambda_plus * rep.lambda_plus);
    } else {
        rep.q_estimate = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

CMatrix qr_isometry(const CMatrix& m) {
    Eigen::HouseholderQR<CMatrix> qr(m);
    CMatrix q = qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
    const CMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

CMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal(gen);
            const double im = normal(gen);
            g(i, j) = Complex(re, im);
        }
    return qr_isometry(g);
}

Projection random_projection(int n, int r, std::uint64_t seed) {
    const int d = n * n;
    if (n < 2) throw Error(ErrorKind::BadDimension, "n must be >= 2");
    if (r < 0 || r > d) throw Error(ErrorKind::BadRank, "rank must lie in [0, n²]");
    if (r == 0) return Projection::validate(CMatrix::Zero(d, d));
    const CMatrix u = random_isometry(d, r, seed);
    CMatrix p = u * u.adjoint();
    p = (p + p.adjoint()) / 2.0;
    return Projection::validate(p);
}

CMatrix range_isometry(const Projection& p) {
    // Eigenvalues ascend, so the top r columns span the range.
    const auto eig = jacobi_eigh(p.mat(), true);
    return eig.vectors.rightCols(p.r());
}

Projection conjugate_local(const Projection& p, const CMatrix& u) {
    const CMatrix uu = kron(u, u);
    CMatrix m = uu * p.mat() * uu.adjoint();
    m = (m + m.adjoint()) / 2.0;
    return Projection::validate(m);
}

}  // namespace heckeproj
