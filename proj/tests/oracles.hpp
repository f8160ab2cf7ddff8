#pragma once

// Independent reference computations used only by tests. Nothing here calls
// the production kernels it checks.

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <functional>
#include <cmath>
#include <random>
#include <vector>

#include "heckeproj/matkit.hpp"

namespace oracle {

using heckeproj::CMatrix;
using heckeproj::Complex;

inline CMatrix kron_loop(const CMatrix& a, const CMatrix& b) {
    CMatrix out = CMatrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline CMatrix eye(Eigen::Index n) { return CMatrix::Identity(n, n); }

inline CMatrix unit(Eigen::Index n, Eigen::Index a, Eigen::Index b) {
    CMatrix m = CMatrix::Zero(n, n);
    m(a, b) = 1.0;
    return m;
}

/// I^{⊗(site−1)} ⊗ op ⊗ I^{⊗(strands−site−1)} by repeated loop Kronecker products.
inline CMatrix embed_chain(const CMatrix& op, int n, int strands, int site) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int s = 1; s < site; ++s) out = kron_loop(out, eye(n));
    out = kron_loop(out, op);
    for (int s = site + 2; s <= strands; ++s) out = kron_loop(out, eye(n));
    return out;
}

/// Ascending eigenvalues by Eigen's self-adjoint solver.
inline Eigen::VectorXd eigvals(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline Eigen::VectorXd singvals(const CMatrix& a) {
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues();
}

inline int rank(const CMatrix& a, double rel = 1e-8) {
    const Eigen::VectorXd s = singvals(a);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    return static_cast<int>((s.array() > rel * s(0)).count());
}

/// Eigenvalues of a Hermitian matrix grouped within tol: (value, multiplicity).
inline std::vector<std::pair<double, int>> clusters(const CMatrix& h, double tol = 1e-7) {
    const Eigen::VectorXd ev = eigvals(h);
    std::vector<std::pair<double, int>> out;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (!out.empty() && std::abs(ev(i) - out.back().first) <= tol) {
            ++out.back().second;
        } else {
            out.emplace_back(ev(i), 1);
        }
    }
    return out;
}

inline CMatrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

inline CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    const CMatrix g = gaussian(n, n, rng);
    return (g + g.adjoint()) / 2.0;
}

/// Unitary from Householder QR of a Gaussian (no sign fixing needed here).
inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<CMatrix> qr(gaussian(n, n, rng));
    return qr.householderQ() * CMatrix::Identity(n, n);
}

/// Rank-r orthogonal projection on C^{n²} from a random unitary's first r columns.
inline CMatrix random_projection_matrix(int n, int r, std::mt19937_64& rng) {
    const CMatrix u = random_unitary(static_cast<Eigen::Index>(n) * n, rng).leftCols(r);
    return u * u.adjoint();
}

/// r matrices of size n orthonormal under tr(X* Y), from a random unitary on C^{n²}.
inline std::vector<CMatrix> random_frame_mats(int n, int r, std::mt19937_64& rng) {
    const CMatrix u = random_unitary(static_cast<Eigen::Index>(n) * n, rng);
    std::vector<CMatrix> out;
    for (int s = 0; s < r; ++s) {
        CMatrix v(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) v(a, b) = u(a * n + b, s);
        out.push_back(v);
    }
    return out;
}

/// P = Σ_s Σ_abcd (V_s)_ab conj((V_s)_cd) E_ac ⊗ E_bd, expanded term by term.
inline CMatrix frame_projection(const std::vector<CMatrix>& vs) {
    const Eigen::Index n = vs.front().rows();
    CMatrix p = CMatrix::Zero(n * n, n * n);
    for (const auto& v : vs)
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b)
                for (Eigen::Index c = 0; c < n; ++c)
                    for (Eigen::Index d = 0; d < n; ++d)
                        p += v(a, b) * std::conj(v(c, d)) * kron_loop(unit(n, a, c), unit(n, b, d));
    return p;
}

/// tr((P⊗I)(I⊗P))^m on n³ by explicit products.
inline double trace_power(const CMatrix& p, int n, int m) {
    const CMatrix x = kron_loop(p, eye(n)) * kron_loop(eye(n), p);
    CMatrix acc = eye(x.rows());
    for (int i = 0; i < m; ++i) acc = acc * x;
    return acc.trace().real();
}

inline double rel_diff(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace oracle
