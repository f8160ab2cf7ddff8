#pragma once

// Dense complex kernels for tensor cubes of small local dimension.
//
// Everything here is a free function over Eigen expressions and is templated
// on the scalar type. The domain code instantiates it with
// std::complex<double> through the CMatrix alias.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "heckeproj/error.hpp"

namespace heckeproj {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using CMatrix = Matrix<Complex>;
using CVector = Vector<Complex>;

inline constexpr double kDefaultRankTol = 1e-8;
inline constexpr double kDefaultClusterTol = 1e-7;
inline constexpr int kJacobiSweepBudget = 100;
inline constexpr double kJacobiOffDiagTol = 1e-13;

namespace detail {

template <typename T>
struct real_of {
    using type = T;
};
template <typename T>
struct real_of<std::complex<T>> {
    using type = T;
};

template <typename T>
T conj_if(const T& x) {
    return x;
}
template <typename T>
std::complex<T> conj_if(const std::complex<T>& x) {
    return std::conj(x);
}

}  // namespace detail

template <typename Scalar>
using RealOf = typename detail::real_of<Scalar>::type;

/// Integer power with overflow guard; returns -1 if the result exceeds cap.
inline std::int64_t checked_pow(std::int64_t base, int exp, std::int64_t cap) {
    std::int64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= base;
        if (out > cap) return -1;
    }
    return out;
}

template <typename Scalar = Complex>
Matrix<Scalar> identity(Eigen::Index n) {
    return Matrix<Scalar>::Identity(n, n);
}

/// E_ab of size n: a single one at (a, b), zero-based.
template <typename Scalar = Complex>
Matrix<Scalar> matrix_unit(Eigen::Index n, Eigen::Index a, Eigen::Index b) {
    Matrix<Scalar> e = Matrix<Scalar>::Zero(n, n);
    e(a, b) = Scalar(1);
    return e;
}

/// Kronecker product: (a ⊗ b)(i*rb + k, j*cb + l) = a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = std::common_type_t<typename DerivedA::Scalar, typename DerivedB::Scalar>;
    const auto rb = b.rows();
    const auto cb = b.cols();
    Matrix<Scalar> out(a.rows() * rb, a.cols() * cb);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out.block(i * rb, j * cb, rb, cb) = Scalar(a(i, j)) * b.template cast<Scalar>();
        }
    }
    return out;
}

template <typename Derived>
Matrix<typename Derived::Scalar> adjoint(const Eigen::MatrixBase<Derived>& a) {
    return a.adjoint();
}

template <typename Derived>
RealOf<typename Derived::Scalar> hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
    return (a - a.adjoint()).norm();
}

/// I_n^{⊗(site-1)} ⊗ op ⊗ I_n^{⊗(strands-site-1)} for a two-site operator op
/// (size n²). Sites are one-based.
template <typename Derived>
Matrix<typename Derived::Scalar> embed_local(const Eigen::MatrixBase<Derived>& op, Eigen::Index n,
                                             int strands, int site, std::int64_t cap = 4096) {
    using Scalar = typename Derived::Scalar;
    if (op.rows() != n * n || op.cols() != n * n) {
        throw Error(ErrorKind::DimensionMismatch, "embed_local: operator must be n² square");
    }
    if (strands < 2 || site < 1 || site > strands - 1) {
        throw Error(ErrorKind::SiteOutOfRange, "embed_local: need 1 <= site <= strands-1");
    }
    if (checked_pow(n, strands, cap) < 0) {
        throw Error(ErrorKind::DimensionOverflow, "embed_local: n^strands exceeds cap");
    }
    const auto left = checked_pow(n, site - 1, cap);
    const auto right = checked_pow(n, strands - site - 1, cap);
    Matrix<Scalar> out = kron(identity<Scalar>(left), op);
    return kron(out, identity<Scalar>(right));
}

/// Partial trace of a (n^legs square) over one tensor factor, legs one-based.
template <typename Derived>
Matrix<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& a, Eigen::Index n,
                                               int legs, int traced_leg) {
    using Scalar = typename Derived::Scalar;
    if (n < 1 || legs < 1 || traced_leg < 1 || traced_leg > legs) {
        throw Error(ErrorKind::DimensionMismatch, "partial_trace: leg out of range");
    }
    const auto dim = checked_pow(n, legs, std::int64_t{1} << 40);
    if (dim < 0 || a.rows() != dim || a.cols() != dim) {
        throw Error(ErrorKind::DimensionMismatch, "partial_trace: matrix is not n^legs square");
    }
    const Eigen::Index right = checked_pow(n, legs - traced_leg, dim);
    const Eigen::Index left = dim / (right * n);
    const Eigen::Index out_dim = left * right;
    Matrix<Scalar> out = Matrix<Scalar>::Zero(out_dim, out_dim);
    for (Eigen::Index l2 = 0; l2 < left; ++l2) {
        for (Eigen::Index r2 = 0; r2 < right; ++r2) {
            const Eigen::Index col = l2 * right + r2;
            for (Eigen::Index l1 = 0; l1 < left; ++l1) {
                for (Eigen::Index r1 = 0; r1 < right; ++r1) {
                    Scalar acc(0);
                    for (Eigen::Index i = 0; i < n; ++i) {
                        acc += a((l1 * n + i) * right + r1, (l2 * n + i) * right + r2);
                    }
                    out(l1 * right + r1, col) = acc;
                }
            }
        }
    }
    return out;
}

template <typename Scalar>
struct HermitianEigen {
    Vector<RealOf<Scalar>> values;  // ascending
    Matrix<Scalar> vectors;         // columns, matching values
    int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Sweeps over all (p, q) pairs until the off-diagonal Frobenius mass drops
/// below off_tol * ‖a‖_F. Only the lower/upper consistency of the input is
/// assumed; callers check hermiticity.
template <typename Derived>
HermitianEigen<typename Derived::Scalar> jacobi_eigh(const Eigen::MatrixBase<Derived>& input,
                                                     bool want_vectors = true,
                                                     int max_sweeps = kJacobiSweepBudget,
                                                     double off_tol = kJacobiOffDiagTol) {
    using Scalar = typename Derived::Scalar;
    using Real = RealOf<Scalar>;
    const Eigen::Index m = input.rows();
    if (input.cols() != m) throw Error(ErrorKind::DimensionMismatch, "jacobi_eigh: not square");

    Matrix<Scalar> a = (input + input.adjoint()) / Real(2);
    Matrix<Scalar> v;
    if (want_vectors) v = Matrix<Scalar>::Identity(m, m);

    const Real scale = a.norm();
    const Real threshold = Real(off_tol) * scale;
    auto off_mass = [&] {
        Real acc = 0;
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index i = 0; i < m; ++i)
                if (i != j) acc += std::norm(std::complex<Real>(a(i, j)));
        return std::sqrt(acc);
    };

    HermitianEigen<Scalar> out;
    int sweep = 0;
    for (; scale > 0 && off_mass() > threshold; ++sweep) {
        if (sweep == max_sweeps) {
            throw Error(ErrorKind::NoConvergence, "jacobi_eigh: sweep budget exhausted");
        }
        for (Eigen::Index p = 0; p < m - 1; ++p) {
            for (Eigen::Index q = p + 1; q < m; ++q) {
                const Scalar apq = a(p, q);
                const Real mag = std::abs(apq);
                if (mag == Real(0)) continue;
                // Phase that makes the (p, q) entry real and positive.
                const Scalar phase = apq / mag;
                const Real app = std::real(a(p, p));
                const Real aqq = std::real(a(q, q));
                const Real tau = (aqq - app) / (Real(2) * mag);
                const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
                const Real c = Real(1) / std::sqrt(Real(1) + t * t);
                const Real s = t * c;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
                const Scalar g_pp = c;
                const Scalar g_pq = s;
                const Scalar g_qp = -s * detail::conj_if(phase);
                const Scalar g_qq = c * detail::conj_if(phase);
                for (Eigen::Index i = 0; i < m; ++i) {
                    const Scalar aip = a(i, p);
                    const Scalar aiq = a(i, q);
                    a(i, p) = aip * g_pp + aiq * g_qp;
                    a(i, q) = aip * g_pq + aiq * g_qq;
                }
                for (Eigen::Index j = 0; j < m; ++j) {
                    const Scalar apj = a(p, j);
                    const Scalar aqj = a(q, j);
                    a(p, j) = detail::conj_if(g_pp) * apj + detail::conj_if(g_qp) * aqj;
                    a(q, j) = detail::conj_if(g_pq) * apj + detail::conj_if(g_qq) * aqj;
                }
                a(p, q) = Scalar(0);
                a(q, p) = Scalar(0);
                a(p, p) = Scalar(std::real(a(p, p)));
                a(q, q) = Scalar(std::real(a(q, q)));
                if (want_vectors) {
                    for (Eigen::Index i = 0; i < m; ++i) {
                        const Scalar vip = v(i, p);
                        const Scalar viq = v(i, q);
                        v(i, p) = vip * g_pp + viq * g_qp;
                        v(i, q) = vip * g_pq + viq * g_qq;
                    }
                }
            }
        }
    }
    out.sweeps = sweep;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return std::real(a(x, x)) < std::real(a(y, y));
    });
    out.values.resize(m);
    if (want_vectors) out.vectors.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto src = order[static_cast<std::size_t>(i)];
        out.values(i) = std::real(a(src, src));
        if (want_vectors) out.vectors.col(i) = v.col(src);
    }
    return out;
}

struct EigenCluster {
    double value = 0.0;
    int multiplicity = 0;
};

/// Groups ascending values into clusters: a value joins the current cluster
/// when it lies within tol of the previous value. Cluster value is the mean.
template <typename Derived>
std::vector<EigenCluster> cluster_values(const Eigen::DenseBase<Derived>& sorted, double tol) {
    std::vector<EigenCluster> out;
    double sum = 0.0;
    double prev = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i < sorted.size(); ++i) {
        const double x = static_cast<double>(sorted(i));
        if (count > 0 && x - prev > tol) {
            out.push_back({sum / count, count});
            sum = 0.0;
            count = 0;
        }
        sum += x;
        prev = x;
        ++count;
    }
    if (count > 0) out.push_back({sum / count, count});
    return out;
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& a, double rel_tol, const char* where) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": not square");
    const double defect = static_cast<double>(hermitian_defect(a));
    if (defect > rel_tol * (1.0 + static_cast<double>(a.norm()))) {
        throw Error(ErrorKind::NotHermitian, std::string(where) + ": ‖a − a*‖_F = " + std::to_string(defect));
    }
}

/// Clustered spectrum of a Hermitian matrix, ascending.
template <typename Derived>
std::vector<EigenCluster> eig_hermitian(const Eigen::MatrixBase<Derived>& a,
                                        double cluster_tol = kDefaultClusterTol) {
    require_hermitian(a, 1e-10, "eig_hermitian");
    return cluster_values(jacobi_eigh(a, false).values, cluster_tol);
}

/// Singular values, descending.
///
/// Hermitian input: |eigenvalues|. Otherwise the positive half of the
/// spectrum of the Hermitian dilation [[0, a], [a*, 0]].
template <typename Derived>
Vector<double> singular_values(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    Vector<double> sv;
    const bool square = a.rows() == a.cols();
    if (square && static_cast<double>(hermitian_defect(a)) <= 1e-13 * (1.0 + static_cast<double>(a.norm()))) {
        sv = jacobi_eigh(a, false).values.cwiseAbs().template cast<double>();
    } else {
        const auto r = a.rows();
        const auto c = a.cols();
        Matrix<Scalar> dil = Matrix<Scalar>::Zero(r + c, r + c);
        dil.topRightCorner(r, c) = a;
        dil.bottomLeftCorner(c, r) = a.adjoint();
        const auto vals = jacobi_eigh(dil, false).values;
        const auto keep = std::min(r, c);
        sv.resize(keep);
        for (Eigen::Index i = 0; i < keep; ++i) sv(i) = std::max(0.0, static_cast<double>(vals(r + c - 1 - i)));
    }
    std::sort(sv.data(), sv.data() + sv.size(), std::greater<>());
    return sv;
}

/// Number of singular values above rel_tol times the largest one.
template <typename Derived>
int rank_eps(const Eigen::MatrixBase<Derived>& a, double rel_tol = kDefaultRankTol) {
    if (a.size() == 0) return 0;
    const auto sv = singular_values(a);
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

struct Norms {
    double trace_norm = 0.0;
    double frobenius_norm = 0.0;
};

template <typename Derived>
Norms norms(const Eigen::MatrixBase<Derived>& a) {
    return {singular_values(a).sum(), static_cast<double>(a.norm())};
}

}  // namespace heckeproj
