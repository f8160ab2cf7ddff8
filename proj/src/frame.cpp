#include "heckeproj/frame.hpp"

#include <cmath>
#include <sstream>

#include "heckeproj/hecke.hpp"

namespace heckeproj {

namespace {

Complex trace_inner(const CMatrix& x, const CMatrix& y) { return (x.adjoint() * y).trace(); }

int common_size(const std::vector<CMatrix>& mats) {
    if (mats.empty()) throw Error(ErrorKind::DimensionMismatch, "frame must contain at least one matrix");
    const auto n = mats.front().rows();
    for (const auto& m : mats) {
        if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "frame matrices must all be n×n");
    }
    if (n < 2) throw Error(ErrorKind::DimensionMismatch, "frame matrices need n >= 2");
    return static_cast<int>(n);
}

}  // namespace

CMatrix frame_gram(const std::vector<CMatrix>& mats) {
    const auto r = static_cast<Eigen::Index>(mats.size());
    CMatrix g(r, r);
    for (Eigen::Index s = 0; s < r; ++s)
        for (Eigen::Index m = 0; m < r; ++m) g(s, m) = trace_inner(mats[s], mats[m]);
    return g;
}

Frame validate_frame(std::vector<CMatrix> mats, double tol) {
    const int n = common_size(mats);
    const CMatrix gram = frame_gram(mats);
    const auto vals = jacobi_eigh(gram, false).values;
    if (vals(0) <= 1e-12 * std::max(1.0, vals(vals.size() - 1))) {
        throw Error(ErrorKind::RankDeficientFamily, "Gram matrix is singular");
    }
    for (Eigen::Index s = 0; s < gram.rows(); ++s) {
        for (Eigen::Index m = 0; m < gram.cols(); ++m) {
            const Complex expected = s == m ? Complex(1.0) : Complex(0.0);
            if (std::abs(gram(s, m) - expected) > tol) {
                std::ostringstream os;
                os << "Gram entry (" << s << "," << m << ") = " << gram(s, m).real() << (gram(s, m).imag() < 0 ? "" : "+")
                   << gram(s, m).imag() << "i";
                throw Error(ErrorKind::NotOrthonormal, os.str());
            }
        }
    }
    return Frame(n, std::move(mats));
}

Frame orthonormalize(std::vector<CMatrix> mats) {
    const int n = common_size(mats);
    std::vector<CMatrix> out;
    out.reserve(mats.size());
    for (auto& m : mats) {
        const double scale = std::sqrt(std::max(trace_inner(m, m).real(), 0.0));
        CMatrix v = m;
        for (const auto& u : out) v -= trace_inner(u, v) * u;
        const double len = std::sqrt(std::max(trace_inner(v, v).real(), 0.0));
        if (len <= 1e-12 * std::max(1.0, scale)) throw Error(ErrorKind::RankDeficientFamily, "family is linearly dependent");
        out.push_back(v / len);
    }
    return Frame(n, std::move(out));
}

Projection to_projection(const Frame& f) {
    const Eigen::Index n = f.n();
    CMatrix p = CMatrix::Zero(n * n, n * n);
    for (const auto& v : f.mats()) {
        CVector vec(n * n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) vec(a * n + b) = v(a, b);
        p += vec * vec.adjoint();
    }
    p = (p + p.adjoint()) / 2.0;
    return Projection::validate(p);
}

Frame frame_from_projection(const Projection& p) {
    const CMatrix u = range_isometry(p);
    const Eigen::Index n = p.n();
    std::vector<CMatrix> mats;
    for (Eigen::Index s = 0; s < u.cols(); ++s) {
        CMatrix v(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) v(a, b) = u(a * n + b, s);
        mats.push_back(std::move(v));
    }
    return validate_frame(std::move(mats), 1e-9);
}

CMatrix coupling_W(const Frame& f) {
    const Eigen::Index n = f.n();
    const Eigen::Index r = f.r();
    CMatrix w = CMatrix::Zero(r * n, r * n);
    const auto& v = f.mats();
    for (Eigen::Index s = 0; s < r; ++s)
        for (Eigen::Index m = 0; m < r; ++m) w.block(s * n, m * n, n, n) = v[m] * v[s].conjugate();
    return w;
}

FrameAnalysis coupling_analysis(const Frame& f, double cluster_tol) {
    FrameAnalysis out;
    out.W = coupling_W(f);
    out.A = out.W * out.W.adjoint();
    out.A = (out.A + out.A.adjoint()) / 2.0;
    out.a_spectrum = eig_hermitian(out.A, cluster_tol);

    const int rn = static_cast<int>(out.A.rows());
    const double tr_a = out.A.trace().real();
    const double root_tol = 1e-8 * (1.0 + tr_a) * (1.0 + tr_a);
    for (int k = 1; k <= rn; ++k) {
        const double g = functional_G(out.A, k);
        out.g_values[k] = g;
        if (std::abs(g) < root_tol) out.g_roots.push_back(k);
    }

    const auto& spec = out.a_spectrum;
    if (spec.size() == 1 && spec[0].value > cluster_tol && spec[0].value < 1.0 - cluster_tol) {
        out.tl_flag = true;
        out.q_from_A = 1.0 / std::sqrt(spec[0].value);
        out.k_from_A = rn;
    } else if (spec.size() == 2 && std::abs(spec[1].value - 1.0) <= cluster_tol && spec[0].value > cluster_tol) {
        out.q_from_A = 1.0 / std::sqrt(spec[0].value);
        out.k_from_A = spec[0].multiplicity;
    }
    return out;
}

double trace_equivalence_check(const Frame& f, int m_max) {
    const auto t = trace_sequence(to_projection(f), m_max);
    const CMatrix w = coupling_W(f);
    const CMatrix a = w * w.adjoint();
    double worst = 0.0;
    CMatrix power = a;
    for (int m = 1; m <= m_max; ++m) {
        if (m > 1) power = power * a;
        worst = std::max(worst, std::abs(t[static_cast<std::size_t>(m - 1)] - power.trace().real()));
    }
    return worst;
}

double functional_G(const CMatrix& A, int k) {
    const double rn = static_cast<double>(A.rows());
    const double kd = k;
    const double tr1 = A.trace().real();
    const double tr2 = (A * A).trace().real();
    const double u = kd - rn + tr1;
    return u * u - kd * (kd - rn + tr2);
}

double functional_G(const FrameAnalysis& analysis, int k) { return functional_G(analysis.A, k); }

}  // namespace heckeproj
