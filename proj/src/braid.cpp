#include "heckeproj/braid.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace heckeproj {

RMatrix build_R(const Projection& p, Complex q) {
    if (std::abs(q) == 0.0 || !std::isfinite(q.real()) || !std::isfinite(q.imag())) {
        throw Error(ErrorKind::NonRealQ, "q must be finite and nonzero");
    }
    const Complex big_q = q + 1.0 / q;
    if (std::abs(big_q.imag()) > 1e-12 * (1.0 + std::abs(big_q)) || big_q.real() <= 0.0) {
        throw Error(ErrorKind::NonRealQ, "q + 1/q must be real and positive");
    }
    RMatrix R;
    R.n = p.n();
    R.q = q;
    R.Q = big_q.real();
    R.projection = p.mat();
    const Eigen::Index d = p.mat().rows();
    R.mat = q * CMatrix::Identity(d, d) - R.Q * p.mat();
    return R;
}

CMatrix hecke_generator(const RMatrix& R, int strands, int site) {
    return embed_local(R.mat, R.n, strands, site, kStrandDimensionCap);
}

RelationResiduals relation_check(const RMatrix& R, int strands) {
    if (strands < 3) throw Error(ErrorKind::BadParameters, "relation_check: need at least 3 strands");
    std::vector<CMatrix> gens;
    for (int i = 1; i < strands; ++i) gens.push_back(hecke_generator(R, strands, i));
    const Eigen::Index d = gens.front().rows();
    const CMatrix id = CMatrix::Identity(d, d);
    const double norm = 1.0 + gens.front().norm();
    const Complex shift = R.q - 1.0 / R.q;

    RelationResiduals res;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const CMatrix& g = gens[i];
        res.quad = std::max(res.quad, (g * g - id - shift * g).norm() / norm);
        res.hermiticity = std::max(res.hermiticity, (g - g.adjoint()).norm() / norm);
        res.unitarity = std::max(res.unitarity, (g * g.adjoint() - id).norm() / norm);
        for (std::size_t m = i + 1; m < gens.size(); ++m) {
            const CMatrix& h = gens[m];
            if (m == i + 1) {
                res.braid = std::max(res.braid, (g * h * g - h * g * h).norm() / norm);
            } else {
                res.far = std::max(res.far, (g * h - h * g).norm() / norm);
            }
        }
    }
    res.herm_or_unit = R.Q >= 2.0 ? res.hermiticity : res.unitarity;
    return res;
}

double tl_relation_check(const Projection& p, double Q, int strands) {
    if (strands < 3) throw Error(ErrorKind::BadParameters, "tl_relation_check: need at least 3 strands");
    std::vector<CMatrix> gens;
    for (int i = 1; i < strands; ++i) gens.push_back(Q * embed(p, strands, i));
    const double norm = 1.0 + gens.front().norm();
    double worst = 0.0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const CMatrix& e = gens[i];
        worst = std::max(worst, (e * e - Q * e).norm() / norm);
        for (std::size_t m = i + 1; m < gens.size(); ++m) {
            const CMatrix& f = gens[m];
            if (m == i + 1) {
                worst = std::max(worst, (e * f * e - e).norm() / norm);
                worst = std::max(worst, (f * e * f - f).norm() / norm);
            } else {
                worst = std::max(worst, (e * f - f * e).norm() / norm);
            }
        }
    }
    return worst;
}

BaxterizedR baxterize(const RMatrix& R, Complex lambda) {
    if (std::abs(lambda) == 0.0) throw Error(ErrorKind::BadParameters, "baxterize: λ must be nonzero");
    Eigen::PartialPivLU<CMatrix> lu(R.mat);
    if (std::abs(lu.determinant()) <= 1e-12) throw Error(ErrorKind::SingularR, "R is singular");
    BaxterizedR out;
    out.n = R.n;
    out.lambda = lambda;
    out.mat = lambda * R.mat - lu.inverse() / lambda;
    return out;
}

double baxterize_check(const RMatrix& R, Complex lambda, Complex mu) {
    if (std::abs(mu) == 0.0) throw Error(ErrorKind::BadParameters, "baxterize_check: μ must be nonzero");
    auto site = [&](Complex x, int s) { return embed_local(baxterize(R, x).mat, R.n, 3, s); };
    const CMatrix lhs = site(lambda, 1) * site(lambda * mu, 2) * site(mu, 1);
    const CMatrix rhs = site(mu, 2) * site(lambda * mu, 1) * site(lambda, 2);
    return (lhs - rhs).norm() / (1.0 + lhs.norm());
}

}  // namespace heckeproj
