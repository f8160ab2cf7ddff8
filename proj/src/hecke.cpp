#include "heckeproj/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace heckeproj {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

double relative_gap(double x, double y) { return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300}); }

}  // namespace

std::vector<double> trace_sequence(const Projection& p, int m_max) {
    if (m_max < 1) throw Error(ErrorKind::BadParameters, "trace_sequence: m_max must be >= 1");
    const CMatrix x = p.leg1() * p.leg2();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m_max));
    CMatrix power = x;
    for (int m = 1; m <= m_max; ++m) {
        if (m > 1) power = power * x;
        const Complex t = power.trace();
        if (std::abs(t.imag()) >= 1e-10 * (1.0 + std::abs(t.real()))) {
            throw Error(ErrorKind::NonRealTrace, "tr((P₁P₂)^" + std::to_string(m) + ") has imaginary part " + fmt(t.imag()));
        }
        out.push_back(t.real());
    }
    return out;
}

FunctionalCertificate functional_F(const Projection& p) {
    FunctionalCertificate cert;
    cert.n = p.n();
    cert.r = p.r();
    cert.t = trace_sequence(p, 3);
    const double rn = static_cast<double>(p.r()) * p.n();
    const double t1 = cert.t[0], t2 = cert.t[1], t3 = cert.t[2];
    cert.a = rn - t1;
    cert.b = 2.0 * t2 - 2.0 * t1;
    cert.c = t2 - t3;
    cert.F = cert.a * cert.c - 0.25 * cert.b * cert.b;
    cert.alpha0 = cert.a > 0.0 ? -cert.b / (2.0 * cert.a) : 0.0;
    return cert;
}

double estimate_Q(const FunctionalCertificate& cert, double commuting_tol) {
    const double gap = cert.t.at(0) - cert.t.at(1);
    if (gap <= commuting_tol) {
        throw Error(ErrorKind::CommutingProjections, "t₁ − t₂ = " + fmt(gap) + " (P₁P₂ = P₂P₁)");
    }
    return std::sqrt(cert.a / gap);
}

CMatrix certificate_matrix(const Projection& p, double alpha) {
    const CMatrix p1 = p.leg1();
    const CMatrix p2 = p.leg2();
    const CMatrix p12 = p1 * p2;
    const CMatrix p21 = p2 * p1;
    return p12 * p1 - p21 * p2 - alpha * (p1 - p2);
}

Residuals residuals(const Projection& p, double Q) {
    const CMatrix p1 = p.leg1();
    const CMatrix p2 = p.leg2();
    const CMatrix p121 = p1 * p2 * p1;
    const CMatrix p212 = p2 * p1 * p2;
    const double q2 = Q * Q;
    const double n1 = 1.0 + p1.norm();
    const double n2 = 1.0 + p2.norm();
    Residuals res;
    res.hecke = (q2 * (p121 - p212) - (p1 - p2)).norm() / n1;
    res.tl = std::max((q2 * p121 - p1).norm() / n1, (q2 * p212 - p2).norm() / n2);
    return res;
}

std::string_view to_string(SolutionClass c) noexcept {
    switch (c) {
        case SolutionClass::TrivialZero: return "trivial-zero";
        case SolutionClass::TrivialIdentity: return "trivial-identity";
        case SolutionClass::TemperleyLieb: return "temperley-lieb";
        case SolutionClass::HeckeGeneric: return "hecke-generic";
        case SolutionClass::NonSolution: return "non-solution";
    }
    return "non-solution";
}

SolutionClass solution_class_from_string(std::string_view s) {
    for (auto c : {SolutionClass::TrivialZero, SolutionClass::TrivialIdentity, SolutionClass::TemperleyLieb,
                   SolutionClass::HeckeGeneric, SolutionClass::NonSolution}) {
        if (to_string(c) == s) return c;
    }
    throw Error(ErrorKind::BadParameters, "unknown solution class '" + std::string(s) + "'");
}

bool BoundsReport::all_ok() const {
    return std::all_of(flags.begin(), flags.end(), [](const BoundFlag& f) { return !f.applicable || f.passed; });
}

const BoundFlag* BoundsReport::find(std::string_view name) const {
    for (const auto& f : flags)
        if (f.name == name) return &f;
    return nullptr;
}

BoundsReport check_bounds(int n, int r, int k, double Q, bool is_tl, double slack) {
    BoundsReport rep;
    const double nd = n, rd = r, kd = k;
    const double rn = rd * nd;
    const bool nontrivial = r > 0 && r < n * n;
    const bool q_eq_2 = std::abs(Q - 2.0) <= slack;
    const bool q_le_2 = Q <= 2.0 + slack;

    {
        BoundFlag f{"kbounds", nontrivial, true, {}};
        const double lo = rd * (nd * nd - rd) / (2.0 * nd);
        const double hi = std::min(rn, nd * nd * nd - rn);
        f.passed = kd >= lo - slack && kd <= hi + slack;
        f.detail = fmt(lo) + " <= " + std::to_string(k) + " <= " + fmt(hi);
        rep.flags.push_back(f);
    }
    {
        BoundFlag f{"Qrn0", true, true, {}};
        const double lhs = rn - kd + kd / Q;
        f.passed = lhs <= rd * rd + slack;
        f.detail = fmt(lhs) + " <= " + fmt(rd * rd);
        rep.flags.push_back(f);
    }
    {
        BoundFlag f{"kQmin1", nontrivial && !is_tl && 1 < r && r < n, true, {}};
        if (f.applicable) {
            const double qmin = (rn - 1.0) / (rd * rd - 1.0);
            f.passed = kd >= rn - rd * rd + 1.0 && kd <= rn - 1.0 && Q >= qmin - slack;
            f.detail = fmt(rn - rd * rd + 1.0) + " <= k <= " + fmt(rn - 1.0) + ", Q >= " + fmt(qmin);
        }
        rep.flags.push_back(f);
    }
    {
        BoundFlag f{"kQmin2", nontrivial && !is_tl && n * n - n < r && r < n * n, true, {}};
        if (f.applicable) {
            const double rt = nd * nd - rd;
            const double qmin = nd / rt;
            f.passed = kd >= rt * (nd + rd - nd * nd) + 1.0 && kd <= rt * nd && Q >= qmin - slack;
            f.detail = fmt(rt * (nd + rd - nd * nd) + 1.0) + " <= k <= " + fmt(rt * nd) + ", Q >= " + fmt(qmin);
        }
        rep.flags.push_back(f);
    }
    {
        BoundFlag f{"Qle2_small_r", nontrivial && q_le_2, true, {}};
        if (f.applicable) {
            const bool excluded = n >= 2 * r;
            const bool exception = q_eq_2 && n == 2 && r == 1;
            f.passed = !excluded || exception;
            f.detail = excluded ? (exception ? "n >= 2r allowed at (Q,n,r)=(2,2,1)" : "n >= 2r excluded for Q <= 2")
                                : "n < 2r";
        }
        rep.flags.push_back(f);
    }
    {
        BoundFlag f{"Qle2_large_r", nontrivial && q_le_2, true, {}};
        if (f.applicable) {
            const bool excluded = 2 * r >= 2 * n * n - n;
            const bool exception = q_eq_2 && n == 2 && r == 3;
            f.passed = !excluded || exception;
            f.detail = excluded ? (exception ? "2r >= 2n²−n allowed at (Q,n,r)=(2,2,3)"
                                             : "2r >= 2n²−n excluded for Q <= 2")
                                : "2r < 2n²−n";
        }
        rep.flags.push_back(f);
    }
    {
        BoundFlag f{"tl_Q2_integral", nontrivial && is_tl && q_eq_2, true, {}};
        if (f.applicable) {
            const int disc = n * n - 4 * r;
            const int root = disc >= 0 ? static_cast<int>(std::lround(std::sqrt(static_cast<double>(disc)))) : -1;
            f.passed = disc >= 0 && root * root == disc;
            f.detail = "n² − 4r = " + std::to_string(disc);
        }
        rep.flags.push_back(f);
    }
    return rep;
}

Complex q_from_Q(double Q) {
    if (!(Q > 0.0)) throw Error(ErrorKind::NonRealQ, "Q must be positive, got " + fmt(Q));
    // Within rounding of Q = 2 both branches meet at q = 1.
    if (std::abs(Q - 2.0) <= 1e-10) return {1.0, 0.0};
    if (Q >= 2.0) return {0.5 * (Q + std::sqrt(Q * Q - 4.0)), 0.0};
    const double theta = std::acos(Q / 2.0);
    return std::polar(1.0, theta);
}

SolutionReport classify(const Projection& p, const Tolerances& tol) {
    SolutionReport rep;
    rep.n = p.n();
    rep.r = p.r();
    rep.tolerances = tol;
    rep.Q = rep.Q_trace = rep.Q_spectral = kNaN;
    rep.q = {kNaN, kNaN};
    const int d = p.n() * p.n();

    if (p.r() == 0 || p.r() == d) {
        rep.cls = p.r() == 0 ? SolutionClass::TrivialZero : SolutionClass::TrivialIdentity;
        rep.k = 0;
        const auto res = residuals(p, 1.0);
        rep.hecke_residual = res.hecke;
        rep.tl_residual = res.tl;
        rep.bounds_ok = true;
        return rep;
    }

    const SpectralReport spec = k_and_spectrum(p, tol.cluster, tol.rank);
    rep.k = spec.k;
    if (spec.is_solution_spectrum) rep.Q_spectral = spec.q_estimate;

    const FunctionalCertificate cert = functional_F(p);
    if (cert.t[0] - cert.t[1] > tol.commuting) rep.Q_trace = estimate_Q(cert, tol.commuting);

    // The spectral estimate is reported when available; the trace one checks it.
    double q_eval = !std::isnan(rep.Q_spectral) ? rep.Q_spectral : rep.Q_trace;
    if (std::isnan(q_eval)) q_eval = 1.0;  // commuting P₁, P₂: the relation fails for every Q
    const Residuals res = residuals(p, q_eval);
    rep.hecke_residual = res.hecke;
    rep.tl_residual = res.tl;

    const bool solved = !std::isnan(rep.Q_trace) && res.hecke < tol.solution;
    if (!solved) {
        rep.cls = SolutionClass::NonSolution;
        rep.bounds_ok = false;
        return rep;
    }

    if (!spec.is_solution_spectrum || relative_gap(rep.Q_spectral, rep.Q_trace) > tol.estimator_agreement) {
        throw Error(ErrorKind::InconsistentEstimators,
                    "spectral Q " + fmt(rep.Q_spectral) + " vs trace Q " + fmt(rep.Q_trace));
    }
    if (spec.plus_multiplicity != spec.k) {
        throw Error(ErrorKind::InconsistentEstimators, "k from rank " + std::to_string(spec.k) +
                                                           " vs cluster multiplicity " +
                                                           std::to_string(spec.plus_multiplicity));
    }

    rep.Q = rep.Q_spectral;
    rep.q = q_from_Q(rep.Q);
    const bool tl = res.tl < tol.solution;
    rep.cls = tl ? SolutionClass::TemperleyLieb : SolutionClass::HeckeGeneric;
    rep.bounds = check_bounds(rep.n, rep.r, rep.k, rep.Q, tl);
    rep.bounds_ok = rep.bounds.all_ok();
    return rep;
}

DefectResult rank_defect_and_pi3(const Projection& p, double Q) {
    const int d = p.n() * p.n();
    if (p.r() == 0 || p.r() == d) throw Error(ErrorKind::NotASolution, "trivial projection");
    if (residuals(p, Q).hecke >= 1e-8) throw Error(ErrorKind::NotASolution, "Hecke relation fails at Q = " + fmt(Q));

    const int k = k_and_spectrum(p).k;
    const int rn = p.r() * p.n();
    const double q2 = Q * Q;

    DefectResult out;
    const CMatrix p1 = p.leg1();
    const CMatrix x = q2 * (p1 * p.leg2() * p1) - p1;
    // A vanishing X (the TL case) has only rounding noise, which a relative
    // threshold would count.
    out.defect = x.norm() <= kDefaultRankTol * (1.0 + p1.norm()) ? 0 : rank_eps(x);
    if (out.defect != rn - k) {
        throw Error(ErrorKind::DefectMismatch,
                    "rank(Q²P₁P₂P₁ − P₁) = " + std::to_string(out.defect) + ", expected rn − k = " + std::to_string(rn - k));
    }
    if (Q <= 1.0 + 1e-9) return out;

    const Projection pd = dual(p);
    const CMatrix d1 = pd.leg1();
    CMatrix pi3 = (q2 * (d1 * pd.leg2() * d1) - d1) / (q2 - 1.0);
    pi3 = (pi3 + pi3.adjoint()) / 2.0;

    const int n3 = p.n() * p.n() * p.n();
    const double scale = 1.0 + pi3.norm();
    const double idem = (pi3 * pi3 - pi3).norm();
    const double trace = pi3.trace().real();
    const double kill1 = (p1 * pi3).norm();
    const double kill2 = (p.leg2() * pi3).norm();
    if (idem > 1e-9 * scale || std::abs(trace - (n3 - rn - k)) > 1e-9 * n3 || kill1 > 1e-9 || kill2 > 1e-9) {
        throw Error(ErrorKind::DefectMismatch, "Π₃ check failed: idempotency " + fmt(idem) + ", trace " + fmt(trace) +
                                                   ", ‖P₁Π₃‖ " + fmt(kill1) + ", ‖P₂Π₃‖ " + fmt(kill2));
    }
    out.pi3 = std::move(pi3);
    return out;
}

}  // namespace heckeproj
