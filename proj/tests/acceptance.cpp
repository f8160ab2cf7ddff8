// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "heckeproj/braid.hpp"
#include "heckeproj/catalog.hpp"
#include "heckeproj/frame.hpp"
#include "heckeproj/search.hpp"
#include "oracles.hpp"

using namespace heckeproj;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail.str("");
            detail << what;
        }
    }
};

struct Expected {
    CatalogEntry entry;
    double Q;
    int k;
};

std::vector<Expected> reproduction_set() {
    const double w = std::sqrt(0.5);
    return {{n2r2_family(0.0, 2.0, 0.0, 0.0), 2.5, 2},
            {free_fermion(3.0), 2.5, 2},
            {n3r3(1.0, 1.0), 2.0, 8},
            {n3r4(2.0, 1.0, 3.0, 1.0), 2.5, 8},
            {tl_rank1(2, {w, w}), 2.0, 2}};
}

std::vector<CatalogEntry> catalog() {
    std::vector<CatalogEntry> out = standard_solutions();
    for (auto& e : reproduction_set()) out.push_back(e.entry);
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Criteria 2–4 on one solution with spectral Q and k.
void functional_spectrum_traces(Outcome& o, const std::string& name, const Projection& p, double Q, int k) {
    const auto cert = functional_F(p);
    o.require(std::abs(cert.F) < 1e-12, name + ": F = " + fmt(cert.F));
    const double qe = estimate_Q(cert);
    o.require(std::abs(qe - Q) < 1e-9 * Q, name + ": estimate_Q " + fmt(qe) + " vs " + fmt(Q));

    const auto s = k_and_spectrum(p);
    const double lam = std::sqrt(1.0 - 1.0 / (Q * Q));
    int plus = 0, minus = 0, other = 0;
    for (const auto& c : s.eigs) {
        if (std::abs(c.value) < 1e-6) continue;
        if (std::abs(c.value - lam) < 1e-9) plus += c.multiplicity;
        else if (std::abs(c.value + lam) < 1e-9) minus += c.multiplicity;
        else other += c.multiplicity;
    }
    o.require(other == 0 && plus == k && minus == k,
              name + ": K_P clusters +" + std::to_string(plus) + " −" + std::to_string(minus) + " other " +
                  std::to_string(other));

    const double rn = static_cast<double>(p.r()) * p.n();
    const auto t = trace_sequence(p, 5);
    for (int m = 1; m <= 5; ++m) {
        const double dev = std::abs(t[m - 1] - (rn + (std::pow(Q, -2.0 * m) - 1.0) * k));
        o.require(dev < 1e-9, name + ": t_" + std::to_string(m) + " deviation " + fmt(dev));
    }
}

Outcome criterion1() {
    Outcome o;
    double worst = 0.0;
    for (const auto& x : reproduction_set()) {
        const auto rep = classify(x.entry.projection);
        const double rel = std::abs(rep.Q - x.Q) / x.Q;
        worst = std::max(worst, rep.hecke_residual);
        o.require(is_solution(rep.cls), x.entry.name + ": class " + std::string(to_string(rep.cls)));
        o.require(rel < 1e-9, x.entry.name + ": Q = " + fmt(rep.Q));
        o.require(rep.k == x.k, x.entry.name + ": k = " + std::to_string(rep.k));
        o.require(rep.hecke_residual < 1e-10, x.entry.name + ": residual " + fmt(rep.hecke_residual));
    }
    if (o.ok) o.detail << "5 entries, max hecke residual " << fmt(worst);
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (const auto& e : catalog()) {
        const auto cert = functional_F(e.projection);
        const auto s = k_and_spectrum(e.projection);
        o.require(std::abs(cert.F) < 1e-12, e.name + ": F = " + fmt(cert.F));
        o.require(std::abs(estimate_Q(cert) - s.q_estimate) < 1e-9 * s.q_estimate, e.name + ": estimators differ");
    }
    int tested = 0;
    double smallest = 1e300;
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n * n - 1));
        const Projection p = random_projection(n, r, rng());
        const auto cert = functional_F(p);
        if (cert.F <= 1e-6) continue;
        ++tested;
        const double res = residuals(p, estimate_Q(cert)).hecke;
        smallest = std::min(smallest, res);
        o.require(res > 1e-4, "random projection with F = " + fmt(cert.F) + " has residual " + fmt(res));
    }
    if (o.ok) o.detail << tested << " random projections, min residual " << fmt(smallest);
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (const auto& e : catalog()) {
        const auto s = k_and_spectrum(e.projection);
        const double Q = e.expected_Q, lam = std::sqrt(1.0 - 1.0 / (Q * Q));
        int nonzero = 0;
        for (const auto& c : s.eigs) {
            if (std::abs(c.value) < 1e-6) continue;
            ++nonzero;
            const double dev = std::abs(std::abs(c.value) - lam);
            o.require(dev < 1e-9, e.name + ": cluster " + fmt(c.value) + " off by " + fmt(dev));
            o.require(c.multiplicity == e.expected_k, e.name + ": multiplicity " + std::to_string(c.multiplicity));
        }
        o.require(nonzero == 2, e.name + ": " + std::to_string(nonzero) + " nonzero clusters");
    }
    if (o.ok) o.detail << catalog().size() << " solutions";
    return o;
}

Outcome criterion4() {
    Outcome o;
    double worst = 0.0;
    for (const auto& e : catalog()) {
        const double rn = e.projection.r() * e.projection.n();
        const auto t = trace_sequence(e.projection, 5);
        for (int m = 1; m <= 5; ++m)
            worst = std::max(worst, std::abs(t[m - 1] - (rn + (std::pow(e.expected_Q, -2.0 * m) - 1.0) * e.expected_k)));
    }
    o.require(worst < 1e-9, "max deviation " + fmt(worst));
    const Projection g = gl_q11(2.0).projection;
    const CMatrix p1 = oracle::kron_loop(g.mat(), oracle::eye(2));
    const CMatrix p2 = oracle::kron_loop(oracle::eye(2), g.mat());
    const double t1_oracle = (p1 * p2).trace().real();
    const double t1 = trace_sequence(g, 1)[0];
    o.require(std::abs(t1_oracle - 2.32) < 1e-12, "oracle t1 = " + fmt(t1_oracle));
    o.require(std::abs(t1 - 2.32) < 1e-12, "t1 = " + fmt(t1));
    if (o.ok) o.detail << "max deviation " << fmt(worst) << ", t1(gl_q11 b=2) = " << t1;
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int n = 2 + i % 2;
        const int r = 1 + static_cast<int>(rng() % 4);
        const Frame f = validate_frame(oracle::random_frame_mats(n, r, rng));
        worst = std::max(worst, trace_equivalence_check(f, 4));
    }
    o.require(worst < 1e-9, "max deviation " + fmt(worst));
    if (o.ok) o.detail << "1000 random frames, max deviation " << fmt(worst);
    return o;
}

Outcome criterion6() {
    Outcome o;
    for (const auto& e : catalog()) {
        const Projection& p = e.projection;
        const double Q = e.expected_Q;
        const int n = p.n(), rn = p.r() * n, k = e.expected_k;
        const CMatrix p1 = oracle::kron_loop(p.mat(), oracle::eye(n));
        const CMatrix p2 = oracle::kron_loop(oracle::eye(n), p.mat());
        const int oracle_rank = oracle::rank(Q * Q * p1 * p2 * p1 - p1);
        const auto d = rank_defect_and_pi3(p, Q);
        o.require(d.defect == rn - k, e.name + ": defect " + std::to_string(d.defect));
        o.require(oracle_rank == rn - k, e.name + ": oracle rank " + std::to_string(oracle_rank));
        o.require(d.pi3.has_value(), e.name + ": no Π₃");
        if (d.pi3) {
            const double tr = d.pi3->trace().real();
            o.require(std::abs(tr - (n * n * n - rn - k)) < 1e-9, e.name + ": tr Π₃ = " + fmt(tr));
        }
    }
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + i % 2;
        const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n * n - 1));
        const Projection p = random_projection(n, r, rng());
        const int rk = rank_eps(CMatrix(embed(p, 4, 1) - embed(p, 4, 3)));
        o.require(rk == 2 * r * (n * n - r),
                  "rank(P1 − P3) = " + std::to_string(rk) + " for n=" + std::to_string(n) + " r=" + std::to_string(r));
    }
    if (o.ok) o.detail << catalog().size() << " solutions, 100 random projections";
    return o;
}

Outcome criterion7() {
    Outcome o;
    for (const auto& e : catalog()) {
        const auto rep = classify(e.projection);
        for (const auto& f : rep.bounds.flags)
            o.require(!f.applicable || f.passed, e.name + ": flag " + f.name + " failed (" + f.detail + ")");
        o.require(rep.bounds_ok, e.name + ": bounds_ok false");
    }
    const BoundsReport b = check_bounds(3, 1, 2, 3.0, false);
    const BoundFlag* q = b.find("Qrn0");
    o.require(q != nullptr && q->applicable && !q->passed, "(3,1,2,3) does not fail Qrn0");
    if (o.ok) o.detail << "catalog passes, (3,1,2,3) fails Qrn0";
    return o;
}

Outcome criterion8() {
    Outcome o;
    double worst = 0.0;
    for (const auto& e : catalog()) {
        const RMatrix R = build_R(e.projection, q_from_Q(e.expected_Q));
        for (int strands : {3, 4}) {
            const auto rr = relation_check(R, strands);
            const double m = std::max({rr.quad, rr.braid, rr.far, rr.herm_or_unit});
            worst = std::max(worst, m);
            o.require(m < 1e-9, e.name + ": relation residual " + fmt(m) + " on " + std::to_string(strands));
            if (e.expected_class == SolutionClass::TemperleyLieb) {
                const double tl = tl_relation_check(e.projection, e.expected_Q, strands);
                worst = std::max(worst, tl);
                o.require(tl < 1e-9, e.name + ": TL residual " + fmt(tl));
            }
        }
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const double b = baxterize_check(R, 0.5 + 0.375 * i, 0.5 + 0.375 * j);
                worst = std::max(worst, b);
                o.require(b < 1e-9, e.name + ": baxterize residual " + fmt(b));
            }
    }
    double ref = 0.0;
    for (double b : {2.0, 0.5})
        for (double beta : {0.0, 0.7})
            ref = std::max(ref, (build_R(gl_q11(b, beta).projection, b).mat - reference_R_gl_q11(b, beta))
                                    .cwiseAbs()
                                    .maxCoeff());
    for (double qv : {2.0, 0.5})
        for (double alpha : {0.0, 0.7})
            ref = std::max(ref, (build_R(free_fermion(free_fermion_a_for_q(qv), alpha).projection, qv).mat -
                                 reference_R_free_fermion(qv, alpha))
                                    .cwiseAbs()
                                    .maxCoeff());
    o.require(ref < 1e-12, "reference R deviation " + fmt(ref));
    if (o.ok) o.detail << "max residual " << fmt(worst) << ", reference R deviation " << fmt(ref);
    return o;
}

Outcome criterion9() {
    Outcome o;
    for (auto [n, r] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 3}}) {
        const std::string tag = "(" + std::to_string(n) + "," + std::to_string(r) + ")";
        SearchConfig c;
        c.n = n;
        c.r = r;
        c.starts = 32;
        c.seed = 1;
        const SearchResult res = minimize(c);
        o.require(res.converged, tag + ": not converged, best F " + fmt(res.best_F));
        o.require(res.best_F < 1e-18, tag + ": F = " + fmt(res.best_F));
        if (!res.converged) continue;
        const auto rep = classify(res.projection);
        o.require(is_solution(rep.cls), tag + ": classified " + std::string(to_string(rep.cls)));
        if (!is_solution(rep.cls) || std::isnan(rep.Q)) continue;
        functional_spectrum_traces(o, tag, res.projection, rep.Q, rep.k);
        if (o.ok) o.detail << tag << " " << to_string(rep.cls) << " Q=" << fmt(rep.Q) << " k=" << rep.k << "; ";
    }
    double g = 0.0;
    g = std::max(g, gradient_check(2, 1, 100, 91));
    g = std::max(g, gradient_check(2, 2, 100, 92));
    g = std::max(g, gradient_check(3, 3, 100, 93));
    o.require(g < 1e-6, "gradient relative error " + fmt(g));
    if (o.ok) o.detail << "gradient error " << fmt(g);
    return o;
}

Outcome criterion10() {
    Outcome o;
    std::mt19937_64 rng(10);
    int tested = 0;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 2;
        const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n * n - 1));
        const Projection p = random_projection(n, r, rng());
        const auto cert = functional_F(p);
        if (cert.a <= 1e-6) continue;
        ++tested;
        const CMatrix p1 = oracle::kron_loop(p.mat(), oracle::eye(n));
        const CMatrix p2 = oracle::kron_loop(oracle::eye(n), p.mat());
        const CMatrix h = p1 * p2 * p1 - p2 * p1 * p2 - cert.alpha0 * (p1 - p2);
        worst = std::max(worst, std::abs(0.5 * (h * h).trace().real() - cert.F / cert.a));
    }
    o.require(worst < 1e-10, "certificate deviation " + fmt(worst));
    double rec = 0.0;
    for (const auto& e : catalog()) {
        std::vector<double> s = {static_cast<double>(e.projection.r() * e.projection.n())};
        const auto t = trace_sequence(e.projection, 5);
        s.insert(s.end(), t.begin(), t.end());
        const double q2 = e.expected_Q * e.expected_Q;
        for (int m = 1; m <= 4; ++m) rec = std::max(rec, std::abs((s[m + 1] - s[m]) - (s[m] - s[m - 1]) / q2));
    }
    o.require(rec < 1e-9, "recursion deviation " + fmt(rec));
    if (o.ok) o.detail << tested << " projections, certificate " << fmt(worst) << ", recursion " << fmt(rec);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"catalog reproduction", criterion1},
        {"functional equivalence", criterion2},
        {"spectrum of K_P", criterion3},
        {"trace identity", criterion4},
        {"trace equivalence on random frames", criterion5},
        {"rank identities", criterion6},
        {"bounds suite", criterion7},
        {"braid layer", criterion8},
        {"search", criterion9},
        {"certificate and trace recursion", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& ex) {
            o.ok = false;
            o.detail.str(std::string("exception: ") + ex.what());
        }
        failed += !o.ok;
        std::printf("%s criterion %zu: %s (%s)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
