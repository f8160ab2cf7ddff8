#include <doctest.h>

#include "heckeproj/catalog.hpp"
#include "heckeproj/frame.hpp"
#include "heckeproj/search.hpp"
#include "oracles.hpp"

using namespace heckeproj;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::MalformedInput;
}

// Orthonormal basis of the range of a projection, from the Eigen oracle.
CMatrix range_basis(const CMatrix& p) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(p);
    const Eigen::Index d = p.rows();
    int r = 0;
    for (Eigen::Index i = 0; i < d; ++i) r += es.eigenvalues()(i) > 0.5;
    return es.eigenvectors().rightCols(r);
}

void check_converged(const SearchResult& res, int n, int r) {
    REQUIRE(res.converged);
    CHECK(res.best_F < 1e-18);
    const Projection& p = res.projection;
    CHECK(p.n() == n);
    CHECK(p.r() == r);
    const auto rep = classify(p);
    CHECK(is_solution(rep.cls));
    CHECK(rep.cls == res.report.cls);
    CHECK(rep.hecke_residual < 1e-8);
    CHECK(rep.bounds_ok);
    CHECK(check_bounds(n, r, rep.k, rep.Q, rep.cls == SolutionClass::TemperleyLieb).all_ok());
    const double rn = r * n;
    const auto t = trace_sequence(p, 5);
    CHECK(std::abs(rn - t[0] - rep.k * (1.0 - 1.0 / (rep.Q * rep.Q))) < 1e-8 * rn);
    for (int m = 1; m <= 5; ++m)
        CHECK(std::abs(t[m - 1] - (rn + (std::pow(rep.Q, -2.0 * m) - 1.0) * rep.k)) < 1e-8 * rn);
    const Frame f = frame_from_projection(p);
    const FrameAnalysis fa = coupling_analysis(f);
    CHECK(std::abs(functional_G(fa.A, rep.k)) < 1e-8 * std::pow(1.0 + fa.A.trace().real(), 2));
}

}  // namespace

TEST_CASE("objective agrees with functional_F and the trace form") {
    for (int s = 0; s < 20; ++s) {
        const int n = 2 + s % 2, r = 1 + s % 3;
        const Projection p = random_projection(n, r, 40 + s);
        const CMatrix u = range_basis(p.mat());
        const double f = functional_F(p).F;
        CHECK(std::abs(objective(u, n) - f) < 1e-10 * (1.0 + f));
        CHECK(std::abs(objective_trace_form(u, n) - f) < 1e-9 * (1.0 + f));
        CHECK(objective(u, n) >= 0.0);
    }
    for (const auto& e : standard_solutions()) {
        const CMatrix u = range_basis(e.projection.mat());
        CHECK(objective(u, e.projection.n()) < 1e-20);
    }
    const CMatrix u = random_isometry(4, 2, 1);
    CHECK(kind_of([&] { objective(2.0 * u, 2); }) == ErrorKind::NotIsometry);
}

TEST_CASE("gradient_check on 100 points") {
    CHECK(gradient_check(2, 1, 100, 1) < 1e-6);
    CHECK(gradient_check(2, 2, 100, 2) < 1e-6);
    CHECK(gradient_check(3, 2, 100, 3) < 1e-6);
}

TEST_CASE("ambient gradient against directional finite differences") {
    std::mt19937_64 rng(17);
    for (int s = 0; s < 20; ++s) {
        const int n = 2 + s % 2, r = 1 + s % 3;
        const CMatrix u = oracle::gaussian(n * n, r, rng);  // not an isometry: trace form is polynomial
        const CMatrix d = oracle::gaussian(n * n, r, rng);
        const double h = 1e-6;
        const double fd =
            (objective_trace_form(u + h * d, n) - objective_trace_form(u - h * d, n)) / (2.0 * h);
        const double an = (ambient_gradient(u, n).adjoint() * d).trace().real();
        CHECK(std::abs(fd - an) < 1e-5 * (1.0 + std::abs(an)));
    }
}

TEST_CASE("riemannian gradient is tangent to the Stiefel manifold") {
    const CMatrix u = random_isometry(9, 3, 5);
    const CMatrix xi = riemannian_gradient(u, ambient_gradient(u, 3));
    const CMatrix s = u.adjoint() * xi;
    CHECK((s + s.adjoint()).norm() < 1e-12 * (1.0 + xi.norm()));
}

TEST_CASE("polish") {
    for (const auto& e : standard_solutions()) {
        CAPTURE(e.name);
        const Projection p = polish(e.projection);
        CHECK((p.mat() - e.projection.mat()).norm() < 1e-13);
    }
    std::mt19937_64 rng(23);
    for (const auto& e : standard_solutions()) {
        CAPTURE(e.name);
        const Eigen::Index d = e.projection.mat().rows();
        CMatrix h = oracle::random_hermitian(d, rng);
        h *= 1e-4 / h.norm();
        const Projection p = polish(CMatrix(e.projection.mat() + h));
        CHECK(p.r() == e.projection.r());
        CHECK(objective(range_basis(p.mat()), p.n()) < 1e-18);
        CHECK(is_solution(classify(p).cls));
    }
    CHECK(kind_of([] { polish(CMatrix(0.5 * CMatrix::Identity(4, 4))); }) == ErrorKind::NotIdempotent);
}

TEST_CASE("minimize (2,1) finds a Temperley-Lieb solution") {
    SearchConfig c;
    c.n = 2;
    c.r = 1;
    c.starts = 8;
    c.seed = 7;
    const auto res = minimize(c);
    check_converged(res, 2, 1);
    CHECK(res.report.cls == SolutionClass::TemperleyLieb);
    CHECK(res.report.k == 2);
    CHECK(res.converged_starts >= 1);
}

TEST_CASE("minimize (2,2) converges") {
    SearchConfig c;
    c.n = 2;
    c.r = 2;
    c.starts = 16;
    c.seed = 3;
    const auto res = minimize(c);
    check_converged(res, 2, 2);
}

TEST_CASE("minimize seeded at a catalog solution needs no iterations") {
    SearchConfig c;
    c.n = 2;
    c.r = 2;
    c.starts = 1;
    c.initial = gl_q11(2.0).projection;
    const auto res = minimize(c);
    CHECK(res.converged);
    CHECK(res.iterations == 0);
    CHECK(res.best_start == 0);
    CHECK((res.projection.mat() - c.initial->mat()).norm() < 1e-13);
}

TEST_CASE("descent never increases F from the initial point") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
        SearchConfig c;
        c.n = 3;
        c.r = 2;
        c.starts = 1;
        c.max_iters = 30;
        c.initial = random_projection(3, 2, s);
        const double f0 = functional_F(*c.initial).F;
        const auto res = minimize(c);
        CHECK(res.best_F <= f0 + 1e-12);
    }
}

TEST_CASE("minimize is deterministic and thread-count independent") {
    SearchConfig c;
    c.n = 2;
    c.r = 2;
    c.starts = 8;
    c.seed = 11;
    const auto a = minimize(c);
    const auto b = minimize(c);
    c.threads = 3;
    const auto t = minimize(c);
    for (const auto* x : {&b, &t}) {
        CHECK(x->best_start == a.best_start);
        CHECK(x->best_F == a.best_F);
        CHECK(x->iterations == a.iterations);
        CHECK(x->converged_starts == a.converged_starts);
        CHECK((x->projection.mat() - a.projection.mat()).norm() == 0.0);
    }
}

TEST_CASE("BadConfig") {
    const auto bad = [](auto&& edit) {
        SearchConfig c;
        edit(c);
        return kind_of([&] { validate_config(c); }) == ErrorKind::BadConfig &&
               kind_of([&] { minimize(c); }) == ErrorKind::BadConfig;
    };
    CHECK(bad([](SearchConfig& c) { c.r = 5; }));
    CHECK(bad([](SearchConfig& c) { c.r = 0; }));
    CHECK(bad([](SearchConfig& c) { c.n = 1; }));
    CHECK(bad([](SearchConfig& c) { c.starts = 0; }));
    CHECK(bad([](SearchConfig& c) { c.max_iters = -1; }));
    CHECK(bad([](SearchConfig& c) { c.f_tol = -1.0; }));
    CHECK(bad([](SearchConfig& c) { c.step0 = 0.0; }));
    CHECK(bad([](SearchConfig& c) { c.threads = -2; }));
    CHECK(bad([](SearchConfig& c) { c.initial = random_projection(2, 2, 1); }));
    CHECK(bad([](SearchConfig& c) { c.initial = random_projection(3, 1, 1); }));
    SearchConfig ok;
    CHECK_NOTHROW(validate_config(ok));
}
