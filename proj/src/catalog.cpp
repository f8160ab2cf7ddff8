#include "heckeproj/catalog.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace heckeproj {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kParamTol = 1e-12;

void require_finite(std::initializer_list<double> xs, const char* where) {
    for (double x : xs)
        if (!std::isfinite(x)) throw Error(ErrorKind::BadParameters, std::string(where) + ": non-finite parameter");
}

CatalogEntry from_frame(std::string name, Frame frame) {
    Projection p = to_projection(frame);
    return CatalogEntry{std::move(name), std::move(frame), std::move(p), kNaN, 0, SolutionClass::NonSolution, {}};
}

Complex expi(double phi) { return std::polar(1.0, phi); }

}  // namespace

CatalogEntry trivial(int n, TrivialKind which) {
    if (n < 2) throw Error(ErrorKind::BadParameters, "trivial: n must be >= 2");
    const Eigen::Index d = static_cast<Eigen::Index>(n) * n;
    if (which == TrivialKind::Zero) {
        CatalogEntry e{"trivial-zero", std::nullopt, Projection::validate(CMatrix::Zero(d, d)), kNaN, 0,
                       SolutionClass::TrivialZero, {{"n", n}}};
        return e;
    }
    // Matrix units E_ab form an orthonormal frame spanning everything.
    std::vector<CMatrix> units;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) units.push_back(matrix_unit(n, a, b));
    CatalogEntry e = from_frame("trivial-identity", validate_frame(std::move(units)));
    e.expected_class = SolutionClass::TrivialIdentity;
    e.params = {{"n", n}};
    return e;
}

CatalogEntry n2r2_family(double a, double b, double alpha, double beta) {
    require_finite({a, b, alpha, beta}, "n2r2_family");
    CMatrix v1 = CMatrix::Zero(2, 2);
    v1(0, 0) = a * expi(alpha);
    v1(1, 1) = 1.0;
    v1 /= std::sqrt(a * a + 1.0);
    CMatrix v2 = CMatrix::Zero(2, 2);
    v2(0, 1) = 1.0;
    v2(1, 0) = b * expi(beta);
    v2 /= std::sqrt(b * b + 1.0);

    const bool first_case = std::abs(a) <= kParamTol;
    const bool second_case = std::abs(std::abs(b) - 1.0) <= kParamTol && std::abs(std::sin(beta)) <= kParamTol;
    if (first_case && std::abs(b) <= kParamTol) {
        throw Error(ErrorKind::BadParameters, "n2r2_family: a = b = 0 gives Q = b + 1/b undefined");
    }
    if (!first_case && second_case && std::abs(std::abs(a) - 1.0) <= kParamTol) {
        throw Error(ErrorKind::BadParameters, "n2r2_family: a = ±1 with b = ±1 makes q² singular");
    }

    CatalogEntry e = from_frame("n2r2", validate_frame({v1, v2}));
    e.params = {{"a", a}, {"b", b}, {"alpha", alpha}, {"beta", beta}};
    if (first_case) {
        e.expected_Q = std::abs(b) + 1.0 / std::abs(b);
        e.expected_k = 2;
        e.expected_class = SolutionClass::HeckeGeneric;
    } else if (second_case) {
        // q = |(a+1)/(a−1)|, Q = q + 1/q.
        e.expected_Q = 2.0 * (a * a + 1.0) / std::abs(a * a - 1.0);
        e.expected_k = 2;
        e.expected_class = SolutionClass::HeckeGeneric;
    }
    return e;
}

CatalogEntry gl_q11(double b, double beta) {
    CatalogEntry e = n2r2_family(0.0, b, 0.0, beta);
    e.name = "gl_q11";
    return e;
}

CatalogEntry free_fermion(double a, double alpha) {
    CatalogEntry e = n2r2_family(a, -1.0, alpha, 0.0);
    e.name = "free_fermion";
    return e;
}

CatalogEntry n3r3(double a, double b, double alpha, double beta) {
    require_finite({a, b, alpha, beta}, "n3r3");
    if (std::abs(a) <= kParamTol && std::abs(b) <= kParamTol) {
        throw Error(ErrorKind::DegenerateParameters, "n3r3: (a, b) = (0, 0)");
    }
    const double c = -a - b;
    const double d = std::sqrt(a * a + b * b + c * c);
    CMatrix v1 = CMatrix::Zero(3, 3), v2 = CMatrix::Zero(3, 3), v3 = CMatrix::Zero(3, 3);
    v1(0, 1) = a;
    v1(1, 0) = b;
    v1(2, 2) = c * expi(alpha);
    v2(0, 2) = b;
    v2(1, 1) = c * expi(-(alpha + beta));
    v2(2, 0) = a;
    v3(0, 0) = c * expi(beta);
    v3(1, 2) = a;
    v3(2, 1) = b;
    CatalogEntry e = from_frame("n3r3", validate_frame({v1 / d, v2 / d, v3 / d}));
    e.params = {{"a", a}, {"b", b}, {"c", c}, {"alpha", alpha}, {"beta", beta}};
    e.expected_Q = 2.0;
    e.expected_k = 8;
    e.expected_class = SolutionClass::HeckeGeneric;
    return e;
}

CatalogEntry n3r4(Complex z1, Complex z2, Complex z3, Complex z4) {
    for (auto z : {z1, z2, z3, z4}) require_finite({z.real(), z.imag()}, "n3r4");
    const double m1 = std::abs(z1), m2 = std::abs(z2), m3 = std::abs(z3), m4 = std::abs(z4);
    if (m1 == 0.0 || m2 == 0.0) throw Error(ErrorKind::BadParameters, "n3r4: z1 and z2 must be nonzero");
    if (m3 == 0.0 && m4 == 0.0) throw Error(ErrorKind::BadParameters, "n3r4: z3 and z4 cannot both vanish");

    const double s = std::sqrt(m1 * m1 + m2 * m2);
    const double u = std::sqrt(m3 * m3 + m4 * m4);
    CMatrix v1 = CMatrix::Zero(3, 3), v2 = CMatrix::Zero(3, 3), v3 = CMatrix::Zero(3, 3), v4 = CMatrix::Zero(3, 3);
    v1(0, 1) = z1;
    v1(1, 0) = z2;
    v2(1, 2) = z2;
    v2(2, 1) = z1;
    v3(0, 0) = z3;
    v3(2, 2) = z4;
    v4(0, 2) = 1.0;
    v4(2, 0) = 1.0;
    CatalogEntry e = from_frame("n3r4", validate_frame({v1 / s, v2 / s, v3 / u, v4 / std::numbers::sqrt2}));
    e.params = {{"z1_re", z1.real()}, {"z1_im", z1.imag()}, {"z2_re", z2.real()}, {"z2_im", z2.imag()},
                {"z3_re", z3.real()}, {"z3_im", z3.imag()}, {"z4_re", z4.real()}, {"z4_im", z4.imag()}};

    auto matches = [](double lhs, double rhs) {
        const double tol = 1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs));
        return std::abs(lhs - rhs) <= tol || std::abs(lhs + rhs) <= tol;
    };
    const bool holds = matches(m3 * (m1 - m2), m4 * (m1 + m2)) || matches(m4 * (m1 - m2), m3 * (m1 + m2));
    if (holds) {
        e.expected_Q = m1 / m2 + m2 / m1;
        e.expected_k = 8;
        e.expected_class = SolutionClass::HeckeGeneric;
    }
    return e;
}

CatalogEntry tl_rank1(int n, const std::vector<double>& weights) {
    if (n < 2 || static_cast<int>(weights.size()) != n) {
        throw Error(ErrorKind::BadParameters, "tl_rank1: need n >= 2 weights");
    }
    double norm2 = 0.0;
    for (double w : weights) {
        require_finite({w}, "tl_rank1");
        if (w <= 0.0) throw Error(ErrorKind::BadParameters, "tl_rank1: weights must be positive");
        norm2 += w * w;
    }
    if (std::abs(norm2 - 1.0) > 1e-10) throw Error(ErrorKind::BadParameters, "tl_rank1: Σ w² must equal 1");
    const double product = weights.front() * weights.back();
    for (int i = 0; i < n; ++i) {
        const double pi = weights[static_cast<std::size_t>(i)] * weights[static_cast<std::size_t>(n - 1 - i)];
        if (std::abs(pi - product) > 1e-10) {
            throw Error(ErrorKind::NotTLWeights, "tl_rank1: w_i w_{n+1-i} is not constant (index " +
                                                     std::to_string(i + 1) + ")");
        }
    }
    CMatrix v = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) v(i, n - 1 - i) = weights[static_cast<std::size_t>(i)];
    CatalogEntry e = from_frame("tl_rank1", validate_frame({v}));
    e.params["n"] = n;
    for (int i = 0; i < n; ++i) e.params["w" + std::to_string(i + 1)] = weights[static_cast<std::size_t>(i)];
    e.expected_Q = 1.0 / product;
    e.expected_k = n;
    e.expected_class = SolutionClass::TemperleyLieb;
    return e;
}

CMatrix reference_R_gl_q11(double b, double beta) {
    require_finite({b, beta}, "reference_R_gl_q11");
    if (b == 0.0) throw Error(ErrorKind::BadParameters, "reference_R_gl_q11: b must be nonzero");
    CMatrix r = CMatrix::Zero(4, 4);
    r(0, 0) = b;
    r(1, 1) = b - 1.0 / b;
    r(1, 2) = -expi(-beta);
    r(2, 1) = -expi(beta);
    r(3, 3) = -1.0 / b;
    return r;
}

CMatrix reference_R_free_fermion(Complex q, double alpha) {
    require_finite({q.real(), q.imag(), alpha}, "reference_R_free_fermion");
    if (std::abs(q) == 0.0 || std::abs(q + 1.0) <= kParamTol) {
        throw Error(ErrorKind::BadParameters, "reference_R_free_fermion: q must avoid 0 and −1");
    }
    const Complex qm = q - 1.0 / q;
    const Complex qp = q + 1.0 / q;
    CMatrix r = CMatrix::Zero(4, 4);
    r(0, 0) = qm + 2.0;
    r(0, 3) = expi(alpha) * qm;
    r(1, 1) = qm;
    r(1, 2) = qp;
    r(2, 1) = qp;
    r(2, 2) = qm;
    r(3, 0) = expi(-alpha) * qm;
    r(3, 3) = qm - 2.0;
    return r / 2.0;
}

double free_fermion_a_for_q(double q) {
    if (q == -1.0) throw Error(ErrorKind::BadParameters, "free_fermion_a_for_q: q = −1");
    return (1.0 - q) / (1.0 + q);
}

std::vector<CatalogEntry> standard_solutions() {
    std::vector<CatalogEntry> out;
    out.push_back(gl_q11(2.0));
    out.push_back(free_fermion(3.0));
    out.push_back(n3r3(1.0, 1.0));
    out.push_back(n3r4(2.0, 1.0, 3.0, 1.0));
    out.push_back(tl_rank1(2, {std::sqrt(0.5), std::sqrt(0.5)}));
    return out;
}

}  // namespace heckeproj
