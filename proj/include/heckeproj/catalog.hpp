#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heckeproj/frame.hpp"
#include "heckeproj/hecke.hpp"

namespace heckeproj {

/// An explicit solution family member with the values it is known to produce.
struct CatalogEntry {
    std::string name;
    std::optional<Frame> frame;  // absent only for the zero projection
    Projection projection;
    double expected_Q = 0.0;     // NaN when unconstrained or not a solution
    int expected_k = 0;
    SolutionClass expected_class = SolutionClass::NonSolution;
    std::map<std::string, double> params;
};

enum class TrivialKind { Zero, Identity };

CatalogEntry trivial(int n, TrivialKind which);

/// n = r = 2 family: V₁ = diag(a e^{iα}, 1)/√(a²+1), V₂ = antidiag(1, b e^{iβ})/√(b²+1).
/// Solutions at a = 0 (Q = |b| + 1/|b|) and at b = ±1, sin β = 0
/// (Q = 2(a²+1)/|a²−1|), both with k = 2.
CatalogEntry n2r2_family(double a, double b, double alpha, double beta);

/// n2r2_family(0, b, 0, β): the GL_q(1|1)-type solution with Q = b + 1/b.
CatalogEntry gl_q11(double b, double beta = 0.0);

/// n2r2_family(a, −1, α, 0): the free-fermion-type solution.
CatalogEntry free_fermion(double a, double alpha = 0.0);

/// n = r = 3 family with c = −a − b; Q = 2, k = 8.
CatalogEntry n3r3(double a, double b, double alpha = 0.0, double beta = 0.0);

/// n = 3, r = 4 family; Q = |z₁|/|z₂| + |z₂|/|z₁|, k = 8 when
/// |z₃|(|z₁|−|z₂|) = ±|z₄|(|z₁|+|z₂|) or |z₄|(|z₁|−|z₂|) = ±|z₃|(|z₁|+|z₂|).
CatalogEntry n3r4(Complex z1, Complex z2, Complex z3, Complex z4);

/// Rank-1 Temperley-Lieb solution: single V with V(i, n−1−i) = w_i.
/// Requires Σ w² = 1 and w_i w_{n−1−i} constant. Q = 1/(w₀ w_{n−1}), k = n.
CatalogEntry tl_rank1(int n, const std::vector<double>& weights);

/// The 4×4 R-matrix of the GL_q(1|1) family at q = b.
CMatrix reference_R_gl_q11(double b, double beta = 0.0);

/// The free-fermion R-matrix, ½[[Q₋+2, 0, 0, e^{iα}Q₋], [0, Q₋, Q₊, 0], ...].
CMatrix reference_R_free_fermion(Complex q, double alpha = 0.0);

/// Frame parameter a = (1 − q)/(1 + q) that reproduces reference_R_free_fermion.
double free_fermion_a_for_q(double q);

/// Every solution entry with its stock parameters, for regression sweeps.
std::vector<CatalogEntry> standard_solutions();

}  // namespace heckeproj
