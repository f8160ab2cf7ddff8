// heckeproj: verify, build, search and bound Hecke-compatible projections.
// stdout carries JSON only; diagnostics go to stderr. Exit codes: 0 pass,
// 1 computed but failing, 2 bad input.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "heckeproj/json_io.hpp"

using namespace heckeproj;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct FamilyArgs {
    std::string family;
    std::optional<int> n;
    std::optional<double> a, b, alpha, beta, q;
    std::vector<double> z, z_im, w;
    std::optional<std::string> which, kind;
};

const std::map<std::string, std::set<std::string>> kFamilyFlags = {
    {"trivial", {"n", "which"}},
    {"n2r2", {"a", "b", "alpha", "beta"}},
    {"gl_q11", {"b", "beta"}},
    {"free_fermion", {"a", "alpha"}},
    {"n3r3", {"a", "b", "alpha", "beta"}},
    {"n3r4", {"z", "z-im"}},
    {"tl-rank1", {"n", "w"}},
    {"ref-R", {"kind", "b", "beta", "q", "alpha"}},
};

Json read_input(const std::string& source) {
    std::stringstream buf;
    if (source == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(source);
        if (!in) throw Error(ErrorKind::MalformedInput, "cannot open '" + source + "'");
        buf << in.rdbuf();
    }
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
    }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void check_flags(const FamilyArgs& f, const std::set<std::string>& given) {
    auto it = kFamilyFlags.find(f.family);
    if (it == kFamilyFlags.end()) throw Error(ErrorKind::BadParameters, "unknown family '" + f.family + "'");
    for (const auto& flag : given) {
        if (!it->second.count(flag)) {
            throw Error(ErrorKind::BadParameters, "--" + flag + " does not apply to family '" + f.family + "'");
        }
    }
}

CatalogEntry build_family(const FamilyArgs& f) {
    if (f.family == "trivial") {
        const std::string which = f.which.value_or("identity");
        if (which != "zero" && which != "identity") throw Error(ErrorKind::BadParameters, "--which must be zero or identity");
        return trivial(f.n.value_or(2), which == "zero" ? TrivialKind::Zero : TrivialKind::Identity);
    }
    if (f.family == "n2r2") return n2r2_family(f.a.value_or(0.0), f.b.value_or(2.0), f.alpha.value_or(0.0), f.beta.value_or(0.0));
    if (f.family == "gl_q11") return gl_q11(f.b.value_or(2.0), f.beta.value_or(0.0));
    if (f.family == "free_fermion") return free_fermion(f.a.value_or(3.0), f.alpha.value_or(0.0));
    if (f.family == "n3r3") return n3r3(f.a.value_or(1.0), f.b.value_or(1.0), f.alpha.value_or(0.0), f.beta.value_or(0.0));
    if (f.family == "n3r4") {
        std::vector<double> re = f.z.empty() ? std::vector<double>{2.0, 1.0, 3.0, 1.0} : f.z;
        std::vector<double> im = f.z_im.empty() ? std::vector<double>(4, 0.0) : f.z_im;
        if (re.size() != 4 || im.size() != 4) throw Error(ErrorKind::BadParameters, "--z and --z-im take 4 values");
        return n3r4({re[0], im[0]}, {re[1], im[1]}, {re[2], im[2]}, {re[3], im[3]});
    }
    if (f.family == "tl-rank1") {
        const int n = f.n.value_or(f.w.empty() ? 2 : static_cast<int>(f.w.size()));
        std::vector<double> w = f.w.empty() ? std::vector<double>(static_cast<std::size_t>(n), 1.0 / std::sqrt(n)) : f.w;
        return tl_rank1(n, w);
    }
    throw Error(ErrorKind::BadParameters, "family '" + f.family + "' has no projection");
}

Tolerances tolerances_from(const std::map<std::string, double>& flags) {
    Tolerances t;
    t.validate = flags.at("validate");
    t.rank = flags.at("rank");
    t.cluster = flags.at("cluster");
    t.solution = flags.at("solution");
    t.estimator_agreement = flags.at("estimator");
    t.commuting = flags.at("commuting");
    return t;
}

int run_verify(const std::string& input, const Tolerances& tol) {
    const Projection p = projection_or_frame_from_json(read_input(input), tol.validate);
    const SolutionReport report = classify(p, tol);
    emit(to_json(report));
    return is_solution(report.cls) ? kPass : kFail;
}

int run_reference_R(const FamilyArgs& f) {
    const std::string kind = f.kind.value_or("gl_q11");
    CMatrix reference;
    RMatrix built;
    if (kind == "gl_q11") {
        const double b = f.b.value_or(2.0);
        if (!(b > 0.0)) throw Error(ErrorKind::BadParameters, "ref-R gl_q11 needs --b > 0 (q = b)");
        reference = reference_R_gl_q11(b, f.beta.value_or(0.0));
        built = build_R(gl_q11(b, f.beta.value_or(0.0)).projection, b);
    } else if (kind == "free_fermion") {
        const double q = f.q.value_or(2.0);
        if (!(q > 0.0)) throw Error(ErrorKind::BadParameters, "ref-R free_fermion needs --q > 0");
        reference = reference_R_free_fermion(q, f.alpha.value_or(0.0));
        built = build_R(free_fermion(free_fermion_a_for_q(q), f.alpha.value_or(0.0)).projection, q);
    } else {
        throw Error(ErrorKind::BadParameters, "--kind must be gl_q11 or free_fermion");
    }
    const double deviation = (reference - built.mat).cwiseAbs().maxCoeff();
    Json j;
    j["name"] = "ref-R";
    j["kind"] = kind;
    j["reference"] = matrix_to_json(reference);
    j["rmatrix"] = to_json(built);
    j["max_entry_deviation"] = deviation;
    emit(j);
    return deviation < 1e-12 ? kPass : kFail;
}

int run_catalog(const FamilyArgs& f, const Tolerances& tol) {
    if (f.family == "ref-R") return run_reference_R(f);
    const CatalogEntry e = build_family(f);
    const SolutionReport report = classify(e.projection, tol);
    bool matches = report.cls == e.expected_class;
    if (matches && is_solution(e.expected_class) && std::isfinite(e.expected_Q)) {
        matches = report.k == e.expected_k && std::abs(report.Q - e.expected_Q) <= 1e-9 * e.expected_Q;
    }
    Json j = to_json(e);
    j["report"] = to_json(report);
    j["matches_expected"] = matches;
    emit(j);
    return matches ? kPass : kFail;
}

int run_rmatrix(const FamilyArgs& f, const std::optional<std::string>& input, int strands, const Tolerances& tol) {
    const Projection p = input ? projection_or_frame_from_json(read_input(*input), tol.validate) : build_family(f).projection;
    const SolutionReport report = classify(p, tol);
    if (report.cls != SolutionClass::HeckeGeneric && report.cls != SolutionClass::TemperleyLieb) {
        std::cerr << "NotASolution: class " << to_string(report.cls) << " has no R-matrix\n";
        emit(Json{{"report", to_json(report)}});
        return kFail;
    }
    const RMatrix R = build_R(p, report.q);
    const RelationResiduals rel = relation_check(R, strands);

    const std::vector<double> grid = {0.5, 0.875, 1.25, 1.625, 2.0};
    double bax = 0.0;
    for (double lambda : grid)
        for (double mu : grid) bax = std::max(bax, baxterize_check(R, lambda, mu));

    const double tl = tl_relation_check(p, report.Q, strands);
    const bool tl_consistent = (tl < 1e-9) == (report.cls == SolutionClass::TemperleyLieb);
    const bool ok = std::max({rel.quad, rel.braid, rel.far, rel.herm_or_unit, bax}) < 1e-9 && tl_consistent;

    Json j;
    j["rmatrix"] = to_json(R);
    j["strands"] = strands;
    j["relations"] = to_json(rel);
    j["tl_relation_residual"] = tl;
    j["baxterize"] = Json{{"grid", grid}, {"max_residual", bax}};
    j["report"] = to_json(report);
    j["ok"] = ok;
    emit(j);
    return ok ? kPass : kFail;
}

int run_search(const std::string& input, std::optional<int> threads) {
    SearchConfig config = search_config_from_json(read_input(input));
    if (threads) config.threads = *threads;
    const SearchResult result = minimize(config);
    std::cerr << "search: " << result.converged_starts << "/" << config.starts << " starts reached a verified solution\n";
    emit(to_json(result));
    return result.converged ? kPass : kFail;
}

int run_bounds(int n, int r, int k, double Q, bool tl, double slack) {
    const BoundsReport b = check_bounds(n, r, k, Q, tl, slack);
    Json j;
    j["n"] = n;
    j["r"] = r;
    j["k"] = k;
    j["Q"] = Q;
    j["is_tl"] = tl;
    j["all_ok"] = b.all_ok();
    j["flags"] = to_json(b);
    emit(j);
    return b.all_ok() ? kPass : kFail;
}

void add_family_options(CLI::App* sub, FamilyArgs& f) {
    sub->add_option("family", f.family, "trivial | n2r2 | gl_q11 | free_fermion | n3r3 | n3r4 | tl-rank1 | ref-R");
    sub->add_option("--n", f.n, "local dimension (trivial, tl-rank1)");
    sub->add_option("--a", f.a, "parameter a");
    sub->add_option("--b", f.b, "parameter b");
    sub->add_option("--alpha", f.alpha, "phase α");
    sub->add_option("--beta", f.beta, "phase β");
    sub->add_option("--q", f.q, "deformation parameter q (ref-R free_fermion)");
    sub->add_option("--z", f.z, "n3r4: real parts of z1..z4")->expected(4);
    sub->add_option("--z-im", f.z_im, "n3r4: imaginary parts of z1..z4")->expected(4);
    sub->add_option("--w", f.w, "tl-rank1 weights")->expected(1, 64);
    sub->add_option("--which", f.which, "trivial: zero | identity");
    sub->add_option("--kind", f.kind, "ref-R: gl_q11 | free_fermion");
}

std::set<std::string> given_family_flags(const CLI::App* sub) {
    std::set<std::string> out;
    for (const char* name : {"n", "a", "b", "alpha", "beta", "q", "z", "z-im", "w", "which", "kind"}) {
        if (sub->count(std::string("--") + name) > 0) out.insert(name);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hecke-compatible orthogonal projections: verify, catalog, search, rmatrix, bounds"};
    app.require_subcommand(1);

    std::map<std::string, double> tol = {
        {"validate", kDefaultProjectionTol}, {"rank", kDefaultRankTol},     {"cluster", kDefaultClusterTol},
        {"solution", 1e-8},                  {"estimator", 1e-6},           {"commuting", 1e-12},
    };
    for (auto& [name, value] : tol) {
        app.add_option("--tol-" + name, value, "tolerance override")->capture_default_str();
    }

    std::string input;
    auto* verify = app.add_subcommand("verify", "classify a Projection or Frame JSON document (path or '-')");
    verify->add_option("input", input)->required();

    FamilyArgs catalog_args;
    auto* catalog = app.add_subcommand("catalog", "build a catalog solution and classify it");
    add_family_options(catalog, catalog_args);
    catalog->get_option("family")->required();

    auto* search = app.add_subcommand("search", "multi-start minimization from a SearchConfig JSON (path or '-')");
    std::optional<int> threads;
    search->add_option("config", input)->required();
    search->add_option("--threads", threads, "worker threads (0 = all cores)");

    FamilyArgs rm_args;
    std::optional<std::string> rm_input;
    int strands = 3;
    auto* rmatrix = app.add_subcommand("rmatrix", "build R = qI − QP and check braid, Hecke and baxterized relations");
    add_family_options(rmatrix, rm_args);
    rmatrix->add_option("--input", rm_input, "Projection or Frame JSON instead of a family");
    rmatrix->add_option("--strands", strands, "number of tensor legs (≥ 3)")->capture_default_str();

    int bn = 0, br = 0, bk = 0;
    double bQ = 0.0, slack = 1e-9;
    bool btl = false;
    auto* bounds = app.add_subcommand("bounds", "evaluate the parameter bounds for (n, r, k, Q)");
    bounds->add_option("--n", bn)->required();
    bounds->add_option("--r", br)->required();
    bounds->add_option("--k", bk)->required();
    bounds->add_option("--Q", bQ)->required();
    bounds->add_flag("--tl", btl, "the solution is of Temperley-Lieb type");
    bounds->add_option("--slack", slack)->capture_default_str();

    for (auto* sub : {verify, catalog, search, rmatrix, bounds}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        const Tolerances t = tolerances_from(tol);
        if (*verify) return run_verify(input, t);
        if (*catalog) {
            check_flags(catalog_args, given_family_flags(catalog));
            return run_catalog(catalog_args, t);
        }
        if (*search) return run_search(input, threads);
        if (*rmatrix) {
            if (!rm_input && rm_args.family.empty()) throw Error(ErrorKind::BadParameters, "give a family or --input");
            if (rm_input && !rm_args.family.empty()) throw Error(ErrorKind::BadParameters, "give a family or --input, not both");
            if (!rm_input) {
                check_flags(rm_args, given_family_flags(rmatrix));
                if (rm_args.family == "ref-R") throw Error(ErrorKind::BadParameters, "ref-R is not a projection family");
            }
            if (strands < 3) throw Error(ErrorKind::BadParameters, "--strands must be >= 3");
            return run_rmatrix(rm_args, rm_input, strands, t);
        }
        if (*bounds) return run_bounds(bn, br, bk, bQ, btl, slack);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
