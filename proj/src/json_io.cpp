#include "heckeproj/json_io.hpp"

#include <cmath>
#include <limits>

namespace heckeproj {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void malformed(const std::string& field, const std::string& why) {
    throw Error(ErrorKind::MalformedInput, "field '" + field + "': " + why);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) malformed(where.empty() ? std::string("<root>") : where, "expected an object");
    auto it = j.find(key);
    const std::string field = where.empty() ? key : where + "." + key;
    if (it == j.end()) malformed(field, "missing");
    return *it;
}

std::string path(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double read_double(const Json& j, const std::string& field) {
    if (j.is_null()) return kNaN;
    if (!j.is_number()) malformed(field, "expected a number");
    return j.get<double>();
}

int read_int(const Json& j, const std::string& field) {
    if (!j.is_number_integer()) malformed(field, "expected an integer");
    return j.get<int>();
}

bool read_bool(const Json& j, const std::string& field) {
    if (!j.is_boolean()) malformed(field, "expected true or false");
    return j.get<bool>();
}

std::string read_string(const Json& j, const std::string& field) {
    if (!j.is_string()) malformed(field, "expected a string");
    return j.get<std::string>();
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Complex complex_from_json(const Json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) malformed(field, "expected [re, im]");
    return {read_double(j[0], field + "[0]"), read_double(j[1], field + "[1]")};
}

Json matrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) malformed(field, "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array()) malformed(field + "[0]", "expected a row array");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        const std::string row_field = field + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) malformed(row_field, "ragged row");
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], row_field + "[" + std::to_string(k) + "]");
        }
    }
    return m;
}

Json to_json(const Projection& p) {
    Json j;
    j["n"] = p.n();
    j["mat"] = matrix_to_json(p.mat());
    return j;
}

Projection projection_from_json(const Json& j, double tol) {
    const int n = read_int(need(j, "n", ""), "n");
    CMatrix m = matrix_from_json(need(j, "mat", ""), "mat");
    if (m.rows() != static_cast<Eigen::Index>(n) * n || m.cols() != m.rows()) {
        malformed("mat", "expected an n² × n² matrix");
    }
    return Projection::validate(m, tol);
}

Json to_json(const Frame& f) {
    Json j;
    j["n"] = f.n();
    Json mats = Json::array();
    for (const auto& v : f.mats()) mats.push_back(matrix_to_json(v));
    j["mats"] = std::move(mats);
    return j;
}

Frame frame_from_json(const Json& j, double tol) {
    const int n = read_int(need(j, "n", ""), "n");
    const Json& mats = need(j, "mats", "");
    if (!mats.is_array() || mats.empty()) malformed("mats", "expected a non-empty array of matrices");
    std::vector<CMatrix> vs;
    for (std::size_t s = 0; s < mats.size(); ++s) {
        const std::string field = "mats[" + std::to_string(s) + "]";
        CMatrix v = matrix_from_json(mats[s], field);
        if (v.rows() != n || v.cols() != n) malformed(field, "expected an n × n matrix");
        vs.push_back(std::move(v));
    }
    return validate_frame(std::move(vs), tol);
}

Projection projection_or_frame_from_json(const Json& j, double tol) {
    if (!j.is_object()) malformed("<root>", "expected an object");
    if (j.contains("mats")) return to_projection(frame_from_json(j));
    if (j.contains("mat")) return projection_from_json(j, tol);
    malformed("mat", "missing (expected a Projection with 'mat' or a Frame with 'mats')");
}

Json to_json(const Tolerances& t) {
    Json j;
    j["validate"] = t.validate;
    j["rank"] = t.rank;
    j["cluster"] = t.cluster;
    j["solution"] = t.solution;
    j["estimator_agreement"] = t.estimator_agreement;
    j["commuting"] = t.commuting;
    return j;
}

Tolerances tolerances_from_json(const Json& j) {
    const std::string w = "tolerances";
    Tolerances t;
    t.validate = read_double(need(j, "validate", w), path(w, "validate"));
    t.rank = read_double(need(j, "rank", w), path(w, "rank"));
    t.cluster = read_double(need(j, "cluster", w), path(w, "cluster"));
    t.solution = read_double(need(j, "solution", w), path(w, "solution"));
    t.estimator_agreement = read_double(need(j, "estimator_agreement", w), path(w, "estimator_agreement"));
    t.commuting = read_double(need(j, "commuting", w), path(w, "commuting"));
    return t;
}

Json to_json(const BoundsReport& b) {
    Json j = Json::object();
    for (const auto& f : b.flags) {
        j[f.name] = Json{{"applicable", f.applicable}, {"passed", f.passed}, {"detail", f.detail}};
    }
    return j;
}

BoundsReport bounds_from_json(const Json& j) {
    if (!j.is_object()) malformed("bounds", "expected an object");
    BoundsReport b;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string w = "bounds." + it.key();
        BoundFlag f;
        f.name = it.key();
        f.applicable = read_bool(need(it.value(), "applicable", w), path(w, "applicable"));
        f.passed = read_bool(need(it.value(), "passed", w), path(w, "passed"));
        f.detail = read_string(need(it.value(), "detail", w), path(w, "detail"));
        b.flags.push_back(std::move(f));
    }
    return b;
}

Json to_json(const SolutionReport& r) {
    Json j;
    j["n"] = r.n;
    j["r"] = r.r;
    j["k"] = r.k;
    j["Q"] = number(r.Q);
    j["Q_trace"] = number(r.Q_trace);
    j["Q_spectral"] = number(r.Q_spectral);
    j["q"] = complex_to_json(r.q);
    j["class"] = std::string(to_string(r.cls));
    j["hecke_residual"] = number(r.hecke_residual);
    j["tl_residual"] = number(r.tl_residual);
    j["bounds_ok"] = r.bounds_ok;
    j["bounds"] = to_json(r.bounds);
    j["tolerances"] = to_json(r.tolerances);
    return j;
}

SolutionReport report_from_json(const Json& j) {
    SolutionReport r;
    r.n = read_int(need(j, "n", ""), "n");
    r.r = read_int(need(j, "r", ""), "r");
    r.k = read_int(need(j, "k", ""), "k");
    r.Q = read_double(need(j, "Q", ""), "Q");
    r.Q_trace = read_double(need(j, "Q_trace", ""), "Q_trace");
    r.Q_spectral = read_double(need(j, "Q_spectral", ""), "Q_spectral");
    r.q = complex_from_json(need(j, "q", ""), "q");
    try {
        r.cls = solution_class_from_string(read_string(need(j, "class", ""), "class"));
    } catch (const Error& e) {
        malformed("class", e.what());
    }
    r.hecke_residual = read_double(need(j, "hecke_residual", ""), "hecke_residual");
    r.tl_residual = read_double(need(j, "tl_residual", ""), "tl_residual");
    r.bounds_ok = read_bool(need(j, "bounds_ok", ""), "bounds_ok");
    r.bounds = bounds_from_json(need(j, "bounds", ""));
    r.tolerances = tolerances_from_json(need(j, "tolerances", ""));
    return r;
}

Json to_json(const RMatrix& R) {
    Json j;
    j["n"] = R.n;
    j["q"] = complex_to_json(R.q);
    j["Q"] = R.Q;
    j["mat"] = matrix_to_json(R.mat);
    j["projection"] = matrix_to_json(R.projection);
    return j;
}

RMatrix rmatrix_from_json(const Json& j) {
    RMatrix R;
    R.n = read_int(need(j, "n", ""), "n");
    R.q = complex_from_json(need(j, "q", ""), "q");
    R.Q = read_double(need(j, "Q", ""), "Q");
    R.mat = matrix_from_json(need(j, "mat", ""), "mat");
    R.projection = matrix_from_json(need(j, "projection", ""), "projection");
    const Eigen::Index d = static_cast<Eigen::Index>(R.n) * R.n;
    if (R.mat.rows() != d || R.mat.cols() != d) malformed("mat", "expected an n² × n² matrix");
    if (R.projection.rows() != d || R.projection.cols() != d) malformed("projection", "expected an n² × n² matrix");
    return R;
}

Json to_json(const RelationResiduals& r) {
    Json j;
    j["quad"] = r.quad;
    j["braid"] = r.braid;
    j["far"] = r.far;
    j["herm_or_unit"] = r.herm_or_unit;
    j["hermiticity"] = r.hermiticity;
    j["unitarity"] = r.unitarity;
    return j;
}

Json to_json(const SearchConfig& c) {
    Json j;
    j["n"] = c.n;
    j["r"] = c.r;
    j["starts"] = c.starts;
    j["max_iters"] = c.max_iters;
    j["f_tol"] = c.f_tol;
    j["step0"] = c.step0;
    j["seed"] = c.seed;
    j["polish_tol"] = c.polish_tol;
    j["threads"] = c.threads;
    if (c.initial) j["initial"] = to_json(*c.initial);
    return j;
}

SearchConfig search_config_from_json(const Json& j) {
    if (!j.is_object()) malformed("<root>", "expected an object");
    SearchConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const Json& v = it.value();
        if (key == "n") c.n = read_int(v, key);
        else if (key == "r") c.r = read_int(v, key);
        else if (key == "starts") c.starts = read_int(v, key);
        else if (key == "max_iters") c.max_iters = read_int(v, key);
        else if (key == "f_tol") c.f_tol = read_double(v, key);
        else if (key == "step0") c.step0 = read_double(v, key);
        else if (key == "polish_tol") c.polish_tol = read_double(v, key);
        else if (key == "threads") c.threads = read_int(v, key);
        else if (key == "seed") {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
                malformed(key, "expected a non-negative integer");
            }
            c.seed = v.get<std::uint64_t>();
        } else if (key == "initial") {
            try {
                c.initial = projection_from_json(v);
            } catch (const Error& e) {
                malformed("initial", e.what());
            }
        } else {
            malformed(key, "unknown key");
        }
    }
    return c;
}

Json to_json(const SearchResult& r) {
    Json j;
    j["converged"] = r.converged;
    j["best_F"] = number(r.best_F);
    j["iterations"] = r.iterations;
    j["best_start"] = r.best_start;
    j["converged_starts"] = r.converged_starts;
    j["report"] = to_json(r.report);
    j["projection"] = to_json(r.projection);
    return j;
}

SearchResult search_result_from_json(const Json& j) {
    return SearchResult{read_double(need(j, "best_F", ""), "best_F"),
                        projection_from_json(need(j, "projection", ""), 1e-9),
                        report_from_json(need(j, "report", "")),
                        read_int(need(j, "iterations", ""), "iterations"),
                        read_bool(need(j, "converged", ""), "converged"),
                        read_int(need(j, "best_start", ""), "best_start"),
                        read_int(need(j, "converged_starts", ""), "converged_starts")};
}

Json to_json(const CatalogEntry& e) {
    Json j;
    j["name"] = e.name;
    Json params = Json::object();
    for (const auto& [k, v] : e.params) params[k] = v;
    j["params"] = std::move(params);
    j["expected"] = Json{{"Q", number(e.expected_Q)},
                         {"k", e.expected_k},
                         {"class", std::string(to_string(e.expected_class))}};
    j["frame"] = e.frame ? to_json(*e.frame) : Json(nullptr);
    j["projection"] = to_json(e.projection);
    return j;
}

}  // namespace heckeproj
