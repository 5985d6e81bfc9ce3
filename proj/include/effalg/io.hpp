#pragma once

// JSON encoding. A matrix is a row-major list of rows; each entry is a
// two-element list [real, imaginary]. Doubles are written in shortest
// round-trip form, so parse(emit(x)) == x bit for bit.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "effalg/criteria.hpp"
#include "effalg/sampler.hpp"
#include "effalg/search.hpp"
#include "effalg/suites.hpp"

namespace effalg {

using json = nlohmann::json;

/// Thrown for unreadable or unwritable files, as opposed to malformed content.
class IoError : public Error {
  public:
    using Error::Error;
};

inline json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (long i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < M.cols(); ++j) row.push_back({M(i, j).real(), M(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, const std::string& what = "matrix") {
    if (!j.is_array() || j.empty()) throw ValidationError(what + ": expected a non-empty list of rows");
    const long d = static_cast<long>(j.size());
    if (d > kMaxDim) throw ValidationError(what + ": dimension exceeds " + std::to_string(kMaxDim));
    Matrix M(d, d);
    for (long r = 0; r < d; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<long>(row.size()) != d) {
            throw ValidationError(what + ": row " + std::to_string(r) + " has wrong length");
        }
        for (long c = 0; c < d; ++c) {
            const json& e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ValidationError(what + ": entry must be [real, imaginary]");
            }
            M(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    require_operator(M, what);
    return M;
}

/// Named operators of one dimension, persisted as a versioned JSON document.
struct InstanceFile {
    int version = 1;
    long dim = 0;
    std::map<std::string, Matrix> effects;
    std::map<std::string, std::vector<Matrix>> povms;
    std::map<std::string, Matrix> states;

    bool operator==(const InstanceFile& o) const {
        auto same = [](const Matrix& a, const Matrix& b) {
            return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
        };
        auto same_map = [&](const auto& x, const auto& y, auto cmp) {
            if (x.size() != y.size()) return false;
            for (auto it = x.begin(), jt = y.begin(); it != x.end(); ++it, ++jt) {
                if (it->first != jt->first || !cmp(it->second, jt->second)) return false;
            }
            return true;
        };
        auto same_list = [&](const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!same(a[i], b[i])) return false;
            return true;
        };
        return version == o.version && dim == o.dim && same_map(effects, o.effects, same) &&
               same_map(povms, o.povms, same_list) && same_map(states, o.states, same);
    }

    /// Validates every entry under its declared kind; throws on the first failure.
    void validate(const Tolerances& tol = {}) const {
        auto check_dim = [this](const Matrix& M, const std::string& name) {
            if (M.rows() != dim) {
                throw ValidationError(name + ": dimension " + std::to_string(M.rows()) +
                                      " does not match file dimension " + std::to_string(dim));
            }
        };
        for (const auto& [name, M] : effects) {
            check_dim(M, name);
            validate_effect(M, tol);
        }
        for (const auto& [name, list] : povms) {
            for (const auto& M : list) check_dim(M, name);
            validate_povm(list, tol, name);
        }
        for (const auto& [name, M] : states) {
            check_dim(M, name);
            validate_density(M, tol);
        }
    }
};

inline json to_json(const InstanceFile& f) {
    json out;
    out["version"] = f.version;
    out["dim"] = f.dim;
    out["effects"] = json::object();
    out["povms"] = json::object();
    out["states"] = json::object();
    for (const auto& [name, M] : f.effects) out["effects"][name] = matrix_to_json(M);
    for (const auto& [name, list] : f.povms) {
        json elems = json::array();
        for (const auto& M : list) elems.push_back(matrix_to_json(M));
        out["povms"][name] = std::move(elems);
    }
    for (const auto& [name, M] : f.states) out["states"][name] = matrix_to_json(M);
    return out;
}

inline InstanceFile instance_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("instance file must be a JSON object");
    InstanceFile f;
    if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1) {
        throw ValidationError("unsupported instance file version");
    }
    if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ValidationError("missing dim");
    f.dim = j["dim"].get<long>();
    if (f.dim < 1 || f.dim > kMaxDim) throw ValidationError("dim out of range");
    auto section = [&j](const char* key) -> const json* {
        if (!j.contains(key)) return nullptr;
        if (!j[key].is_object()) throw ValidationError(std::string(key) + " must be an object");
        return &j[key];
    };
    auto sized = [&f](const json& m, const std::string& name) {
        Matrix M = matrix_from_json(m, name);
        if (M.rows() != f.dim) throw ValidationError(name + ": size does not match dim");
        return M;
    };
    if (const json* s = section("effects"))
        for (const auto& [name, m] : s->items()) f.effects[name] = sized(m, name);
    if (const json* s = section("povms")) {
        for (const auto& [name, list] : s->items()) {
            if (!list.is_array() || list.empty()) throw ValidationError(name + ": POVM must be a non-empty list");
            auto& out = f.povms[name];
            for (const auto& m : list) out.push_back(sized(m, name));
        }
    }
    if (const json* s = section("states"))
        for (const auto& [name, m] : s->items()) f.states[name] = sized(m, name);
    return f;
}

inline std::string emit_instance(const InstanceFile& f) { return to_json(f).dump(2) + "\n"; }

inline InstanceFile parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(j);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out.flush()) throw IoError("write failed for " + path);
}

// --- reports -----------------------------------------------------------------

inline json to_json(const Tolerances& t) {
    return {{"eig_cluster", t.eig_cluster}, {"mat_eq", t.mat_eq}, {"psd_slack", t.psd_slack}};
}

inline json to_json(const GapTolerances& g) { return {{"check", g.check}, {"classify", g.classify}}; }

inline json to_json(const PhaseFamily& f) {
    return {{"c", f.c()}, {"xi0", {f.xi0().real(), f.xi0().imag()}}};
}

inline json to_json(const Witness& w) { return {{"k", w.k}, {"j", w.j}, {"residual", w.residual}}; }

inline json to_json(const CriterionReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
    json vacuous = json::array();
    for (const auto& w : r.vacuous) vacuous.push_back(to_json(w));
    return {{"criterion", r.criterion},
            {"verdict", r.verdict},
            {"tolerance", r.tolerance},
            {"max_residual", r.max_residual},
            {"max_raw_residual", r.max_raw_residual},
            {"per_pair", r.per_pair},
            {"compatible", r.compatible},
            {"y_sharp", r.y_sharp},
            {"witnesses", witnesses},
            {"vacuous", vacuous}};
}

inline json to_json(const CrossValidation& cv) {
    return {{"criteria",
             {{"I", to_json(cv.value_persistence)},
              {"II", to_json(cv.occurrence)},
              {"III", to_json(cv.order_symmetry)},
              {"II_fixed_state", to_json(cv.occurrence_in_state)}}},
            {"oracle_I", cv.oracle_value_persistence},
            {"compatible", cv.compatible},
            {"compatibility_residual", cv.compatibility_residual},
            {"x_sharp", cv.x_element_sharp},
            {"y_sharp", cv.y_element_sharp},
            {"ambiguous", cv.ambiguous},
            {"violations", cv.violations},
            {"consistent", cv.consistent()}};
}

inline json to_json(const SuiteReport& s) {
    json props = json::array();
    for (const auto& p : s.properties) {
        props.push_back({{"name", p.name},
                         {"max_residual", p.max_residual},
                         {"threshold", p.threshold},
                         {"instances", p.instances},
                         {"passed", p.passed()}});
    }
    return {{"suite", s.suite}, {"passed", s.passed()}, {"properties", props}};
}

inline json to_json(const MeasurementOutcomeTable& t) {
    return {{"total", t.total}, {"counts", t.counts}, {"exact", t.exact}, {"z", z_scores(t)}};
}

inline json povm_to_json(const std::vector<Matrix>& list) {
    json out = json::array();
    for (const auto& M : list) out.push_back(matrix_to_json(M));
    return out;
}

inline json to_json(const OccurrenceWitness& w) {
    return {{"seed", w.seed},
            {"index", w.index},
            {"residual", w.residual},
            {"compatibility_residual", w.compatibility_residual},
            {"X", povm_to_json(w.X)},
            {"Y", povm_to_json(w.Y)},
            {"W", matrix_to_json(w.W)}};
}

inline json to_json(const OccurrenceGapFindings& f) {
    json fixed = json::array();
    for (const auto& w : f.fixed_state) fixed.push_back(to_json(w));
    json all_states = {{"margin", f.margin}, {"trajectory", f.trajectory}};
    if (f.best_index) {
        all_states["best_residual"] = f.best_residual;
        all_states["best_index"] = *f.best_index;
        all_states["X"] = povm_to_json(f.best_X);
        all_states["Y"] = povm_to_json(f.best_Y);
    } else {
        all_states["best_residual"] = nullptr;
        all_states["best_index"] = nullptr;
    }
    return {{"seed", f.seed},
            {"trials", f.trials},
            {"fixed_state",
             {{"maximally_mixed", to_json(f.maximally_mixed)},
              {"constructed", fixed},
              {"constructed_found", f.fixed_state_found}}},
            {"all_states", all_states}};
}

} // namespace effalg
