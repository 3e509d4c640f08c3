#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "descent.hpp"
#include "group.hpp"
#include "loewy.hpp"
#include "matrix.hpp"
#include "representation.hpp"
#include "restriction.hpp"
#include "subfield.hpp"

namespace cyclodescent {

using Json = nlohmann::ordered_json;

struct parse_error : error {
    explicit parse_error(const std::string& w) : error(w) {}
};

// ---- writers ---------------------------------------------------------------

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const Cyclotomic& x) {
    Json c = Json::array();
    for (const auto& co : x.coeffs()) c.push_back(co.str());
    return Json{{"n", x.conductor()}, {"c", c}};
}

inline Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const FiniteGroup& g) {
    Json out;
    out["order"] = g.order();
    out["mul"] = g.table();
    if (!g.labels().empty()) out["labels"] = g.labels();
    return out;
}

inline Json to_json(const Subfield& f) {
    return Json{{"name", f.name()},
                {"conductor", f.conductor()},
                {"stabilizer", f.stabilizer()},
                {"degree", f.degree()}};
}

inline Json to_json(const Representation& rho) {
    Json out;
    out["group"] = to_json(*rho.group());
    out["conductor"] = rho.conductor();
    out["dim"] = rho.dim();
    if (!rho.coefficient_field().is_whole_field())
        out["coefficient_field"] = to_json(rho.coefficient_field());
    Json mats = Json::array();
    for (const auto& m : rho.matrices()) mats.push_back(to_json(m));
    out["elements"] = std::move(mats);
    return out;
}

inline Json to_json(const Character& chi) {
    Json vals = Json::array();
    for (const auto& v : chi.values()) vals.push_back(to_json(v));
    return Json{{"conductor", chi.conductor()}, {"values", vals}};
}

inline Json invariants_json(const std::vector<std::pair<Place, int>>& inv) {
    Json out;
    for (const auto& [v, s] : inv) out[v.str()] = s;
    return out;
}

inline Json to_json(const CocycleClass& c) {
    Json table = Json::array();
    for (long s : c.gamma())
        for (long t : c.gamma())
            table.push_back(Json{{"sigma", s}, {"tau", t}, {"beta", to_json(c.beta(s, t))}});
    return Json{{"conductor", c.conductor()}, {"gamma", c.gamma()}, {"table", table}};
}

inline Json to_json(const EndClassification& cls) {
    if (std::holds_alternative<FieldClass>(cls))
        return Json{{"kind", "field"}, {"degree", std::get<FieldClass>(cls).degree}};
    if (std::holds_alternative<QuaternionClass>(cls)) {
        const auto& q = std::get<QuaternionClass>(cls);
        return Json{{"kind", "quaternion"},
                    {"a", q.a.str()},
                    {"b", q.b.str()},
                    {"is_division", q.is_division},
                    {"invariants", invariants_json(q.invariants)}};
    }
    const auto& u = std::get<UnclassifiedClass>(cls);
    return Json{{"kind", "unclassified"}, {"dim", u.dim}, {"center_dim", u.center_dim}};
}

inline Json to_json(const EndAlgebra& a) {
    Json out;
    out["dim"] = a.dim();
    out["center_dim"] = a.center_dim();
    out["classification"] = to_json(a.classification);
    return out;
}

// ---- readers ---------------------------------------------------------------

inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw parse_error("expected a rational string");
}

inline Cyclotomic cyclotomic_from_json(const Json& j) {
    if (j.is_string() || j.is_number_integer()) return Cyclotomic(rational_from_json(j));
    if (!j.is_object() || !j.contains("n") || !j.contains("c"))
        throw parse_error("expected a cyclotomic object {\"n\":..., \"c\":[...]}");
    long n = j.at("n").get<long>();
    std::vector<Rational> coeffs;
    for (const auto& e : j.at("c")) coeffs.push_back(rational_from_json(e));
    if (static_cast<long>(coeffs.size()) != euler_phi(n))
        throw parse_error("cyclotomic coefficient vector must have length phi(n)");
    return Cyclotomic(n, std::move(coeffs));
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw parse_error("expected a matrix as nested arrays");
    std::vector<std::vector<Cyclotomic>> rows;
    for (const auto& r : j) {
        std::vector<Cyclotomic> row;
        for (const auto& e : r) row.push_back(cyclotomic_from_json(e));
        rows.push_back(std::move(row));
    }
    return Matrix::from_rows(rows);
}

inline GroupPtr group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("mul"))
        throw parse_error("expected a group object {\"order\":..., \"mul\":[[...]]}");
    long order = j.at("order").get<long>();
    auto mul = j.at("mul").get<std::vector<std::vector<long>>>();
    if (static_cast<long>(mul.size()) != order)
        throw parse_error("group multiplication table does not match the order");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteGroup::from_table(std::move(mul), std::move(labels));
}

/// Representation document: full per-element matrices, or generator matrices
/// plus one generator-label word per element.
inline Representation representation_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("group"))
        throw parse_error("expected a representation object with a group");
    GroupPtr G = group_from_json(j.at("group"));
    if (j.contains("elements")) {
        std::vector<Matrix> mats;
        for (const auto& m : j.at("elements")) mats.push_back(matrix_from_json(m));
        return Representation(G, std::move(mats));
    }
    if (j.contains("generators") && j.contains("element_words")) {
        std::map<std::string, Matrix> gens;
        for (auto it = j.at("generators").begin(); it != j.at("generators").end(); ++it)
            gens.emplace(it.key(), matrix_from_json(it.value()));
        const Json& words = j.at("element_words");
        if (static_cast<long>(words.size()) != G->order())
            throw parse_error("element_words must list one word per group element");
        long d = gens.begin()->second.rows();
        long n = 1;
        for (const auto& [k, m] : gens) n = lcm_long(n, m.conductor());
        std::vector<Matrix> mats;
        for (const auto& w : words) {
            Matrix m = Matrix::identity(d, n);
            for (const auto& lab : w) {
                auto it = gens.find(lab.get<std::string>());
                if (it == gens.end())
                    throw parse_error("element word uses an unknown generator label");
                m = m * it->second;
            }
            mats.push_back(std::move(m));
        }
        return Representation(G, std::move(mats));
    }
    throw parse_error("representation needs \"elements\" or \"generators\"+\"element_words\"");
}

inline std::vector<Character> character_table_from_json(const Json& j, const GroupPtr& G) {
    std::vector<Character> table;
    for (const auto& row : j) {
        std::vector<Cyclotomic> vals;
        long n = 1;
        for (const auto& v : row) {
            Cyclotomic c = cyclotomic_from_json(v);
            n = lcm_long(n, c.conductor());
            vals.push_back(std::move(c));
        }
        table.emplace_back(G, n, std::move(vals));
    }
    return table;
}

} // namespace cyclodescent
