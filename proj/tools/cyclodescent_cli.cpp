#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <cyclodescent/cyclodescent.hpp>

using namespace cyclodescent;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitPrecondition = 4;

struct Output {
    std::string path;
    bool pretty = false;

    void emit(const Json& j) const {
        std::string text = pretty ? j.dump(2) : j.dump();
        text += "\n";
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(path);
            f << text;
        }
    }
};

Json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error("cannot open input file: " + path);
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
}

Representation load_rep(const std::string& src) {
    if (src.rfind("catalog:", 0) == 0) {
        try {
            return catalog::rep(src.substr(8));
        } catch (const error& e) {
            throw parse_error(e.what());
        }
    }
    return representation_from_json(load_json(src));
}

/// Subfield spec inside Q(zeta_n): "Q", "Q(i)", "Q(zN)", "fixed:N:k1,k2,...".
Subfield parse_field_spec(const std::string& spec, long n) {
    auto kernel_field = [&](long m) {
        if (m < 1 || n % m != 0)
            throw parse_error("field spec needs conductor " + std::to_string(m) +
                              " dividing " + std::to_string(n));
        std::vector<long> stab;
        for (long k : units_mod(n))
            if (k % m == 1 % m) stab.push_back(k);
        if (n <= 2) stab = {1};
        return fixed_subfield(n, stab);
    };
    if (spec == "Q") return rationals_in(n);
    if (spec == "Q(i)") return kernel_field(4);
    if (spec.rfind("Q(z", 0) == 0 && spec.back() == ')') {
        long m = std::stol(spec.substr(3, spec.size() - 4));
        return kernel_field(m);
    }
    if (spec.rfind("fixed:", 0) == 0) {
        std::string rest = spec.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw parse_error("fixed:N:k1,k2,... expected");
        long m = std::stol(rest.substr(0, colon));
        if (m < 1 || n % m != 0)
            throw parse_error("field spec conductor must divide the representation's");
        std::vector<long> gens;
        std::string exps = rest.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < exps.size()) {
            auto comma = exps.find(',', pos);
            if (comma == std::string::npos) comma = exps.size();
            gens.push_back(std::stol(exps.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        std::vector<long> h = subgroup_closure(m, gens);
        std::vector<long> stab;
        for (long k : units_mod(n)) {
            long r = m <= 2 ? 1 : mod_pos(k, m);
            if (std::binary_search(h.begin(), h.end(), r)) stab.push_back(k);
        }
        return fixed_subfield(n, stab);
    }
    throw parse_error("unknown field spec: " + spec);
}

Json descent_report(const Representation& rho, const Subfield& F, long bound) {
    DescentDecision dec = descent_exists(rho, F, bound);
    Json out;
    out["field"] = to_json(F);
    out["self_conjugate"] = dec.status != DescentStatus::NotSelfConjugate;
    out["gamma"] = dec.gamma;
    if (dec.cocycle) out["cocycle"] = to_json(*dec.cocycle);
    if (dec.norm_class) out["norm_class"] = to_json(*dec.norm_class);
    if (dec.norm_class_rational) out["norm_class_rational"] = dec.norm_class_rational->str();
    if (dec.discriminant) out["discriminant"] = dec.discriminant->get_str();
    if (!dec.invariants.empty()) out["invariants"] = invariants_json(dec.invariants);
    if (dec.status == DescentStatus::Undecidable) out["exists"] = "undecidable";
    else out["exists"] = dec.exists();
    if (!dec.obstruction.empty()) {
        Json obs = Json::array();
        for (const Place& v : dec.obstruction) obs.push_back(v.str());
        out["obstruction"] = obs;
    }
    if (!dec.note.empty()) out["note"] = dec.note;
    if (dec.form) out["rational_form"] = to_json(*dec.form);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"exact Galois descent for finite group representations over cyclotomic fields"};
    app.require_subcommand(1);

    Output output;
    app.add_option("--output", output.path, "write the JSON report to a file");
    app.add_flag("--pretty", output.pretty, "indent the JSON output");

    std::string input, field_spec = "Q";
    long height_bound = 50;

    auto* inspect = app.add_subcommand("inspect", "validate and summarize a representation");
    inspect->fallthrough();
    inspect->add_option("input", input)->required();

    auto* descent = app.add_subcommand("descent", "decide descent to a subfield");
    descent->fallthrough();
    descent->add_option("input", input)->required();
    descent->add_option("--field", field_spec, "target subfield spec");
    descent->add_option("--height-bound", height_bound, "witness search height");

    auto* cocycle = app.add_subcommand("cocycle", "dump the raw cocycle table");
    cocycle->fallthrough();
    cocycle->add_option("input", input)->required();
    cocycle->add_option("--field", field_spec, "target subfield spec");

    auto* loewy = app.add_subcommand("loewy", "orbit/simple correspondence over Q");
    loewy->fallthrough();
    loewy->add_option("input", input)->required();
    loewy->add_option("--field", field_spec, "base field spec (Q)");

    auto* minfield = app.add_subcommand("minfield", "minimal fields of definition");
    minfield->fallthrough();
    minfield->add_option("input", input)->required();
    minfield->add_option("--height-bound", height_bound, "witness search height");

    auto* hilbert = app.add_subcommand("hilbert", "per-place Hilbert symbols of (a, b)");
    hilbert->fallthrough();
    std::string ha, hb;
    hilbert->add_option("a", ha)->required();
    hilbert->add_option("b", hb)->required();

    CLI11_PARSE(app, argc, argv);

    if (inspect->parsed()) {
        Json out;
        out["input"] = input;
        Representation rho = load_rep(input);
        out["order"] = rho.group()->order();
        out["conductor"] = rho.conductor();
        out["dim"] = rho.dim();
        out["valid"] = true;
        out["coefficient_field"] = to_json(rho.coefficient_field());
        Character chi = character_of(rho);
        out["character"] = to_json(chi);
        out["character_norm"] = inner_product(chi, chi).rational_value().str();
        out["absolutely_irreducible"] = is_absolutely_irreducible(rho);
        output.emit(out);
        return 0;
    }
    if (descent->parsed() || cocycle->parsed()) {
        Representation rho = load_rep(input);
        Subfield F = parse_field_spec(field_spec, rho.conductor());
        if (cocycle->parsed()) {
            RationalityData rd = rationality_data(rho);
            for (long s : F.stabilizer())
                if (!std::binary_search(rd.stabilizer.begin(), rd.stabilizer.end(), s))
                    throw precondition_failed("not self-conjugate over the requested field");
            auto maps = choose_descent_maps(rho, F.stabilizer());
            CocycleClass c = borel_tits_cocycle(rho, maps);
            Json out;
            out["input"] = input;
            out["field"] = to_json(F);
            out["cocycle"] = to_json(c);
            if (auto gen = c.cyclic_generator()) {
                out["cyclic_generator"] = *gen;
                out["norm_class"] = to_json(c.norm_class());
            }
            output.emit(out);
            return 0;
        }
        Json out = descent_report(rho, F, height_bound);
        out["input"] = input;
        output.emit(out);
        return 0;
    }
    if (loewy->parsed()) {
        GroupPtr G;
        std::vector<Representation> irreps;
        std::optional<std::vector<Character>> table;
        if (input.rfind("catalog:", 0) == 0) {
            std::string name = input.substr(8);
            try {
                G = catalog::group(name);
                irreps = catalog::irreducibles(name);
            } catch (const error& e) {
                throw parse_error(e.what());
            }
        } else {
            Json doc = load_json(input);
            if (!doc.contains("group")) throw parse_error("loewy input needs a group");
            G = group_from_json(doc.at("group"));
            if (doc.contains("irreps"))
                for (const auto& r : doc.at("irreps")) {
                    if (r.contains("group")) {
                        irreps.push_back(representation_from_json(r));
                    } else {
                        Json full = r;
                        full["group"] = doc.at("group");
                        irreps.push_back(representation_from_json(full));
                    }
                }
            if (doc.contains("character_table"))
                table = character_table_from_json(doc.at("character_table"), G);
        }
        if (!table) table = character_table(G);
        long e = (*table)[0].conductor();
        Subfield F = parse_field_spec(field_spec, std::max<long>(e, 1));
        auto desc = loewy_correspondence(G, F, *table, irreps, height_bound);
        Json rows = Json::array();
        for (const auto& d : desc) {
            Json row;
            row["orbit_rows"] = d.orbit_rows;
            row["field_of_rationality"] = to_json(d.field_of_rationality);
            row["indicator"] = d.indicator.str();
            row["kind"] = simple_kind_str(d.kind);
            if (d.simple) row["dim"] = d.simple->dim();
            if (d.end) row["end"] = to_json(*d.end);
            if (!d.note.empty()) row["note"] = d.note;
            rows.push_back(std::move(row));
        }
        Json out;
        out["input"] = input;
        out["field"] = to_json(F);
        out["descriptors"] = std::move(rows);
        output.emit(out);
        return 0;
    }
    if (minfield->parsed()) {
        Representation rho = load_rep(input);
        MinFieldReport report = minimal_fields_of_definition(rho, height_bound);
        Json entries = Json::array();
        for (const auto& e : report.entries) {
            Json row;
            row["field"] = to_json(e.field);
            row["status"] = minfield_status_str(e.status);
            if (!e.note.empty()) row["note"] = e.note;
            if (e.form) row["form"] = to_json(*e.form);
            entries.push_back(std::move(row));
        }
        Json minimal = Json::array();
        for (const auto& f : report.minimal) minimal.push_back(to_json(f));
        Json out;
        out["input"] = input;
        out["entries"] = std::move(entries);
        out["minimal"] = std::move(minimal);
        out["complete"] = report.complete;
        output.emit(out);
        return 0;
    }
    if (hilbert->parsed()) {
        Rational a = Rational::parse(ha), b = Rational::parse(hb);
        Json out;
        out["a"] = a.str();
        out["b"] = b.str();
        auto inv = hilbert_invariants(a, b);
        out["invariants"] = invariants_json(inv);
        int prod = 1;
        for (const auto& [v, s] : inv) prod *= s;
        out["product"] = prod;
        output.emit(out);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const parse_error& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "parse"}}.dump() << "\n";
        return kExitParse;
    } catch (const validation_error& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "validation"}}.dump() << "\n";
        return kExitValidation;
    } catch (const not_absolutely_irreducible& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
        return kExitPrecondition;
    } catch (const precondition_failed& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
        return kExitPrecondition;
    } catch (const not_quadratic& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
        return kExitPrecondition;
    } catch (const no_intertwiner& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
        return kExitPrecondition;
    } catch (const lift_failure& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
        return kExitPrecondition;
    } catch (const group_mismatch& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "precondition"}}.dump() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
        return 1;
    }
}
