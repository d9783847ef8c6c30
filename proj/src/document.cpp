#include "essx/document.hpp"

#include <sstream>

namespace essx {

using nlohmann::json;

nlohmann::json int_to_json(const Int& v) {
    static const Int lo = -Int("999999999999999");
    static const Int hi = Int("999999999999999");
    if (v >= lo && v <= hi) return json(checked_ll(v));
    return json(v.str());
}

Int json_to_int(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        if (s.empty()) throw ValidationError(where + ": empty integer string");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw ValidationError(where + ": malformed integer '" + s + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw ValidationError(where + ": malformed integer '" + s + "'");
        return Int(s);
    }
    throw ValidationError(where + ": expected an integer (number or decimal string)");
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json module_to_json(const FgModule& m) {
    json out;
    json factors = json::array();
    for (const Int& d : m.invariant_factors()) factors.push_back(int_to_json(d));
    out["invariant_factors"] = std::move(factors);
    out["free_rank"] = m.free_rank();
    out["pretty"] = m.describe();
    return out;
}

namespace {

IntMatrix parse_matrix(const json& j, const std::string& where, std::size_t expect_cols = SIZE_MAX) {
    if (!j.is_array()) throw ValidationError(where + ": expected an array of rows");
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& r = j[i];
        if (!r.is_array()) throw ValidationError(where + ": row " + std::to_string(i) + " is not an array");
        std::vector<Int> row;
        for (std::size_t k = 0; k < r.size(); ++k)
            row.push_back(json_to_int(r[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        if (!rows.empty() && row.size() != rows[0].size())
            throw ValidationError(where + ": ragged rows");
        rows.push_back(std::move(row));
    }
    if (expect_cols != SIZE_MAX && !rows.empty() && rows[0].size() != expect_cols)
        throw ValidationError(where + ": expected rows of length " + std::to_string(expect_cols));
    return IntMatrix::from_rows(rows);
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

template <typename Map>
const typename Map::mapped_type& resolve(const Map& map, const std::string& name,
                                         const std::string& kind, const std::string& where) {
    auto it = map.find(name);
    if (it == map.end())
        throw ValidationError(where + ": dangling reference '" + name + "' (no such " + kind + ")");
    return it->second;
}

}  // namespace

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         e.what());
    }
    if (!j.is_object()) throw ValidationError("document root must be an object");
    if (!j.contains("version")) throw ValidationError("document is missing the version field");
    if (!j["version"].is_number_integer() || j["version"].get<long long>() != 1)
        throw ValidationError("unsupported document version");

    Document doc;
    json normalized;
    normalized["version"] = 1;

    if (j.contains("matrices")) {
        if (!j["matrices"].is_object()) throw ValidationError("matrices must be an object");
        for (const auto& [name, body] : j["matrices"].items()) {
            IntMatrix m = parse_matrix(body, "matrices." + name);
            normalized["matrices"][name] = matrix_to_json(m);
            doc.matrices.emplace(name, std::move(m));
        }
    }

    if (j.contains("modules")) {
        if (!j["modules"].is_object()) throw ValidationError("modules must be an object");
        for (const auto& [name, body] : j["modules"].items()) {
            const std::string where = "modules." + name;
            if (!body.is_object() || !body.contains("generators"))
                throw ValidationError(where + ": need a generators count");
            if (!body["generators"].is_number_integer() || body["generators"].get<long long>() < 0)
                throw ValidationError(where + ": generators must be a nonnegative integer");
            std::size_t gens = body["generators"].get<std::size_t>();
            IntMatrix relators(0, 0);
            if (body.contains("relations"))
                relators = parse_matrix(body["relations"], where + ".relations", gens);
            if (relators.rows() > 0 && relators.cols() != gens)
                throw ValidationError(where + ": relators must have length " + std::to_string(gens));
            IntMatrix relation_columns =
                relators.rows() == 0 ? IntMatrix(gens, 0) : relators.transpose();
            normalized["modules"][name] = {{"generators", gens},
                                           {"relations", matrix_to_json(relators)}};
            doc.modules.emplace(name, FgModule::present(gens, relation_columns));
        }
    }

    if (j.contains("morphisms")) {
        if (!j["morphisms"].is_object()) throw ValidationError("morphisms must be an object");
        for (const auto& [name, body] : j["morphisms"].items()) {
            const std::string where = "morphisms." + name;
            if (!body.is_object() || !body.contains("domain") || !body.contains("codomain") ||
                !body.contains("matrix"))
                throw ValidationError(where + ": need domain, codomain and matrix");
            const FgModule& dom =
                resolve(doc.modules, body["domain"].get<std::string>(), "module", where);
            const FgModule& cod =
                resolve(doc.modules, body["codomain"].get<std::string>(), "module", where);
            IntMatrix m = parse_matrix(body["matrix"], where + ".matrix");
            if (m.rows() != cod.generators() || m.cols() != dom.generators())
                throw ValidationError(where + ": matrix must be " + std::to_string(cod.generators()) +
                                      " x " + std::to_string(dom.generators()));
            try {
                doc.morphisms.emplace(name, ModMorphism(dom, cod, m));
            } catch (const NotAMorphism&) {
                throw ValidationError(where + ": matrix is not a well-defined homomorphism");
            }
            normalized["morphisms"][name] = {{"domain", body["domain"]},
                                             {"codomain", body["codomain"]},
                                             {"matrix", matrix_to_json(m)}};
        }
    }

    if (j.contains("complexes")) {
        if (!j["complexes"].is_object()) throw ValidationError("complexes must be an object");
        for (const auto& [name, body] : j["complexes"].items()) {
            const std::string where = "complexes." + name;
            if (!body.is_object() || !body.contains("objects"))
                throw ValidationError(where + ": need an objects list");
            long long lo = body.value("lo", 0ll);
            std::vector<FgModule> objects;
            for (const auto& ref : body["objects"])
                objects.push_back(resolve(doc.modules, ref.get<std::string>(), "module", where));
            std::vector<ModMorphism> maps;
            if (body.contains("maps"))
                for (const auto& ref : body["maps"])
                    maps.push_back(resolve(doc.morphisms, ref.get<std::string>(), "morphism", where));
            try {
                doc.complexes.emplace(name, CochainComplex::make(lo, objects, maps));
            } catch (const DimensionMismatch& e) {
                throw ValidationError(where + ": " + std::string(e.what()));
            }
            normalized["complexes"][name] = {
                {"lo", lo},
                {"objects", body["objects"]},
                {"maps", body.contains("maps") ? body["maps"] : json::array()}};
        }
    }

    if (j.contains("sequences")) {
        if (!j["sequences"].is_object()) throw ValidationError("sequences must be an object");
        for (const auto& [name, body] : j["sequences"].items()) {
            const std::string where = "sequences." + name;
            if (!body.is_object() || !body.contains("f") || !body.contains("g"))
                throw ValidationError(where + ": need morphism references f and g");
            const ModMorphism& f =
                resolve(doc.morphisms, body["f"].get<std::string>(), "morphism", where);
            const ModMorphism& g =
                resolve(doc.morphisms, body["g"].get<std::string>(), "morphism", where);
            try {
                doc.sequences.emplace(name, ShortSequence(f, g));
            } catch (const DimensionMismatch& e) {
                throw ValidationError(where + ": " + std::string(e.what()));
            }
            normalized["sequences"][name] = {{"f", body["f"]}, {"g", body["g"]}};
        }
    }

    if (j.contains("resolutions")) {
        if (!j["resolutions"].is_object()) throw ValidationError("resolutions must be an object");
        for (const auto& [name, body] : j["resolutions"].items()) {
            const std::string where = "resolutions." + name;
            if (!body.is_object() || !body.contains("target") || !body.contains("augmentation") ||
                !body.contains("complex"))
                throw ValidationError(where + ": need target, augmentation and complex");
            const FgModule& target =
                resolve(doc.modules, body["target"].get<std::string>(), "module", where);
            const ModMorphism& aug =
                resolve(doc.morphisms, body["augmentation"].get<std::string>(), "morphism", where);
            const CochainComplex& cx =
                resolve(doc.complexes, body["complex"].get<std::string>(), "complex", where);
            if (!aug.domain().same_presentation(target))
                throw ValidationError(where + ": augmentation domain is not the target");
            if (cx.objects.empty() || !aug.codomain().same_presentation(cx.objects[0]))
                throw ValidationError(where + ": augmentation codomain is not the first term");
            doc.resolutions.emplace(name, Resolution{target, aug, cx, {}});
            normalized["resolutions"][name] = {{"target", body["target"]},
                                               {"augmentation", body["augmentation"]},
                                               {"complex", body["complex"]}};
        }
    }

    if (j.contains("ideals")) {
        if (!j["ideals"].is_object()) throw ValidationError("ideals must be an object");
        for (const auto& [name, body] : j["ideals"].items()) {
            const std::string where = "ideals." + name;
            if (!body.is_object() || !body.contains("generator"))
                throw ValidationError(where + ": need a generator");
            Int n = json_to_int(body["generator"], where + ".generator");
            doc.ideals.emplace(name, Ideal(n));
            normalized["ideals"][name] = {{"generator", int_to_json(n)}};
        }
    }

    if (j.contains("task")) {
        const json& t = j["task"];
        const std::string where = "task";
        if (!t.is_object() || !t.contains("operation"))
            throw ValidationError("task must be an object carrying an operation");
        Task task;
        task.operation = t["operation"].get<std::string>();
        json nargs = json::object();
        if (t.contains("args")) {
            for (const auto& [key, ref] : t["args"].items()) {
                if (!ref.is_string())
                    throw ValidationError(where + ".args." + key + ": expected a reference");
                std::string name = ref.get<std::string>();
                bool known = doc.matrices.count(name) || doc.modules.count(name) ||
                             doc.morphisms.count(name) || doc.complexes.count(name) ||
                             doc.sequences.count(name) || doc.resolutions.count(name) ||
                             doc.ideals.count(name);
                if (!known)
                    throw ValidationError(where + ".args." + key + ": dangling reference '" + name +
                                          "'");
                task.args[key] = name;
                nargs[key] = name;
            }
        }
        json nopts = json::object();
        if (t.contains("options")) {
            const json& o = t["options"];
            if (o.contains("range")) {
                if (!o["range"].is_array() || o["range"].size() != 2)
                    throw ValidationError("task.options.range must be [lo, hi]");
                task.range_lo = o["range"][0].get<long long>();
                task.range_hi = o["range"][1].get<long long>();
                nopts["range"] = o["range"];
            }
            if (o.contains("r_cap")) {
                task.r_cap = json_to_int(o["r_cap"], "task.options.r_cap");
                nopts["r_cap"] = int_to_json(*task.r_cap);
            }
            if (o.contains("seed")) {
                task.seed = o["seed"].get<std::uint64_t>();
                nopts["seed"] = *task.seed;
            }
            if (o.contains("split_scalar")) {
                task.split_scalar = json_to_int(o["split_scalar"], "task.options.split_scalar");
                nopts["split_scalar"] = int_to_json(*task.split_scalar);
            }
            if (o.contains("ideal_bound")) {
                task.ideal_bound = o["ideal_bound"].get<long long>();
                nopts["ideal_bound"] = *task.ideal_bound;
            }
            if (o.contains("mono_samples")) {
                task.mono_samples = o["mono_samples"].get<long long>();
                nopts["mono_samples"] = *task.mono_samples;
            }
            if (o.contains("mode")) {
                task.mode = o["mode"].get<std::string>();
                nopts["mode"] = *task.mode;
            }
        }
        doc.task = std::move(task);
        normalized["task"] = {{"operation", t["operation"]}, {"args", nargs}, {"options", nopts}};
    }

    doc.raw = std::move(normalized);
    return doc;
}

std::string serialize_document(const Document& doc) { return doc.raw.dump(2) + "\n"; }

}  // namespace essx
