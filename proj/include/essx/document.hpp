#pragma once

#include "essx/cohomology.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace essx {

// Task block of a document: the operation to run, named argument
// references, and options.
struct Task {
    std::string operation;
    std::map<std::string, std::string> args;
    std::optional<long long> range_lo, range_hi;
    std::optional<Int> r_cap;
    std::optional<std::uint64_t> seed;
    std::optional<Int> split_scalar;
    std::optional<long long> ideal_bound;
    std::optional<long long> mono_samples;
    std::optional<std::string> mode;
};

// A versioned object graph. Matrices are arrays of rows; a module's
// "relations" field lists relators (each of length = generators), which
// become the columns of the relation matrix.
struct Document {
    nlohmann::json raw;  // normalized echo of the input
    std::map<std::string, IntMatrix> matrices;
    std::map<std::string, FgModule> modules;
    std::map<std::string, ModMorphism> morphisms;
    std::map<std::string, CochainComplex> complexes;
    std::map<std::string, ShortSequence> sequences;
    std::map<std::string, Resolution> resolutions;
    std::map<std::string, Ideal> ideals;
    std::optional<Task> task;
};

// Structural and referential validation; ParseError carries line/column
// diagnostics, ValidationError names the offending object.
Document parse_document(const std::string& text);

std::string serialize_document(const Document& doc);

// Exact integers on the wire: numbers up to 15 digits, strings beyond.
nlohmann::json int_to_json(const Int& v);
Int json_to_int(const nlohmann::json& j, const std::string& where);
nlohmann::json matrix_to_json(const IntMatrix& m);
nlohmann::json module_to_json(const FgModule& m);

}  // namespace essx
