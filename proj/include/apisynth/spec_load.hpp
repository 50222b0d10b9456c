#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "apisynth/library.hpp"
#include "apisynth/witness.hpp"

namespace apisynth {

struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadReport {
    std::vector<std::string> warnings;
};

// Accepts either a simplified spec dialect:
//   {"objects": {"Channel": {"id": "String", "?topic": "String"}},
//    "methods": {"c_list": {"in": {}, "out": "[Channel]"}}}
// or an OpenAPI v2/v3 subset (definitions/components.schemas for objects,
// paths with parameters and one success response per operation). Unsupported
// constructs are skipped with a warning. Throws LoadError on dangling object
// references, duplicate method names, or a non-record method input.
Library load_spec_json(const nlohmann::json& doc, LoadReport* report = nullptr);
Library load_spec_file(const std::string& path, LoadReport* report = nullptr);

// Witness files are arrays of {"method": ..., "in": {...}, "out": ...}.
// Every record must name a method of the library.
WitnessStore load_witnesses_json(const nlohmann::json& doc, const Library& lib);
WitnessStore load_witnesses_file(const std::string& path, const Library& lib);

nlohmann::json witnesses_to_json(const WitnessStore& store);
void save_witnesses_file(const std::string& path, const WitnessStore& store);

// Semantic library export: location sets as sorted arrays of location
// strings, object references as plain strings, arrays/records as tagged
// objects. The value bank is exported separately (it can be large).
nlohmann::json semantic_library_to_json(const SemanticLibrary& lib);
nlohmann::json value_bank_to_json(const SemanticLibrary& lib);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace apisynth
