#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "apisynth/types.hpp"

namespace apisynth {

struct SemanticLibrary;

// A synthesis goal: named argument types and a result type.
struct Query {
    std::vector<std::pair<std::string, SemTypePtr>> args;
    SemTypePtr output;

    const SemTypePtr* arg(const std::string& label) const {
        for (const auto& [l, t] : args)
            if (l == label) return &t;
        return nullptr;
    }
};

// Lifted programs always return arrays, so gate-level checks run against the
// query with an array-shaped result.
Query arrayified(const Query& q);

struct QueryParseError : std::runtime_error {
    std::vector<std::string> suggestions;
    QueryParseError(std::string msg, std::vector<std::string> sugg = {})
        : std::runtime_error(std::move(msg)), suggestions(std::move(sugg)) {}
};

// Grammar: "{a: Loc, b: Loc} -> T" where T is a location, an object name, or
// "[T]". Sugar: a single bare location "Loc -> T" (the parameter is named
// after the location, lowercased with dots replaced by underscores).
// Locations resolve through the mined partition to their full location set;
// unresolvable names raise QueryParseError listing nearby known locations.
Query parse_query(const std::string& text, const SemanticLibrary& lib);

} // namespace apisynth
