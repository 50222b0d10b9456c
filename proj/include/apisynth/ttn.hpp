#pragma once

#include <map>
#include <string>
#include <vector>

#include "apisynth/library.hpp"
#include "apisynth/query.hpp"

namespace apisynth {

// Places are array-stripped semantic types, identified by their type key.
// Four transition families:
//   methods       consume one token per required argument place, up to O
//                 optional tokens per place, and produce the output place
//   projections   object/record place -> field place
//   filters       object place + scalar leaf place -> the same object place
//                 (one per field path that ends in a location set)
//   copies        p -> p, p (duplicate a token; at most one firing per place
//                 along a path keeps the net finite)
struct TtnTransition {
    enum class Kind { Method, Proj, Filter, Copy };

    std::string id;
    Kind kind = Kind::Method;
    std::string method;                  // Method
    std::string source_place;            // Proj/Filter/Copy: consumed place key
    std::vector<std::string> field_path; // Proj: one label; Filter: root to leaf

    std::map<std::string, int> required_in; // place key -> tokens required
    std::map<std::string, int> optional_in; // place key -> max optional tokens
    std::map<std::string, int> produced;    // place key -> tokens produced
    std::string output_place;

    // Method only: argument labels with their places, in signature order.
    std::vector<std::pair<std::string, std::string>> required_args;
    std::vector<std::pair<std::string, std::string>> optional_args;
};

struct Ttn {
    std::map<std::string, SemTypePtr> places;  // key -> type
    std::vector<TtnTransition> transitions;    // sorted by id

    const TtnTransition* transition(const std::string& id) const;
};

// Strips top-level array layers: [[t]] and [t] both land on t.
SemTypePtr downgrade(const SemTypePtr& t);

Ttn build_ttn(const SemanticLibrary& lib);

// Token placement for a query: one token per argument in its downgraded
// place. The goal is one token in the downgraded output place and zero
// everywhere else, which forces every argument to be used.
std::map<std::string, int> initial_marking(const Query& q);
std::string goal_place(const Query& q);

std::string ttn_to_dot(const Ttn& net, const SemanticLibrary& lib);

} // namespace apisynth
