#pragma once

#include <map>
#include <string>
#include <vector>

#include "apisynth/library.hpp"
#include "apisynth/witness.hpp"

namespace apisynth {

// Union-find over locations, keyed by rendered form.
class MergeSet {
public:
    void add(const Location& loc);
    void unite(const Location& a, const Location& b);
    // groups with >= 1 member, each sorted, list sorted by first member
    std::vector<std::vector<Location>> groups() const;

private:
    std::string find(const std::string& key) const;
    mutable std::map<std::string, std::string> parent_;
    std::map<std::string, Location> known_;
};

// true when a primitive value is specific enough to witness a type merge:
// strings (numeric ones only when the number is large enough to look like an
// id), never booleans or null
bool merge_evidence(const Value& v);

// Derives per-location semantic types from witness data. All locations are
// canonicalized during the walk: whenever the syntactic type at a location is
// a named object, the walk re-roots at that object, so merge groups and the
// value bank are keyed by object-rooted locations (User.id rather than
// u_info.out.id).
SemanticLibrary mine_types(const Library& lib, const WitnessStore& witnesses);

// Canonical semantic type of a location (query surface syntax). Follows
// object folds along the path; returns nullptr when the location does not
// exist in the library.
SemTypePtr infer_location_type(const SemanticLibrary& lib, const Location& loc);

// Semantic type at a canonical location given its syntactic type: objects
// stay named, arrays and records recurse, primitives become the location's
// merge group.
SemTypePtr semantic_type_at(const SemanticLibrary& lib, const Location& loc,
                            const SyntacticType& syn);

} // namespace apisynth
