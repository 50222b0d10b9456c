#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apisynth/types.hpp"
#include "apisynth/value.hpp"

namespace apisynth {

struct MethodSig {
    SynTypePtr input;  // always a Record (possibly empty)
    SynTypePtr output;
};

// The syntactic API surface loaded from a spec document.
struct Library {
    std::map<std::string, SynTypePtr> objects; // name -> Record definition
    std::map<std::string, MethodSig> methods;

    bool is_object(const std::string& name) const { return objects.count(name) > 0; }
    std::vector<std::string> object_names() const;
    std::vector<std::string> head_names() const; // objects + methods
};

// Syntactic lookup of a location inside a single definition: walks the head's
// declaration through the path without unfolding object references. Returns
// nullptr when the location does not directly appear in the library.
SynTypePtr syntactic_lookup(const Library& lib, const Location& loc);

struct SemMethodSig {
    SemTypePtr input;  // Record
    SemTypePtr output;
};

// The mined semantic view: signatures over location sets, the partition the
// mining produced, and the observed-value bank keyed by semantic type.
struct SemanticLibrary {
    Library base;
    std::map<std::string, SemTypePtr> objects;
    std::map<std::string, SemMethodSig> methods;

    std::vector<std::vector<Location>> groups;        // each sorted
    std::map<std::string, int> loc_to_group;          // rendered loc -> index

    std::map<std::string, std::vector<Value>> bank;   // type key -> sorted values

    // Full location set of the group containing loc; a singleton when unmerged.
    SemTypePtr group_type(const Location& loc) const;
    const std::vector<Value>* bank_for(const SemTypePtr& t) const;
};

} // namespace apisynth
