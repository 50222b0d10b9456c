#pragma once

#include <memory>
#include <string>
#include <vector>

#include "apisynth/location.hpp"

namespace apisynth {

// --- syntactic types, straight out of the spec document -------------------

struct SyntacticType;
using SynTypePtr = std::shared_ptr<const SyntacticType>;

struct SynField {
    std::string label;
    bool optional = false;
    SynTypePtr type;
};

struct SyntacticType {
    enum class Kind { Prim, Object, Array, Record };
    // Non-string primitives are loaded as string-kinded with a tag; the tag is
    // consulted only by the mining merge rule.
    enum class PrimTag { String, Integer, Number, Boolean };

    Kind kind = Kind::Prim;
    PrimTag tag = PrimTag::String;
    std::string object_name;        // Object
    SynTypePtr elem;                // Array
    std::vector<SynField> fields;   // Record, sorted by label

    static SynTypePtr prim(PrimTag t = PrimTag::String);
    static SynTypePtr object(std::string name);
    static SynTypePtr array(SynTypePtr e);
    static SynTypePtr record(std::vector<SynField> fs);

    const SynField* field(const std::string& label) const;
    std::string render() const;
};

// --- semantic types: location sets, object ids, arrays, records -----------

struct SemanticType;
using SemTypePtr = std::shared_ptr<const SemanticType>;

struct SemField {
    std::string label;
    bool optional = false;
    SemTypePtr type;
};

struct SemanticType {
    enum class Kind { LocSet, Object, Array, Record };

    Kind kind = Kind::LocSet;
    std::vector<Location> locs;     // LocSet: non-empty, sorted, deduped
    std::string object_name;        // Object
    SemTypePtr elem;                // Array
    std::vector<SemField> fields;   // Record, sorted by label

    static SemTypePtr locset(std::vector<Location> ls);
    static SemTypePtr object(std::string name);
    static SemTypePtr array(SemTypePtr e);
    static SemTypePtr record(std::vector<SemField> fs);

    const SemField* field(const std::string& label) const;

    // Canonical key, stable across runs; used for place identity, value-bank
    // keys, and equality.
    std::string key() const;

    // Short display form: a location set shows one representative, the
    // lexicographically smallest object-rooted member if any, else the
    // smallest member.
    std::string display(const std::vector<std::string>& object_names) const;
};

bool sem_equal(const SemTypePtr& a, const SemTypePtr& b);
bool is_array(const SemTypePtr& t);

} // namespace apisynth
