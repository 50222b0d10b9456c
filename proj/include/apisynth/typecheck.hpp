#pragma once

#include <map>
#include <string>

#include "apisynth/expr.hpp"
#include "apisynth/library.hpp"
#include "apisynth/query.hpp"

namespace apisynth {

enum class TypeStatus {
    WellTyped,
    IllTyped,   // well-formed, but no typing derivation exists
    IllFormed,  // unbound variable, duplicate binder, parameter mismatch
};

struct TypecheckResult {
    TypeStatus status = TypeStatus::WellTyped;
    std::string message;
    std::map<std::string, SemTypePtr> bindings; // binder -> inferred type

    bool ok() const { return status == TypeStatus::WellTyped; }
};

// Checks p against the query over the mined library. Object-named types are
// transparent: a term of an object type also has the object's definition
// type. Guard operands must share one location-set type; bind requires an
// array on the right and an array-typed body.
TypecheckResult typecheck(const SemanticLibrary& lib, const Program& p, const Query& q);

// True when `actual` is usable where `expected` is required (equality up to
// object-definition unfolding).
bool type_matches(const SemanticLibrary& lib, const SemTypePtr& actual,
                  const SemTypePtr& expected);

} // namespace apisynth
