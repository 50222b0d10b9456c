#pragma once

#include "apisynth/expr.hpp"
#include "apisynth/query.hpp"
#include "apisynth/search.hpp"
#include "apisynth/ttn.hpp"

namespace apisynth {

// Converts one net path into array-oblivious straight-line programs (lets and
// guards only; array mismatches are repaired later by lifting).
//
// Tokens carry the variable that produced them, so variable selection follows
// the net exactly: a method call consumes one distinct token per argument, a
// filter re-produces the object token under its old variable, and a copy just
// duplicates the token (no statement). One program is emitted per way of
// assigning live tokens to consumed slots, capped at `max_programs`. A path
// whose relaxed firing consumed tokens that were never really there runs out
// of tokens here and yields nothing.
std::vector<Program> path_to_programs(const SemanticLibrary& lib, const Ttn& net,
                                      const Query& q, const NetPath& path,
                                      size_t max_programs = 64);

} // namespace apisynth
