#pragma once

#include <optional>

#include "apisynth/expr.hpp"
#include "apisynth/library.hpp"
#include "apisynth/query.hpp"

namespace apisynth {

// Repairs array mismatches in a straight-line program (lets and guards over
// variables) by inserting monadic binds and returns:
//   - a variable of type [t] used where t is needed gets one shared
//     "mapping" binding x' <- x, reused on later mismatches of the same x
//   - a variable of type t used where [t] is needed gets let x' = return x
//   - the result is lifted to the arrayified query output
// Returns nullopt when a mismatch is not an array-depth mismatch (no repair
// exists) or the program falls outside the straight-line fragment.
std::optional<Program> lift_program(const SemanticLibrary& lib, const Program& p,
                                    const Query& q);

} // namespace apisynth
