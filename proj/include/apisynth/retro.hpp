#pragma once

#include <map>
#include <random>

#include "apisynth/expr.hpp"
#include "apisynth/library.hpp"
#include "apisynth/query.hpp"
#include "apisynth/witness.hpp"

namespace apisynth {

enum class FailReason { None, NoWitness, Unbound, BadProjection };

struct RunResult {
    bool success = false;
    FailReason reason = FailReason::None;
    Value value;                              // on success
    std::map<std::string, Value> sampled;     // lazily chosen parameter values
};

const char* fail_reason_name(FailReason r);

// Replays a lifted program against recorded traffic, without real inputs:
//   - parameters are unbound until first use, then sampled from the value
//     bank of their query type and kept for the rest of the run
//   - a guard with an unbound side is biased true: the unbound variable takes
//     the other side's value
//   - calls replay a recorded response: exact input match first, then any
//     witness with the same argument labels, else the run fails (no-witness)
//   - the environment is threaded through the whole run; a bind variable is
//     restored after the loop, everything else persists
// Failures: no-witness, unbound (parameter with an empty bank), and
// bad-projection (any value-shape error).
RunResult execute(const SemanticLibrary& lib, const Program& p, const Query& q,
                  const WitnessStore& witnesses, std::mt19937_64& rng);

} // namespace apisynth
