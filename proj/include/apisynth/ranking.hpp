#pragma once

#include <cstdint>

#include "apisynth/retro.hpp"

namespace apisynth {

struct CostWeights {
    int all_failed = 1000;   // every replay round failed
    int all_empty = 100;     // rounds succeeded but only ever produced []
    int multiplicity = 10;   // result cardinality disagrees with the query
};

struct CostBreakdown {
    int total = 0;
    int size = 0; // AST size of the lifted program
    int rounds = 0;
    int successes = 0;
    bool all_failed = false;
    bool all_empty = false;
    bool bad_multiplicity = false;
};

// Replays the program `rounds` times with independent derived seeds and
// scores it: smaller is better. Size is the tie-broken base; the penalties
// capture "never works", "works but returns nothing", and "returns many
// where the query wants one (or always one where the query wants many)".
CostBreakdown compute_cost(const SemanticLibrary& lib, const Program& lifted,
                           const Query& q, const WitnessStore& witnesses, int rounds,
                           uint64_t seed, uint64_t program_index,
                           const CostWeights& weights);

// deterministic per-(seed, program, round) stream seed
uint64_t derive_seed(uint64_t seed, uint64_t program_index, uint64_t round);

} // namespace apisynth
