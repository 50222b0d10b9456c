#pragma once

#include <chrono>

#include "apisynth/lift.hpp"
#include "apisynth/program_gen.hpp"
#include "apisynth/ranking.hpp"
#include "apisynth/search.hpp"

namespace apisynth {

struct SynthConfig {
    int max_path_len = 8;
    size_t max_programs = 2000;   // candidate cap; search stops when reached
    size_t programs_per_path = 64;
    std::chrono::milliseconds timeout{150000};
    uint64_t seed = 1;
    int retro_rounds = 15;
    bool rank = true; // when off, keep generation order and skip replay
    CostWeights weights;
    uint64_t max_nodes = 0; // safety valve for the search, 0 = none
};

struct Candidate {
    Program raw;     // array-oblivious, straight off the path
    Program lifted;  // after array repair; this is what is scored
    Program display; // simplified for humans
    std::vector<std::string> path; // transition ids
    bool exact_path = true;
    size_t original_rank = 0; // discovery order, the ranking tie-break
    CostBreakdown cost;
};

struct SynthResult {
    std::vector<Candidate> ranked; // best first
    SearchStats search;
    size_t programs_seen = 0; // raw programs before lifting/typechecking
};

// End to end: enumerate net paths in length order, turn each into programs,
// lift, keep the well-typed ones (this gate also swallows the net's relaxed
// optional-consumption artifacts), then rank by replay cost with discovery
// order as the tie-break.
SynthResult synthesize(const SemanticLibrary& lib, const Query& q,
                       const WitnessStore& witnesses, const SynthConfig& config);

} // namespace apisynth
