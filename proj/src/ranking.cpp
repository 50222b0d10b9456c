#include "apisynth/ranking.hpp"

namespace apisynth {

uint64_t derive_seed(uint64_t seed, uint64_t program_index, uint64_t round) {
    uint64_t x = seed;
    x += 0x9e3779b97f4a7c15ull * (program_index + 1);
    x += 0xbf58476d1ce4e5b9ull * (round + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

CostBreakdown compute_cost(const SemanticLibrary& lib, const Program& lifted,
                           const Query& q, const WitnessStore& witnesses, int rounds,
                           uint64_t seed, uint64_t program_index,
                           const CostWeights& weights) {
    CostBreakdown cost;
    cost.size = ast_size(lifted);
    cost.rounds = rounds;

    int nonempty = 0;
    int single = 0;
    int many = 0;
    for (int round = 0; round < rounds; ++round) {
        std::mt19937_64 rng(derive_seed(seed, program_index, round));
        RunResult run = execute(lib, lifted, q, witnesses, rng);
        if (!run.success) continue;
        ++cost.successes;
        if (!run.value.is_array()) continue; // lifted programs return arrays
        size_t n = run.value.items().size();
        if (n > 0) ++nonempty;
        if (n == 1) ++single;
        if (n > 1) ++many;
    }

    cost.all_failed = cost.successes == 0;
    cost.all_empty = !cost.all_failed && nonempty == 0;
    bool want_array = is_array(q.output);
    if (!cost.all_failed) {
        if (!want_array && many > 0) cost.bad_multiplicity = true;
        if (want_array && cost.successes > 0 && single == cost.successes)
            cost.bad_multiplicity = true;
    }

    cost.total = cost.size;
    if (cost.all_failed) cost.total += weights.all_failed;
    if (cost.all_empty) cost.total += weights.all_empty;
    if (cost.bad_multiplicity) cost.total += weights.multiplicity;
    return cost;
}

} // namespace apisynth
