#include "apisynth/synth.hpp"

#include <algorithm>
#include <set>

#include "apisynth/dsl.hpp"
#include "apisynth/typecheck.hpp"

namespace apisynth {

SynthResult synthesize(const SemanticLibrary& lib, const Query& q,
                       const WitnessStore& witnesses, const SynthConfig& config) {
    SynthResult result;
    Ttn net = build_ttn(lib);
    Query gate = arrayified(q);

    std::vector<Candidate> candidates;
    std::set<std::string> seen;

    SearchLimits limits;
    limits.max_len = config.max_path_len;
    limits.max_nodes = config.max_nodes;
    limits.deadline = std::chrono::steady_clock::now() + config.timeout;

    result.search = enumerate_paths(
        net, initial_marking(q), goal_place(q), limits, [&](const NetPath& path) {
            for (Program& raw :
                 path_to_programs(lib, net, q, path, config.programs_per_path)) {
                ++result.programs_seen;
                auto lifted = lift_program(lib, raw, q);
                if (!lifted) continue;
                if (!typecheck(lib, *lifted, gate).ok()) continue;
                if (!seen.insert(render_program(alpha_normalize(*lifted))).second)
                    continue;
                Candidate c;
                c.raw = std::move(raw);
                c.lifted = *lifted;
                c.display = simplify_program(*lifted);
                for (const auto& step : path.steps) c.path.push_back(step.transition);
                c.exact_path = path.exact;
                c.original_rank = candidates.size();
                candidates.push_back(std::move(c));
                if (candidates.size() >= config.max_programs) return false;
            }
            return true;
        });

    if (config.rank) {
        for (auto& c : candidates)
            c.cost = compute_cost(lib, c.lifted, q, witnesses, config.retro_rounds,
                                  config.seed, c.original_rank, config.weights);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate& a, const Candidate& b) {
                             if (a.cost.total != b.cost.total)
                                 return a.cost.total < b.cost.total;
                             return a.original_rank < b.original_rank;
                         });
    } else {
        for (auto& c : candidates) {
            c.cost.size = ast_size(c.lifted);
            c.cost.total = c.cost.size;
        }
    }
    result.ranked = std::move(candidates);
    return result;
}

} // namespace apisynth
