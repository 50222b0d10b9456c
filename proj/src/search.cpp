#include "apisynth/search.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace apisynth {

namespace {

constexpr int kFar = std::numeric_limits<int>::max() / 2;

// relaxed distance-to-goal: cheapest way, counting transitions only, to turn
// a token at p into a token at the goal (other preconditions ignored)
std::map<std::string, int> goal_distances(const Ttn& net, const std::string& goal) {
    std::map<std::string, int> dist;
    for (const auto& [key, t] : net.places) {
        (void)t;
        dist[key] = kFar;
    }
    dist[goal] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& tr : net.transitions) {
            int best_out = kFar;
            for (const auto& [p, n] : tr.produced) {
                (void)n;
                auto it = dist.find(p);
                if (it != dist.end()) best_out = std::min(best_out, it->second);
            }
            if (best_out >= kFar) continue;
            auto relax = [&](const std::string& p) {
                auto it = dist.find(p);
                if (it == dist.end() || best_out + 1 < it->second) {
                    dist[p] = best_out + 1;
                    changed = true;
                }
            };
            for (const auto& [p, n] : tr.required_in) {
                (void)n;
                relax(p);
            }
            for (const auto& [p, n] : tr.optional_in) {
                (void)n;
                relax(p);
            }
        }
    }
    return dist;
}

// cheapest way to create a goal token out of thin air (methods without
// required arguments), or kFar when impossible
int spawn_distance(const Ttn& net, const std::map<std::string, int>& dist) {
    int best = kFar;
    for (const auto& tr : net.transitions) {
        if (!tr.required_in.empty()) continue;
        for (const auto& [p, n] : tr.produced) {
            (void)n;
            auto it = dist.find(p);
            if (it != dist.end() && it->second < kFar)
                best = std::min(best, it->second + 1);
        }
    }
    return best;
}

struct TransitionInfo {
    const TtnTransition* tr = nullptr;
    int required_total = 0;
    int produced_total = 0;
    int optional_total = 0;
    std::vector<std::map<std::string, int>> consumptions; // ascending total
};

std::vector<TransitionInfo> precompute(const Ttn& net) {
    std::vector<TransitionInfo> infos;
    for (const auto& tr : net.transitions) {
        TransitionInfo info;
        info.tr = &tr;
        for (const auto& [p, n] : tr.required_in) {
            (void)p;
            info.required_total += n;
        }
        for (const auto& [p, n] : tr.produced) {
            (void)p;
            info.produced_total += n;
        }
        for (const auto& [p, cap] : tr.optional_in) {
            (void)p;
            info.optional_total += cap;
        }
        std::vector<std::map<std::string, int>> combos = {{}};
        for (const auto& [p, cap] : tr.optional_in) {
            std::vector<std::map<std::string, int>> next;
            for (const auto& base : combos)
                for (int c = 0; c <= cap; ++c) {
                    auto m = base;
                    if (c > 0) m[p] = c;
                    next.push_back(std::move(m));
                }
            combos = std::move(next);
        }
        auto total = [](const std::map<std::string, int>& m) {
            int t = 0;
            for (const auto& [p, c] : m) {
                (void)p;
                t += c;
            }
            return t;
        };
        std::stable_sort(combos.begin(), combos.end(),
                         [&](const auto& a, const auto& b) { return total(a) < total(b); });
        info.consumptions = std::move(combos);
        infos.push_back(std::move(info));
    }
    return infos;
}

struct Searcher {
    const Ttn& net;
    const std::string goal;
    const SearchLimits& limits;
    const std::function<bool(const NetPath&)>& sink;

    std::vector<TransitionInfo> infos;
    std::map<std::string, int> dist;
    int spawn = kFar;
    int min_delta = 0;
    int max_delta = 0;

    std::map<std::string, int> marking;
    std::set<std::string> copies_used;
    std::vector<PathStep> steps;
    // states proven to have no completion; the key includes the remaining
    // step count and the copy budget, so entries stay valid across lengths
    std::set<std::string> dead;

    SearchStats stats;
    bool stop = false;

    Searcher(const Ttn& n, const std::string& g, const SearchLimits& lim,
             const std::function<bool(const NetPath&)>& s)
        : net(n), goal(g), limits(lim), sink(s), infos(precompute(n)),
          dist(goal_distances(n, g)) {
        spawn = spawn_distance(net, dist);
        bool first = true;
        for (const auto& info : infos) {
            int lo = info.produced_total - info.required_total - info.optional_total;
            int hi = info.produced_total - info.required_total;
            min_delta = first ? lo : std::min(min_delta, lo);
            max_delta = first ? hi : std::max(max_delta, hi);
            first = false;
        }
    }

    bool over_budget() {
        if (limits.max_nodes && stats.nodes >= limits.max_nodes) {
            stats.exhausted = false;
            return true;
        }
        if (limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline) {
            stats.timed_out = true;
            stats.exhausted = false;
            return true;
        }
        return false;
    }

    int total_tokens() const {
        int t = 0;
        for (const auto& [p, n] : marking) {
            (void)p;
            t += n;
        }
        return t;
    }

    bool at_goal() const {
        for (const auto& [p, n] : marking)
            if (n != (p == goal ? 1 : 0)) return false;
        auto it = marking.find(goal);
        return it != marking.end() && it->second == 1;
    }

    bool prune(int steps_left) const {
        int total = total_tokens();
        if (total + max_delta * steps_left < 1) return true;
        if (total + min_delta * steps_left > 1) return true;
        int best = spawn;
        for (const auto& [p, n] : marking) {
            if (n <= 0) continue;
            auto it = dist.find(p);
            if (it != dist.end()) best = std::min(best, it->second);
        }
        return best > steps_left;
    }

    std::string state_key(int steps_left) const {
        std::ostringstream out;
        for (const auto& [p, n] : marking)
            if (n > 0) out << p << '=' << n << ';';
        out << '|';
        for (const auto& c : copies_used) out << c << ';';
        out << '|' << steps_left;
        return out.str();
    }

    int tokens_at(const std::string& p) const {
        auto it = marking.find(p);
        return it == marking.end() ? 0 : it->second;
    }

    // returns true when a completion exists below this node (or the search
    // was cut short, in which case nothing is memoized)
    bool dfs(int steps_left) {
        ++stats.nodes;
        if (stop || over_budget()) {
            stop = true;
            return true;
        }
        if (steps_left == 0) {
            if (!at_goal()) return false;
            NetPath path{steps, true};
            for (const auto& s : steps) path.exact = path.exact && s.exact;
            ++stats.paths;
            if (!sink(path)) {
                stop = true;
                stats.stopped_by_sink = true;
                stats.exhausted = false;
            }
            return true;
        }
        if (prune(steps_left)) return false;
        std::string key = state_key(steps_left);
        if (dead.count(key)) return false;

        bool found = false;
        for (const auto& info : infos) {
            const TtnTransition& tr = *info.tr;
            if (tr.kind == TtnTransition::Kind::Copy && copies_used.count(tr.source_place))
                continue;
            bool enabled = true;
            for (const auto& [p, need] : tr.required_in)
                if (tokens_at(p) < need) {
                    enabled = false;
                    break;
                }
            if (!enabled) continue;

            for (const auto& consumption : info.consumptions) {
                bool exact = true;
                for (const auto& [p, c] : consumption) {
                    auto it = tr.required_in.find(p);
                    int need = it == tr.required_in.end() ? 0 : it->second;
                    if (tokens_at(p) < need + c) exact = false;
                }
                for (const auto& [p, need] : tr.required_in) marking[p] -= need;
                for (const auto& [p, c] : consumption) marking[p] -= c;
                for (const auto& [p, n] : tr.produced) marking[p] += n;
                bool valid = true;
                for (const auto& [p, n] : marking) {
                    (void)p;
                    if (n < 0) {
                        valid = false;
                        break;
                    }
                }
                if (valid) {
                    if (tr.kind == TtnTransition::Kind::Copy)
                        copies_used.insert(tr.source_place);
                    steps.push_back({tr.id, consumption, exact});
                    if (dfs(steps_left - 1)) found = true;
                    steps.pop_back();
                    if (tr.kind == TtnTransition::Kind::Copy)
                        copies_used.erase(tr.source_place);
                }
                for (const auto& [p, n] : tr.produced) marking[p] -= n;
                for (const auto& [p, c] : consumption) marking[p] += c;
                for (const auto& [p, need] : tr.required_in) marking[p] += need;
                if (stop) return true;
            }
        }
        if (!found) dead.insert(key);
        return found;
    }
};

} // namespace

SearchStats enumerate_paths(const Ttn& net, const std::map<std::string, int>& initial,
                            const std::string& goal, const SearchLimits& limits,
                            const std::function<bool(const NetPath&)>& sink) {
    Searcher s(net, goal, limits, sink);
    for (int len = 1; len <= limits.max_len && !s.stop; ++len) {
        s.marking = initial;
        s.copies_used.clear();
        s.steps.clear();
        s.dfs(len);
    }
    return s.stats;
}

} // namespace apisynth
