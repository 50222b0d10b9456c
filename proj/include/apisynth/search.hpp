#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apisynth/ttn.hpp"

namespace apisynth {

struct PathStep {
    std::string transition;
    std::map<std::string, int> optional_used; // place -> optional tokens consumed
    // exact means the tokens consumed (required + optional) were really
    // present; the relaxed firing rule may let a transition eat an optional
    // token it produces itself, and such steps are marked inexact
    bool exact = true;
};

struct NetPath {
    std::vector<PathStep> steps;
    bool exact = true;
};

struct SearchLimits {
    int max_len = 8;
    uint64_t max_nodes = 0; // 0 = unbounded
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SearchStats {
    uint64_t paths = 0;
    uint64_t nodes = 0;
    bool exhausted = true;       // every length up to max_len fully explored
    bool stopped_by_sink = false;
    bool timed_out = false;
};

// Enumerates paths from `initial` to the marking {goal: 1} in order of
// length; within a length, transitions fire in id order and optional
// consumption grows smallest-total-first. Copy transitions fire at most once
// per place on any one path. The sink returns false to stop the search.
SearchStats enumerate_paths(const Ttn& net, const std::map<std::string, int>& initial,
                            const std::string& goal, const SearchLimits& limits,
                            const std::function<bool(const NetPath&)>& sink);

} // namespace apisynth
