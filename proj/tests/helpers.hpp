#pragma once

// Shared test-side machinery: fixture loading shortcuts, a brute-force path
// enumerator that mirrors the net firing rule without any of the search's
// pruning, a brute-force partition builder for mining, and small random
// generators for both. The oracles here are deliberately naive so they can
// disagree with the library when the library is wrong.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "apisynth/dsl.hpp"
#include "apisynth/mining.hpp"
#include "apisynth/search.hpp"
#include "apisynth/spec_load.hpp"
#include "apisynth/ttn.hpp"

namespace apisynth::testing {

inline std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

inline Library slack_library() { return load_spec_file(fixture("slack_spec.json")); }

inline SemanticLibrary mined_fig() {
    Library lib = slack_library();
    return mine_types(lib, load_witnesses_file(fixture("w_fig.json"), lib));
}

// canonical text for alpha-equivalence checks
inline std::string canon(const Program& p) {
    return render_program(alpha_normalize(p));
}
inline std::string canon_simplified(const Program& p) {
    return render_program(alpha_normalize(simplify_program(p)));
}

// ---------------------------------------------------------------------------
// Brute-force path enumeration.
//
// A step fires transition t consuming every required token plus a chosen
// number of optional tokens per optional place. The relaxed rule requires
// only that required tokens are present and that no place goes negative once
// production is counted; a step that consumes more than is actually present
// before production is marked inexact. Copy transitions fire at most once
// per place on a path. A path is accepted when the final marking is exactly
// {goal: 1}.

struct OraclePath {
    std::vector<std::string> steps; // "id" or "id[place=c,...]"
    bool exact = true;

    std::string key() const {
        std::string out;
        for (const auto& s : steps) out += s + ";";
        out += exact ? "#exact" : "#inexact";
        return out;
    }
};

namespace detail {

inline void optional_choices(const std::map<std::string, int>& optional_in,
                             std::vector<std::map<std::string, int>>& out) {
    out.assign(1, {});
    for (const auto& [place, max_c] : optional_in) {
        std::vector<std::map<std::string, int>> next;
        for (const auto& partial : out)
            for (int c = 0; c <= max_c; ++c) {
                auto copy = partial;
                if (c > 0) copy[place] = c;
                next.push_back(std::move(copy));
            }
        out = std::move(next);
    }
}

inline std::string step_label(const TtnTransition& t,
                              const std::map<std::string, int>& chosen) {
    if (chosen.empty()) return t.id;
    std::string out = t.id + "[";
    bool first = true;
    for (const auto& [place, c] : chosen) {
        if (!first) out += ",";
        first = false;
        out += place + "=" + std::to_string(c);
    }
    return out + "]";
}

} // namespace detail

inline void oracle_paths_rec(const Ttn& net, std::map<std::string, int>& marking,
                             const std::string& goal, int steps_left,
                             std::set<std::string>& copied, OraclePath& path,
                             std::set<std::string>& found) {
    bool at_goal = true;
    for (const auto& [place, n] : marking)
        if (n != (place == goal ? 1 : 0)) at_goal = false;
    if (at_goal && marking.count(goal) && !path.steps.empty()) found.insert(path.key());
    if (steps_left == 0) return;

    for (const auto& t : net.transitions) {
        if (t.kind == TtnTransition::Kind::Copy && copied.count(t.source_place))
            continue;
        bool has_required = true;
        for (const auto& [place, n] : t.required_in)
            if (marking[place] < n) has_required = false;
        if (!has_required) continue;

        std::vector<std::map<std::string, int>> choices;
        detail::optional_choices(t.optional_in, choices);
        for (const auto& chosen : choices) {
            auto next = marking;
            bool exact_step = true;
            for (const auto& [place, n] : t.required_in) next[place] -= n;
            for (const auto& [place, c] : chosen) {
                int req = t.required_in.count(place) ? t.required_in.at(place) : 0;
                if (marking[place] < req + c) exact_step = false;
                next[place] -= c;
            }
            for (const auto& [place, n] : t.produced) next[place] += n;
            bool valid = true;
            for (const auto& [place, n] : next)
                if (n < 0) valid = false;
            if (!valid) continue;

            bool was_exact = path.exact;
            path.steps.push_back(detail::step_label(t, chosen));
            path.exact = path.exact && exact_step;
            if (t.kind == TtnTransition::Kind::Copy) copied.insert(t.source_place);
            std::swap(marking, next);

            oracle_paths_rec(net, marking, goal, steps_left - 1, copied, path, found);

            std::swap(marking, next);
            if (t.kind == TtnTransition::Kind::Copy) copied.erase(t.source_place);
            path.steps.pop_back();
            path.exact = was_exact;
        }
    }
}

inline std::set<std::string> oracle_paths(const Ttn& net,
                                          const std::map<std::string, int>& initial,
                                          const std::string& goal, int max_len) {
    std::set<std::string> found;
    std::map<std::string, int> marking = initial;
    std::set<std::string> copied;
    OraclePath path;
    oracle_paths_rec(net, marking, goal, max_len, copied, path, found);
    return found;
}

// The library's paths, keyed the same way.
inline std::set<std::string> searched_paths(const Ttn& net,
                                            const std::map<std::string, int>& initial,
                                            const std::string& goal, int max_len) {
    std::set<std::string> found;
    SearchLimits limits;
    limits.max_len = max_len;
    enumerate_paths(net, initial, goal, limits, [&](const NetPath& p) {
        OraclePath op;
        op.exact = p.exact;
        for (const auto& step : p.steps) {
            const TtnTransition* t = net.transition(step.transition);
            op.steps.push_back(detail::step_label(*t, step.optional_used));
        }
        found.insert(op.key());
        return true;
    });
    return found;
}

// Random small nets for the search oracle. Places p0..p{k-1}; transition mix
// of plain transitions (random required/optional/produced, multiplicities
// <= 2, optional <= 1) and an occasional copy.
struct RandomNet {
    Ttn net;
    std::map<std::string, int> initial;
    std::string goal;
};

inline RandomNet random_net(std::mt19937_64& rng) {
    RandomNet out;
    int n_places = 2 + static_cast<int>(rng() % 5);       // 2..6
    int n_transitions = 2 + static_cast<int>(rng() % 7);  // 2..8
    std::vector<std::string> places;
    for (int i = 0; i < n_places; ++i) {
        std::string name = "p" + std::to_string(i);
        places.push_back(name);
        out.net.places[SemanticType::locset({Location{name, {}}})->key()] =
            SemanticType::locset({Location{name, {}}});
    }
    auto place_key = [&](int i) {
        return SemanticType::locset({Location{places[i], {}}})->key();
    };

    for (int i = 0; i < n_transitions; ++i) {
        TtnTransition t;
        t.id = "t" + std::to_string(i);
        if (rng() % 5 == 0) {
            t.kind = TtnTransition::Kind::Copy;
            int p = static_cast<int>(rng() % n_places);
            t.source_place = place_key(p);
            t.required_in[place_key(p)] = 1;
            t.produced[place_key(p)] = 2;
            t.output_place = place_key(p);
        } else {
            t.kind = TtnTransition::Kind::Method;
            int n_req = static_cast<int>(rng() % 3); // 0..2 required places
            for (int r = 0; r < n_req; ++r)
                t.required_in[place_key(static_cast<int>(rng() % n_places))] =
                    1 + static_cast<int>(rng() % 2);
            if (rng() % 2 == 0)
                t.optional_in[place_key(static_cast<int>(rng() % n_places))] = 1;
            int out_p = static_cast<int>(rng() % n_places);
            t.produced[place_key(out_p)] += 1 + static_cast<int>(rng() % 2);
            t.output_place = place_key(out_p);
        }
        out.net.transitions.push_back(std::move(t));
    }
    std::sort(out.net.transitions.begin(), out.net.transitions.end(),
              [](const TtnTransition& a, const TtnTransition& b) { return a.id < b.id; });

    int n_tokens = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < n_tokens; ++i)
        out.initial[place_key(static_cast<int>(rng() % n_places))] += 1;
    out.goal = place_key(static_cast<int>(rng() % n_places));
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force mining partition: gather (location, value) observations with a
// plain walker over witnesses of a flat library (prim args, prim or
// prim-array outputs, no objects), then union locations that share any
// merge-eligible value. Returns groups of size >= 2, each sorted, sorted by
// first member, which is the same shape mine_types exposes.

struct FlatObservation {
    std::string loc;
    Value value;
};

inline void flat_observations(const WitnessStore& ws, std::vector<FlatObservation>& out) {
    for (const auto& w : ws.items()) {
        for (const auto& [label, v] : w.input.fields())
            out.push_back({w.method + ".in." + label, v});
        if (w.output.is_array()) {
            for (const auto& item : w.output.items())
                out.push_back({w.method + ".out.0", item});
        } else {
            out.push_back({w.method + ".out", w.output});
        }
    }
}

inline std::vector<std::vector<std::string>> oracle_partition(const WitnessStore& ws) {
    std::vector<FlatObservation> obs;
    flat_observations(ws, obs);

    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        return it->second = find(it->second);
    };
    auto unite = [&](const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    };

    std::map<std::string, std::string> first_seen; // tagged text -> location
    for (const auto& o : obs) {
        parent.emplace(o.loc, o.loc);
        if (!merge_evidence(o.value)) continue;
        std::string key = std::to_string(static_cast<int>(o.value.tag())) + o.value.text();
        auto [it, inserted] = first_seen.emplace(key, o.loc);
        if (!inserted) unite(it->second, o.loc);
    }

    std::map<std::string, std::vector<std::string>> by_root;
    for (const auto& [loc, _] : parent) by_root[find(loc)].push_back(loc);
    std::vector<std::vector<std::string>> groups;
    for (auto& [root, members] : by_root)
        if (members.size() >= 2) {
            std::sort(members.begin(), members.end());
            groups.push_back(members);
        }
    std::sort(groups.begin(), groups.end());
    return groups;
}

// Random flat witness sets: a few methods over shared string pools so values
// collide across locations. Includes numeric and boolean noise that mining
// must refuse to merge on.
inline WitnessStore random_flat_witnesses(std::mt19937_64& rng, Library& lib_out) {
    Library lib;
    int n_methods = 2 + static_cast<int>(rng() % 3);
    for (int m = 0; m < n_methods; ++m) {
        MethodSig sig;
        std::vector<SynField> args;
        int n_args = 1 + static_cast<int>(rng() % 2);
        for (int a = 0; a < n_args; ++a)
            args.push_back({std::string(1, static_cast<char>('a' + a)), false,
                            SyntacticType::prim()});
        sig.input = SyntacticType::record(std::move(args));
        sig.output = rng() % 2 == 0 ? SyntacticType::array(SyntacticType::prim())
                                    : SyntacticType::prim();
        lib.methods["m" + std::to_string(m)] = std::move(sig);
    }

    std::vector<Value> pool;
    for (int i = 0; i < 8; ++i) pool.push_back(Value::str("s" + std::to_string(i)));
    pool.push_back(Value::prim(Value::PrimTag::Number, "7"));        // too small
    pool.push_back(Value::prim(Value::PrimTag::Number, "8675309"));  // id-like
    pool.push_back(Value::prim(Value::PrimTag::Boolean, "true"));
    pool.push_back(Value::str("12"));                                // small digits
    auto draw = [&]() { return pool[rng() % pool.size()]; };

    WitnessStore ws;
    int occurrences = 0;
    int budget = 20 + static_cast<int>(rng() % 180); // <= 200 occurrences
    while (occurrences < budget) {
        int m = static_cast<int>(rng() % n_methods);
        std::string method = "m" + std::to_string(m);
        const MethodSig& sig = lib.methods[method];
        std::vector<std::pair<std::string, Value>> fields;
        for (const auto& f : sig.input->fields) {
            fields.emplace_back(f.label, draw());
            ++occurrences;
        }
        Value output;
        if (sig.output->kind == SyntacticType::Kind::Array) {
            std::vector<Value> items;
            int n = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < n; ++i) {
                items.push_back(draw());
                ++occurrences;
            }
            output = Value::array(std::move(items));
        } else {
            output = draw();
            ++occurrences;
        }
        Value input = Value::object(std::move(fields));
        ws.add(Witness{method, input, output});
    }
    lib_out = std::move(lib);
    return ws;
}

inline std::vector<std::vector<std::string>> mined_partition(const Library& lib,
                                                             const WitnessStore& ws) {
    SemanticLibrary sem = mine_types(lib, ws);
    std::vector<std::vector<std::string>> groups;
    for (const auto& g : sem.groups) {
        std::vector<std::string> members;
        for (const auto& loc : g) members.push_back(loc.render());
        std::sort(members.begin(), members.end());
        groups.push_back(members);
    }
    std::sort(groups.begin(), groups.end());
    return groups;
}

} // namespace apisynth::testing
