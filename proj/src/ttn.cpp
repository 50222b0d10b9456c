#include "apisynth/ttn.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace apisynth {

SemTypePtr downgrade(const SemTypePtr& t) {
    SemTypePtr cur = t;
    while (cur->kind == SemanticType::Kind::Array) cur = cur->elem;
    return cur;
}

const TtnTransition* Ttn::transition(const std::string& id) const {
    auto it = std::lower_bound(
        transitions.begin(), transitions.end(), id,
        [](const TtnTransition& t, const std::string& key) { return t.id < key; });
    if (it == transitions.end() || it->id != id) return nullptr;
    return &*it;
}

namespace {

struct Builder {
    const SemanticLibrary& lib;
    Ttn net;
    std::deque<std::string> worklist; // record-ish places pending projections
    std::set<std::string> expanded;

    std::string ensure_place(const SemTypePtr& t) {
        SemTypePtr down = downgrade(t);
        std::string key = down->key();
        if (!net.places.count(key)) {
            net.places[key] = down;
            if (down->kind == SemanticType::Kind::Object ||
                down->kind == SemanticType::Kind::Record)
                worklist.push_back(key);
        }
        return key;
    }

    void add_transition(TtnTransition t) {
        for (const auto& existing : net.transitions)
            if (existing.id == t.id)
                throw std::logic_error("duplicate transition id " + t.id);
        net.transitions.push_back(std::move(t));
    }

    const std::vector<SemField>* fields_of(const SemTypePtr& t) const {
        if (t->kind == SemanticType::Kind::Record) return &t->fields;
        if (t->kind == SemanticType::Kind::Object) {
            auto it = lib.objects.find(t->object_name);
            if (it != lib.objects.end()) return &it->second->fields;
        }
        return nullptr;
    }

    void add_projections(const std::string& place_key) {
        const SemTypePtr& t = net.places.at(place_key);
        const auto* fields = fields_of(t);
        if (!fields) return;
        for (const auto& f : *fields) {
            TtnTransition tr;
            tr.kind = TtnTransition::Kind::Proj;
            tr.id = "proj_" + place_key + "." + f.label;
            tr.source_place = place_key;
            tr.field_path = {f.label};
            tr.required_in[place_key] = 1;
            tr.output_place = ensure_place(f.type);
            tr.produced[tr.output_place] = 1;
            add_transition(std::move(tr));
        }
    }

    // every field path from the object that ends in a location set, not
    // crossing arrays and not revisiting an object
    void add_filters(const std::string& object_place) {
        std::vector<std::string> path;
        std::set<std::string> visited = {object_place};
        collect_filter_paths(object_place, net.places.at(object_place), path, visited);
    }

    void collect_filter_paths(const std::string& root, const SemTypePtr& t,
                              std::vector<std::string>& path,
                              std::set<std::string>& visited) {
        const auto* fields = fields_of(t);
        if (!fields) return;
        for (const auto& f : *fields) {
            path.push_back(f.label);
            if (f.type->kind == SemanticType::Kind::LocSet) {
                TtnTransition tr;
                tr.kind = TtnTransition::Kind::Filter;
                tr.id = "filter_" + root;
                for (const auto& step : path) tr.id += "." + step;
                tr.source_place = root;
                tr.field_path = path;
                std::string leaf = ensure_place(f.type);
                tr.required_in[root] += 1;
                tr.required_in[leaf] += 1;
                tr.produced[root] = 1;
                tr.output_place = root;
                add_transition(std::move(tr));
            } else if (f.type->kind == SemanticType::Kind::Object &&
                       !visited.count(f.type->object_name)) {
                visited.insert(f.type->object_name);
                collect_filter_paths(root, f.type, path, visited);
                visited.erase(f.type->object_name);
            } else if (f.type->kind == SemanticType::Kind::Record) {
                collect_filter_paths(root, f.type, path, visited);
            }
            path.pop_back();
        }
    }
};

} // namespace

Ttn build_ttn(const SemanticLibrary& lib) {
    Builder b{lib, {}, {}, {}};

    for (const auto& [name, sig] : lib.methods) {
        TtnTransition tr;
        tr.kind = TtnTransition::Kind::Method;
        tr.id = name;
        tr.method = name;
        for (const auto& f : sig.input->fields) {
            std::string place = b.ensure_place(f.type);
            if (f.optional) {
                tr.optional_in[place] += 1;
                tr.optional_args.emplace_back(f.label, place);
            } else {
                tr.required_in[place] += 1;
                tr.required_args.emplace_back(f.label, place);
            }
        }
        tr.output_place = b.ensure_place(sig.output);
        tr.produced[tr.output_place] = 1;
        b.add_transition(std::move(tr));
    }
    for (const auto& [name, def] : lib.objects)
        b.ensure_place(SemanticType::object(name));

    while (!b.worklist.empty()) {
        std::string key = b.worklist.front();
        b.worklist.pop_front();
        if (!b.expanded.insert(key).second) continue;
        b.add_projections(key);
        if (b.net.places.at(key)->kind == SemanticType::Kind::Object) b.add_filters(key);
    }

    for (const auto& [key, t] : b.net.places) {
        (void)t;
        TtnTransition tr;
        tr.kind = TtnTransition::Kind::Copy;
        tr.id = "copy_" + key;
        tr.source_place = key;
        tr.required_in[key] = 1;
        tr.produced[key] = 2;
        tr.output_place = key;
        b.add_transition(std::move(tr));
    }

    std::sort(b.net.transitions.begin(), b.net.transitions.end(),
              [](const TtnTransition& x, const TtnTransition& y) { return x.id < y.id; });
    return b.net;
}

std::map<std::string, int> initial_marking(const Query& q) {
    std::map<std::string, int> marking;
    for (const auto& [label, t] : q.args) {
        (void)label;
        marking[downgrade(t)->key()] += 1;
    }
    return marking;
}

std::string goal_place(const Query& q) { return downgrade(q.output)->key(); }

std::string ttn_to_dot(const Ttn& net, const SemanticLibrary& lib) {
    auto names = lib.base.object_names();
    std::ostringstream out;
    out << "digraph ttn {\n  rankdir=LR;\n";
    for (const auto& [key, t] : net.places)
        out << "  \"p:" << key << "\" [shape=ellipse, label=\"" << t->display(names)
            << "\"];\n";
    for (const auto& tr : net.transitions) {
        out << "  \"t:" << tr.id << "\" [shape=box, label=\"" << tr.id << "\"];\n";
        for (const auto& [place, n] : tr.required_in) {
            out << "  \"p:" << place << "\" -> \"t:" << tr.id << "\"";
            if (n > 1) out << " [label=\"" << n << "\"]";
            out << ";\n";
        }
        for (const auto& [place, n] : tr.optional_in)
            out << "  \"p:" << place << "\" -> \"t:" << tr.id
                << "\" [style=dashed, label=\"0.." << n << "\"];\n";
        for (const auto& [place, n] : tr.produced) {
            out << "  \"t:" << tr.id << "\" -> \"p:" << place << "\"";
            if (n > 1) out << " [label=\"" << n << "\"]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace apisynth
