#include "apisynth/mining.hpp"

#include <algorithm>
#include <set>

namespace apisynth {

void MergeSet::add(const Location& loc) {
    std::string key = loc.render();
    if (!parent_.count(key)) {
        parent_[key] = key;
        known_.emplace(key, loc);
    }
}

std::string MergeSet::find(const std::string& key) const {
    std::string root = key;
    while (parent_.at(root) != root) root = parent_.at(root);
    std::string cur = key;
    while (cur != root) { // path compression
        std::string next = parent_.at(cur);
        parent_[cur] = root;
        cur = next;
    }
    return root;
}

void MergeSet::unite(const Location& a, const Location& b) {
    add(a);
    add(b);
    std::string ra = find(a.render()), rb = find(b.render());
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb); // smallest rendered form becomes the root
    parent_[rb] = ra;
}

std::vector<std::vector<Location>> MergeSet::groups() const {
    std::map<std::string, std::vector<Location>> by_root;
    for (const auto& [key, loc] : known_) by_root[find(key)].push_back(loc);
    std::vector<std::vector<Location>> out;
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool large_number_text(const std::string& s) {
    if (!all_digits(s)) return false;
    if (s.size() > 18) return true;
    return std::stoull(s) > 1000;
}

} // namespace

bool merge_evidence(const Value& v) {
    if (!v.is_prim()) return false;
    switch (v.tag()) {
        case Value::PrimTag::Boolean:
        case Value::PrimTag::Null: return false;
        case Value::PrimTag::Number: return large_number_text(v.text());
        case Value::PrimTag::String:
            if (v.text().empty()) return false;
            if (all_digits(v.text())) return large_number_text(v.text());
            return true;
    }
    return false;
}

namespace {

struct Walker {
    const Library& lib;
    MergeSet merges;
    std::map<std::string, Location> first_seen; // value key -> first location
    std::vector<std::pair<Location, Value>> observations;

    void walk(const Location& loc, const Value& v) {
        SynTypePtr syn = syntactic_lookup(lib, loc);
        if (!syn) return; // value shape not declared in the spec: skip
        Location canon = loc;
        if (syn->kind == SyntacticType::Kind::Object) {
            canon = Location{syn->object_name, {}};
            syn = lib.objects.at(syn->object_name);
        }
        observations.emplace_back(canon, v);
        if (merge_evidence(v)) {
            std::string key =
                std::to_string(static_cast<int>(v.tag())) + "\x1f" + v.text();
            auto it = first_seen.find(key);
            if (it == first_seen.end()) first_seen.emplace(key, canon);
            else merges.unite(it->second, canon);
        }
        if (v.is_array())
            for (const auto& item : v.items()) walk(canon.child(Label::elem()), item);
        if (v.is_object())
            for (const auto& [label, fv] : v.fields())
                walk(canon.child(Label::field(label)), fv);
    }
};

} // namespace

SemTypePtr semantic_type_at(const SemanticLibrary& lib, const Location& loc,
                            const SyntacticType& syn) {
    switch (syn.kind) {
        case SyntacticType::Kind::Object: return SemanticType::object(syn.object_name);
        case SyntacticType::Kind::Array:
            return SemanticType::array(
                semantic_type_at(lib, loc.child(Label::elem()), *syn.elem));
        case SyntacticType::Kind::Record: {
            std::vector<SemField> fields;
            for (const auto& f : syn.fields)
                fields.push_back(
                    {f.label, f.optional,
                     semantic_type_at(lib, loc.child(Label::field(f.label)), *f.type)});
            return SemanticType::record(std::move(fields));
        }
        case SyntacticType::Kind::Prim: return lib.group_type(loc);
    }
    return nullptr;
}

SemanticLibrary mine_types(const Library& lib, const WitnessStore& witnesses) {
    Walker walker{lib, {}, {}, {}};
    for (const auto& w : witnesses.items()) {
        walker.walk(Location{w.method, {Label::in()}}, w.input);
        walker.walk(Location{w.method, {Label::out()}}, w.output);
    }

    SemanticLibrary out;
    out.base = lib;
    for (const auto& group : walker.merges.groups()) {
        if (group.size() < 2) continue;
        int idx = static_cast<int>(out.groups.size());
        for (const auto& loc : group) out.loc_to_group[loc.render()] = idx;
        out.groups.push_back(group);
    }

    for (const auto& [name, def] : lib.objects)
        out.objects[name] = semantic_type_at(out, Location{name, {}}, *def);
    for (const auto& [name, sig] : lib.methods) {
        SemMethodSig sem;
        sem.input = semantic_type_at(out, Location{name, {Label::in()}}, *sig.input);
        sem.output = semantic_type_at(out, Location{name, {Label::out()}}, *sig.output);
        out.methods[name] = sem;
    }

    // value bank: every observed value, keyed by the semantic type of the
    // (canonical) location it was seen at
    std::map<std::string, std::set<Value>> bank;
    for (const auto& [loc, v] : walker.observations) {
        std::string key;
        if (loc.path.empty() && lib.is_object(loc.head)) {
            key = SemanticType::object(loc.head)->key();
        } else {
            SynTypePtr syn = syntactic_lookup(lib, loc);
            if (!syn) continue;
            key = semantic_type_at(out, loc, *syn)->key();
        }
        bank[key].insert(v);
    }
    for (auto& [key, values] : bank)
        out.bank[key] = std::vector<Value>(values.begin(), values.end());
    return out;
}

SemTypePtr infer_location_type(const SemanticLibrary& lib, const Location& loc) {
    const Library& base = lib.base;
    bool known_head = base.is_object(loc.head) || base.methods.count(loc.head) > 0;
    if (!known_head) return nullptr;

    Location cur{loc.head, {}};
    for (const auto& label : loc.path) {
        Location next = cur.child(label);
        SynTypePtr syn = syntactic_lookup(base, next);
        if (!syn) return nullptr;
        if (syn->kind == SyntacticType::Kind::Object)
            cur = Location{syn->object_name, {}}; // fold onto the object
        else
            cur = next;
    }

    if (cur.path.empty() && base.is_object(cur.head))
        return SemanticType::object(cur.head);
    SynTypePtr syn = syntactic_lookup(base, cur);
    if (!syn) return nullptr;
    return semantic_type_at(lib, cur, *syn);
}

} // namespace apisynth
