#include "apisynth/library.hpp"

namespace apisynth {

std::vector<std::string> Library::object_names() const {
    std::vector<std::string> out;
    for (const auto& [n, t] : objects) out.push_back(n);
    return out;
}

std::vector<std::string> Library::head_names() const {
    auto out = object_names();
    for (const auto& [n, s] : methods) out.push_back(n);
    return out;
}

SynTypePtr syntactic_lookup(const Library& lib, const Location& loc) {
    SynTypePtr cur;
    size_t start = 0;
    if (auto it = lib.objects.find(loc.head); it != lib.objects.end()) {
        cur = it->second;
    } else if (auto mt = lib.methods.find(loc.head); mt != lib.methods.end()) {
        if (loc.path.empty()) return nullptr; // a bare method name is not a type
        const Label& first = loc.path[0];
        if (first.kind == Label::Kind::In) cur = mt->second.input;
        else if (first.kind == Label::Kind::Out) cur = mt->second.output;
        else return nullptr;
        start = 1;
    } else {
        return nullptr;
    }
    for (size_t i = start; i < loc.path.size(); ++i) {
        if (!cur) return nullptr;
        const Label& l = loc.path[i];
        switch (cur->kind) {
            case SyntacticType::Kind::Record: {
                if (l.kind != Label::Kind::Field) return nullptr;
                const SynField* f = cur->field(l.name);
                if (!f) return nullptr;
                cur = f->type;
                break;
            }
            case SyntacticType::Kind::Array:
                if (l.kind != Label::Kind::Elem) return nullptr;
                cur = cur->elem;
                break;
            default:
                // Object references are opaque here; primitive types have no
                // sub-locations.
                return nullptr;
        }
    }
    return cur;
}

SemTypePtr SemanticLibrary::group_type(const Location& loc) const {
    auto it = loc_to_group.find(loc.render());
    if (it == loc_to_group.end()) return SemanticType::locset({loc});
    return SemanticType::locset(groups[it->second]);
}

const std::vector<Value>* SemanticLibrary::bank_for(const SemTypePtr& t) const {
    auto it = bank.find(t->key());
    if (it == bank.end()) return nullptr;
    return &it->second;
}

} // namespace apisynth
