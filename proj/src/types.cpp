#include "apisynth/types.hpp"

#include <algorithm>

namespace apisynth {

SynTypePtr SyntacticType::prim(PrimTag t) {
    auto s = std::make_shared<SyntacticType>();
    s->kind = Kind::Prim;
    s->tag = t;
    return s;
}

SynTypePtr SyntacticType::object(std::string name) {
    auto s = std::make_shared<SyntacticType>();
    s->kind = Kind::Object;
    s->object_name = std::move(name);
    return s;
}

SynTypePtr SyntacticType::array(SynTypePtr e) {
    auto s = std::make_shared<SyntacticType>();
    s->kind = Kind::Array;
    s->elem = std::move(e);
    return s;
}

SynTypePtr SyntacticType::record(std::vector<SynField> fs) {
    auto s = std::make_shared<SyntacticType>();
    s->kind = Kind::Record;
    std::sort(fs.begin(), fs.end(),
              [](const SynField& a, const SynField& b) { return a.label < b.label; });
    s->fields = std::move(fs);
    return s;
}

const SynField* SyntacticType::field(const std::string& label) const {
    for (const auto& f : fields)
        if (f.label == label) return &f;
    return nullptr;
}

std::string SyntacticType::render() const {
    switch (kind) {
        case Kind::Prim:
            switch (tag) {
                case PrimTag::String: return "String";
                case PrimTag::Integer: return "Integer";
                case PrimTag::Number: return "Number";
                case PrimTag::Boolean: return "Boolean";
            }
            return "String";
        case Kind::Object: return object_name;
        case Kind::Array: return "[" + elem->render() + "]";
        case Kind::Record: {
            std::string out = "{";
            bool first = true;
            for (const auto& f : fields) {
                if (!first) out += ", ";
                first = false;
                if (f.optional) out += "?";
                out += f.label + ": " + f.type->render();
            }
            return out + "}";
        }
    }
    return {};
}

SemTypePtr SemanticType::locset(std::vector<Location> ls) {
    auto s = std::make_shared<SemanticType>();
    s->kind = Kind::LocSet;
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    s->locs = std::move(ls);
    return s;
}

SemTypePtr SemanticType::object(std::string name) {
    auto s = std::make_shared<SemanticType>();
    s->kind = Kind::Object;
    s->object_name = std::move(name);
    return s;
}

SemTypePtr SemanticType::array(SemTypePtr e) {
    auto s = std::make_shared<SemanticType>();
    s->kind = Kind::Array;
    s->elem = std::move(e);
    return s;
}

SemTypePtr SemanticType::record(std::vector<SemField> fs) {
    auto s = std::make_shared<SemanticType>();
    s->kind = Kind::Record;
    std::sort(fs.begin(), fs.end(),
              [](const SemField& a, const SemField& b) { return a.label < b.label; });
    s->fields = std::move(fs);
    return s;
}

const SemField* SemanticType::field(const std::string& label) const {
    for (const auto& f : fields)
        if (f.label == label) return &f;
    return nullptr;
}

std::string SemanticType::key() const {
    switch (kind) {
        case Kind::LocSet: {
            std::string out = "{";
            bool first = true;
            for (const auto& l : locs) {
                if (!first) out += ",";
                first = false;
                out += l.render();
            }
            return out + "}";
        }
        case Kind::Object: return object_name;
        case Kind::Array: return "[" + elem->key() + "]";
        case Kind::Record: {
            std::string out = "{";
            bool first = true;
            for (const auto& f : fields) {
                if (!first) out += ", ";
                first = false;
                if (f.optional) out += "?";
                out += f.label + ": " + f.type->key();
            }
            return out + "}";
        }
    }
    return {};
}

std::string SemanticType::display(const std::vector<std::string>& object_names) const {
    switch (kind) {
        case Kind::LocSet: {
            for (const auto& l : locs) {
                bool rooted = std::find(object_names.begin(), object_names.end(), l.head) !=
                              object_names.end();
                if (rooted) return l.render();
            }
            return locs.front().render();
        }
        case Kind::Object: return object_name;
        case Kind::Array: return "[" + elem->display(object_names) + "]";
        case Kind::Record: {
            std::string out = "{";
            bool first = true;
            for (const auto& f : fields) {
                if (!first) out += ", ";
                first = false;
                if (f.optional) out += "?";
                out += f.label + ": " + f.type->display(object_names);
            }
            return out + "}";
        }
    }
    return {};
}

bool sem_equal(const SemTypePtr& a, const SemTypePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->key() == b->key();
}

bool is_array(const SemTypePtr& t) {
    return t && t->kind == SemanticType::Kind::Array;
}

} // namespace apisynth
