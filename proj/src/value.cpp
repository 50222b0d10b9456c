#include "apisynth/value.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace apisynth {

Value Value::str(std::string s) { return prim(PrimTag::String, std::move(s)); }

Value Value::prim(PrimTag tag, std::string text) {
    Value v;
    v.kind_ = Kind::Prim;
    v.tag_ = tag;
    v.prim_ = std::move(text);
    return v;
}

Value Value::array(std::vector<Value> items) {
    Value v;
    v.kind_ = Kind::Array;
    v.items_ = std::move(items);
    return v;
}

Value Value::object(std::vector<std::pair<std::string, Value>> fields) {
    Value v;
    v.kind_ = Kind::Object;
    std::sort(fields.begin(), fields.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    v.fields_ = std::move(fields);
    return v;
}

const Value* Value::field(const std::string& label) const {
    for (const auto& [l, v] : fields_)
        if (l == label) return &v;
    return nullptr;
}

std::vector<std::string> Value::labels() const {
    std::vector<std::string> out;
    out.reserve(fields_.size());
    for (const auto& [l, v] : fields_) out.push_back(l);
    return out;
}

bool Value::operator==(const Value& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Prim: return tag_ == o.tag_ && prim_ == o.prim_;
        case Kind::Array: return items_ == o.items_;
        case Kind::Object: return fields_ == o.fields_;
    }
    return false;
}

bool Value::operator<(const Value& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    switch (kind_) {
        case Kind::Prim: return std::tie(tag_, prim_) < std::tie(o.tag_, o.prim_);
        case Kind::Array: return items_ < o.items_;
        case Kind::Object: return fields_ < o.fields_;
    }
    return false;
}

nlohmann::json Value::to_json() const {
    switch (kind_) {
        case Kind::Prim:
            switch (tag_) {
                case PrimTag::String: return prim_;
                case PrimTag::Number: return nlohmann::json::parse(prim_);
                case PrimTag::Boolean: return prim_ == "true";
                case PrimTag::Null: return nullptr;
            }
            return nullptr;
        case Kind::Array: {
            auto j = nlohmann::json::array();
            for (const auto& v : items_) j.push_back(v.to_json());
            return j;
        }
        case Kind::Object: {
            auto j = nlohmann::json::object();
            for (const auto& [l, v] : fields_) j[l] = v.to_json();
            return j;
        }
    }
    return nullptr;
}

Value Value::from_json(const nlohmann::json& j) {
    if (j.is_string()) return str(j.get<std::string>());
    if (j.is_number()) return prim(PrimTag::Number, j.dump());
    if (j.is_boolean()) return prim(PrimTag::Boolean, j.get<bool>() ? "true" : "false");
    if (j.is_null()) return prim(PrimTag::Null, "null");
    if (j.is_array()) {
        std::vector<Value> items;
        for (const auto& e : j) items.push_back(from_json(e));
        return array(std::move(items));
    }
    if (j.is_object()) {
        std::vector<std::pair<std::string, Value>> fields;
        for (auto it = j.begin(); it != j.end(); ++it)
            fields.emplace_back(it.key(), from_json(it.value()));
        return object(std::move(fields));
    }
    throw std::runtime_error("unsupported JSON value kind");
}

std::string Value::key() const { return to_json().dump(); }

} // namespace apisynth
