#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace apisynth {

// Runtime values exchanged with an API: strings, arrays, and labeled objects.
// JSON numbers/booleans/nulls are carried as tagged string primitives; the tag
// matters for merge eligibility during mining and for faithful re-serialization.
class Value {
public:
    enum class Kind { Prim, Array, Object };
    enum class PrimTag { String, Number, Boolean, Null };

    Value() : kind_(Kind::Prim), tag_(PrimTag::Null) {}

    static Value str(std::string s);
    static Value prim(PrimTag tag, std::string text);
    static Value array(std::vector<Value> items);
    static Value object(std::vector<std::pair<std::string, Value>> fields);

    Kind kind() const { return kind_; }
    PrimTag tag() const { return tag_; }
    bool is_prim() const { return kind_ == Kind::Prim; }
    bool is_array() const { return kind_ == Kind::Array; }
    bool is_object() const { return kind_ == Kind::Object; }

    const std::string& text() const { return prim_; }
    const std::vector<Value>& items() const { return items_; }
    // Fields are kept sorted by label, so comparison is canonical.
    const std::vector<std::pair<std::string, Value>>& fields() const { return fields_; }

    const Value* field(const std::string& label) const;
    std::vector<std::string> labels() const;

    bool operator==(const Value& o) const;
    bool operator<(const Value& o) const;

    nlohmann::json to_json() const;
    static Value from_json(const nlohmann::json& j);

    // Stable text form, usable as a map key.
    std::string key() const;

private:
    Kind kind_;
    PrimTag tag_;
    std::string prim_;
    std::vector<Value> items_;
    std::vector<std::pair<std::string, Value>> fields_;
};

} // namespace apisynth
