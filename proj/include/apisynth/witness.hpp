#pragma once

#include <map>
#include <string>
#include <vector>

#include "apisynth/value.hpp"

namespace apisynth {

// One observed call: method name, input object, output value.
struct Witness {
    std::string method;
    Value input;  // always an object (possibly empty)
    Value output;

    bool operator==(const Witness& o) const {
        return method == o.method && input == o.input && output == o.output;
    }
    std::string key() const { return method + "\x1f" + input.key() + "\x1f" + output.key(); }
};

// Deduplicated witness collection with lookup by method and by the set of
// argument labels used.
class WitnessStore {
public:
    WitnessStore() = default;
    explicit WitnessStore(std::vector<Witness> ws);

    // Returns false when the witness was already present.
    bool add(Witness w);

    const std::vector<Witness>& items() const { return items_; }
    size_t size() const { return items_.size(); }

    std::vector<const Witness*> by_method(const std::string& method) const;
    // Exact replay candidates: same method, identical input value.
    std::vector<const Witness*> exact_matches(const std::string& method,
                                              const Value& input) const;
    // Approximate replay candidates: same method, same set of argument labels.
    std::vector<const Witness*> label_matches(const std::string& method,
                                              const std::vector<std::string>& labels) const;

    bool operator==(const WitnessStore& o) const { return items_ == o.items_; }

private:
    std::vector<Witness> items_;
    std::map<std::string, std::vector<int>> by_method_;
    std::map<std::string, std::vector<int>> by_labels_; // method \x1f l1,l2 -> idx
    std::map<std::string, int> keys_;

    static std::string label_key(const std::string& method,
                                 std::vector<std::string> labels);
};

} // namespace apisynth
