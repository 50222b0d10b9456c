#include "apisynth/witness.hpp"

#include <algorithm>

namespace apisynth {

WitnessStore::WitnessStore(std::vector<Witness> ws) {
    for (auto& w : ws) add(std::move(w));
}

std::string WitnessStore::label_key(const std::string& method,
                                    std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    std::string k = method;
    k += '\x1f';
    for (const auto& l : labels) {
        k += l;
        k += ',';
    }
    return k;
}

bool WitnessStore::add(Witness w) {
    std::string k = w.key();
    if (keys_.count(k)) return false;
    int idx = static_cast<int>(items_.size());
    keys_[k] = idx;
    by_method_[w.method].push_back(idx);
    by_labels_[label_key(w.method, w.input.labels())].push_back(idx);
    items_.push_back(std::move(w));
    return true;
}

std::vector<const Witness*> WitnessStore::by_method(const std::string& method) const {
    std::vector<const Witness*> out;
    auto it = by_method_.find(method);
    if (it == by_method_.end()) return out;
    for (int i : it->second) out.push_back(&items_[i]);
    return out;
}

std::vector<const Witness*> WitnessStore::exact_matches(const std::string& method,
                                                        const Value& input) const {
    std::vector<const Witness*> out;
    auto it = by_method_.find(method);
    if (it == by_method_.end()) return out;
    for (int i : it->second)
        if (items_[i].input == input) out.push_back(&items_[i]);
    return out;
}

std::vector<const Witness*> WitnessStore::label_matches(
    const std::string& method, const std::vector<std::string>& labels) const {
    std::vector<const Witness*> out;
    auto it = by_labels_.find(label_key(method, labels));
    if (it == by_labels_.end()) return out;
    for (int i : it->second) out.push_back(&items_[i]);
    return out;
}

} // namespace apisynth
