#include "apisynth/service.hpp"

namespace apisynth {

std::optional<Value> SimService::call(const std::string& method, const Value& input) {
    auto exact = store_.exact_matches(method, input);
    if (!exact.empty()) return exact[rng_() % exact.size()]->output;
    auto close = store_.label_matches(method, input.labels());
    if (!close.empty()) return close[rng_() % close.size()]->output;
    return std::nullopt;
}

} // namespace apisynth
