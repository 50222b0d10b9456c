#pragma once

#include <optional>
#include <random>

#include "apisynth/witness.hpp"

namespace apisynth {

// Something that answers API calls. The test generator only needs this much.
class Service {
public:
    virtual ~Service() = default;
    // nullopt signals a failed call (unknown input, error response, ...)
    virtual std::optional<Value> call(const std::string& method, const Value& input) = 0;
};

// Replays recorded traffic. An exact (method, input) match is preferred; when
// only the set of argument labels matches, one of those responses is returned
// instead. Ties are broken uniformly with the seeded generator, so runs are
// reproducible.
class SimService : public Service {
public:
    SimService(WitnessStore witnesses, uint64_t seed)
        : store_(std::move(witnesses)), rng_(seed) {}

    std::optional<Value> call(const std::string& method, const Value& input) override;

    const WitnessStore& witnesses() const { return store_; }

private:
    WitnessStore store_;
    std::mt19937_64 rng_;
};

} // namespace apisynth
