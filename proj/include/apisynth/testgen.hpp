#pragma once

#include <random>

#include "apisynth/mining.hpp"
#include "apisynth/service.hpp"

#include <json.hpp>

namespace apisynth {

// Optional hints for arguments whose types never show up in responses (ids
// that are only ever consumed, say). method -> argument -> location whose
// value bank should be sampled.
using Annotations = std::map<std::string, std::map<std::string, Location>>;

// {"method": {"arg": "Some.location"}}; unknown methods or arguments are
// rejected.
Annotations load_annotations_json(const nlohmann::json& doc, const Library& lib);

struct TestGenConfig {
    int max_optional_subset = 2; // largest optional-argument subset exercised
    int samples_per_shape = 2;   // random input draws per (method, subset)
};

// One round of bank-driven random testing: every method is tried with every
// small subset of its optional arguments, argument values sampled uniformly
// from the value bank. Successful calls are recorded into `store`; returns
// how many of them were new.
int generate_tests(const SemanticLibrary& lib, const Annotations& annotations,
                   Service& service, WitnessStore& store, std::mt19937_64& rng,
                   const TestGenConfig& config);

struct AnalyzeConfig {
    TestGenConfig gen;
    int max_rounds = 8;
    uint64_t seed = 1;
};

struct AnalyzeResult {
    SemanticLibrary lib;
    WitnessStore witnesses;
    int rounds = 0;         // test rounds actually run
    int generated = 0;      // witnesses added beyond the initial set
};

// Alternates mining and test generation until a round adds no new witnesses
// (or the round budget runs out), then mines once more over everything.
AnalyzeResult analyze_api(const Library& lib, const WitnessStore& initial,
                          const Annotations& annotations, Service& service,
                          const AnalyzeConfig& config);

} // namespace apisynth
