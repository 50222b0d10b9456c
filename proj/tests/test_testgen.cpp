#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "apisynth/service.hpp"
#include "apisynth/spec_load.hpp"
#include "apisynth/testgen.hpp"
#include "helpers.hpp"

using namespace apisynth;
using namespace apisynth::testing;

namespace {

struct RecordingService : Service {
    std::vector<Value> calls;
    std::optional<Value> call(const std::string&, const Value& input) override {
        calls.push_back(input);
        return Value::str("r" + std::to_string(calls.size()));
    }
};

Annotations slack_annotations(const Library& lib) {
    return load_annotations_json(
        nlohmann::json::parse(read_file(fixture("annotations.json"))), lib);
}

} // namespace

TEST_CASE("the simulator prefers exact matches and falls back to label matches") {
    WitnessStore corpus;
    corpus.add({"m", Value::object({{"x", Value::str("A")}}), Value::str("outA")});
    corpus.add({"m", Value::object({{"x", Value::str("B")}}), Value::str("outB")});
    SimService service(corpus, 1);

    auto exact = service.call("m", Value::object({{"x", Value::str("A")}}));
    REQUIRE(exact.has_value());
    CHECK(exact->text() == "outA");

    auto approx = service.call("m", Value::object({{"x", Value::str("C")}}));
    REQUIRE(approx.has_value());
    CHECK((approx->text() == "outA" || approx->text() == "outB"));

    CHECK_FALSE(service.call("m", Value::object({{"y", Value::str("A")}})).has_value());
    CHECK_FALSE(service.call("ghost", Value::object({})).has_value());

    // approximate picks are reproducible per seed
    SimService s1(corpus, 9), s2(corpus, 9);
    for (int i = 0; i < 20; ++i) {
        auto a = s1.call("m", Value::object({{"x", Value::str("C")}}));
        auto b = s2.call("m", Value::object({{"x", Value::str("C")}}));
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->text() == b->text());
    }
}

TEST_CASE("optional argument subsets grow by size under the cap") {
    Library lib;
    lib.methods["opt_m"] = {
        SyntacticType::record({{"a", true, SyntacticType::prim()},
                               {"b", true, SyntacticType::prim()}}),
        SyntacticType::prim()};
    WitnessStore seedws;
    seedws.add({"opt_m", Value::object({{"a", Value::str("ida1")}}), Value::str("o1")});
    seedws.add({"opt_m", Value::object({{"b", Value::str("idb1")}}), Value::str("o2")});
    SemanticLibrary sem = mine_types(lib, seedws);

    auto shapes_with_cap = [&](int cap) {
        RecordingService service;
        WitnessStore store = seedws;
        std::mt19937_64 rng(5);
        TestGenConfig cfg;
        cfg.max_optional_subset = cap;
        cfg.samples_per_shape = 1;
        generate_tests(sem, {}, service, store, rng, cfg);
        std::set<std::vector<std::string>> shapes;
        for (const auto& v : service.calls) shapes.insert(v.labels());
        return shapes;
    };

    using L = std::vector<std::string>;
    CHECK(shapes_with_cap(2) ==
          std::set<L>{L{}, L{"a"}, L{"b"}, L{"a", "b"}});
    CHECK(shapes_with_cap(1) == std::set<L>{L{}, L{"a"}, L{"b"}});
    CHECK(shapes_with_cap(0) == std::set<L>{L{}});
}

TEST_CASE("shapes needing an empty bank are skipped unless annotated") {
    Library lib = slack_library();
    WitnessStore w_fig = load_witnesses_file(fixture("w_fig.json"), lib);
    SemanticLibrary sem = mine_types(lib, w_fig);

    // users.lookupByEmail's own argument location has never been observed
    RecordingService bare;
    {
        WitnessStore store = w_fig;
        std::mt19937_64 rng(5);
        generate_tests(sem, {}, bare, store, rng, {});
        for (const auto& v : bare.calls) CHECK(v.field("email") == nullptr);
    }

    // the annotation reroutes the argument to the Profile.email bank
    RecordingService annotated;
    {
        WitnessStore store = w_fig;
        std::mt19937_64 rng(5);
        generate_tests(sem, slack_annotations(lib), annotated, store, rng, {});
        bool called = false;
        for (const auto& v : annotated.calls)
            if (const Value* email = v.field("email")) {
                called = true;
                CHECK(email->text() == "xyz@gmail.com");
            }
        CHECK(called);
    }
}

TEST_CASE("analyze with a zero round budget is plain mining") {
    Library lib = slack_library();
    WitnessStore w0 = load_witnesses_file(fixture("w0.json"), lib);
    SimService service(load_witnesses_file(fixture("service_witnesses.json"), lib), 3);
    AnalyzeConfig cfg;
    cfg.max_rounds = 0;
    AnalyzeResult res = analyze_api(lib, w0, {}, service, cfg);
    CHECK(res.rounds == 0);
    CHECK(res.generated == 0);
    CHECK(res.witnesses == w0);
    CHECK(res.lib.groups.size() == 2);
}

TEST_CASE("the analyze loop merges the profile input within three rounds") {
    Library lib = slack_library();
    WitnessStore w0 = load_witnesses_file(fixture("w0.json"), lib);
    SemanticLibrary before = mine_types(lib, w0);
    // starts out isolated: the W1 user id appears nowhere else
    CHECK(before.group_type(parse_location("users.profile.get.in.user",
                                           lib.head_names()))
              ->key() == "{users.profile.get.in.user}");

    SimService service(load_witnesses_file(fixture("service_witnesses.json"), lib),
                       7 ^ 0x9e3779b97f4a7c15ull);
    AnalyzeConfig cfg;
    cfg.max_rounds = 3;
    cfg.seed = 7;
    AnalyzeResult res = analyze_api(lib, w0, slack_annotations(lib), service, cfg);

    SemTypePtr in_user = res.lib.group_type(
        parse_location("users.profile.get.in.user", lib.head_names()));
    SemTypePtr user_id = res.lib.group_type(parse_location("User.id"));
    CHECK(in_user->key() == user_id->key());
    CHECK(res.witnesses.size() > w0.size());
}

TEST_CASE("the analyze loop gives the email lookup its mined signature") {
    Library lib = slack_library();
    WitnessStore w0 = load_witnesses_file(fixture("w0.json"), lib);
    SimService service(load_witnesses_file(fixture("service_witnesses.json"), lib),
                       7 ^ 0x9e3779b97f4a7c15ull);
    AnalyzeConfig cfg;
    cfg.max_rounds = 3;
    cfg.seed = 7;
    AnalyzeResult res = analyze_api(lib, w0, slack_annotations(lib), service, cfg);

    const auto& sig = res.lib.methods.at("users.lookupByEmail");
    SemTypePtr email = res.lib.group_type(parse_location("Profile.email"));
    SemTypePtr uid = res.lib.group_type(parse_location("User.id"));
    CHECK(sig.input->field("email")->type->key() == email->key());
    CHECK(sig.output->key() == uid->key());
}

TEST_CASE("the annotation route types the profile method without any witness") {
    Library lib = slack_library();
    WitnessStore w_fig = load_witnesses_file(fixture("w_fig.json"), lib);
    SimService service(load_witnesses_file(fixture("service_witnesses.json"), lib), 11);
    AnalyzeConfig cfg;
    cfg.max_rounds = 4;
    cfg.seed = 11;
    AnalyzeResult res = analyze_api(lib, w_fig, slack_annotations(lib), service, cfg);

    const auto& sig = res.lib.methods.at("users.profile.get");
    SemTypePtr uid = res.lib.group_type(parse_location("User.id"));
    CHECK(sig.input->field("user")->type->key() == uid->key());
    CHECK(sig.output->key() == "Profile");
}

TEST_CASE("analyze converges and is reproducible per seed") {
    Library lib = slack_library();
    WitnessStore w0 = load_witnesses_file(fixture("w0.json"), lib);
    WitnessStore corpus = load_witnesses_file(fixture("service_witnesses.json"), lib);

    auto run = [&](uint64_t seed, int rounds) {
        SimService service(corpus, seed ^ 0x9e3779b97f4a7c15ull);
        AnalyzeConfig cfg;
        cfg.max_rounds = rounds;
        cfg.seed = seed;
        return analyze_api(lib, w0, slack_annotations(lib), service, cfg);
    };

    AnalyzeResult a = run(5, 20), b = run(5, 20);
    CHECK(a.witnesses == b.witnesses);
    CHECK(a.rounds == b.rounds);
    CHECK(a.rounds < 20); // saturates: the corpus is finite
    for (size_t i = 0; i < a.lib.groups.size(); ++i)
        CHECK(a.lib.groups[i] == b.lib.groups[i]);

    // a saturated witness set stays saturated
    SimService service(corpus, 5 ^ 0x9e3779b97f4a7c15ull);
    AnalyzeConfig cfg;
    cfg.max_rounds = 20;
    cfg.seed = 5;
    AnalyzeResult again = analyze_api(lib, a.witnesses, slack_annotations(lib), service, cfg);
    CHECK(again.generated == 0);
}
