#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apisynth/mining.hpp"
#include "apisynth/spec_load.hpp"
#include "helpers.hpp"

using namespace apisynth;
using namespace apisynth::testing;

TEST_CASE("merge evidence accepts ids and rejects ambient values") {
    CHECK(merge_evidence(Value::str("UJ5RHEG4S")));
    CHECK(merge_evidence(Value::str("general")));
    CHECK(merge_evidence(Value::str("8675309")));          // digits, id-sized
    CHECK(merge_evidence(Value::str("123456789012345678901"))); // too long to parse, still id-like
    CHECK_FALSE(merge_evidence(Value::str("")));
    CHECK_FALSE(merge_evidence(Value::str("42")));         // small count, not an id
    CHECK_FALSE(merge_evidence(Value::str("1000")));       // boundary stays out
    CHECK(merge_evidence(Value::str("1001")));
    CHECK(merge_evidence(Value::prim(Value::PrimTag::Number, "8675309")));
    CHECK_FALSE(merge_evidence(Value::prim(Value::PrimTag::Number, "7")));
    CHECK_FALSE(merge_evidence(Value::prim(Value::PrimTag::Boolean, "true")));
    CHECK_FALSE(merge_evidence(Value::prim(Value::PrimTag::Null, "")));
    CHECK_FALSE(merge_evidence(Value::array({Value::str("x")})));
}

TEST_CASE("equal values with different primitive tags never merge") {
    Library lib;
    lib.methods["m1"] = {SyntacticType::record({{"a", false, SyntacticType::prim()}}),
                         SyntacticType::prim()};
    lib.methods["m2"] = {SyntacticType::record({}),
                         SyntacticType::prim(SyntacticType::PrimTag::Number)};
    WitnessStore ws;
    ws.add({"m1", Value::object({{"a", Value::str("8675309")}}), Value::str("zzz")});
    ws.add({"m2", Value::object({}), Value::prim(Value::PrimTag::Number, "8675309")});
    SemanticLibrary sem = mine_types(lib, ws);
    CHECK(sem.groups.empty());

    // but the same tag does merge
    ws.add({"m1", Value::object({{"a", Value::str("xyzid")}}), Value::str("xyzid")});
    sem = mine_types(lib, ws);
    REQUIRE(sem.groups.size() == 1);
    CHECK(sem.groups[0].size() == 2);
}

TEST_CASE("figure witnesses mine the documented partition") {
    SemanticLibrary sem = mined_fig();

    REQUIRE(sem.groups.size() == 2);
    std::vector<std::string> uid_group, cid_group;
    for (const auto& loc : sem.groups[1]) cid_group.push_back(loc.render());
    for (const auto& loc : sem.groups[0]) uid_group.push_back(loc.render());
    // groups are sorted by first member: Channel.creator... then Channel.id...
    CHECK(uid_group == std::vector<std::string>{"Channel.creator", "User.id",
                                                "c_members.out.0", "u_info.in.user"});
    CHECK(cid_group ==
          std::vector<std::string>{"Channel.id", "c_members.in.channel"});
}

TEST_CASE("figure witnesses mine the documented signatures") {
    SemanticLibrary sem = mined_fig();
    const std::string uid = "{Channel.creator,User.id,c_members.out.0,u_info.in.user}";
    const std::string cid = "{Channel.id,c_members.in.channel}";

    CHECK(sem.methods.at("c_list").input->key() == "{}");
    CHECK(sem.methods.at("c_list").output->key() == "[Channel]");
    CHECK(sem.methods.at("u_info").input->key() == "{user: " + uid + "}");
    CHECK(sem.methods.at("u_info").output->key() == "User");
    CHECK(sem.methods.at("c_members").input->key() == "{channel: " + cid + "}");
    CHECK(sem.methods.at("c_members").output->key() == "[" + uid + "]");

    // object views carry the same partition
    CHECK(sem.objects.at("Channel")->field("creator")->type->key() == uid);
    CHECK(sem.objects.at("Channel")->field("id")->type->key() == cid);
    CHECK(sem.objects.at("Channel")->field("name")->type->key() == "{Channel.name}");
    CHECK(sem.objects.at("User")->field("id")->type->key() == uid);
    CHECK(sem.objects.at("User")->field("profile")->type->key() == "Profile");
}

TEST_CASE("locations canonicalize onto object roots") {
    SemanticLibrary sem = mined_fig();
    auto type_of = [&](const std::string& loc) {
        SemTypePtr t = infer_location_type(sem, parse_location(loc, sem.base.head_names()));
        REQUIRE(t != nullptr);
        return t->key();
    };
    const std::string uid = "{Channel.creator,User.id,c_members.out.0,u_info.in.user}";

    CHECK(type_of("u_info.out") == "User");
    CHECK(type_of("u_info.out.id") == uid);
    CHECK(type_of("c_list.out.0.creator") == uid);
    CHECK(type_of("c_list.out.0") == "Channel");
    CHECK(type_of("c_list.out") == "[Channel]");
    CHECK(type_of("c_members.out") == "[" + uid + "]");
    CHECK(type_of("User.profile.email") == "{Profile.email}");
    CHECK(type_of("u_info.out.profile.email") == "{Profile.email}");
    CHECK(type_of("Channel.creator") == uid);

    CHECK(infer_location_type(sem, parse_location("Channel.bogus")) == nullptr);
    CHECK(infer_location_type(sem, parse_location("nothing.in.x")) == nullptr);
    CHECK(infer_location_type(sem, parse_location("u_info.out.id.deeper")) == nullptr);
}

TEST_CASE("the value bank is keyed by semantic type") {
    SemanticLibrary sem = mined_fig();
    const SemTypePtr uid = sem.group_type(parse_location("User.id"));
    const std::vector<Value>* uids = sem.bank_for(uid);
    REQUIRE(uids != nullptr);
    std::vector<std::string> texts;
    for (const auto& v : *uids) texts.push_back(v.text());
    CHECK(texts == std::vector<std::string>{"UHFG44FFJ", "UJ5RHEG4S"});

    const std::vector<Value>* emails =
        sem.bank_for(sem.group_type(parse_location("Profile.email")));
    REQUIRE(emails != nullptr);
    REQUIRE(emails->size() == 1);
    CHECK((*emails)[0].text() == "xyz@gmail.com");

    // whole objects bank under the object name
    const std::vector<Value>* channels =
        sem.bank_for(SemanticType::object("Channel"));
    REQUIRE(channels != nullptr);
    CHECK(channels->size() == 3);
    CHECK((*channels)[0].field("name") != nullptr);

    CHECK(sem.bank_for(SemanticType::locset({parse_location("ghost.in.x")})) == nullptr);
}

TEST_CASE("unmerged locations have singleton groups") {
    SemanticLibrary sem = mined_fig();
    SemTypePtr t = sem.group_type(parse_location("Channel.name"));
    REQUIRE(t != nullptr);
    CHECK(t->key() == "{Channel.name}");
}

TEST_CASE("the mined partition matches brute-force connected components") {
    std::mt19937_64 rng(0xfeedbead);
    for (int trial = 0; trial < 40; ++trial) {
        Library lib;
        WitnessStore ws = random_flat_witnesses(rng, lib);
        auto mined = mined_partition(lib, ws);
        auto oracle = oracle_partition(ws);
        REQUIRE_MESSAGE(mined == oracle, "trial " << trial);
    }
}
