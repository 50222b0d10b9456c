#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "apisynth/dsl.hpp"
#include "apisynth/lift.hpp"
#include "apisynth/mining.hpp"
#include "apisynth/program_gen.hpp"
#include "apisynth/typecheck.hpp"
#include "helpers.hpp"

using namespace apisynth;
using namespace apisynth::testing;

namespace {

const char* kRawGold = R"(\channel_name -> {
  let x1 = c_list()
  let x2 = x1.name
  if x2 == channel_name
  let x3 = x1.id
  let x4 = c_members(channel=x3)
  let x5 = u_info(user=x4)
  let x6 = x5.profile
  let x7 = x6.email
  x7
})";

// binder names are irrelevant (comparison is up to alpha); what matters is the
// bind after each array-producing call, the single mapping variable reused for
// both projections off the channel, and the trailing return wrap
const char* kLiftedGold = R"(\channel_name -> {
  let x1 = c_list()
  c <- x1
  let x2 = c.name
  if x2 == channel_name
  let x3 = c.id
  let x4 = c_members(channel=x3)
  u <- x4
  let x5 = u_info(user=u)
  let x6 = x5.profile
  let x7 = x6.email
  let x8 = return x7
  x8
})";

Query gold_query(const SemanticLibrary& sem) {
    Query q;
    q.args = {{"channel_name", sem.group_type(parse_location("Channel.name"))}};
    q.output = SemanticType::array(sem.group_type(parse_location("Profile.email")));
    return q;
}

NetPath find_path(const Ttn& net, const Query& q, const std::vector<std::string>& ids) {
    NetPath found;
    SearchLimits limits;
    limits.max_len = static_cast<int>(ids.size());
    enumerate_paths(net, initial_marking(q), goal_place(q), limits,
                    [&](const NetPath& p) {
                        std::vector<std::string> got;
                        for (const auto& s : p.steps) got.push_back(s.transition);
                        if (got != ids) return true;
                        found = p;
                        return false;
                    });
    return found;
}

int count_kind(const ExprPtr& e, Expr::Kind k) {
    if (!e) return 0;
    int n = e->kind == k ? 1 : 0;
    n += count_kind(e->a, k) + count_kind(e->b, k) + count_kind(e->c, k);
    for (const auto& [label, arg] : e->args) {
        (void)label;
        n += count_kind(arg, k);
    }
    return n;
}

} // namespace

TEST_CASE("the member-listing path produces the figure program") {
    SemanticLibrary sem = mined_fig();
    Ttn net = build_ttn(sem);
    Query q = gold_query(sem);
    NetPath gold = find_path(net, q,
                             {"c_list", "filter_Channel.name", "proj_Channel.id",
                              "c_members", "u_info", "proj_User.profile",
                              "proj_Profile.email"});
    REQUIRE(gold.steps.size() == 7);
    CHECK(gold.exact);

    auto progs = path_to_programs(sem, net, q, gold);
    REQUIRE(progs.size() == 1); // one live token per consumed slot at every step
    CHECK(canon(progs[0]) == canon(parse_program(kRawGold)));
}

TEST_CASE("lifting inserts binds, reuses the mapper, and wraps the result") {
    SemanticLibrary sem = mined_fig();
    Query q = gold_query(sem);
    Program raw = parse_program(kRawGold);

    auto lifted = lift_program(sem, raw, q);
    REQUIRE(lifted.has_value());
    CHECK(canon(*lifted) == canon(parse_program(kLiftedGold)));

    CHECK(count_kind(lifted->body, Expr::Kind::Bind) == 2);
    CHECK(count_kind(lifted->body, Expr::Kind::Return) == 1);
    CHECK(count_kind(lifted->body, Expr::Kind::Guard) == 1);
    CHECK(typecheck(sem, *lifted, arrayified(q)).ok());

    // idempotent: the repaired program needs no further repair
    auto again = lift_program(sem, *lifted, q);
    CHECK_FALSE(again.has_value()); // contains binds, outside the input fragment
}

TEST_CASE("a scalar feeding an array argument is wrapped in return") {
    Library lib;
    lib.methods["first_id"] = {SyntacticType::record({}), SyntacticType::prim()};
    lib.methods["open_all"] = {
        SyntacticType::record(
            {{"ids", false, SyntacticType::array(SyntacticType::prim())}}),
        SyntacticType::prim()};
    WitnessStore ws;
    ws.add({"first_id", Value::object({}), Value::str("A1")});
    ws.add({"open_all", Value::object({{"ids", Value::array({Value::str("A1")})}}),
            Value::str("B2")});
    SemanticLibrary sem = mine_types(lib, ws);

    Query q;
    q.output = sem.group_type(parse_location("open_all.out"));
    REQUIRE(q.output != nullptr);

    Program p;
    p.body = Expr::let(
        "a", Expr::call("first_id", {}),
        Expr::let("b", Expr::call("open_all", {{"ids", Expr::var("a")}}),
                  Expr::var("b")));

    auto lifted = lift_program(sem, p, q);
    REQUIRE(lifted.has_value());

    Program expected;
    expected.body = Expr::let(
        "a", Expr::call("first_id", {}),
        Expr::let(
            "w", Expr::ret(Expr::var("a")),
            Expr::let("b", Expr::call("open_all", {{"ids", Expr::var("w")}}),
                      Expr::let("r", Expr::ret(Expr::var("b")), Expr::var("r")))));
    CHECK(canon(*lifted) == canon(expected));
    CHECK(typecheck(sem, *lifted, arrayified(q)).ok());
}

TEST_CASE("unrepairable or non-straight-line programs are rejected") {
    SemanticLibrary sem = mined_fig();

    // same array depth, different groups: not an array mismatch
    Query q;
    q.args = {{"u", sem.group_type(parse_location("Channel.name"))}};
    q.output = SemanticType::object("User");
    Program wrong_group = parse_program("\\u -> {\n  let x = u_info(user=u)\n  x\n}");
    CHECK_FALSE(lift_program(sem, wrong_group, q).has_value());

    Query uq;
    uq.args = {{"u", sem.group_type(parse_location("User.id"))}};
    uq.output = SemanticType::object("User");
    CHECK(lift_program(sem, wrong_group, uq).has_value()); // control

    CHECK_FALSE(
        lift_program(sem, parse_program("\\u -> {\n  x <- u\n  x\n}"), uq).has_value());
    CHECK_FALSE(
        lift_program(sem, parse_program("\\u -> {\n  let x = return u\n  x\n}"), uq)
            .has_value());
    CHECK_FALSE(
        lift_program(sem, parse_program("\\u -> {\n  let x = nope(user=u)\n  x\n}"), uq)
            .has_value());
    // parameter not covered by the query
    CHECK_FALSE(
        lift_program(sem, parse_program("\\v -> {\n  let x = u_info(user=v)\n  x\n}"), q)
            .has_value());
}

TEST_CASE("phantom optional consumption starves the token assignment") {
    SemanticLibrary sem = mined_fig();
    Ttn net = build_ttn(sem);
    Query q;
    q.output = SemanticType::array(SemanticType::object("Channel"));

    NetPath ghost;
    ghost.steps.push_back(
        {"conversations_open", {{"{conversations_open.in.channel}", 1}}, false});
    ghost.exact = false;
    CHECK(path_to_programs(sem, net, q, ghost).empty());

    NetPath plain;
    plain.steps.push_back({"conversations_open", {}, true});
    plain.exact = true;
    auto progs = path_to_programs(sem, net, q, plain);
    REQUIRE(progs.size() == 1);
    REQUIRE(progs[0].body->kind == Expr::Kind::Let);
    CHECK(progs[0].body->a->kind == Expr::Kind::Call);
    CHECK(progs[0].body->a->name == "conversations_open");
    CHECK(progs[0].body->a->args.empty());

    // already array-shaped: lifting is the identity here
    auto lifted = lift_program(sem, progs[0], q);
    REQUIRE(lifted.has_value());
    CHECK(canon(*lifted) == canon(progs[0]));
}

TEST_CASE("token assignment ambiguity is enumerated and capped") {
    SemanticLibrary sem = mined_fig();
    Ttn net = build_ttn(sem);
    auto name_t = sem.group_type(parse_location("Channel.name"));
    Query q;
    q.args = {{"c", SemanticType::object("Channel")},
              {"n1", name_t},
              {"n2", name_t},
              {"n3", name_t},
              {"n4", name_t},
              {"n5", name_t}};
    q.output = SemanticType::array(sem.group_type(parse_location("Channel.id")));

    NetPath path;
    for (int i = 0; i < 5; ++i)
        path.steps.push_back({"filter_Channel.name", {}, true});
    path.steps.push_back({"proj_Channel.id", {}, true});
    path.exact = true;

    auto all = path_to_programs(sem, net, q, path, 1000);
    CHECK(all.size() == 120); // 5! guard orderings
    CHECK(path_to_programs(sem, net, q, path).size() == 64);
    auto two = path_to_programs(sem, net, q, path, 2);
    REQUIRE(two.size() == 2);
    CHECK(canon(two[0]) != canon(two[1]));
}

TEST_CASE("every lifted program from the figure net typechecks") {
    SemanticLibrary sem = mined_fig();
    Ttn net = build_ttn(sem);
    Query q = gold_query(sem);
    Query target = arrayified(q);

    int raw = 0, lifted_count = 0;
    SearchLimits limits;
    limits.max_len = 8;
    enumerate_paths(net, initial_marking(q), goal_place(q), limits,
                    [&](const NetPath& p) {
                        for (const auto& prog : path_to_programs(sem, net, q, p)) {
                            ++raw;
                            auto lifted = lift_program(sem, prog, q);
                            if (!lifted) continue;
                            ++lifted_count;
                            CHECK(typecheck(sem, *lifted, target).ok());
                        }
                        return true;
                    });
    CHECK(raw >= 10);
    CHECK(lifted_count >= 10);
}
