#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace contractmon;

namespace {

Computation ending(const char *client, const char *server) {
    return {{parse_client(client), parse_server(server)}};
}

GenConfig config(std::uint64_t seed, int depth) {
    GenConfig c;
    c.seed = seed;
    c.max_depth = depth;
    c.alphabet = {"a", "b", "c"};
    return c;
}

bool has_ok(const Client &c) { return c.contains_ok(); }

} // namespace

TEST(IsSuccessful, Examples) {
    EXPECT_TRUE(is_successful(ending("ok", "a.0")));
    EXPECT_FALSE(is_successful(ending("~b.ok", "c.0")));
    EXPECT_FALSE(is_successful(ending("ok + a.0", "0")));
}

TEST(Satisfies, Examples) {
    auto p = parse_server("~a.0 + (b.a.0 (+) c.0)");
    auto yes = satisfies(p, parse_client("~b.ok + ~c.ok"));
    EXPECT_TRUE(yes.satisfied);
    EXPECT_FALSE(yes.witness_path.has_value());
    EXPECT_EQ(yes.paths_explored, 2u);

    auto no = satisfies(p, parse_client("(~b.ok + ~b.0) + ~c.ok"));
    EXPECT_FALSE(no.satisfied);
    ASSERT_TRUE(no.witness_path.has_value());
    // b.a.0 leaves a.0 behind once b has synchronised.
    EXPECT_EQ(no.witness_path->back().client, Client::nil());
    EXPECT_EQ(no.witness_path->back().server, parse_server("a.0"));

    EXPECT_TRUE(satisfies(Server::nil(), Client::ok()).satisfied);
    EXPECT_TRUE(satisfies_memo(Server::nil(), Client::ok()));
}

TEST(Satisfies, OkClientIsAlwaysSatisfied) {
    Generator gen(config(21, 5));
    for (int i = 0; i < 1000; ++i) {
        auto p = gen.server();
        ASSERT_TRUE(satisfies(p, Client::ok()).satisfied) << to_string(p);
    }
}

TEST(Satisfies, ClientsWithoutOkNeverSatisfied) {
    Generator gen(config(22, 4));
    int checked = 0;
    while (checked < 1000) {
        auto r = gen.client();
        if (has_ok(r))
            continue;
        ++checked;
        auto p = gen.server();
        auto rep = satisfies(p, r);
        ASSERT_FALSE(rep.satisfied) << to_string(r) << " / " << to_string(p);
        ASSERT_TRUE(rep.witness_path.has_value());
    }
}

TEST(Satisfies, AgreesWithMemoAndRuleOracle) {
    Generator gen(config(23, 5));
    std::size_t satisfied = 0;
    for (int i = 0; i < 10000; ++i) {
        auto p = gen.server();
        auto r = gen.client();
        auto rep = satisfies(p, r);
        ASSERT_EQ(rep.satisfied, satisfies_memo(p, r)) << to_string(r) << " || " << to_string(p);
        ASSERT_EQ(rep.satisfied, oracle::sat(p, r)) << to_string(r) << " || " << to_string(p);
        ASSERT_EQ(rep.satisfied, !rep.witness_path.has_value());
        if (rep.witness_path) {
            ASSERT_FALSE(is_successful(*rep.witness_path));
            ASSERT_TRUE(system_steps(rep.witness_path->back()).empty());
            ASSERT_EQ(rep.witness_path->front(), (SystemState{r, p}));
        }
        satisfied += rep.satisfied;
    }
    EXPECT_GT(satisfied, 500u);
    EXPECT_LT(satisfied, 9500u);
}
