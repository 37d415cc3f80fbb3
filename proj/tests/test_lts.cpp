#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace contractmon;

namespace {

template <class Role>
std::set<oracle::Step<Role>> as_pairs(const std::vector<Transition<Role>> &ts) {
    std::set<oracle::Step<Role>> out;
    for (const auto &t : ts)
        out.insert({to_string(t.label), t.target});
    return out;
}

GenConfig config(std::uint64_t seed, int depth, std::vector<std::string> alphabet = {"a", "b", "c"}) {
    GenConfig c;
    c.seed = seed;
    c.max_depth = depth;
    c.alphabet = std::move(alphabet);
    return c;
}

} // namespace

TEST(ContractSteps, Examples) {
    auto p = parse_server("~a.0 + (b.a.0 (+) c.0)");
    std::set<oracle::Step<ServerRole>> want{
        {"~a", parse_server("0")}, {"tau", parse_server("b.a.0")}, {"tau", parse_server("c.0")}};
    EXPECT_EQ(as_pairs(contract_steps(p)), want);
    EXPECT_TRUE(contract_steps(Server::nil()).empty());
    EXPECT_TRUE(contract_steps(Client::ok()).empty());
    auto r = parse_client("(ok (+) ok) + ~a.0");
    std::set<oracle::Step<ClientRole>> want_r{{"tau", Client::ok()}, {"~a", Client::nil()}};
    EXPECT_EQ(as_pairs(contract_steps(r)), want_r);
}

TEST(ContractSteps, SortedAndDeduplicated) {
    auto steps = contract_steps(parse_server("a.0 + a.0"));
    ASSERT_EQ(steps.size(), 1u);
    auto mixed = contract_steps(parse_server("b.0 + (a.0 (+) 0)"));
    ASSERT_EQ(mixed.size(), 3u);
    EXPECT_TRUE(mixed[0].label.is_tau());
    EXPECT_TRUE(std::is_sorted(mixed.begin(), mixed.end()));
}

TEST(ContractSteps, AgreeWithRuleOracle) {
    Generator gen(config(11, 5));
    for (int i = 0; i < 10000; ++i) {
        auto s = gen.server();
        ASSERT_EQ(as_pairs(contract_steps(s)), oracle::steps(s)) << to_string(s);
        auto c = gen.client();
        ASSERT_EQ(as_pairs(contract_steps(c)), oracle::steps(c)) << to_string(c);
    }
}

TEST(SystemSteps, Examples) {
    auto next = system_steps({parse_client("~b.ok + ~c.ok"), parse_server("b.a.0")});
    ASSERT_EQ(next.size(), 1u);
    EXPECT_EQ(next[0].client, Client::ok());
    EXPECT_EQ(next[0].server, parse_server("a.0"));
    EXPECT_TRUE(system_steps({Client::ok(), Server::nil()}).empty());
    EXPECT_TRUE(system_steps({parse_client("~b.ok"), parse_server("c.0")}).empty());
}

TEST(SystemSteps, AgreeWithRuleOracle) {
    Generator gen(config(12, 4));
    std::size_t nonempty = 0;
    for (int i = 0; i < 10000; ++i) {
        SystemState s{gen.client(), gen.server()};
        auto got = system_steps(s);
        std::set<oracle::Sys> mine;
        for (auto &n : got)
            mine.insert({n.client, n.server});
        ASSERT_EQ(mine, oracle::system_steps({s.client, s.server})) << to_string(s.client) << " || "
                                                                     << to_string(s.server);
        nonempty += !got.empty();
    }
    EXPECT_GT(nonempty, 1000u);
}

TEST(SystemSteps, SyncConsumesComplementaryActions) {
    Generator gen(config(13, 4));
    std::size_t syncs = 0;
    for (int i = 0; i < 10000; ++i) {
        SystemState s{gen.client(), gen.server()};
        for (const auto &m : system_moves(s)) {
            if (m.rule != SystemRule::sync)
                continue;
            ++syncs;
            ASSERT_TRUE(m.client_action.has_value());
            auto ca = *m.client_action;
            bool client_side = false, server_side = false;
            for (auto &t : contract_steps(s.client))
                client_side |= !t.label.is_tau() && t.label.action() == ca && t.target == m.next.client;
            for (auto &t : contract_steps(s.server))
                server_side |= !t.label.is_tau() && t.label.action() == ca.complement() && t.target == m.next.server;
            ASSERT_TRUE(client_side && server_side);
        }
    }
    EXPECT_GT(syncs, 100u);
}

TEST(MaximalComputations, Examples) {
    auto p = parse_server("~a.0 + (b.a.0 (+) c.0)");
    auto comps = maximal_computations({parse_client("~b.ok + ~c.ok"), p});
    ASSERT_EQ(comps.size(), 2u);
    std::set<std::pair<Client, Server>> ends;
    for (auto &c : comps)
        ends.insert({c.back().client, c.back().server});
    EXPECT_EQ(ends, (std::set<std::pair<Client, Server>>{{Client::ok(), parse_server("a.0")},
                                                         {Client::ok(), Server::nil()}}));

    auto stuck = maximal_computations({Client::ok(), Server::nil()});
    ASSERT_EQ(stuck.size(), 1u);
    EXPECT_EQ(stuck[0].size(), 1u);

    bool found = false;
    for (auto &c : maximal_computations({parse_client("~b.ok"), p}))
        found |= c.back().client == parse_client("~b.ok") && c.back().server == parse_server("c.0");
    EXPECT_TRUE(found);
}

TEST(Traces, Examples) {
    auto t = [](const char *s) { return oracle::traces_of(traces(parse_server(s))); };
    using V = std::set<std::vector<std::string>>;
    EXPECT_EQ(t("~a.b.0"), (V{{}, {"~a"}, {"~a", "b"}}));
    EXPECT_EQ(t("~a.0 (+) b.0"), (V{{}, {"~a"}, {"b"}}));
    EXPECT_EQ(t("0"), (V{{}}));
}

TEST(Traces, AgreeWithBruteForceWalk) {
    Generator gen(config(14, 5));
    for (int i = 0; i < 3000; ++i) {
        auto s = gen.server();
        ASSERT_EQ(oracle::traces_of(traces(s)), oracle::traces(s)) << to_string(s);
    }
}

TEST(Exploration, TerminatesOnLargeTerms) {
    Generator gen(config(15, 8, {"a", "b", "c", "d"}));
    for (int i = 0; i < 200; ++i) {
        auto s = gen.server();
        auto g = reachable_lts(s);
        EXPECT_GE(g.states.size(), 1u);
        EXPECT_FALSE(traces(s).empty());
    }
}

TEST(WeakDerivatives, FollowTraceThroughTau) {
    auto p = parse_server("(a.b.0 (+) a.c.0) + d.0");
    auto d = weak_derivatives(p, parse_trace("a"));
    std::set<Server> got(d.begin(), d.end());
    EXPECT_TRUE(got.count(parse_server("b.0")));
    EXPECT_TRUE(got.count(parse_server("c.0")));
    EXPECT_TRUE(weak_derivatives(p, parse_trace("b")).empty());
}
