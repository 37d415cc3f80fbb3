#include "contractmon/contractmon.hpp"

#include <gtest/gtest.h>

using namespace contractmon;

TEST(Parse, ServerExamples) {
    EXPECT_EQ(parse_server("~a.b.0"),
              Server::prefix(Action::co("a"), Server::prefix(Action::plain("b"), Server::nil())));
    EXPECT_EQ(parse_server("0"), Server::nil());
    EXPECT_EQ(parse_server(" ( 0 ) "), Server::nil());
}

TEST(Parse, MonitorExample) {
    auto a = Action::co("a"), b = Action::plain("b");
    auto want = Monitor::choice(Monitor::prefix(Pattern::is_not(a), Monitor::no()),
                                Monitor::prefix(Pattern::is(a), Monitor::prefix(Pattern::is_not(b), Monitor::no())));
    EXPECT_EQ(parse_monitor("!~a.no + ~a.!b.no"), want);
}

TEST(Parse, PrecedenceAndAssociativity) {
    auto a = parse_server("a.0"), b = parse_server("b.0"), c = parse_server("c.0");
    EXPECT_EQ(parse_server("a.0 + b.0 (+) c.0"), Server::internal(Server::external(a, b), c));
    EXPECT_EQ(parse_server("a.0 (+) b.0 + c.0"), Server::internal(a, Server::external(b, c)));
    EXPECT_EQ(parse_server("a.0 + b.0 + c.0"), Server::external(Server::external(a, b), c));
    EXPECT_EQ(parse_server("a.0 + (b.0 + c.0)"), Server::external(a, Server::external(b, c)));
    auto x = parse_monitor("a.no"), y = parse_monitor("b.no"), z = parse_monitor("end");
    EXPECT_EQ(parse_monitor("a.no + b.no * end"), Monitor::choice(x, Monitor::conjunction(y, z)));
    EXPECT_EQ(parse_monitor("a.no * b.no * end"), Monitor::conjunction(Monitor::conjunction(x, y), z));
}

TEST(Print, Examples) {
    EXPECT_EQ(to_string(Server::nil()), "0");
    auto t = Server::internal(parse_server("~a.0"), parse_server("b.0"));
    EXPECT_EQ(to_string(t), "~a.0 (+) b.0");
    EXPECT_EQ(to_string(Monitor::conjunction(Monitor::no(), Monitor::end())), "no * end");
    EXPECT_EQ(to_string(parse_server("a.(b.0 + c.0)")), "a.(b.0 + c.0)");
    EXPECT_EQ(to_string(parse_server("a.0 + (b.0 + c.0)")), "a.0 + (b.0 + c.0)");
    EXPECT_EQ(to_string(parse_client("(ok (+) ok) + ~a.0")), "(ok (+) ok) + ~a.0");
}

TEST(Parse, Errors) {
    try {
        parse_server("a.0 +\n  ok");
        FAIL() << "ok accepted in a server";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 3);
    }
    EXPECT_THROW(parse_server("no"), ParseError);
    EXPECT_THROW(parse_client("a.end"), ParseError);
    EXPECT_THROW(parse_server("!a.0"), ParseError);
    EXPECT_THROW(parse_server("a.0 * b.0"), ParseError);
    EXPECT_THROW(parse_monitor("a.no (+) b.no"), ParseError);
    EXPECT_THROW(parse_monitor("0"), ParseError);
    EXPECT_THROW(parse_server("a.0)"), ParseError);
    EXPECT_THROW(parse_server(""), ParseError);
    EXPECT_THROW(parse_server("A.0"), ParseError);
    try {
        parse_server("a.");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 1);
        EXPECT_EQ(e.column(), 3);
        EXPECT_FALSE(e.expected().empty());
        EXPECT_NE(std::find(e.expected().begin(), e.expected().end(), "'0'"), e.expected().end());
    }
}

TEST(Parse, Traces) {
    EXPECT_EQ(parse_trace("~a,c"), (Trace{Action::co("a"), Action::plain("c")}));
    EXPECT_TRUE(parse_trace("").empty());
    EXPECT_EQ(to_string(parse_trace("~a, c")), "~a,c");
    EXPECT_THROW(parse_trace("a,,b"), ParseError);
}

class RoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(RoundTrip, PrintThenParseIsIdentity) {
    GenConfig cfg;
    cfg.seed = 1000 + GetParam();
    cfg.max_depth = 5;
    cfg.alphabet = {"a", "b", "c"};
    Generator gen(cfg);
    for (int i = 0; i < 10000; ++i) {
        auto s = gen.server();
        auto s2 = parse_server(to_string(s));
        ASSERT_EQ(s2, s) << to_string(s);
        ASSERT_EQ(s2.depth(), s.depth());
        ASSERT_EQ(alphabet(s2), alphabet(s));
        auto c = gen.client();
        ASSERT_EQ(parse_client(to_string(c)), c) << to_string(c);
        auto m = gen.monitor();
        auto m2 = parse_monitor(to_string(m));
        ASSERT_EQ(m2, m) << to_string(m);
        ASSERT_EQ(alphabet(m2), alphabet(m));
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RoundTrip, ::testing::Values(0, 1));
