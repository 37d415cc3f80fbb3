#include "contractmon/contractmon.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace contractmon;

TEST(Names, ValidAndReserved) {
    EXPECT_TRUE(is_valid_name("a"));
    EXPECT_TRUE(is_valid_name("req_2X"));
    EXPECT_FALSE(is_valid_name(""));
    EXPECT_FALSE(is_valid_name("A"));
    EXPECT_FALSE(is_valid_name("1a"));
    EXPECT_FALSE(is_valid_name("ok"));
    EXPECT_FALSE(is_valid_name("end"));
    EXPECT_THROW(Action::plain("no"), std::invalid_argument);
    EXPECT_THROW(Action::co("B"), std::invalid_argument);
}

TEST(Action, ComplementIsAnInvolution) {
    std::mt19937_64 rng(5);
    const char *names[] = {"a", "b", "c", "req", "x1"};
    for (int i = 0; i < 10000; ++i) {
        std::string n = names[rng() % 5];
        Action a = rng() % 2 ? Action::co(n) : Action::plain(n);
        EXPECT_EQ(a.complement().complement(), a);
        EXPECT_NE(a.complement(), a);
        EXPECT_EQ(a.complement().name(), a.name());
    }
}

TEST(Action, OrderAndSpelling) {
    EXPECT_LT(Action::plain("a"), Action::co("a"));
    EXPECT_LT(Action::co("a"), Action::plain("b"));
    EXPECT_EQ(to_string(Action::co("a")), "~a");
    EXPECT_EQ(to_string(Action::plain("b")), "b");
}

TEST(Contract, DepthFollowsPrefixesOnly) {
    auto a = Action::plain("a");
    auto nil = Server::nil();
    EXPECT_EQ(nil.depth(), 0);
    auto pa = Server::prefix(a, nil);
    EXPECT_EQ(pa.depth(), 1);
    EXPECT_EQ(Server::external(pa, Server::prefix(a, pa)).depth(), 2);
    EXPECT_EQ(Server::internal(nil, nil).depth(), 0);
    EXPECT_EQ(Server::internal(nil, nil).height(), 1);
}

TEST(Contract, StructuralEquality) {
    auto a = Action::plain("a"), b = Action::plain("b");
    auto l = Server::prefix(a, Server::nil()), r = Server::prefix(b, Server::nil());
    EXPECT_EQ(Server::external(l, r), Server::external(Server::prefix(a, Server::nil()), r));
    EXPECT_NE(Server::external(l, r), Server::external(r, l));
    EXPECT_NE(Server::external(l, r), Server::internal(l, r));
    EXPECT_EQ(std::hash<Server>{}(Server::external(l, r)), std::hash<Server>{}(Server::external(l, r)));
}

TEST(Contract, OkOnlyInClients) {
    auto c = Client::external(Client::ok(), Client::nil());
    EXPECT_TRUE(c.contains_ok());
    EXPECT_THROW(contract_cast<ServerRole>(c), std::invalid_argument);
    auto s = Server::prefix(Action::plain("a"), Server::nil());
    EXPECT_EQ(contract_cast<ServerRole>(as_client(s)), s);
}

TEST(Pattern, Matching) {
    auto a = Action::plain("a"), ca = Action::co("a"), b = Action::plain("b");
    EXPECT_TRUE(Pattern::is(a).matches(a));
    EXPECT_FALSE(Pattern::is(a).matches(ca));
    EXPECT_FALSE(Pattern::is_not(a).matches(a));
    EXPECT_TRUE(Pattern::is_not(a).matches(ca));
    EXPECT_TRUE(Pattern::is_not(a).matches(b));
}

TEST(Monitor, Verdicts) {
    EXPECT_EQ(Monitor::no(), Monitor::verdict(Verdict::no));
    EXPECT_NE(Monitor::no(), Monitor::end());
    EXPECT_NE(Monitor::yes(), Monitor::end());
    EXPECT_EQ(Monitor().verdict(), Verdict::end);
}

TEST(Alphabet, Examples) {
    EXPECT_EQ(alphabet(parse_server("~a.b.0")), (ActionSet{Action::co("a"), Action::plain("b")}));
    EXPECT_TRUE(alphabet(parse_server("0")).empty());
    EXPECT_EQ(alphabet(parse_server("b.a.0 + b.c.0")),
              (ActionSet{Action::plain("a"), Action::plain("b"), Action::plain("c")}));
    EXPECT_EQ(alphabet(parse_monitor("!~a.no + c.end")), (ActionSet{Action::co("a"), Action::plain("c")}));
    EXPECT_EQ(names_of(parse_server("~a.b.0 + ~a.0")), (std::set<std::string>{"a", "b"}));
}
