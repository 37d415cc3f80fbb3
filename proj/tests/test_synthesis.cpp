#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace contractmon;

namespace {

Server S(const char *t) { return parse_server(t); }

GenConfig config(std::uint64_t seed, int depth) {
    GenConfig c;
    c.seed = seed;
    c.max_depth = depth;
    c.alphabet = {"a", "b", "c"};
    return c;
}

bool emits_yes(const Monitor &m) {
    if (m.is_verdict())
        return m.verdict() == Verdict::yes;
    if (m.kind() == MonitorKind::prefix)
        return emits_yes(m.continuation());
    return emits_yes(m.left()) || emits_yes(m.right());
}

} // namespace

TEST(Synthesize, Examples) {
    EXPECT_EQ(to_string(synthesize(S("~a.b.0"))), "!~a.no + ~a.(!b.no + b.end)");
    EXPECT_EQ(synthesize(Server::nil()), Monitor::end());
    EXPECT_EQ(to_string(synthesize(S("~a.b.0 + c.0"))), "(!~a.no + ~a.(!b.no + b.end)) * (!c.no + c.end)");
    EXPECT_EQ(synthesize(S("~a.0 + b.0")), synthesize(S("~a.0 (+) b.0")));
}

TEST(Synthesize, FiniteAlphabetNil) {
    auto acts = actions_over({"b", "a"});
    auto cfg = SynthesisConfig::finite_alphabet({acts.begin(), acts.end()});
    EXPECT_EQ(to_string(synthesize(Server::nil(), cfg)), "!a.no + !~a.no + !b.no + !~b.no");
    EXPECT_EQ(to_string(synthesize(S("a.0"), cfg)), "!a.no + a.(!a.no + !~a.no + !b.no + !~b.no)");
    EXPECT_THROW(SynthesisConfig::finite_alphabet({}), std::invalid_argument);
    // With the alphabet known, every visible action of a supercontract
    // candidate of 0 is caught.
    EXPECT_TRUE(rejects(S("~b.0"), synthesize(Server::nil(), cfg)).has_value());
    EXPECT_FALSE(rejects(S("~b.0"), synthesize(Server::nil())).has_value());
}

TEST(Synthesize, NeverRejectsItsOwnContract) {
    Generator gen(config(51, 4));
    for (int i = 0; i < 10000; ++i) {
        auto p = gen.server();
        ASSERT_FALSE(rejects(p, synthesize(p)).has_value()) << to_string(p);
    }
}

TEST(Synthesize, NeverEmitsYes) {
    Generator gen(config(52, 5));
    auto acts = actions_over({"a", "b", "c"});
    auto finite = SynthesisConfig::finite_alphabet({acts.begin(), acts.end()});
    for (int i = 0; i < 2000; ++i) {
        auto p = gen.server();
        ASSERT_FALSE(emits_yes(synthesize(p)));
        ASSERT_FALSE(emits_yes(synthesize(p, finite)));
    }
}

TEST(Synthesize, SoundOnRandomPairs) {
    Generator gen(config(53, 4));
    auto acts = actions_over({"a", "b", "c"});
    auto finite = SynthesisConfig::finite_alphabet({acts.begin(), acts.end()});
    std::size_t rejected = 0;
    for (int i = 0; i < 10000; ++i) {
        auto p = gen.server(), q = gen.server();
        bool below = refines(p, q).holds;
        bool rej = rejects(q, synthesize(p)).has_value();
        bool rej_finite = rejects(q, synthesize(p, finite)).has_value();
        ASSERT_FALSE(rej && below) << to_string(p) << " | " << to_string(q);
        ASSERT_FALSE(rej_finite && below) << to_string(p) << " | " << to_string(q);
        ASSERT_TRUE(!rej || rej_finite) << "finite mode only adds rejections";
        rejected += rej;
    }
    EXPECT_GT(rejected, 1000u);
}

TEST(Synthesize, TotalAndDeterministic) {
    Generator gen(config(54, 5));
    auto acts = actions_over({"a", "b", "c", "d"});
    for (int i = 0; i < 10000; ++i) {
        auto m = synthesize(gen.server());
        std::set<Monitor> seen;
        std::vector<Monitor> todo{m};
        while (!todo.empty()) {
            auto cur = todo.back();
            todo.pop_back();
            if (!seen.insert(cur).second)
                continue;
            for (auto &a : acts) {
                auto d = monitor_steps(cur, a);
                ASSERT_EQ(d.size(), 1u) << to_string(cur) << " on " << to_string(a);
                todo.push_back(d[0]);
            }
        }
    }
}
