#pragma once

// Slow, direct re-implementations of the semantics used to cross-check the
// library. Nothing here shares code with the library beyond the term types.

#include "contractmon/contractmon.hpp"

#include <functional>
#include <set>
#include <utility>

namespace oracle {

using namespace contractmon;

// Label as text: "tau" or the action's spelling.
template <class Role>
using Step = std::pair<std::string, Contract<Role>>;

template <class Role>
std::set<Step<Role>> steps(const Contract<Role> &t) {
    std::set<Step<Role>> out;
    if (t.kind() == ContractKind::prefix) {
        out.insert({to_string(t.action()), t.continuation()});
    } else if (t.kind() == ContractKind::internal) {
        out.insert({"tau", t.left()});
        out.insert({"tau", t.right()});
    } else if (t.kind() == ContractKind::external) {
        for (auto &s : steps(t.left()))
            out.insert(s);
        for (auto &s : steps(t.right()))
            out.insert(s);
    }
    return out;
}

using Sys = std::pair<Client, Server>;

// AsyS, AsyC and Syn, one rule at a time.
inline std::set<Sys> system_steps(const Sys &s) {
    std::set<Sys> out;
    auto cs = steps(s.first);
    auto ps = steps(s.second);
    for (auto &[l, p2] : ps)
        if (l == "tau")
            out.insert({s.first, p2});
    for (auto &[l, r2] : cs)
        if (l == "tau")
            out.insert({r2, s.second});
    for (auto &[lc, r2] : cs) {
        if (lc == "tau")
            continue;
        for (auto &[lp, p2] : ps) {
            if (lp == "tau")
                continue;
            bool complementary = (lc == "~" + lp) || (lp == "~" + lc);
            if (complementary)
                out.insert({r2, p2});
        }
    }
    return out;
}

// Every maximal computation ends with the client literally ok.
inline bool sat(const Server &p, const Client &r) {
    auto next = system_steps({r, p});
    if (next.empty())
        return r.kind() == ContractKind::ok;
    for (auto &[r2, p2] : next)
        if (!sat(p2, r2))
            return false;
    return true;
}

// Weak traces as text, by brute-force walking.
inline void walk_traces(const Server &p, std::vector<std::string> &prefix, std::set<std::vector<std::string>> &out) {
    out.insert(prefix);
    for (auto &[l, p2] : steps(p)) {
        if (l == "tau") {
            walk_traces(p2, prefix, out);
        } else {
            prefix.push_back(l);
            walk_traces(p2, prefix, out);
            prefix.pop_back();
        }
    }
}

inline std::set<std::vector<std::string>> traces(const Server &p) {
    std::set<std::vector<std::string>> out;
    std::vector<std::string> prefix;
    walk_traces(p, prefix, out);
    return out;
}

inline std::set<std::vector<std::string>> traces_of(const std::set<Trace> &ts) {
    std::set<std::vector<std::string>> out;
    for (auto &t : ts) {
        std::vector<std::string> v;
        for (auto &a : t)
            v.push_back(to_string(a));
        out.insert(v);
    }
    return out;
}

// Servers reachable by the weak trace t (as text), τ-closed.
inline void after(const Server &p, const std::vector<std::string> &t, std::size_t i, std::set<Server> &out) {
    if (i == t.size())
        out.insert(p);
    for (auto &[l, p2] : steps(p)) {
        if (l == "tau")
            after(p2, t, i, out);
        else if (i < t.size() && l == t[i])
            after(p2, t, i + 1, out);
    }
}

inline std::set<std::set<std::string>> acceptance_sets(const Server &p, const std::vector<std::string> &t) {
    std::set<Server> reach;
    after(p, t, 0, reach);
    std::set<std::set<std::string>> out;
    for (auto &q : reach) {
        auto st = steps(q);
        bool stable = true;
        std::set<std::string> ready;
        for (auto &[l, q2] : st) {
            if (l == "tau")
                stable = false;
            else
                ready.insert(l);
        }
        if (stable)
            out.insert(ready);
    }
    return out;
}

// Monitor a-derivatives from the rules, one per rule.
inline std::set<Monitor> monitor_steps(const Monitor &m, const Action &a) {
    std::set<Monitor> out;
    switch (m.kind()) {
    case MonitorKind::verdict:
        out.insert(m);
        break;
    case MonitorKind::prefix: {
        const auto &pat = m.pattern();
        bool fires = pat.negated ? !(pat.action == a) : pat.action == a;
        if (fires)
            out.insert(m.continuation());
        break;
    }
    case MonitorKind::choice:
        out = oracle::monitor_steps(m.left(), a);
        for (auto &x : oracle::monitor_steps(m.right(), a))
            out.insert(x);
        break;
    case MonitorKind::conjunction:
        for (auto &l : oracle::monitor_steps(m.left(), a))
            for (auto &r : oracle::monitor_steps(m.right(), a))
                out.insert(Monitor::conjunction(l, r));
        break;
    }
    return out;
}

inline bool rejecting(const Monitor &m) {
    if (m.kind() == MonitorKind::verdict)
        return m.verdict() == Verdict::no;
    if (m.kind() == MonitorKind::conjunction)
        return rejecting(m.left()) && rejecting(m.right());
    return false;
}

// Exhaustive search of the monitored system without memoisation.
inline bool rejects(const Server &p, const Monitor &m) {
    if (rejecting(m))
        return true;
    for (auto &[l, p2] : steps(p)) {
        if (l == "tau") {
            if (oracle::rejects(p2, m))
                return true;
            continue;
        }
        Action a = l[0] == '~' ? Action::co(l.substr(1)) : Action::plain(l);
        auto ds = oracle::monitor_steps(m, a);
        if (ds.empty()) {
            if (oracle::rejects(p2, Monitor::end()))
                return true;
        }
        for (auto &d : ds)
            if (oracle::rejects(p2, d))
                return true;
    }
    return false;
}

} // namespace oracle
