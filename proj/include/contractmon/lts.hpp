#pragma once

// Small-step semantics of contracts and of client-server systems.

#include "contractmon/syntax.hpp"

#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace contractmon {

/// A visible action or the silent move.
class Label {
public:
    static Label tau() { return Label(); }
    static Label visible(Action a) { return Label(std::move(a)); }

    bool is_tau() const { return !action_.has_value(); }
    const Action &action() const { return *action_; }

    friend bool operator==(const Label &, const Label &) = default;
    // tau sorts before every visible action.
    friend std::strong_ordering operator<=>(const Label &a, const Label &b) {
        if (a.is_tau() || b.is_tau())
            return b.is_tau() <=> a.is_tau();
        return *a.action_ <=> *b.action_;
    }

private:
    Label() = default;
    explicit Label(Action a) : action_(std::move(a)) {}

    std::optional<Action> action_;
};

inline std::string to_string(const Label &l) { return l.is_tau() ? "tau" : to_string(l.action()); }

template <class Role>
struct Transition {
    Label label;
    Contract<Role> target;

    friend bool operator==(const Transition &, const Transition &) = default;
    friend std::strong_ordering operator<=>(const Transition &a, const Transition &b) {
        if (auto c = a.label <=> b.label; c != 0)
            return c;
        return a.target <=> b.target;
    }
};

namespace detail {

template <class T>
void sort_unique(std::vector<T> &v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <class Role>
void collect_steps(const Contract<Role> &t, std::vector<Transition<Role>> &out) {
    switch (t.kind()) {
    case ContractKind::nil:
    case ContractKind::ok:
        break;
    case ContractKind::prefix:
        out.push_back({Label::visible(t.action()), t.continuation()});
        break;
    case ContractKind::external:
        // Any move of a branch, silent ones included, resolves the choice.
        collect_steps(t.left(), out);
        collect_steps(t.right(), out);
        break;
    case ContractKind::internal:
        out.push_back({Label::tau(), t.left()});
        out.push_back({Label::tau(), t.right()});
        break;
    }
}

} // namespace detail

/// All single-step derivatives, deduplicated and ordered (tau first).
template <class Role>
std::vector<Transition<Role>> contract_steps(const Contract<Role> &t) {
    std::vector<Transition<Role>> out;
    detail::collect_steps(t, out);
    detail::sort_unique(out);
    return out;
}

template <class Role>
bool is_stable(const Contract<Role> &t) {
    switch (t.kind()) {
    case ContractKind::internal:
        return false;
    case ContractKind::external:
        return is_stable(t.left()) && is_stable(t.right());
    default:
        return true;
    }
}

/// Visible actions the term can perform immediately.
template <class Role>
ActionSet ready_actions(const Contract<Role> &t) {
    ActionSet out;
    for (const auto &tr : contract_steps(t))
        if (!tr.label.is_tau())
            out.insert(tr.label.action());
    return out;
}

// ---------------------------------------------------------------------------
// Systems
// ---------------------------------------------------------------------------

struct SystemState {
    Client client;
    Server server;

    friend bool operator==(const SystemState &, const SystemState &) = default;
    friend std::strong_ordering operator<=>(const SystemState &a, const SystemState &b) {
        if (auto c = a.client <=> b.client; c != 0)
            return c;
        return a.server <=> b.server;
    }
};

struct SystemStateHash {
    std::size_t operator()(const SystemState &s) const { return detail::mix(s.client.hash(), s.server.hash()); }
};

enum class SystemRule { asy_server, asy_client, sync };

inline std::string_view to_string(SystemRule r) {
    switch (r) {
    case SystemRule::asy_server:
        return "AsyS";
    case SystemRule::asy_client:
        return "AsyC";
    case SystemRule::sync:
        return "Syn";
    }
    return "?";
}

struct SystemMove {
    SystemRule rule;
    SystemState next;
    std::optional<Action> client_action;  // set for synchronisations
};

/// All silent system moves, with the rule that produced each.
inline std::vector<SystemMove> system_moves(const SystemState &s) {
    std::vector<SystemMove> out;
    auto client_steps = contract_steps(s.client);
    auto server_steps = contract_steps(s.server);
    for (const auto &st : server_steps)
        if (st.label.is_tau())
            out.push_back({SystemRule::asy_server, {s.client, st.target}, std::nullopt});
    for (const auto &ct : client_steps)
        if (ct.label.is_tau())
            out.push_back({SystemRule::asy_client, {ct.target, s.server}, std::nullopt});
    for (const auto &ct : client_steps) {
        if (ct.label.is_tau())
            continue;
        Action wanted = ct.label.action().complement();
        for (const auto &st : server_steps)
            if (!st.label.is_tau() && st.label.action() == wanted)
                out.push_back({SystemRule::sync, {ct.target, st.target}, ct.label.action()});
    }
    return out;
}

/// Silent successors of a system, deduplicated.
inline std::vector<SystemState> system_steps(const SystemState &s) {
    std::vector<SystemState> out;
    for (auto &m : system_moves(s))
        out.push_back(std::move(m.next));
    detail::sort_unique(out);
    return out;
}

/// A computation as the sequence of states it visits, the root included.
using Computation = std::vector<SystemState>;

/// Depth-first over all maximal computations. The visitor returns false to
/// stop early; the function returns false iff stopped.
inline bool for_each_maximal_computation(const SystemState &root,
                                         const std::function<bool(const Computation &)> &visit) {
    Computation path{root};
    std::function<bool()> walk = [&]() -> bool {
        auto next = system_steps(path.back());
        if (next.empty())
            return visit(path);
        for (auto &n : next) {
            path.push_back(std::move(n));
            bool go_on = walk();
            path.pop_back();
            if (!go_on)
                return false;
        }
        return true;
    };
    return walk();
}

inline std::vector<Computation> maximal_computations(const SystemState &root) {
    std::vector<Computation> out;
    for_each_maximal_computation(root, [&](const Computation &c) {
        out.push_back(c);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Weak traces and reachability
// ---------------------------------------------------------------------------

/// States reachable through silent moves, the start states included.
template <class Role>
std::vector<Contract<Role>> tau_closure(std::vector<Contract<Role>> states) {
    std::vector<Contract<Role>> frontier = states;
    std::unordered_set<Contract<Role>> seen(states.begin(), states.end());
    while (!frontier.empty()) {
        auto cur = std::move(frontier.back());
        frontier.pop_back();
        for (auto &tr : contract_steps(cur))
            if (tr.label.is_tau() && seen.insert(tr.target).second) {
                states.push_back(tr.target);
                frontier.push_back(tr.target);
            }
    }
    detail::sort_unique(states);
    return states;
}

/// Weak derivatives after one visible action.
template <class Role>
std::vector<Contract<Role>> weak_after(const std::vector<Contract<Role>> &closed, const Action &a) {
    std::vector<Contract<Role>> out;
    for (const auto &s : closed)
        for (auto &tr : contract_steps(s))
            if (!tr.label.is_tau() && tr.label.action() == a)
                out.push_back(tr.target);
    detail::sort_unique(out);
    return tau_closure(std::move(out));
}

/// Weak derivatives after a trace.
template <class Role>
std::vector<Contract<Role>> weak_derivatives(const Contract<Role> &t, const Trace &trace) {
    auto cur = tau_closure(std::vector<Contract<Role>>{t});
    for (const auto &a : trace) {
        if (cur.empty())
            break;
        cur = weak_after(cur, a);
    }
    return cur;
}

/// Visible actions available somewhere in a set of states.
template <class Role>
ActionSet visible_moves(const std::vector<Contract<Role>> &states) {
    ActionSet out;
    for (const auto &s : states)
        for (const auto &tr : contract_steps(s))
            if (!tr.label.is_tau())
                out.insert(tr.label.action());
    return out;
}

/// All weak traces; always holds the empty trace.
template <class Role>
std::set<Trace> traces(const Contract<Role> &t) {
    std::set<Trace> out;
    Trace cur;
    std::function<void(const std::vector<Contract<Role>> &)> walk = [&](const std::vector<Contract<Role>> &states) {
        out.insert(cur);
        for (const auto &a : visible_moves(states)) {
            cur.push_back(a);
            walk(weak_after(states, a));
            cur.pop_back();
        }
    };
    walk(tau_closure(std::vector<Contract<Role>>{t}));
    return out;
}

template <class Role>
struct ReachableLts {
    std::vector<Contract<Role>> states;  // states[0] is the root
    std::vector<std::tuple<std::size_t, Label, std::size_t>> transitions;
};

/// The full reachable transition graph, states numbered in discovery order.
template <class Role>
ReachableLts<Role> reachable_lts(const Contract<Role> &root) {
    ReachableLts<Role> g;
    std::unordered_map<Contract<Role>, std::size_t> index;
    g.states.push_back(root);
    index.emplace(root, 0);
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        auto cur = g.states[i];
        for (auto &tr : contract_steps(cur)) {
            auto [it, fresh] = index.emplace(tr.target, g.states.size());
            if (fresh)
                g.states.push_back(tr.target);
            g.transitions.emplace_back(i, tr.label, it->second);
        }
    }
    return g;
}

} // namespace contractmon
