#pragma once

// Monitor dynamics, instrumentation of a monitor over a server, and
// rejection.

#include "contractmon/lts.hpp"

namespace contractmon {

namespace detail {

inline void collect_monitor_steps(const Monitor &m, const Action &a, std::vector<Monitor> &out) {
    switch (m.kind()) {
    case MonitorKind::verdict:
        out.push_back(m);
        break;
    case MonitorKind::prefix:
        if (m.pattern().matches(a))
            out.push_back(m.continuation());
        break;
    case MonitorKind::choice:
        collect_monitor_steps(m.left(), a, out);
        collect_monitor_steps(m.right(), a, out);
        break;
    case MonitorKind::conjunction: {
        std::vector<Monitor> ls, rs;
        collect_monitor_steps(m.left(), a, ls);
        if (ls.empty())
            break;
        collect_monitor_steps(m.right(), a, rs);
        // nil rejectors give many equal derivatives; the product blows up otherwise
        sort_unique(ls);
        sort_unique(rs);
        for (const auto &l : ls)
            for (const auto &r : rs)
                out.push_back(Monitor::conjunction(l, r));
        break;
    }
    }
}

} // namespace detail

/// All a-derivatives of a monitor; empty when the monitor cannot follow a.
inline std::vector<Monitor> monitor_steps(const Monitor &m, const Action &a) {
    std::vector<Monitor> out;
    detail::collect_monitor_steps(m, a, out);
    detail::sort_unique(out);
    return out;
}

/// `no`, or a conjunction all of whose leaves are rejection states.
inline bool is_rejection_state(const Monitor &m) {
    switch (m.kind()) {
    case MonitorKind::verdict:
        return m.verdict() == Verdict::no;
    case MonitorKind::conjunction:
        return is_rejection_state(m.left()) && is_rejection_state(m.right());
    default:
        return false;
    }
}

struct MonitoredState {
    Monitor monitor;
    Server server;

    friend bool operator==(const MonitoredState &, const MonitoredState &) = default;
};

struct MonitoredStateHash {
    std::size_t operator()(const MonitoredState &s) const { return detail::mix(s.monitor.hash(), s.server.hash()); }
};

enum class InstrumentationRule { monitor, terminate, async };

inline std::string_view to_string(InstrumentationRule r) {
    switch (r) {
    case InstrumentationRule::monitor:
        return "iMon";
    case InstrumentationRule::terminate:
        return "iTer";
    case InstrumentationRule::async:
        return "iAsy";
    }
    return "?";
}

struct MonitoredStep {
    Label label;
    MonitoredState next;
    InstrumentationRule rule;
};

/// The server drives: each server move yields monitored moves, and the
/// monitor never blocks or adds behaviour.
inline std::vector<MonitoredStep> instrumented_steps(const MonitoredState &s) {
    std::vector<MonitoredStep> out;
    for (const auto &tr : contract_steps(s.server)) {
        if (tr.label.is_tau()) {
            out.push_back({tr.label, {s.monitor, tr.target}, InstrumentationRule::async});
            continue;
        }
        auto derivs = monitor_steps(s.monitor, tr.label.action());
        if (derivs.empty()) {
            out.push_back({tr.label, {Monitor::end(), tr.target}, InstrumentationRule::terminate});
            continue;
        }
        for (auto &d : derivs)
            out.push_back({tr.label, {std::move(d), tr.target}, InstrumentationRule::monitor});
    }
    return out;
}

struct RejectionWitness {
    MonitoredState start;
    Trace trace;
    std::vector<MonitoredStep> path;

    const MonitoredState &final_state() const { return path.empty() ? start : path.back().next; }
};

/// Searches the monitored LTS for a reachable rejection state.
inline std::optional<RejectionWitness> rejects(const Server &p, const Monitor &m) {
    MonitoredState root{m, p};
    std::unordered_set<MonitoredState, MonitoredStateHash> visited;
    std::vector<MonitoredStep> path;
    std::function<bool(const MonitoredState &)> dfs = [&](const MonitoredState &s) {
        if (is_rejection_state(s.monitor))
            return true;
        if (!visited.insert(s).second)
            return false;
        for (auto &step : instrumented_steps(s)) {
            path.push_back(step);
            if (dfs(path.back().next))
                return true;
            path.pop_back();
        }
        return false;
    };
    if (!dfs(root))
        return std::nullopt;
    RejectionWitness w{root, {}, path};
    for (const auto &step : path)
        if (!step.label.is_tau())
            w.trace.push_back(step.label.action());
    return w;
}

/// Offline run over a trace: monitor states reachable by consuming t, where a
/// branch that cannot follow an action becomes `end`.
inline std::vector<Monitor> run_trace(const Monitor &m, const Trace &t) {
    std::vector<Monitor> cur{m};
    for (const auto &a : t) {
        std::vector<Monitor> next;
        for (const auto &x : cur) {
            auto d = monitor_steps(x, a);
            if (d.empty())
                next.push_back(Monitor::end());
            else
                next.insert(next.end(), d.begin(), d.end());
        }
        detail::sort_unique(next);
        cur = std::move(next);
    }
    return cur;
}

} // namespace contractmon
