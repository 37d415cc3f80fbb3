#pragma once

// Bounded checks of rejection soundness and completeness of a monitor with
// respect to a server contract, and a machine check of why no monitor can be
// both for `~a.0 + b.0`.
//
// The universal quantification over servers is replaced by enumeration of
// every server up to a height, so a positive answer is only ever
// "holds-in-bound".

#include "contractmon/monitoring.hpp"
#include "contractmon/refinement.hpp"
#include "contractmon/synthesis.hpp"

#include <unordered_set>

namespace contractmon {

struct UniverseBound {
    int max_depth = 2;
    std::vector<std::string> alphabet;
    bool fresh_action = true;
    std::size_t cap = default_cap();

    void validate() const {
        if (max_depth < 1)
            throw std::invalid_argument("universe bound needs max_depth >= 1");
    }
};

struct BoundedCheck {
    bool holds_in_bound = true;
    std::optional<Server> counterexample;  // first in enumeration order
    std::vector<Server> counterexamples;   // at most kMaxKept
    std::size_t counterexample_count = 0;
    std::size_t servers_checked = 0;

    static constexpr std::size_t kMaxKept = 256;

    void refute(const Server &q) {
        holds_in_bound = false;
        if (!counterexample)
            counterexample = q;
        if (counterexamples.size() < kMaxKept)
            counterexamples.push_back(q);
        ++counterexample_count;
    }
};

struct MonitorabilityVerdict {
    BoundedCheck sound;
    BoundedCheck complete;
};

/// Names of the server universe: the bound's alphabet, the names of p and m,
/// and optionally one fresh name.
inline std::vector<std::string> universe_names(const Server &p, const Monitor &m, const UniverseBound &b) {
    std::set<std::string> names(b.alphabet.begin(), b.alphabet.end());
    for (const auto &n : names_of(p))
        names.insert(n);
    for (const auto &n : names_of(m))
        names.insert(n);
    std::vector<std::string> out(names.begin(), names.end());
    if (b.fresh_action)
        out.push_back(fresh_name(names));
    return out;
}

namespace detail {

enum class CheckWhich : std::uint8_t { sound = 1, complete = 2, both = 3 };

inline MonitorabilityVerdict run_checks(const Server &p, const Monitor &m, const UniverseBound &b, CheckWhich which) {
    b.validate();
    MonitorabilityVerdict v;
    AcceptanceMap pm(p);
    bool want_sound = static_cast<int>(which) & 1;
    bool want_complete = static_cast<int>(which) & 2;
    for_each_server(
        b.max_depth, universe_names(p, m, b),
        [&](const Server &q) {
            bool rejected = rejects(q, m).has_value();
            bool below = refines(pm, AcceptanceMap(q)).holds;
            if (want_sound) {
                ++v.sound.servers_checked;
                if (rejected && below)
                    v.sound.refute(q);
            }
            if (want_complete) {
                ++v.complete.servers_checked;
                if (!below && !rejected)
                    v.complete.refute(q);
            }
            return true;
        },
        b.cap);
    return v;
}

} // namespace detail

/// Refuted by any q with rej(q, m) and p <= q.
inline BoundedCheck check_sound(const Server &p, const Monitor &m, const UniverseBound &b) {
    return detail::run_checks(p, m, b, detail::CheckWhich::sound).sound;
}

/// Refuted by any q with not p <= q and not rej(q, m).
inline BoundedCheck check_complete(const Server &p, const Monitor &m, const UniverseBound &b) {
    return detail::run_checks(p, m, b, detail::CheckWhich::complete).complete;
}

inline MonitorabilityVerdict check_monitorability(const Server &p, const Monitor &m, const UniverseBound &b) {
    return detail::run_checks(p, m, b, detail::CheckWhich::both);
}

// ---------------------------------------------------------------------------
// Non-monitorability of ~a.0 + b.0
// ---------------------------------------------------------------------------

struct NonMonitorabilityReport {
    Server subject;      // ~a.0 + b.0
    Server left_branch;  // ~a.0

    bool subject_not_below_left = false;  // not (subject <= left_branch)
    bool subject_reflexive = false;       // subject <= subject
    bool left_traces_included = false;    // traces(left) within traces(subject)

    std::size_t monitors_checked = 0;
    std::size_t rejecting_left = 0;
    std::size_t rejecting_subject = 0;
    std::size_t implication_failures = 0;  // reject left but not subject
    std::size_t sound_and_complete = 0;
    std::vector<Monitor> offenders;

    bool confirmed() const {
        return subject_not_below_left && subject_reflexive && left_traces_included && implication_failures == 0 &&
               sound_and_complete == 0 && monitors_checked > 0;
    }
};

namespace detail {

inline void collect_verdict_leaves(const Monitor &m, std::size_t &count) {
    if (m.is_verdict()) {
        ++count;
        return;
    }
    collect_verdict_leaves(m.left(), count);
    if (m.kind() != MonitorKind::prefix)
        collect_verdict_leaves(m.right(), count);
}

// Rebuilds m with its verdict leaves, in left-to-right order, drawn from
// `leaves` starting at `pos`.
inline Monitor replace_leaves(const Monitor &m, const std::vector<Verdict> &leaves, std::size_t &pos) {
    switch (m.kind()) {
    case MonitorKind::verdict:
        return Monitor::verdict(leaves[pos++]);
    case MonitorKind::prefix:
        return Monitor::prefix(m.pattern(), replace_leaves(m.continuation(), leaves, pos));
    case MonitorKind::choice: {
        auto l = replace_leaves(m.left(), leaves, pos);
        return Monitor::choice(l, replace_leaves(m.right(), leaves, pos));
    }
    case MonitorKind::conjunction: {
        auto l = replace_leaves(m.left(), leaves, pos);
        return Monitor::conjunction(l, replace_leaves(m.right(), leaves, pos));
    }
    }
    return m;
}

/// Every assignment of verdicts to the leaves when there are at most
/// `full_limit` of them, otherwise every single-leaf change.
inline void leaf_mutations(const Monitor &m, std::size_t full_limit, std::vector<Monitor> &out) {
    std::size_t k = 0;
    collect_verdict_leaves(m, k);
    constexpr Verdict all[] = {Verdict::yes, Verdict::no, Verdict::end};
    if (k <= full_limit) {
        std::vector<Verdict> leaves(k, Verdict::yes);
        std::size_t combos = 1;
        for (std::size_t i = 0; i < k; ++i)
            combos *= 3;
        for (std::size_t code = 0; code < combos; ++code) {
            std::size_t c = code;
            for (std::size_t i = 0; i < k; ++i, c /= 3)
                leaves[i] = all[c % 3];
            std::size_t pos = 0;
            out.push_back(replace_leaves(m, leaves, pos));
        }
        return;
    }
    std::vector<Verdict> original;
    std::function<void(const Monitor &)> grab = [&](const Monitor &x) {
        if (x.is_verdict()) {
            original.push_back(x.verdict());
            return;
        }
        grab(x.left());
        if (x.kind() != MonitorKind::prefix)
            grab(x.right());
    };
    grab(m);
    out.push_back(m);
    for (std::size_t i = 0; i < k; ++i) {
        for (Verdict v : all) {
            if (v == original[i])
                continue;
            auto leaves = original;
            leaves[i] = v;
            std::size_t pos = 0;
            out.push_back(replace_leaves(m, leaves, pos));
        }
    }
}

} // namespace detail

/// Monitors considered by the non-monitorability check: every monitor of
/// height <= 2 over the alphabet, plus verdict-leaf mutations of the
/// monitors synthesised (in both nil modes) from every server of height
/// <= max_depth - 1.
inline std::vector<Monitor> bounded_monitor_universe(const UniverseBound &b) {
    b.validate();
    std::vector<Monitor> out = enumerate_monitors(std::min(b.max_depth, 2), b.alphabet, b.cap);
    auto actions = actions_over(b.alphabet);
    auto finite = SynthesisConfig::finite_alphabet(ActionSet(actions.begin(), actions.end()));
    for_each_server(
        b.max_depth - 1, b.alphabet,
        [&](const Server &q) {
            detail::leaf_mutations(synthesize(q), 4, out);
            detail::leaf_mutations(synthesize(q, finite), 4, out);
            if (out.size() > b.cap)
                throw ResourceError("monitor universe", out.size());
            return true;
        },
        b.cap);
    detail::sort_unique(out);
    return out;
}

/// For p = ~a.0 + b.0: any monitor that rejects ~a.0 also rejects p, so it is
/// unsound (p <= p); any monitor that does not is incomplete (not p <= ~a.0).
/// Checks the three facts this rests on, then classifies every monitor of the
/// bounded universe.
inline NonMonitorabilityReport demonstrate_non_monitorability(const UniverseBound &b) {
    b.validate();
    std::set<std::string> names(b.alphabet.begin(), b.alphabet.end());
    if (!names.count("a") || !names.count("b") || b.max_depth < 3)
        throw std::invalid_argument("the bound must cover names a and b with max_depth >= 3");

    NonMonitorabilityReport r;
    r.left_branch = Server::prefix(Action::co("a"), Server::nil());
    r.subject = Server::external(r.left_branch, Server::prefix(Action::plain("b"), Server::nil()));

    r.subject_not_below_left = !refines(r.subject, r.left_branch).holds;
    r.subject_reflexive = refines(r.subject, r.subject).holds;
    auto left_traces = traces(r.left_branch);
    auto subject_traces = traces(r.subject);
    r.left_traces_included = std::includes(subject_traces.begin(), subject_traces.end(), left_traces.begin(),
                                           left_traces.end());

    for (const auto &m : bounded_monitor_universe(b)) {
        ++r.monitors_checked;
        bool rej_left = rejects(r.left_branch, m).has_value();
        bool rej_subject = rejects(r.subject, m).has_value();
        r.rejecting_left += rej_left;
        r.rejecting_subject += rej_subject;
        if (rej_left && !rej_subject)
            ++r.implication_failures;
        // Sound needs: not rej(subject) (witness q = subject). Complete needs:
        // rej(left) (witness q = left).
        bool sound = !rej_subject;
        bool complete = rej_left;
        if (sound && complete) {
            ++r.sound_and_complete;
            if (r.offenders.size() < 16)
                r.offenders.push_back(m);
        }
    }
    return r;
}

} // namespace contractmon
