#pragma once

// Rejection-monitor synthesis from a server contract.

#include "contractmon/terms.hpp"

namespace contractmon {

enum class NilMode { inconclusive, finite_alphabet };

struct SynthesisConfig {
    NilMode nil_mode = NilMode::inconclusive;
    ActionSet actions;  // finite_alphabet only

    static SynthesisConfig inconclusive() { return {}; }

    static SynthesisConfig finite_alphabet(ActionSet actions) {
        if (actions.empty())
            throw std::invalid_argument("finite-alphabet synthesis needs a non-empty action set");
        return {NilMode::finite_alphabet, std::move(actions)};
    }
};

/// The monitor for `0` in finite-alphabet mode: !a1.no + ... + !an.no,
/// left-nested in action order.
inline Monitor nil_rejector(const ActionSet &actions) {
    std::optional<Monitor> out;
    for (const auto &a : actions) {
        auto branch = Monitor::prefix(Pattern::is_not(a), Monitor::no());
        out = out ? Monitor::choice(*out, branch) : branch;
    }
    return out ? *out : Monitor::end();
}

/// 0 -> end (or the nil rejector), a.p -> !a.no + a.syn(p), and both choices
/// -> conjunction of the branches' monitors.
inline Monitor synthesize(const Server &p, const SynthesisConfig &cfg = {}) {
    switch (p.kind()) {
    case ContractKind::prefix:
        return Monitor::choice(Monitor::prefix(Pattern::is_not(p.action()), Monitor::no()),
                               Monitor::prefix(Pattern::is(p.action()), synthesize(p.continuation(), cfg)));
    case ContractKind::external:
    case ContractKind::internal:
        return Monitor::conjunction(synthesize(p.left(), cfg), synthesize(p.right(), cfg));
    default:
        if (cfg.nil_mode == NilMode::finite_alphabet)
            return nil_rejector(cfg.actions);
        return Monitor::end();
    }
}

} // namespace contractmon
