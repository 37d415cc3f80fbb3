#pragma once

// Client satisfaction: p satisfies r when every maximal computation of r || p
// ends with the client exactly at `ok`.

#include "contractmon/lts.hpp"

namespace contractmon {

/// True iff the final client of a maximal computation is literally `ok`.
inline bool is_successful(const Computation &path) { return !path.empty() && path.back().client.is_ok(); }

struct SatReport {
    bool satisfied = true;
    std::optional<Computation> witness_path;  // a failing maximal computation
    std::size_t paths_explored = 0;
};

/// Enumerates maximal computations until one fails.
inline SatReport satisfies(const Server &p, const Client &r) {
    SatReport report;
    for_each_maximal_computation({r, p}, [&](const Computation &path) {
        ++report.paths_explored;
        if (is_successful(path))
            return true;
        report.satisfied = false;
        report.witness_path = path;
        return false;
    });
    return report;
}

/// Same predicate, evaluated recursively over system states with memoisation
/// instead of enumerating paths.
class SatisfactionMemo {
public:
    bool operator()(const Server &p, const Client &r) { return eval({r, p}); }

    std::size_t states_evaluated() const { return memo_.size(); }

private:
    bool eval(const SystemState &s) {
        if (s.client.is_ok())
            return true;
        if (auto it = memo_.find(s); it != memo_.end())
            return it->second;
        auto next = system_steps(s);
        bool ok = !next.empty();
        for (const auto &n : next) {
            if (!eval(n)) {
                ok = false;
                break;
            }
        }
        memo_.emplace(s, ok);
        return ok;
    }

    std::unordered_map<SystemState, bool, SystemStateHash> memo_;
};

inline bool satisfies_memo(const Server &p, const Client &r) { return SatisfactionMemo{}(p, r); }

} // namespace contractmon
