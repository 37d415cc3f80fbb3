#pragma once

// Deterministic random generators and exhaustive enumerators for contracts,
// clients and monitors. Both bound terms by height, where every constructor
// (prefix or choice) adds one level.

#include "contractmon/terms.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <random>

namespace contractmon {

/// Raised when an enumeration would exceed its configured cap.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string &what, std::size_t reached)
        : std::runtime_error(what + " (cap exceeded after " + std::to_string(reached) + " items)"),
          reached_(reached) {}

    std::size_t reached() const { return reached_; }

private:
    std::size_t reached_;
};

inline constexpr std::size_t kDefaultCap = 10'000'000;

/// The enumeration cap, overridable through CONTRACTMON_CAP.
inline std::size_t default_cap() {
    if (const char *env = std::getenv("CONTRACTMON_CAP")) {
        char *end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return kDefaultCap;
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

struct GenWeights {
    double nil = 1.0;
    double ok = 1.0;  // clients only
    double prefix = 3.0;
    double external = 1.5;
    double internal = 1.5;

    double yes = 0.25;
    double no = 1.0;
    double end = 1.0;
    double monitor_prefix = 3.0;
    double choice = 1.5;
    double conjunction = 1.0;
    double negated_pattern = 1.0;  // relative to plain patterns, weighted 1
};

struct GenConfig {
    std::uint64_t seed = 0;
    int max_depth = 3;
    std::vector<std::string> alphabet{"a", "b"};
    GenWeights weights{};

    void validate() const {
        if (max_depth < 0)
            throw std::invalid_argument("max_depth must be non-negative");
        if (alphabet.empty())
            throw std::invalid_argument("alphabet must not be empty");
        const auto &w = weights;
        for (double x : {w.nil, w.ok, w.prefix, w.external, w.internal, w.yes, w.no, w.end, w.monitor_prefix,
                         w.choice, w.conjunction, w.negated_pattern})
            if (x < 0)
                throw std::invalid_argument("generator weights must be non-negative");
        if (w.nil + w.prefix + w.external + w.internal <= 0 || w.yes + w.no + w.end <= 0)
            throw std::invalid_argument("generator weights must have a positive sum");
    }
};

/// Stateful generator: successive draws from one instance differ, two
/// instances built from the same config produce the same sequence.
class Generator {
public:
    explicit Generator(GenConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed), actions_(actions_over(cfg_.alphabet)) {
        cfg_.validate();
    }

    Server server() { return contract<ServerRole>(cfg_.max_depth); }
    Client client() { return contract<ClientRole>(cfg_.max_depth); }
    Monitor monitor() { return monitor(cfg_.max_depth); }

    Action action() { return actions_[below(actions_.size())]; }

    /// Uniform in [0, n).
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)) % n; }

    const GenConfig &config() const { return cfg_; }

private:
    // Platform-independent, unlike std::uniform_real_distribution.
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::size_t pick(std::initializer_list<double> weights) {
        double total = 0;
        for (double w : weights)
            total += w;
        double x = unit() * total;
        std::size_t i = 0;
        for (double w : weights) {
            if (x < w)
                return i;
            x -= w;
            ++i;
        }
        // Rounding fallback: last positive weight.
        std::size_t last = 0;
        i = 0;
        for (double w : weights) {
            if (w > 0)
                last = i;
            ++i;
        }
        return last;
    }

    template <class Role>
    Contract<Role> contract(int budget) {
        using C = Contract<Role>;
        const auto &w = cfg_.weights;
        double ok_w = C::is_client ? w.ok : 0.0;
        if (budget <= 0) {
            if constexpr (C::is_client) {
                if (pick({w.nil, ok_w}) == 1)
                    return C::ok();
            }
            return C::nil();
        }
        switch (pick({w.nil, ok_w, w.prefix, w.external, w.internal})) {
        case 0:
            return C::nil();
        case 1:
            if constexpr (C::is_client)
                return C::ok();
            return C::nil();
        case 2: {
            Action a = action();
            return C::prefix(std::move(a), contract<Role>(budget - 1));
        }
        case 3: {
            auto l = contract<Role>(budget - 1);
            return C::external(l, contract<Role>(budget - 1));
        }
        default: {
            auto l = contract<Role>(budget - 1);
            return C::internal(l, contract<Role>(budget - 1));
        }
        }
    }

    Monitor verdict_leaf() {
        const auto &w = cfg_.weights;
        switch (pick({w.yes, w.no, w.end})) {
        case 0:
            return Monitor::yes();
        case 1:
            return Monitor::no();
        default:
            return Monitor::end();
        }
    }

    Monitor monitor(int budget) {
        const auto &w = cfg_.weights;
        if (budget <= 0)
            return verdict_leaf();
        switch (pick({w.yes + w.no + w.end, w.monitor_prefix, w.choice, w.conjunction})) {
        case 0:
            return verdict_leaf();
        case 1: {
            bool negated = pick({1.0, w.negated_pattern}) == 1;
            Action a = action();
            return Monitor::prefix({std::move(a), negated}, monitor(budget - 1));
        }
        case 2: {
            auto l = monitor(budget - 1);
            return Monitor::choice(l, monitor(budget - 1));
        }
        default: {
            auto l = monitor(budget - 1);
            return Monitor::conjunction(l, monitor(budget - 1));
        }
        }
    }

    GenConfig cfg_;
    std::mt19937_64 rng_;
    std::vector<Action> actions_;
};

inline Server gen_server(const GenConfig &cfg) { return Generator(cfg).server(); }
inline Client gen_client(const GenConfig &cfg) { return Generator(cfg).client(); }
inline Monitor gen_monitor(const GenConfig &cfg) { return Generator(cfg).monitor(); }

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

/// Every term up to a height, each exactly once, in size-lexicographic
/// order: by node count, then constructor, then label, then children left to
/// right. This is the order of `operator<=>` on terms.
template <class Term>
class TermEnumerator {
public:
    using UnaryBuild = std::function<Term(std::size_t label, const Term &)>;
    using BinaryBuild = std::function<Term(const Term &, const Term &)>;

    TermEnumerator(int max_height, std::vector<Term> leaves, std::size_t unary_labels, UnaryBuild unary,
                   std::vector<BinaryBuild> binaries)
        : max_height_(max_height), leaves_(std::move(leaves)), unary_labels_(unary_labels),
          unary_(std::move(unary)), binaries_(std::move(binaries)) {
        if (max_height_ < 0)
            throw std::invalid_argument("max_depth must be non-negative");
    }

    /// Visits terms in order until the visitor returns false. Throws
    /// ResourceError once more than `cap` terms would be produced.
    bool for_each(const std::function<bool(const Term &)> &visit, std::size_t cap) {
        std::size_t count = 0;
        std::size_t max_size = (std::size_t{1} << (max_height_ + 1)) - 1;
        for (std::size_t n = 1; n <= max_size; ++n) {
            for (const auto &t : layer(max_height_, n)) {
                if (++count > cap)
                    throw ResourceError("term enumeration", count - 1);
                if (!visit(t))
                    return false;
            }
        }
        return true;
    }

    std::vector<Term> all(std::size_t cap) {
        std::vector<Term> out;
        for_each(
            [&](const Term &t) {
                out.push_back(t);
                return true;
            },
            cap);
        return out;
    }

private:
    // Terms of height <= h and size exactly n.
    const std::vector<Term> &layer(int h, std::size_t n) {
        auto key = std::make_pair(h, n);
        if (auto it = layers_.find(key); it != layers_.end())
            return it->second;
        std::vector<Term> out;
        if (n == 1) {
            out = leaves_;
        } else if (h >= 1) {
            for (std::size_t label = 0; label < unary_labels_; ++label)
                for (const auto &c : layer(h - 1, n - 1))
                    out.push_back(unary_(label, c));
            for (const auto &build : binaries_) {
                for (std::size_t n1 = 1; n1 + 1 < n; ++n1) {
                    const auto &ls = layer(h - 1, n1);
                    const auto &rs = layer(h - 1, n - 1 - n1);
                    for (const auto &l : ls)
                        for (const auto &r : rs)
                            out.push_back(build(l, r));
                }
            }
        }
        return layers_.emplace(key, std::move(out)).first->second;
    }

    int max_height_;
    std::vector<Term> leaves_;
    std::size_t unary_labels_;
    UnaryBuild unary_;
    std::vector<BinaryBuild> binaries_;
    std::map<std::pair<int, std::size_t>, std::vector<Term>> layers_;
};

template <class Role>
TermEnumerator<Contract<Role>> contract_enumerator(int max_depth, const std::vector<Action> &actions) {
    using C = Contract<Role>;
    std::vector<C> leaves{C::nil()};
    if constexpr (C::is_client)
        leaves.push_back(C::ok());
    return TermEnumerator<C>(
        max_depth, std::move(leaves), actions.size(),
        [actions](std::size_t i, const C &c) { return C::prefix(actions[i], c); },
        {[](const C &l, const C &r) { return C::external(l, r); },
         [](const C &l, const C &r) { return C::internal(l, r); }});
}

inline TermEnumerator<Monitor> monitor_enumerator(int max_depth, const std::vector<Action> &actions) {
    std::vector<Pattern> patterns;
    for (const auto &a : actions) {
        patterns.push_back(Pattern::is(a));
        patterns.push_back(Pattern::is_not(a));
    }
    return TermEnumerator<Monitor>(
        max_depth, {Monitor::yes(), Monitor::no(), Monitor::end()}, patterns.size(),
        [patterns](std::size_t i, const Monitor &m) { return Monitor::prefix(patterns[i], m); },
        {[](const Monitor &l, const Monitor &r) { return Monitor::choice(l, r); },
         [](const Monitor &l, const Monitor &r) { return Monitor::conjunction(l, r); }});
}

/// All servers of height <= max_depth over the given names (both polarities).
inline bool for_each_server(int max_depth, const std::vector<std::string> &alphabet,
                            const std::function<bool(const Server &)> &visit, std::size_t cap = default_cap()) {
    return contract_enumerator<ServerRole>(max_depth, actions_over(alphabet)).for_each(visit, cap);
}

inline std::vector<Server> enumerate_servers(int max_depth, const std::vector<std::string> &alphabet,
                                             std::size_t cap = default_cap()) {
    return contract_enumerator<ServerRole>(max_depth, actions_over(alphabet)).all(cap);
}

inline std::vector<Client> enumerate_clients(int max_depth, const std::vector<std::string> &alphabet,
                                             std::size_t cap = default_cap()) {
    return contract_enumerator<ClientRole>(max_depth, actions_over(alphabet)).all(cap);
}

inline std::vector<Monitor> enumerate_monitors(int max_depth, const std::vector<std::string> &alphabet,
                                               std::size_t cap = default_cap()) {
    return monitor_enumerator(max_depth, actions_over(alphabet)).all(cap);
}

/// A name not in `taken`: "fresh", then "fresh1", "fresh2", ...
inline std::string fresh_name(const std::set<std::string> &taken) {
    std::string candidate = "fresh";
    for (int i = 1; taken.count(candidate); ++i)
        candidate = "fresh" + std::to_string(i);
    return candidate;
}

} // namespace contractmon
