#pragma once

// The server preorder p <= q ("every client satisfied by p is satisfied by
// q"), decided through acceptance sets, plus a bounded client-search
// falsifier that checks the decision against the satisfaction semantics.

#include "contractmon/satisfaction.hpp"
#include "contractmon/testkit.hpp"

#include <bit>
#include <iterator>

namespace contractmon {

// ---------------------------------------------------------------------------
// Acceptance sets
// ---------------------------------------------------------------------------

/// Ready sets of the stable weak derivatives of p after t. Empty iff t is not
/// a trace of p.
inline std::set<ActionSet> acceptance_sets(const Server &p, const Trace &t) {
    std::set<ActionSet> out;
    for (const auto &d : weak_derivatives(p, t))
        if (is_stable(d))
            out.insert(ready_actions(d));
    return out;
}

struct AcceptanceSetFamily {
    Trace trace;
    std::set<ActionSet> ready_sets;

    friend bool operator==(const AcceptanceSetFamily &, const AcceptanceSetFamily &) = default;
};

namespace detail {

inline bool shorter_then_lex(const Trace &a, const Trace &b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

} // namespace detail

/// The acceptance-set family of every trace of a server, ordered by trace
/// length and then lexicographically.
class AcceptanceMap {
public:
    explicit AcceptanceMap(const Server &p) {
        Trace cur;
        std::function<void(const std::vector<Server> &)> walk = [&](const std::vector<Server> &states) {
            AcceptanceSetFamily fam{cur, {}};
            for (const auto &s : states)
                if (is_stable(s))
                    fam.ready_sets.insert(ready_actions(s));
            families_.push_back(std::move(fam));
            for (const auto &a : visible_moves(states)) {
                cur.push_back(a);
                walk(weak_after(states, a));
                cur.pop_back();
            }
        };
        walk(tau_closure(std::vector<Server>{p}));
        std::sort(families_.begin(), families_.end(), [](const auto &x, const auto &y) {
            return detail::shorter_then_lex(x.trace, y.trace);
        });
    }

    const std::vector<AcceptanceSetFamily> &families() const { return families_; }

    /// nullptr when t is not a trace.
    const AcceptanceSetFamily *find(const Trace &t) const {
        auto it = std::lower_bound(families_.begin(), families_.end(), t, [](const auto &fam, const Trace &key) {
            return detail::shorter_then_lex(fam.trace, key);
        });
        if (it == families_.end() || it->trace != t)
            return nullptr;
        return &*it;
    }

    /// Canonical text; equal keys mean equal maps.
    std::string key() const {
        std::string out;
        for (const auto &fam : families_) {
            out += to_string(fam.trace);
            out += ':';
            for (const auto &set : fam.ready_sets) {
                out += '{';
                for (const auto &a : set) {
                    out += to_string(a);
                    out += ' ';
                }
                out += '}';
            }
            out += ';';
        }
        return out;
    }

    friend bool operator==(const AcceptanceMap &, const AcceptanceMap &) = default;

private:
    std::vector<AcceptanceSetFamily> families_;
};

struct RefinementReport {
    bool holds = true;
    std::optional<Trace> witness_trace;
    std::optional<Client> witness_client;
};

/// First trace violating "p <= q", or nullopt when p <= q. The condition: for
/// every trace t of q and every B in acc(q,t) some A in acc(p,t) has A <= B.
inline std::optional<Trace> refinement_violation(const AcceptanceMap &p, const AcceptanceMap &q) {
    for (const auto &qf : q.families()) {
        const auto *pf = p.find(qf.trace);
        if (!pf)
            return qf.trace;
        for (const auto &b : qf.ready_sets) {
            bool covered = std::any_of(pf->ready_sets.begin(), pf->ready_sets.end(), [&](const ActionSet &a) {
                return std::includes(b.begin(), b.end(), a.begin(), a.end());
            });
            if (!covered)
                return qf.trace;
        }
    }
    return std::nullopt;
}

inline RefinementReport refines(const AcceptanceMap &p, const AcceptanceMap &q) {
    RefinementReport r;
    r.witness_trace = refinement_violation(p, q);
    r.holds = !r.witness_trace;
    return r;
}

inline RefinementReport refines(const Server &p, const Server &q) { return refines(AcceptanceMap(p), AcceptanceMap(q)); }

// ---------------------------------------------------------------------------
// Client universe for the falsifier
// ---------------------------------------------------------------------------

struct ClientBound {
    int max_depth = 3;
    std::vector<std::string> alphabet;
    /// Clients up to this height are enumerated without restriction.
    int exhaustive_depth = 2;
    std::size_t cap = default_cap();
};

namespace detail {

// Probe clients of prefix depth <= depth: `0`, `ok`, any sum of `x.ok`
// branches, and `(ok (+) ok) + x.c` for a shallower probe c. The escape
// `(ok (+) ok)` lets the client succeed whenever the server stops early, so a
// probe fails only along its own chain of actions. Distinct by construction,
// left unsorted.
inline void collect_probes(int depth, const std::vector<Action> &actions, std::size_t cap,
                           std::map<int, std::vector<Client>> &memo) {
    if (memo.count(depth))
        return;
    std::vector<Client> out{Client::nil(), Client::ok()};
    if (depth >= 1) {
        const std::size_t n = actions.size();
        if (n >= 63 || (std::uint64_t{1} << n) > cap)
            throw ResourceError("probe client sums", cap);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            std::optional<Client> sum;
            for (std::size_t i = 0; i < n; ++i) {
                if (!(mask >> i & 1))
                    continue;
                auto branch = Client::prefix(actions[i], Client::ok());
                sum = sum ? Client::external(*sum, branch) : branch;
            }
            out.push_back(*sum);
        }
        static const Client escape = Client::internal(Client::ok(), Client::ok());
        collect_probes(depth - 1, actions, cap, memo);
        const auto &shallower = memo.at(depth - 1);
        if (out.size() + actions.size() * shallower.size() > cap)
            throw ResourceError("probe clients", out.size() + actions.size() * shallower.size());
        for (const auto &a : actions)
            for (const auto &c : shallower)
                out.push_back(Client::external(escape, Client::prefix(a, c)));
    }
    memo.emplace(depth, std::move(out));
}

// The falsifier universe in no particular order, possibly with repeats.
inline std::vector<Client> unordered_client_universe(int max_depth, const std::vector<Action> &actions,
                                                     int exhaustive_depth, std::size_t cap) {
    if (max_depth < 0)
        throw std::invalid_argument("max_depth must be non-negative");
    auto out = contract_enumerator<ClientRole>(std::min(max_depth, exhaustive_depth), actions).all(cap);
    std::map<int, std::vector<Client>> memo;
    collect_probes(max_depth, actions, cap, memo);
    auto &probes = memo.at(max_depth);
    if (out.size() + probes.size() > cap)
        throw ResourceError("client universe", out.size() + probes.size());
    out.insert(out.end(), std::make_move_iterator(probes.begin()), std::make_move_iterator(probes.end()));
    return out;
}

} // namespace detail

/// The clients searched by `falsify`, in size-lexicographic order: every
/// client of height <= min(exhaustive_depth, max_depth), plus every probe
/// client of depth <= max_depth.
inline std::vector<Client> client_universe(int max_depth, const std::vector<Action> &actions, int exhaustive_depth,
                                           std::size_t cap) {
    auto out = detail::unordered_client_universe(max_depth, actions, exhaustive_depth, cap);
    detail::sort_unique(out);
    return out;
}

/// Fixed-length bitset over the positions of a client universe.
class SatVector {
public:
    SatVector() = default;
    explicit SatVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// First position set here but not in `other`.
    std::optional<std::size_t> first_not_in(const SatVector &other) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (auto diff = words_[w] & ~other.words_[w])
                return w * 64 + static_cast<std::size_t>(std::countr_zero(diff));
        return std::nullopt;
    }

    bool subset_of(const SatVector &other) const { return !first_not_in(other); }

    friend bool operator==(const SatVector &, const SatVector &) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// A client universe compiled to an indexed transition graph, for deciding
/// satisfaction of many clients against one server at once. Evaluation is
/// the recursive characterisation of satisfaction (a state is good iff the
/// client is `ok`, or it can move and every move leads to a good state),
/// memoised per (client node, server state).
class CompiledClientUniverse {
public:
    explicit CompiledClientUniverse(std::vector<Client> clients) : clients_(std::move(clients)) {
        roots_.reserve(clients_.size());
        ids_.reserve(clients_.size() * 2);
        for (const auto &c : clients_)
            roots_.push_back(intern(c));
    }

    const std::vector<Client> &clients() const { return clients_; }
    std::size_t size() const { return clients_.size(); }
    std::size_t node_count() const { return client_.nodes.size(); }

    SatVector satisfied_by(const Server &p) {
        compile_server(p);
        memo_.assign(client_.nodes.size() * server_.nodes.size(), 0);
        SatVector out(clients_.size());
        for (std::size_t i = 0; i < roots_.size(); ++i)
            if (eval(roots_[i], 0))
                out.set(i);
        return out;
    }

private:
    static constexpr std::uint32_t kNoAction = 0xffffffffu;

    struct Node {
        bool ok = false;
        std::uint32_t tau_begin = 0, tau_end = 0;
        std::uint32_t visible_begin = 0, visible_end = 0;
    };

    // Edges live in two flat arrays; a node owns a contiguous slice of each.
    struct Graph {
        std::vector<Node> nodes;
        std::vector<std::uint32_t> tau;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> visible;  // (action id, target)

        void clear() {
            nodes.clear();
            tau.clear();
            visible.clear();
        }
    };

    // Interning by node address with structural hash and equality. The nodes
    // are kept alive by clients_, since every step target is a subterm.
    struct NodeHash {
        std::size_t operator()(const detail::ContractNode *n) const { return n->hash; }
    };
    struct NodeEq {
        bool operator()(const detail::ContractNode *a, const detail::ContractNode *b) const {
            return detail::contract_equal(a, b);
        }
    };

    std::uint32_t action_id(const Action &a) {
        auto [it, fresh] = action_ids_.emplace(a, static_cast<std::uint32_t>(action_ids_.size()));
        return it->second;
    }

    // The client step rules, read straight off the node structure: a prefix
    // moves on its action, an internal choice silently to either branch, an
    // external choice by any move of either branch.
    // Moves are pushed on scratch_; a nested intern pops its own before the
    // push here happens, so each call's moves stay contiguous.
    void collect_moves(const detail::ContractNode *n) {
        switch (n->kind) {
        case ContractKind::prefix: {
            auto target = intern(n->left.get());
            scratch_.emplace_back(action_id(n->action), target);
            break;
        }
        case ContractKind::internal: {
            auto l = intern(n->left.get());
            scratch_.emplace_back(kNoAction, l);
            auto r = intern(n->right.get());
            scratch_.emplace_back(kNoAction, r);
            break;
        }
        case ContractKind::external:
            collect_moves(n->left.get());
            collect_moves(n->right.get());
            break;
        default:
            break;
        }
    }

    std::uint32_t intern(const Client &c) { return intern(c.node()); }

    std::uint32_t intern(const detail::ContractNode *n) {
        if (auto it = ids_.find(n); it != ids_.end())
            return it->second;
        const std::size_t mark = scratch_.size();
        collect_moves(n);
        Node node;
        node.ok = n->kind == ContractKind::ok;
        node.tau_begin = static_cast<std::uint32_t>(client_.tau.size());
        node.visible_begin = static_cast<std::uint32_t>(client_.visible.size());
        for (std::size_t i = mark; i < scratch_.size(); ++i) {
            const auto [a, target] = scratch_[i];
            if (a == kNoAction)
                client_.tau.push_back(target);
            else
                client_.visible.emplace_back(a, target);
        }
        scratch_.resize(mark);
        node.tau_end = static_cast<std::uint32_t>(client_.tau.size());
        node.visible_end = static_cast<std::uint32_t>(client_.visible.size());
        auto id = static_cast<std::uint32_t>(client_.nodes.size());
        client_.nodes.push_back(node);
        ids_.emplace(n, id);
        return id;
    }

    void compile_server(const Server &p) {
        server_.clear();
        std::unordered_map<Server, std::uint32_t> index;
        std::vector<Server> states{p};
        index.emplace(p, 0);
        for (std::size_t i = 0; i < states.size(); ++i) {
            Node node;
            node.tau_begin = static_cast<std::uint32_t>(server_.tau.size());
            node.visible_begin = static_cast<std::uint32_t>(server_.visible.size());
            for (const auto &tr : contract_steps(states[i])) {
                auto [it, fresh] = index.emplace(tr.target, static_cast<std::uint32_t>(states.size()));
                if (fresh)
                    states.push_back(tr.target);
                if (tr.label.is_tau()) {
                    server_.tau.push_back(it->second);
                } else {
                    // Keyed by the client action that synchronises with it.
                    auto found = action_ids_.find(tr.label.action().complement());
                    server_.visible.emplace_back(found == action_ids_.end() ? kNoAction : found->second,
                                                 it->second);
                }
            }
            node.tau_end = static_cast<std::uint32_t>(server_.tau.size());
            node.visible_end = static_cast<std::uint32_t>(server_.visible.size());
            server_.nodes.push_back(node);
        }
    }

    bool eval(std::uint32_t c, std::uint32_t s) {
        const Node &cn = client_.nodes[c];
        if (cn.ok)
            return true;
        auto &slot = memo_[static_cast<std::size_t>(c) * server_.nodes.size() + s];
        if (slot)
            return slot == 1;
        const Node &sn = server_.nodes[s];
        bool moved = false;
        bool good = true;
        for (auto i = sn.tau_begin; good && i < sn.tau_end; ++i) {
            moved = true;
            good = eval(c, server_.tau[i]);
        }
        for (auto i = cn.tau_begin; good && i < cn.tau_end; ++i) {
            moved = true;
            good = eval(client_.tau[i], s);
        }
        for (auto i = cn.visible_begin; good && i < cn.visible_end; ++i) {
            const auto [a, ct] = client_.visible[i];
            for (auto j = sn.visible_begin; good && j < sn.visible_end; ++j) {
                const auto [b, st] = server_.visible[j];
                if (a != b)
                    continue;
                moved = true;
                good = eval(ct, st);
            }
        }
        bool result = moved && good;
        // memo_ may not be resized during eval, so the reference stays valid.
        slot = result ? 1 : 2;
        return result;
    }

    std::vector<Client> clients_;
    std::vector<std::uint32_t> roots_;
    Graph client_;
    std::unordered_map<const detail::ContractNode *, std::uint32_t, NodeHash, NodeEq> ids_;
    std::unordered_map<Action, std::uint32_t> action_ids_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> scratch_;  // (action id or kNoAction, target)
    Graph server_;
    std::vector<std::uint8_t> memo_;
};

/// The action set the falsifier draws clients from: the bound's alphabet, the
/// names of both servers and one fresh name, in both polarities.
inline std::vector<Action> falsifier_actions(const Server &p, const Server &q, const ClientBound &bound) {
    std::set<std::string> names(bound.alphabet.begin(), bound.alphabet.end());
    for (const auto &n : names_of(p))
        names.insert(n);
    for (const auto &n : names_of(q))
        names.insert(n);
    std::vector<std::string> all(names.begin(), names.end());
    all.push_back(fresh_name(names));
    return actions_over(all);
}

/// Default client bound for a pair: depth(p) + depth(q) + 1.
inline ClientBound default_client_bound(const Server &p, const Server &q) {
    ClientBound b;
    b.max_depth = p.depth() + q.depth() + 1;
    return b;
}

/// Searches the bounded client universe for r with sat(p, r) and not
/// sat(q, r); returns the first in universe order. Every witness is
/// re-checked by path enumeration before it is returned.
inline std::optional<Client> falsify(const Server &p, const Server &q, const ClientBound &bound) {
    // Sorting a million clients costs more than evaluating them; take the
    // least witness instead.
    CompiledClientUniverse universe(detail::unordered_client_universe(
        bound.max_depth, falsifier_actions(p, q, bound), bound.exhaustive_depth, bound.cap));
    auto vp = universe.satisfied_by(p);
    auto vq = universe.satisfied_by(q);
    const Client *best = nullptr;
    for (std::size_t i = 0; i < universe.size(); ++i)
        if (vp.test(i) && !vq.test(i) && (!best || universe.clients()[i] < *best))
            best = &universe.clients()[i];
    if (!best)
        return std::nullopt;
    const Client &r = *best;
    if (!satisfies(p, r).satisfied || satisfies(q, r).satisfied)
        throw std::logic_error("falsifier witness " + to_string(r) + " failed its satisfaction re-check");
    return r;
}

/// The decision, and on failure a concrete distinguishing client from the
/// falsifier when one exists in the bound.
inline RefinementReport refines_with_witness(const Server &p, const Server &q, const ClientBound &bound) {
    auto report = refines(p, q);
    if (!report.holds)
        report.witness_client = falsify(p, q, bound);
    return report;
}

} // namespace contractmon
