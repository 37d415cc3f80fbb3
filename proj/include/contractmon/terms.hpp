#pragma once

// Abstract syntax for server/client contracts and monitors.
//
// Terms are immutable trees of reference-counted nodes. Copying a term is a
// pointer copy; equality is structural. Every node caches its hash, size
// (node count), height (every constructor counts as a level) and prefix
// depth (only prefixes count, choices take the max of their branches).

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace contractmon {

enum class Polarity : std::uint8_t { plain, co };

inline bool is_reserved_word(std::string_view text) {
    return text == "ok" || text == "yes" || text == "no" || text == "end";
}

inline bool is_valid_name(std::string_view text) {
    if (text.empty() || text.front() < 'a' || text.front() > 'z')
        return false;
    for (char c : text) {
        bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (!alnum && c != '_')
            return false;
    }
    return !is_reserved_word(text);
}

/// A name or co-name. Ordered by name, then plain before co.
class Action {
public:
    Action() = default;
    explicit Action(std::string name, Polarity polarity = Polarity::plain)
        : name_(std::move(name)), polarity_(polarity) {
        if (!is_valid_name(name_))
            throw std::invalid_argument("invalid action name '" + name_ + "'");
    }

    static Action plain(std::string name) { return Action(std::move(name), Polarity::plain); }
    static Action co(std::string name) { return Action(std::move(name), Polarity::co); }

    const std::string &name() const { return name_; }
    Polarity polarity() const { return polarity_; }
    bool is_co() const { return polarity_ == Polarity::co; }

    Action complement() const {
        Action out = *this;
        out.polarity_ = is_co() ? Polarity::plain : Polarity::co;
        return out;
    }

    friend bool operator==(const Action &, const Action &) = default;
    friend std::strong_ordering operator<=>(const Action &a, const Action &b) {
        if (auto c = a.name_ <=> b.name_; c != 0)
            return c;
        return a.polarity_ <=> b.polarity_;
    }

private:
    std::string name_;
    Polarity polarity_ = Polarity::plain;
};

inline std::string to_string(const Action &a) { return a.is_co() ? "~" + a.name() : a.name(); }

inline std::size_t hash_value(const Action &a) {
    return std::hash<std::string>{}(a.name()) * 2 + (a.is_co() ? 1 : 0);
}

using Trace = std::vector<Action>;
using ActionSet = std::set<Action>;

/// Both polarities of every name, in action order.
inline std::vector<Action> actions_over(const std::vector<std::string> &names) {
    std::set<Action> out;
    for (const auto &n : names) {
        out.insert(Action::plain(n));
        out.insert(Action::co(n));
    }
    return {out.begin(), out.end()};
}

namespace detail {

inline std::size_t mix(std::size_t seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Contracts
// ---------------------------------------------------------------------------

enum class ContractKind : std::uint8_t { nil, ok, prefix, external, internal };

struct ServerRole {};
struct ClientRole {};

namespace detail {

struct ContractNode {
    ContractKind kind;
    Action action;
    std::shared_ptr<const ContractNode> left;  // continuation for prefixes
    std::shared_ptr<const ContractNode> right;
    std::size_t hash = 0;
    std::size_t size = 1;
    int height = 0;
    int depth = 0;
    bool has_ok = false;
};

using ContractPtr = std::shared_ptr<const ContractNode>;

inline ContractPtr make_contract(ContractKind kind, Action action, ContractPtr left, ContractPtr right) {
    auto n = std::make_shared<ContractNode>();
    n->kind = kind;
    n->action = std::move(action);
    n->left = std::move(left);
    n->right = std::move(right);
    std::size_t h = static_cast<std::size_t>(kind) + 1;
    if (kind == ContractKind::prefix)
        h = mix(h, hash_value(n->action));
    if (n->left) {
        h = mix(h, n->left->hash);
        n->size += n->left->size;
        n->height = n->left->height + 1;
        n->has_ok = n->left->has_ok;
    }
    if (n->right) {
        h = mix(h, n->right->hash);
        n->size += n->right->size;
        n->height = std::max(n->height, n->right->height + 1);
        n->has_ok = n->has_ok || n->right->has_ok;
    }
    switch (kind) {
    case ContractKind::ok:
        n->has_ok = true;
        break;
    case ContractKind::prefix:
        n->depth = n->left->depth + 1;
        break;
    case ContractKind::external:
    case ContractKind::internal:
        n->depth = std::max(n->left->depth, n->right->depth);
        break;
    default:
        break;
    }
    n->hash = h;
    return n;
}

inline bool contract_equal(const ContractNode *a, const ContractNode *b) {
    if (a == b)
        return true;
    if (a->hash != b->hash || a->kind != b->kind || a->size != b->size)
        return false;
    switch (a->kind) {
    case ContractKind::nil:
    case ContractKind::ok:
        return true;
    case ContractKind::prefix:
        return a->action == b->action && contract_equal(a->left.get(), b->left.get());
    default:
        return contract_equal(a->left.get(), b->left.get()) && contract_equal(a->right.get(), b->right.get());
    }
}

// Size-lexicographic: size, constructor, action, then children left to right.
inline std::strong_ordering contract_compare(const ContractNode *a, const ContractNode *b) {
    if (a == b)
        return std::strong_ordering::equal;
    if (auto c = a->size <=> b->size; c != 0)
        return c;
    if (auto c = a->kind <=> b->kind; c != 0)
        return c;
    switch (a->kind) {
    case ContractKind::nil:
    case ContractKind::ok:
        return std::strong_ordering::equal;
    case ContractKind::prefix:
        if (auto c = a->action <=> b->action; c != 0)
            return c;
        return contract_compare(a->left.get(), b->left.get());
    default:
        if (auto c = contract_compare(a->left.get(), b->left.get()); c != 0)
            return c;
        return contract_compare(a->right.get(), b->right.get());
    }
}

} // namespace detail

template <class Role>
class Contract {
public:
    static constexpr bool is_client = std::same_as<Role, ClientRole>;

    Contract() : node_(nil_node()) {}

    static Contract nil() { return Contract(nil_node()); }

    static Contract ok()
        requires is_client
    {
        static const detail::ContractPtr node = detail::make_contract(ContractKind::ok, {}, nullptr, nullptr);
        return Contract(node);
    }

    static Contract prefix(Action a, const Contract &continuation) {
        return Contract(detail::make_contract(ContractKind::prefix, std::move(a), continuation.node_, nullptr));
    }
    static Contract external(const Contract &l, const Contract &r) {
        return Contract(detail::make_contract(ContractKind::external, {}, l.node_, r.node_));
    }
    static Contract internal(const Contract &l, const Contract &r) {
        return Contract(detail::make_contract(ContractKind::internal, {}, l.node_, r.node_));
    }

    ContractKind kind() const { return node_->kind; }
    bool is_nil() const { return kind() == ContractKind::nil; }
    bool is_ok() const { return kind() == ContractKind::ok; }

    /// Only meaningful for prefixes.
    const Action &action() const { return node_->action; }
    Contract continuation() const { return Contract(node_->left); }
    Contract left() const { return Contract(node_->left); }
    Contract right() const { return Contract(node_->right); }

    std::size_t hash() const { return node_->hash; }
    std::size_t size() const { return node_->size; }
    int height() const { return node_->height; }
    int depth() const { return node_->depth; }
    bool contains_ok() const { return node_->has_ok; }

    const detail::ContractNode *node() const { return node_.get(); }

    friend bool operator==(const Contract &a, const Contract &b) {
        return detail::contract_equal(a.node_.get(), b.node_.get());
    }
    friend std::strong_ordering operator<=>(const Contract &a, const Contract &b) {
        return detail::contract_compare(a.node_.get(), b.node_.get());
    }

private:
    template <class>
    friend class Contract;
    template <class To, class From>
    friend Contract<To> contract_cast(const Contract<From> &);

    explicit Contract(detail::ContractPtr node) : node_(std::move(node)) {}

    static const detail::ContractPtr &nil_node() {
        static const detail::ContractPtr node = detail::make_contract(ContractKind::nil, {}, nullptr, nullptr);
        return node;
    }

    detail::ContractPtr node_;
};

using Server = Contract<ServerRole>;
using Client = Contract<ClientRole>;

/// Reinterprets a term under another role. Throws when a client term holding
/// `ok` is cast to a server.
template <class To, class From>
Contract<To> contract_cast(const Contract<From> &term) {
    if constexpr (std::same_as<To, ServerRole>) {
        if (term.contains_ok())
            throw std::invalid_argument("'ok' cannot occur in a server term");
    }
    return Contract<To>(term.node_);
}

inline Client as_client(const Server &s) { return contract_cast<ClientRole>(s); }

// ---------------------------------------------------------------------------
// Monitors
// ---------------------------------------------------------------------------

enum class Verdict : std::uint8_t { yes, no, end };

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::yes:
        return "yes";
    case Verdict::no:
        return "no";
    case Verdict::end:
        return "end";
    }
    return "?";
}

struct Pattern {
    Action action;
    bool negated = false;

    static Pattern is(Action a) { return {std::move(a), false}; }
    static Pattern is_not(Action a) { return {std::move(a), true}; }

    bool matches(const Action &observed) const { return negated ? observed != action : observed == action; }

    friend bool operator==(const Pattern &, const Pattern &) = default;
    friend std::strong_ordering operator<=>(const Pattern &a, const Pattern &b) {
        if (auto c = a.action <=> b.action; c != 0)
            return c;
        return a.negated <=> b.negated;
    }
};

inline std::string to_string(const Pattern &p) { return (p.negated ? "!" : "") + to_string(p.action); }

enum class MonitorKind : std::uint8_t { verdict, prefix, choice, conjunction };

namespace detail {

struct MonitorNode {
    MonitorKind kind;
    Verdict verdict = Verdict::end;
    Pattern pattern;
    std::shared_ptr<const MonitorNode> left;
    std::shared_ptr<const MonitorNode> right;
    std::size_t hash = 0;
    std::size_t size = 1;
    int height = 0;
    int depth = 0;
};

using MonitorPtr = std::shared_ptr<const MonitorNode>;

inline MonitorPtr make_monitor(MonitorKind kind, Verdict v, Pattern pat, MonitorPtr left, MonitorPtr right) {
    auto n = std::make_shared<MonitorNode>();
    n->kind = kind;
    n->verdict = v;
    n->pattern = std::move(pat);
    n->left = std::move(left);
    n->right = std::move(right);
    std::size_t h = static_cast<std::size_t>(kind) + 17;
    if (kind == MonitorKind::verdict)
        h = mix(h, static_cast<std::size_t>(v));
    if (kind == MonitorKind::prefix)
        h = mix(h, hash_value(n->pattern.action) * 2 + (n->pattern.negated ? 1 : 0));
    if (n->left) {
        h = mix(h, n->left->hash);
        n->size += n->left->size;
        n->height = n->left->height + 1;
        n->depth = n->left->depth + (kind == MonitorKind::prefix ? 1 : 0);
    }
    if (n->right) {
        h = mix(h, n->right->hash);
        n->size += n->right->size;
        n->height = std::max(n->height, n->right->height + 1);
        n->depth = std::max(n->depth, n->right->depth);
    }
    n->hash = h;
    return n;
}

inline bool monitor_equal(const MonitorNode *a, const MonitorNode *b) {
    if (a == b)
        return true;
    if (a->hash != b->hash || a->kind != b->kind || a->size != b->size)
        return false;
    switch (a->kind) {
    case MonitorKind::verdict:
        return a->verdict == b->verdict;
    case MonitorKind::prefix:
        return a->pattern == b->pattern && monitor_equal(a->left.get(), b->left.get());
    default:
        return monitor_equal(a->left.get(), b->left.get()) && monitor_equal(a->right.get(), b->right.get());
    }
}

inline std::strong_ordering monitor_compare(const MonitorNode *a, const MonitorNode *b) {
    if (a == b)
        return std::strong_ordering::equal;
    if (auto c = a->size <=> b->size; c != 0)
        return c;
    if (auto c = a->kind <=> b->kind; c != 0)
        return c;
    switch (a->kind) {
    case MonitorKind::verdict:
        return a->verdict <=> b->verdict;
    case MonitorKind::prefix:
        if (auto c = a->pattern <=> b->pattern; c != 0)
            return c;
        return monitor_compare(a->left.get(), b->left.get());
    default:
        if (auto c = monitor_compare(a->left.get(), b->left.get()); c != 0)
            return c;
        return monitor_compare(a->right.get(), b->right.get());
    }
}

} // namespace detail

class Monitor {
public:
    Monitor() : Monitor(verdict(Verdict::end)) {}

    static Monitor verdict(Verdict v) {
        static const detail::MonitorPtr nodes[] = {
            detail::make_monitor(MonitorKind::verdict, Verdict::yes, {}, nullptr, nullptr),
            detail::make_monitor(MonitorKind::verdict, Verdict::no, {}, nullptr, nullptr),
            detail::make_monitor(MonitorKind::verdict, Verdict::end, {}, nullptr, nullptr),
        };
        return Monitor(nodes[static_cast<int>(v)]);
    }
    static Monitor yes() { return verdict(Verdict::yes); }
    static Monitor no() { return verdict(Verdict::no); }
    static Monitor end() { return verdict(Verdict::end); }

    static Monitor prefix(Pattern p, const Monitor &continuation) {
        return Monitor(detail::make_monitor(MonitorKind::prefix, Verdict::end, std::move(p), continuation.node_, nullptr));
    }
    static Monitor choice(const Monitor &l, const Monitor &r) {
        return Monitor(detail::make_monitor(MonitorKind::choice, Verdict::end, {}, l.node_, r.node_));
    }
    static Monitor conjunction(const Monitor &l, const Monitor &r) {
        return Monitor(detail::make_monitor(MonitorKind::conjunction, Verdict::end, {}, l.node_, r.node_));
    }

    MonitorKind kind() const { return node_->kind; }
    bool is_verdict() const { return kind() == MonitorKind::verdict; }
    Verdict verdict() const { return node_->verdict; }
    const Pattern &pattern() const { return node_->pattern; }
    Monitor continuation() const { return Monitor(node_->left); }
    Monitor left() const { return Monitor(node_->left); }
    Monitor right() const { return Monitor(node_->right); }

    std::size_t hash() const { return node_->hash; }
    std::size_t size() const { return node_->size; }
    int height() const { return node_->height; }
    int depth() const { return node_->depth; }

    friend bool operator==(const Monitor &a, const Monitor &b) {
        return detail::monitor_equal(a.node_.get(), b.node_.get());
    }
    friend std::strong_ordering operator<=>(const Monitor &a, const Monitor &b) {
        return detail::monitor_compare(a.node_.get(), b.node_.get());
    }

private:
    explicit Monitor(detail::MonitorPtr node) : node_(std::move(node)) {}

    detail::MonitorPtr node_;
};

// ---------------------------------------------------------------------------
// Structural queries
// ---------------------------------------------------------------------------

template <class Role>
void collect_alphabet(const Contract<Role> &t, ActionSet &out) {
    switch (t.kind()) {
    case ContractKind::prefix:
        out.insert(t.action());
        collect_alphabet(t.continuation(), out);
        break;
    case ContractKind::external:
    case ContractKind::internal:
        collect_alphabet(t.left(), out);
        collect_alphabet(t.right(), out);
        break;
    default:
        break;
    }
}

inline void collect_alphabet(const Monitor &m, ActionSet &out) {
    switch (m.kind()) {
    case MonitorKind::prefix:
        out.insert(m.pattern().action);
        collect_alphabet(m.continuation(), out);
        break;
    case MonitorKind::choice:
    case MonitorKind::conjunction:
        collect_alphabet(m.left(), out);
        collect_alphabet(m.right(), out);
        break;
    default:
        break;
    }
}

/// Actions occurring syntactically; patterns contribute their action.
template <class Term>
ActionSet alphabet(const Term &t) {
    ActionSet out;
    collect_alphabet(t, out);
    return out;
}

/// Names (polarity dropped) occurring in the term.
template <class Term>
std::set<std::string> names_of(const Term &t) {
    std::set<std::string> out;
    for (const auto &a : alphabet(t))
        out.insert(a.name());
    return out;
}

template <class Term>
int depth(const Term &t) {
    return t.depth();
}

} // namespace contractmon

template <class Role>
struct std::hash<contractmon::Contract<Role>> {
    std::size_t operator()(const contractmon::Contract<Role> &c) const noexcept { return c.hash(); }
};

template <>
struct std::hash<contractmon::Monitor> {
    std::size_t operator()(const contractmon::Monitor &m) const noexcept { return m.hash(); }
};

template <>
struct std::hash<contractmon::Action> {
    std::size_t operator()(const contractmon::Action &a) const noexcept { return contractmon::hash_value(a); }
};
