#pragma once

// Concrete syntax: a recursive-descent parser and a precedence-aware printer.
//
//   name    ::= [a-z][a-zA-Z0-9_]*        action  ::= name | "~" name
//   pattern ::= action | "!" action
//   server  ::= "0" | action "." server | server "+" server
//             | server "(+)" server | "(" server ")"
//   client  ::= server productions | "ok"
//   monitor ::= "yes" | "no" | "end" | pattern "." monitor
//             | monitor "+" monitor | monitor "*" monitor | "(" monitor ")"
//
// Binding, tightest first: "." (right-assoc), "*", "+", "(+)". Binary
// operators associate to the left.

#include "contractmon/terms.hpp"

#include <sstream>
#include <variant>

namespace contractmon {

enum class TermKind { server, client, monitor };

inline std::string_view to_string(TermKind k) {
    switch (k) {
    case TermKind::server:
        return "server";
    case TermKind::client:
        return "client";
    case TermKind::monitor:
        return "monitor";
    }
    return "?";
}

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string detail, std::vector<std::string> expected)
        : std::runtime_error(format(line, column, detail, expected)), line_(line), column_(column),
          detail_(std::move(detail)), expected_(std::move(expected)) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string &detail() const { return detail_; }
    const std::vector<std::string> &expected() const { return expected_; }

private:
    static std::string format(int line, int column, const std::string &detail,
                              const std::vector<std::string> &expected) {
        std::ostringstream os;
        os << line << ":" << column << ": " << detail;
        if (!expected.empty()) {
            os << "; expected ";
            if (expected.size() > 1)
                os << "one of ";
            for (std::size_t i = 0; i < expected.size(); ++i)
                os << (i ? ", " : "") << expected[i];
        }
        return os.str();
    }

    int line_;
    int column_;
    std::string detail_;
    std::vector<std::string> expected_;
};

namespace detail {

enum class Tok { name, tilde, bang, dot, plus, internal_plus, star, lparen, rparen, zero, eof };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

inline std::string describe(const Token &t) {
    if (t.kind == Tok::eof)
        return "end of input";
    return "'" + t.text + "'";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            int l = line_, c = col_;
            if (pos_ >= src_.size()) {
                out.push_back({Tok::eof, "", l, c});
                return out;
            }
            char ch = src_[pos_];
            if (ch >= 'a' && ch <= 'z') {
                std::size_t start = pos_;
                while (pos_ < src_.size() && is_ident_char(src_[pos_]))
                    advance();
                out.push_back({Tok::name, std::string(src_.substr(start, pos_ - start)), l, c});
                continue;
            }
            if (src_.substr(pos_, 3) == "(+)") {
                advance(3);
                out.push_back({Tok::internal_plus, "(+)", l, c});
                continue;
            }
            Tok kind;
            switch (ch) {
            case '~':
                kind = Tok::tilde;
                break;
            case '!':
                kind = Tok::bang;
                break;
            case '.':
                kind = Tok::dot;
                break;
            case '+':
                kind = Tok::plus;
                break;
            case '*':
                kind = Tok::star;
                break;
            case '(':
                kind = Tok::lparen;
                break;
            case ')':
                kind = Tok::rparen;
                break;
            case '0':
                kind = Tok::zero;
                break;
            default:
                throw ParseError(l, c, "unexpected character '" + std::string(1, ch) + "'", {});
            }
            advance();
            out.push_back({kind, std::string(1, ch), l, c});
        }
    }

private:
    static bool is_ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    }

    void skip_space() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                      src_[pos_] == '\r'))
            advance();
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    Parser(std::string_view src, TermKind kind) : toks_(Lexer(src).run()), kind_(kind) {}

    template <class Role>
    Contract<Role> contract_term() {
        auto t = contract_internal<Role>();
        expect_eof();
        return t;
    }

    Monitor monitor_term() {
        auto m = monitor_choice();
        expect_eof();
        return m;
    }

private:
    const Token &peek() const { return toks_[pos_]; }
    const Token &next() { return toks_[pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }

    [[noreturn]] void fail(const Token &t, std::vector<std::string> expected) const {
        throw ParseError(t.line, t.column, "unexpected " + describe(t), std::move(expected));
    }

    std::vector<std::string> after_term_expected() const {
        if (kind_ == TermKind::monitor)
            return {"'+'", "'*'", "')'", "end of input"};
        return {"'+'", "'(+)'", "')'", "end of input"};
    }

    void expect_eof() {
        if (!at(Tok::eof)) {
            const Token &t = peek();
            if (t.kind == Tok::star && kind_ != TermKind::monitor)
                throw ParseError(t.line, t.column, "conjunction '*' is only allowed in monitors", after_term_expected());
            if (t.kind == Tok::internal_plus && kind_ == TermKind::monitor)
                throw ParseError(t.line, t.column, "internal choice '(+)' is not allowed in monitors",
                                 after_term_expected());
            fail(t, after_term_expected());
        }
    }

    Action action_after_tilde_or_name(const std::vector<std::string> &expected) {
        bool co = false;
        if (at(Tok::tilde)) {
            next();
            co = true;
        }
        const Token &t = peek();
        if (t.kind != Tok::name || is_reserved_word(t.text)) {
            if (co)
                fail(t, {"name"});
            fail(t, expected);
        }
        next();
        return Action(t.text, co ? Polarity::co : Polarity::plain);
    }

    // contracts ------------------------------------------------------------

    template <class Role>
    Contract<Role> contract_internal() {
        auto lhs = contract_external<Role>();
        while (at(Tok::internal_plus)) {
            next();
            lhs = Contract<Role>::internal(lhs, contract_external<Role>());
        }
        return lhs;
    }

    template <class Role>
    Contract<Role> contract_external() {
        auto lhs = contract_prefixed<Role>();
        while (at(Tok::plus)) {
            next();
            lhs = Contract<Role>::external(lhs, contract_prefixed<Role>());
        }
        return lhs;
    }

    std::vector<std::string> contract_start_expected() const {
        if (kind_ == TermKind::client)
            return {"name", "'~'", "'0'", "'ok'", "'('"};
        return {"name", "'~'", "'0'", "'('"};
    }

    template <class Role>
    Contract<Role> contract_prefixed() {
        const Token &t = peek();
        switch (t.kind) {
        case Tok::zero:
            next();
            return Contract<Role>::nil();
        case Tok::lparen: {
            next();
            auto inner = contract_internal<Role>();
            if (!at(Tok::rparen))
                fail(peek(), {"')'", "'+'", "'(+)'"});
            next();
            return inner;
        }
        case Tok::bang:
            throw ParseError(t.line, t.column, "pattern complement '!' is only allowed in monitors",
                             contract_start_expected());
        case Tok::name:
            if (t.text == "ok") {
                if constexpr (Contract<Role>::is_client) {
                    next();
                    return Contract<Role>::ok();
                } else {
                    throw ParseError(t.line, t.column, "'ok' is not allowed in a server term",
                                     contract_start_expected());
                }
            }
            if (t.text == "yes" || t.text == "no" || t.text == "end")
                throw ParseError(t.line, t.column,
                                 "verdict '" + t.text + "' is not allowed in a " + std::string(to_string(kind_)) +
                                     " term",
                                 contract_start_expected());
            [[fallthrough]];
        case Tok::tilde: {
            Action a = action_after_tilde_or_name(contract_start_expected());
            if (!at(Tok::dot))
                fail(peek(), {"'.'"});
            next();
            return Contract<Role>::prefix(std::move(a), contract_prefixed<Role>());
        }
        default:
            fail(t, contract_start_expected());
        }
    }

    // monitors -------------------------------------------------------------

    static std::vector<std::string> monitor_start_expected() {
        return {"name", "'~'", "'!'", "'yes'", "'no'", "'end'", "'('"};
    }

    Monitor monitor_choice() {
        auto lhs = monitor_conj();
        while (at(Tok::plus)) {
            next();
            lhs = Monitor::choice(lhs, monitor_conj());
        }
        return lhs;
    }

    Monitor monitor_conj() {
        auto lhs = monitor_prefixed();
        while (at(Tok::star)) {
            next();
            lhs = Monitor::conjunction(lhs, monitor_prefixed());
        }
        return lhs;
    }

    Monitor monitor_prefixed() {
        const Token &t = peek();
        switch (t.kind) {
        case Tok::lparen: {
            next();
            auto inner = monitor_choice();
            if (!at(Tok::rparen))
                fail(peek(), {"')'", "'+'", "'*'"});
            next();
            return inner;
        }
        case Tok::zero:
            throw ParseError(t.line, t.column, "'0' is not allowed in a monitor; use a verdict",
                             monitor_start_expected());
        case Tok::name:
            if (t.text == "yes" || t.text == "no" || t.text == "end") {
                next();
                return Monitor::verdict(t.text == "yes" ? Verdict::yes
                                        : t.text == "no" ? Verdict::no
                                                         : Verdict::end);
            }
            if (t.text == "ok")
                throw ParseError(t.line, t.column, "'ok' is not allowed in a monitor", monitor_start_expected());
            [[fallthrough]];
        case Tok::tilde:
        case Tok::bang: {
            bool negated = false;
            if (at(Tok::bang)) {
                next();
                negated = true;
            }
            Action a = action_after_tilde_or_name(negated ? std::vector<std::string>{"name", "'~'"}
                                                          : monitor_start_expected());
            if (!at(Tok::dot))
                fail(peek(), {"'.'"});
            next();
            return Monitor::prefix(Pattern{std::move(a), negated}, monitor_prefixed());
        }
        default:
            fail(t, monitor_start_expected());
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    TermKind kind_;
};

} // namespace detail

inline Server parse_server(std::string_view text) {
    return detail::Parser(text, TermKind::server).contract_term<ServerRole>();
}

inline Client parse_client(std::string_view text) {
    return detail::Parser(text, TermKind::client).contract_term<ClientRole>();
}

inline Monitor parse_monitor(std::string_view text) { return detail::Parser(text, TermKind::monitor).monitor_term(); }

using AnyTerm = std::variant<Server, Client, Monitor>;

inline AnyTerm parse(std::string_view text, TermKind kind) {
    switch (kind) {
    case TermKind::server:
        return parse_server(text);
    case TermKind::client:
        return parse_client(text);
    case TermKind::monitor:
        return parse_monitor(text);
    }
    throw std::invalid_argument("unknown term kind");
}

/// Comma-separated actions, e.g. "~a,c". Blank input is the empty trace.
inline Trace parse_trace(std::string_view text) {
    Trace out;
    std::size_t start = 0;
    bool blank = text.find_first_not_of(" \t") == std::string_view::npos;
    if (blank)
        return out;
    int column = 1;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.size() - start
                                                                                    : comma - start);
        std::size_t b = piece.find_first_not_of(" \t");
        std::size_t e = piece.find_last_not_of(" \t");
        std::string_view item = b == std::string_view::npos ? std::string_view{} : piece.substr(b, e - b + 1);
        bool co = !item.empty() && item.front() == '~';
        std::string_view name = co ? item.substr(1) : item;
        if (!is_valid_name(name))
            throw ParseError(1, column + static_cast<int>(b == std::string_view::npos ? 0 : b),
                             "invalid action '" + std::string(item) + "' in trace", {"name", "'~'"});
        out.emplace_back(std::string(name), co ? Polarity::co : Polarity::plain);
        if (comma == std::string_view::npos)
            break;
        column += static_cast<int>(comma - start) + 1;
        start = comma + 1;
    }
    return out;
}

inline std::string to_string(const Trace &t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i)
        out += (i ? "," : "") + to_string(t[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace detail {

// Larger binds tighter.
inline int level(ContractKind k) {
    switch (k) {
    case ContractKind::internal:
        return 1;
    case ContractKind::external:
        return 2;
    default:
        return 3;
    }
}

inline int level(MonitorKind k) {
    switch (k) {
    case MonitorKind::choice:
        return 1;
    case MonitorKind::conjunction:
        return 2;
    default:
        return 3;
    }
}

template <class Role>
void print(const Contract<Role> &t, std::string &out);

template <class Role>
void print_operand(const Contract<Role> &t, int min_level, std::string &out) {
    if (level(t.kind()) < min_level) {
        out += '(';
        print(t, out);
        out += ')';
    } else {
        print(t, out);
    }
}

template <class Role>
void print(const Contract<Role> &t, std::string &out) {
    switch (t.kind()) {
    case ContractKind::nil:
        out += '0';
        break;
    case ContractKind::ok:
        out += "ok";
        break;
    case ContractKind::prefix:
        out += to_string(t.action());
        out += '.';
        print_operand(t.continuation(), 3, out);
        break;
    case ContractKind::external:
    case ContractKind::internal: {
        int lv = level(t.kind());
        print_operand(t.left(), lv, out);
        out += t.kind() == ContractKind::external ? " + " : " (+) ";
        print_operand(t.right(), lv + 1, out);
        break;
    }
    }
}

inline void print(const Monitor &m, std::string &out);

inline void print_operand(const Monitor &m, int min_level, std::string &out) {
    if (level(m.kind()) < min_level) {
        out += '(';
        print(m, out);
        out += ')';
    } else {
        print(m, out);
    }
}

inline void print(const Monitor &m, std::string &out) {
    switch (m.kind()) {
    case MonitorKind::verdict:
        out += to_string(m.verdict());
        break;
    case MonitorKind::prefix:
        out += to_string(m.pattern());
        out += '.';
        print_operand(m.continuation(), 3, out);
        break;
    case MonitorKind::choice:
    case MonitorKind::conjunction: {
        int lv = level(m.kind());
        print_operand(m.left(), lv, out);
        out += m.kind() == MonitorKind::choice ? " + " : " * ";
        print_operand(m.right(), lv + 1, out);
        break;
    }
    }
}

} // namespace detail

template <class Role>
std::string to_string(const Contract<Role> &t) {
    std::string out;
    detail::print(t, out);
    return out;
}

inline std::string to_string(const Monitor &m) {
    std::string out;
    detail::print(m, out);
    return out;
}

inline std::string to_string(const AnyTerm &t) {
    return std::visit([](const auto &x) { return to_string(x); }, t);
}

template <class Role>
std::ostream &operator<<(std::ostream &os, const Contract<Role> &t) {
    return os << to_string(t);
}

inline std::ostream &operator<<(std::ostream &os, const Monitor &m) { return os << to_string(m); }

inline std::ostream &operator<<(std::ostream &os, const Action &a) { return os << to_string(a); }

} // namespace contractmon
