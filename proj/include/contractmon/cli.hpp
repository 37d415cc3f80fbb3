#pragma once

// Command-line front end. `run` is the whole program minus process exit, so
// tests can drive it in-process.
//
// Exit status: 0 computed and the property holds, 1 computed and it fails,
// 2 usage or parse error, 3 resource cap exceeded.

#include "contractmon/contractmon.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace contractmon::cli {

using nlohmann::json;

enum ExitCode : int { kHolds = 0, kFails = 1, kUsage = 2, kResource = 3 };

/// `@path` reads the term from a file; anything else is the term itself.
inline std::string load_term_text(const std::string &arg) {
    if (arg.empty() || arg.front() != '@')
        return arg;
    std::ifstream in(arg.substr(1), std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read term file '" + arg.substr(1) + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' || text.back() == '\t'))
        text.pop_back();
    return text;
}

/// Splits "a,b" into names, validating each.
inline std::vector<std::string> parse_names(const std::string &list) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= list.size() && !list.empty()) {
        auto comma = list.find(',', start);
        auto item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!is_valid_name(item))
            throw std::invalid_argument("invalid name '" + item + "' in alphabet list");
        out.push_back(item);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

inline json actions_json(const Trace &t) {
    json out = json::array();
    for (const auto &a : t)
        out.push_back(to_string(a));
    return out;
}

inline json action_set_json(const ActionSet &s) { return actions_json(Trace(s.begin(), s.end())); }

inline json state_json(const SystemState &s) { return {{"client", to_string(s.client)}, {"server", to_string(s.server)}}; }

inline json monitored_json(const MonitoredState &s) {
    return {{"monitor", to_string(s.monitor)}, {"server", to_string(s.server)}, {"rejecting", is_rejection_state(s.monitor)}};
}

inline std::string state_text(const SystemState &s) { return to_string(s.client) + " || " + to_string(s.server); }

inline std::string monitored_text(const MonitoredState &s) {
    return "<" + to_string(s.monitor) + ", " + to_string(s.server) + ">";
}

inline std::string trace_text(const Trace &t) { return t.empty() ? "(empty)" : to_string(t); }

struct Options {
    bool json = false;
    std::string kind = "server";
    std::vector<std::string> terms;
    bool reachable = false;
    bool falsify = false;
    int depth = -1;
    std::string alphabet;
    std::string trace;
    bool trace_given = false;
    bool all = false;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct Context {
    const Options &opt;
    std::ostream &out;

    void emit(const json &j, const std::string &text) const {
        if (opt.json)
            out << j.dump(2) << "\n";
        else
            out << text;
    }
};

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline int cmd_parse(const Context &cx) {
    auto kind = cx.opt.kind == "client" ? TermKind::client : cx.opt.kind == "monitor" ? TermKind::monitor : TermKind::server;
    auto term = parse(load_term_text(cx.opt.terms.at(0)), kind);
    auto info = std::visit(
        [](const auto &t) {
            return std::tuple{t.depth(), t.height(), t.size(), alphabet(t)};
        },
        term);
    auto [d, h, n, alpha] = info;
    json j{{"command", "parse"}, {"kind", to_string(kind)}, {"term", to_string(term)}, {"depth", d},
           {"height", h},        {"size", n},               {"alphabet", action_set_json(alpha)}};
    std::ostringstream os;
    os << to_string(term) << "\n"
       << "kind: " << to_string(kind) << ", depth: " << d << ", height: " << h << ", size: " << n << "\n";
    cx.emit(j, os.str());
    return kHolds;
}

template <class Role>
int lts_for(const Context &cx, const Contract<Role> &t, std::string_view kind) {
    json transitions = json::array();
    std::ostringstream os;
    auto add = [&](const auto &from, const Label &l, const auto &to) {
        transitions.push_back({{"from", to_string(from)}, {"label", to_string(l)}, {"to", to_string(to)}});
        os << to_string(from) << "  --" << to_string(l) << "-->  " << to_string(to) << "\n";
    };
    if (cx.opt.reachable) {
        auto g = reachable_lts(t);
        for (const auto &[from, label, to] : g.transitions)
            add(g.states[from], label, g.states[to]);
    } else {
        for (const auto &tr : contract_steps(t))
            add(t, tr.label, tr.target);
    }
    if (transitions.empty())
        os << to_string(t) << " has no transitions\n";
    cx.emit({{"command", "lts"}, {"kind", kind}, {"term", to_string(t)}, {"transitions", transitions}}, os.str());
    return kHolds;
}

inline int cmd_lts(const Context &cx) {
    auto text = load_term_text(cx.opt.terms.at(0));
    if (cx.opt.kind == "client")
        return lts_for(cx, parse_client(text), "client");
    if (cx.opt.kind == "monitor")
        throw std::invalid_argument("lts takes a server or client term; use `monitor` for monitors");
    return lts_for(cx, parse_server(text), "server");
}

inline int cmd_computations(const Context &cx) {
    auto r = parse_client(load_term_text(cx.opt.terms.at(0)));
    auto p = parse_server(load_term_text(cx.opt.terms.at(1)));
    json list = json::array();
    std::ostringstream os;
    std::size_t count = 0;
    std::size_t cap = default_cap();
    for_each_maximal_computation({r, p}, [&](const Computation &c) {
        if (++count > cap)
            throw ResourceError("computation enumeration", count - 1);
        json states = json::array();
        for (const auto &s : c)
            states.push_back(state_json(s));
        list.push_back({{"states", states}, {"successful", is_successful(c)}});
        os << (is_successful(c) ? "[success] " : "[failure] ");
        for (std::size_t i = 0; i < c.size(); ++i)
            os << (i ? "  -tau->  " : "") << state_text(c[i]);
        os << "\n";
        return true;
    });
    cx.emit({{"command", "computations"}, {"client", to_string(r)}, {"server", to_string(p)}, {"computations", list}},
            os.str());
    return kHolds;
}

inline int cmd_sat(const Context &cx) {
    auto r = parse_client(load_term_text(cx.opt.terms.at(0)));
    auto p = parse_server(load_term_text(cx.opt.terms.at(1)));
    auto rep = satisfies(p, r);
    json witness = nullptr;
    std::ostringstream os;
    os << (rep.satisfied ? "satisfied" : "not satisfied") << "\n";
    if (rep.witness_path) {
        witness = json::array();
        os << "unsuccessful computation:\n";
        for (std::size_t i = 0; i < rep.witness_path->size(); ++i) {
            witness.push_back(state_json((*rep.witness_path)[i]));
            os << (i ? "  -tau->  " : "  ") << state_text((*rep.witness_path)[i]) << "\n";
        }
    }
    cx.emit({{"command", "sat"},
             {"client", to_string(r)},
             {"server", to_string(p)},
             {"satisfied", rep.satisfied},
             {"paths_explored", rep.paths_explored},
             {"witness", witness}},
            os.str());
    return rep.satisfied ? kHolds : kFails;
}

inline int cmd_refines(const Context &cx) {
    auto p = parse_server(load_term_text(cx.opt.terms.at(0)));
    auto q = parse_server(load_term_text(cx.opt.terms.at(1)));
    auto bound = default_client_bound(p, q);
    if (cx.opt.depth >= 0)
        bound.max_depth = cx.opt.depth;
    if (!cx.opt.alphabet.empty())
        bound.alphabet = parse_names(cx.opt.alphabet);
    auto rep = cx.opt.falsify ? refines_with_witness(p, q, bound) : refines(p, q);
    std::ostringstream os;
    os << (rep.holds ? "holds" : "does not hold") << "\n";
    if (rep.witness_trace)
        os << "violating trace: " << trace_text(*rep.witness_trace) << "\n";
    if (rep.witness_client)
        os << "distinguishing client: " << to_string(*rep.witness_client) << "\n";
    else if (cx.opt.falsify && !rep.holds)
        os << "no distinguishing client within client depth " << bound.max_depth << "\n";
    cx.emit({{"command", "refines"},
             {"p", to_string(p)},
             {"q", to_string(q)},
             {"holds", rep.holds},
             {"witness_trace", rep.witness_trace ? actions_json(*rep.witness_trace) : json(nullptr)},
             {"witness_client", rep.witness_client ? json(to_string(*rep.witness_client)) : json(nullptr)}},
            os.str());
    return rep.holds ? kHolds : kFails;
}

inline int cmd_synth(const Context &cx) {
    auto p = parse_server(load_term_text(cx.opt.terms.at(0)));
    SynthesisConfig cfg;
    if (!cx.opt.alphabet.empty()) {
        auto acts = actions_over(parse_names(cx.opt.alphabet));
        cfg = SynthesisConfig::finite_alphabet(ActionSet(acts.begin(), acts.end()));
    }
    auto m = synthesize(p, cfg);
    cx.emit({{"command", "synth"},
             {"server", to_string(p)},
             {"monitor", to_string(m)},
             {"nil_mode", cfg.nil_mode == NilMode::inconclusive ? "inconclusive" : "finite_alphabet"}},
            to_string(m) + "\n");
    return kHolds;
}

inline int cmd_monitor(const Context &cx) {
    auto m = parse_monitor(load_term_text(cx.opt.terms.at(0)));
    auto p = parse_server(load_term_text(cx.opt.terms.at(1)));
    MonitoredState root{m, p};
    std::ostringstream os;
    json j{{"command", "monitor"}, {"monitor", to_string(m)}, {"server", to_string(p)}};
    bool rejected = false;

    auto step_json = [](const MonitoredStep &s) {
        json x = monitored_json(s.next);
        x["label"] = to_string(s.label);
        x["rule"] = std::string(to_string(s.rule));
        return x;
    };

    if (cx.opt.trace_given) {
        // Monitored states reachable along the weak trace.
        Trace t = parse_trace(cx.opt.trace);
        auto closure = [](std::vector<MonitoredState> states) {
            std::unordered_set<MonitoredState, MonitoredStateHash> seen(states.begin(), states.end());
            for (std::size_t i = 0; i < states.size(); ++i)
                for (auto &s : instrumented_steps(states[i]))
                    if (s.label.is_tau() && seen.insert(s.next).second)
                        states.push_back(s.next);
            return states;
        };
        auto cur = closure({root});
        for (const auto &a : t) {
            std::vector<MonitoredState> next;
            for (const auto &s : cur)
                for (auto &st : instrumented_steps(s))
                    if (!st.label.is_tau() && st.label.action() == a)
                        next.push_back(st.next);
            cur = closure(std::move(next));
        }
        json finals = json::array();
        os << "after " << trace_text(t) << ":\n";
        for (const auto &s : cur) {
            finals.push_back(monitored_json(s));
            rejected = rejected || is_rejection_state(s.monitor);
            os << "  " << monitored_text(s) << (is_rejection_state(s.monitor) ? "  [rejection]" : "") << "\n";
        }
        if (cur.empty())
            os << "  (the server cannot exhibit this trace)\n";
        j["mode"] = "trace";
        j["trace"] = actions_json(t);
        j["states"] = finals;
    } else if (cx.opt.all) {
        json comps = json::array();
        std::vector<MonitoredStep> path;
        std::size_t count = 0;
        std::size_t cap = default_cap();
        std::function<void(const MonitoredState &)> walk = [&](const MonitoredState &s) {
            auto steps = instrumented_steps(s);
            if (steps.empty()) {
                if (++count > cap)
                    throw ResourceError("monitored computation enumeration", count - 1);
                json c = json::array();
                bool rej = is_rejection_state(m);
                os << monitored_text(root);
                for (const auto &st : path) {
                    c.push_back(step_json(st));
                    rej = rej || is_rejection_state(st.next.monitor);
                    os << "  -" << to_string(st.label) << "[" << to_string(st.rule) << "]->  " << monitored_text(st.next);
                }
                os << (rej ? "  [rejection reached]" : "") << "\n";
                rejected = rejected || rej;
                comps.push_back({{"steps", c}, {"rejection_reached", rej}});
                return;
            }
            for (auto &st : steps) {
                path.push_back(st);
                walk(path.back().next);
                path.pop_back();
            }
        };
        walk(root);
        j["mode"] = "all";
        j["computations"] = comps;
    } else {
        json steps = json::array();
        for (const auto &st : instrumented_steps(root)) {
            steps.push_back(step_json(st));
            os << monitored_text(root) << "  -" << to_string(st.label) << "[" << to_string(st.rule) << "]->  "
               << monitored_text(st.next) << "\n";
        }
        if (steps.empty())
            os << monitored_text(root) << " has no transitions\n";
        j["mode"] = "steps";
        j["steps"] = steps;
        j["rejection_reached"] = is_rejection_state(m);
        cx.emit(j, os.str());
        return kHolds;
    }
    j["rejection_reached"] = rejected;
    cx.emit(j, os.str());
    return rejected ? kHolds : kFails;
}

inline int cmd_reject(const Context &cx) {
    auto p = parse_server(load_term_text(cx.opt.terms.at(0)));
    auto m = parse_monitor(load_term_text(cx.opt.terms.at(1)));
    auto w = rejects(p, m);
    std::ostringstream os;
    json j{{"command", "reject"}, {"server", to_string(p)}, {"monitor", to_string(m)}, {"rejected", w.has_value()}};
    if (w) {
        json path = json::array();
        os << "rejected on trace " << trace_text(w->trace) << "\n" << "  " << monitored_text(w->start) << "\n";
        for (const auto &st : w->path) {
            json x = monitored_json(st.next);
            x["label"] = to_string(st.label);
            x["rule"] = std::string(to_string(st.rule));
            path.push_back(x);
            os << "  -" << to_string(st.label) << "[" << to_string(st.rule) << "]->  " << monitored_text(st.next) << "\n";
        }
        j["trace"] = actions_json(w->trace);
        j["path"] = path;
    } else {
        os << "not rejected\n";
        j["trace"] = nullptr;
        j["path"] = nullptr;
    }
    cx.emit(j, os.str());
    return w ? kHolds : kFails;
}

/// Seed for sample i of a fuzz run: independent of how samples are split
/// across workers.
inline std::uint64_t sample_seed(std::uint64_t seed, std::size_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct SoundnessSample {
    Server p, q;
    bool rejected = false;
    bool below = false;
    Trace trace;
};

/// Draws (p, q) for sample i and evaluates both sides of "rej(q, syn(p))
/// implies not p <= q".
inline SoundnessSample soundness_sample(std::uint64_t seed, std::size_t i, int depth,
                                        const std::vector<std::string> &alphabet) {
    GenConfig cfg;
    cfg.seed = sample_seed(seed, i);
    cfg.max_depth = depth;
    cfg.alphabet = alphabet;
    Generator gen(cfg);
    SoundnessSample s{gen.server(), gen.server()};
    auto w = rejects(s.q, synthesize(s.p));
    s.rejected = w.has_value();
    if (w)
        s.trace = w->trace;
    s.below = refines(s.p, s.q).holds;
    return s;
}

inline int cmd_check_soundness(const Context &cx) {
    int depth = cx.opt.depth >= 0 ? cx.opt.depth : 4;
    auto alphabet = cx.opt.alphabet.empty() ? std::vector<std::string>{"a", "b", "c"} : parse_names(cx.opt.alphabet);
    std::size_t n = cx.opt.samples;
    unsigned jobs = std::max(1u, cx.opt.jobs);
    std::vector<SoundnessSample> results(n);
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += jobs)
                    results[i] = soundness_sample(cx.opt.seed, i, depth, alphabet);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : workers)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    std::size_t rejected = 0, below = 0;
    json violations = json::array();
    std::ostringstream vs;
    for (const auto &s : results) {
        rejected += s.rejected;
        below += s.below;
        if (s.rejected && s.below) {
            violations.push_back({{"p", to_string(s.p)}, {"q", to_string(s.q)}, {"trace", actions_json(s.trace)}});
            vs << "  violation: p = " << to_string(s.p) << ", q = " << to_string(s.q) << "\n";
        }
    }
    json alpha = alphabet;
    std::ostringstream os;
    os << "samples: " << n << ", depth: " << depth << ", seed: " << cx.opt.seed << "\n"
       << "rejected pairs: " << rejected << ", refining pairs: " << below << "\n"
       << "violations: " << violations.size() << "\n"
       << vs.str();
    cx.emit({{"command", "check-soundness"},
             {"samples", n},
             {"depth", depth},
             {"alphabet", alpha},
             {"seed", cx.opt.seed},
             {"rejected_pairs", rejected},
             {"refining_pairs", below},
             {"violations", violations},
             {"holds", violations.empty()}},
            os.str());
    return violations.empty() ? kHolds : kFails;
}

inline json check_json(const BoundedCheck &c) {
    return {{"holds_in_bound", c.holds_in_bound},
            {"counterexample", c.counterexample ? json(to_string(*c.counterexample)) : json(nullptr)},
            {"counterexample_count", c.counterexample_count},
            {"servers_checked", c.servers_checked}};
}

inline int cmd_check_monitorability(const Context &cx) {
    auto p = parse_server(load_term_text(cx.opt.terms.at(0)));
    auto m = parse_monitor(load_term_text(cx.opt.terms.at(1)));
    UniverseBound b;
    b.max_depth = cx.opt.depth >= 0 ? cx.opt.depth : 2;
    if (!cx.opt.alphabet.empty())
        b.alphabet = parse_names(cx.opt.alphabet);
    auto v = check_monitorability(p, m, b);
    auto line = [](std::string_view what, const BoundedCheck &c) {
        std::string s = std::string(what) + ": ";
        s += c.holds_in_bound ? "holds-in-bound" : "refuted by q = " + to_string(*c.counterexample);
        s += " (" + std::to_string(c.servers_checked) + " servers checked)\n";
        return s;
    };
    json alpha = universe_names(p, m, b);
    cx.emit({{"command", "check-monitorability"},
             {"p", to_string(p)},
             {"m", to_string(m)},
             {"depth", b.max_depth},
             {"universe_alphabet", alpha},
             {"sound", check_json(v.sound)},
             {"complete", check_json(v.complete)}},
            line("sound", v.sound) + line("complete", v.complete));
    return v.sound.holds_in_bound && v.complete.holds_in_bound ? kHolds : kFails;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    Options opt;
    CLI::App app{"Contract monitoring workbench: servers, clients, refinement and monitor synthesis"};
    app.name("contractmon");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", opt.json, "Emit machine-readable JSON");

    auto term_args = [&](CLI::App *sub, std::vector<std::string> names) {
        for (const auto &n : names) {
            auto *slot = &opt.terms;
            sub->add_option_function<std::string>(
                   n, [slot](const std::string &v) { slot->push_back(v); }, "DSL term or @file")
                ->required();
        }
    };

    auto *parse_cmd = app.add_subcommand("parse", "Parse and pretty-print a term");
    term_args(parse_cmd, {"term"});
    parse_cmd->add_option("--kind", opt.kind, "server, client or monitor")
        ->check(CLI::IsMember({"server", "client", "monitor"}));

    auto *lts_cmd = app.add_subcommand("lts", "Transitions of a server or client");
    term_args(lts_cmd, {"term"});
    lts_cmd->add_option("--kind", opt.kind, "server or client")->check(CLI::IsMember({"server", "client", "monitor"}));
    lts_cmd->add_flag("--reachable", opt.reachable, "Print the whole reachable graph");

    auto *comp_cmd = app.add_subcommand("computations", "Maximal computations of client || server");
    term_args(comp_cmd, {"client", "server"});

    auto *sat_cmd = app.add_subcommand("sat", "Does the server satisfy the client?");
    term_args(sat_cmd, {"client", "server"});

    auto *ref_cmd = app.add_subcommand("refines", "Is p a subcontract of q?");
    term_args(ref_cmd, {"p", "q"});
    ref_cmd->add_flag("--falsify", opt.falsify, "Search for a distinguishing client on failure");
    ref_cmd->add_option("--depth", opt.depth, "Client depth bound for --falsify")->check(CLI::NonNegativeNumber);
    ref_cmd->add_option("--alphabet", opt.alphabet, "Extra names for falsifier clients, e.g. a,b");

    auto *syn_cmd = app.add_subcommand("synth", "Synthesise a rejection monitor");
    term_args(syn_cmd, {"p"});
    syn_cmd->add_option("--alphabet", opt.alphabet, "Finite name set (both polarities) for the nil case");

    auto *mon_cmd = app.add_subcommand("monitor", "Run a monitor over a server");
    term_args(mon_cmd, {"monitor", "server"});
    auto *trace_opt = mon_cmd->add_option("--trace", opt.trace, "Comma-separated weak trace, e.g. ~a,c");
    auto *all_opt = mon_cmd->add_flag("--all", opt.all, "Enumerate every maximal monitored computation");
    trace_opt->excludes(all_opt);

    auto *rej_cmd = app.add_subcommand("reject", "Does the monitor reject the server?");
    term_args(rej_cmd, {"server", "monitor"});

    auto *cs_cmd = app.add_subcommand("check-soundness", "Fuzz synthesis soundness over random pairs");
    cs_cmd->add_option("--samples", opt.samples, "Number of (p, q) pairs")->check(CLI::NonNegativeNumber);
    cs_cmd->add_option("--depth", opt.depth, "Maximum term height")->check(CLI::NonNegativeNumber);
    cs_cmd->add_option("--alphabet", opt.alphabet, "Names, e.g. a,b,c");
    cs_cmd->add_option("--seed", opt.seed, "Random seed");
    cs_cmd->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto *cm_cmd = app.add_subcommand("check-monitorability", "Bounded soundness and completeness of a monitor");
    term_args(cm_cmd, {"p", "monitor"});
    cm_cmd->add_option("--depth", opt.depth, "Server universe height")->check(CLI::PositiveNumber);
    cm_cmd->add_option("--alphabet", opt.alphabet, "Names of the server universe (a fresh one is added)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? 0 : kUsage;
    }
    opt.trace_given = trace_opt->count() > 0;

    Context cx{opt, out};
    auto fail_json = [&](std::string kind, const std::string &message, json extra = json::object()) {
        if (opt.json) {
            extra["error"] = std::move(kind);
            extra["message"] = message;
            out << extra.dump(2) << "\n";
        } else {
            err << "error: " << message << "\n";
        }
    };
    try {
        if (*parse_cmd)
            return cmd_parse(cx);
        if (*lts_cmd)
            return cmd_lts(cx);
        if (*comp_cmd)
            return cmd_computations(cx);
        if (*sat_cmd)
            return cmd_sat(cx);
        if (*ref_cmd)
            return cmd_refines(cx);
        if (*syn_cmd)
            return cmd_synth(cx);
        if (*mon_cmd)
            return cmd_monitor(cx);
        if (*rej_cmd)
            return cmd_reject(cx);
        if (*cs_cmd)
            return cmd_check_soundness(cx);
        if (*cm_cmd)
            return cmd_check_monitorability(cx);
    } catch (const ParseError &e) {
        fail_json("parse", e.what(),
                  {{"line", e.line()}, {"column", e.column()}, {"expected", e.expected()}});
        return kUsage;
    } catch (const ResourceError &e) {
        fail_json("resource", e.what(), {{"reached", e.reached()}});
        return kResource;
    } catch (const std::invalid_argument &e) {
        fail_json("usage", e.what());
        return kUsage;
    } catch (const std::runtime_error &e) {
        fail_json("usage", e.what());
        return kUsage;
    }
    return kUsage;
}

} // namespace contractmon::cli
