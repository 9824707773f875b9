#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexord/catalog.hpp"
#include "lexord/condensation.hpp"
#include "lexord/grammar.hpp"
#include "lexord/interval.hpp"
#include "lexord/lexorder.hpp"
#include "lexord/order_term.hpp"
#include "lexord/pipeline.hpp"

namespace lexord::cli {

using json = nlohmann::json;

struct Options {
    std::string command;
    std::vector<std::string> args;
    std::optional<std::string> prefixify;
    bool encode_binary = false;
    bool gnf = false;
    std::size_t max_len = 8;
    bool json_out = false;
    bool trace = false;
    std::uint64_t seed = 0;
};

/// Text lines plus the structured result of one command.
struct Output {
    std::vector<std::string> lines;
    json result;
    json inputs = json::object();
    std::optional<json> trace;
    int exit_code = 0;
};

inline const std::map<std::string, std::size_t>& arity() {
    static const std::map<std::string, std::size_t> table{
        {"normalize", 1}, {"height", 1},   {"bound", 1},    {"member", 2},    {"enumerate", 1}, {"interval", 3},
        {"findist", 3},   {"classes", 1},  {"rank", 1},     {"condense", 1},  {"classify", 1},  {"check", 0},
    };
    return table;
}

inline PreparedGrammar prepare(const Options& o, bool force_gnf = false) {
    const std::filesystem::path path = o.args.at(0);
    if (!std::filesystem::exists(path))
        throw Error(ErrorKind::Io, "no such file '" + path.string() + "'");
    PipelineOptions p{o.prefixify, o.encode_binary, o.gnf || force_gnf};
    return PreparedGrammar(load_grammar(path), p);
}

/// A term argument names a file when one exists at that path.
inline OrderTerm load_term(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec))
        return parse_term(read_file(arg));
    return parse_term(arg);
}

inline json term_trace(const CondensationTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back(to_string(s));
    json out{{"steps", steps}, {"limit_applied", t.limit_applied}};
    out["limit_at"] = t.limit_at ? json(*t.limit_at) : json(nullptr);
    return out;
}

inline Output dispatch(const Options& o) {
    Output out;
    const auto& cmd = o.command;
    if (cmd != "check")
        out.inputs["args"] = o.args;

    if (cmd == "normalize") {
        const auto p = prepare(o, true);
        const auto text = render_grammar(p.grammar());
        out.result = text;
        std::string line;
        std::istringstream in(text);
        while (std::getline(in, line))
            out.lines.push_back(line);
    } else if (cmd == "height") {
        const auto h = height(prepare(o).grammar());
        out.result = h;
        out.lines.push_back(std::to_string(h));
    } else if (cmd == "bound") {
        const auto b = fc_rank_bound(prepare(o).grammar());
        out.result = to_string(b);
        out.lines.push_back(to_string(b));
    } else if (cmd == "member") {
        const auto p = prepare(o);
        const bool in = member(p.grammar(), p.lift(o.args[1]));
        out.result = in;
        out.lines.push_back(in ? "true" : "false");
    } else if (cmd == "enumerate") {
        const auto p = prepare(o);
        out.inputs["max_len"] = o.max_len;
        out.result = json::array();
        for (const auto& w : enumerate_window(p.grammar(), o.max_len)) {
            out.lines.push_back(p.render(w));
            out.result.push_back(p.render(w));
        }
    } else if (cmd == "interval") {
        const auto p = prepare(o);
        const auto r = interval_grammar(p.grammar(), p.lift(o.args[1]), p.lift(o.args[2]));
        const auto text = render_grammar(r.gprime);
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);)
            out.lines.push_back(line);
        out.lines.push_back("# derivations: " + std::to_string(r.derivation_count));
        out.lines.push_back("# added productions: " + std::to_string(r.added_productions.size()));
        out.result = {{"grammar", text},
                      {"derivations", r.derivation_count},
                      {"added_productions", r.added_productions.size()}};
    } else if (cmd == "findist") {
        const auto p = prepare(o);
        const bool fin = finite_distance(p.grammar(), p.lift(o.args[1]), p.lift(o.args[2]));
        out.result = fin ? "finite" : "infinite";
        out.lines.push_back(fin ? "finite" : "infinite");
    } else if (cmd == "classes") {
        const auto p = prepare(o);
        out.inputs["max_len"] = o.max_len;
        out.result = json::array();
        for (const auto& cls : sim1_partition(p.grammar(), o.max_len)) {
            json words = json::array();
            std::string line;
            for (const auto& w : cls) {
                line += (line.empty() ? "" : " ") + p.render(w);
                words.push_back(p.render(w));
            }
            out.lines.push_back(line);
            out.result.push_back(words);
        }
    } else if (cmd == "rank") {
        const auto t = fc_rank(load_term(o.args[0]));
        out.result = to_string(t.rank);
        out.lines.push_back(to_string(t.rank));
        if (o.trace) {
            out.trace = term_trace(t);
            for (std::size_t i = 0; i < t.steps.size(); ++i)
                out.lines.push_back("# " + std::to_string(i) + (t.limit_at == i ? " (limit)" : "") + ": " +
                                    to_string(t.steps[i]));
            out.lines.push_back("# outcome: " + to_string(t.outcome));
        }
    } else if (cmd == "condense") {
        const auto t = load_term(o.args[0]);
        const auto step = condense_step(t);
        out.result = to_string(step.term);
        out.lines.push_back(to_string(step.term));
        if (o.trace && !t.empty()) {
            json samples = json::array();
            for (const auto& x : sample_points(t, 8, o.seed)) {
                const auto y = step.project(x);
                samples.push_back({to_string(x), to_string(y)});
                out.lines.push_back("# " + to_string(x) + " -> " + to_string(y));
            }
            out.trace = json{{"projections", samples}};
        }
    } else if (cmd == "classify") {
        const auto c = classify(load_term(o.args[0]));
        out.result = to_string(c);
        out.lines.push_back(to_string(c));
    } else if (cmd == "check") {
        const std::string path = o.args.empty() ? "fixtures/catalog.json" : o.args[0];
        out.inputs["catalog"] = path;
        const auto report = check_catalog(load_catalog(path), o.seed);
        out.result = json::array();
        std::size_t failed = 0;
        for (const auto& l : report.lines) {
            failed += l.pass ? 0 : 1;
            out.lines.push_back(std::string(l.pass ? "PASS " : "FAIL ") + l.entry + " " + l.check +
                                (l.detail.empty() ? "" : " (" + l.detail + ")"));
            out.result.push_back({{"entry", l.entry}, {"check", l.check}, {"pass", l.pass}, {"detail", l.detail}});
        }
        out.lines.push_back(std::to_string(report.lines.size() - failed) + "/" + std::to_string(report.lines.size()) +
                            " checks passed");
        out.exit_code = failed == 0 ? 0 : 1;
    }
    return out;
}

/// Runs one command line; returns 0 on success, 1 on a domain or I/O error and
/// 2 on a usage error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Lexicographic orderings of context-free languages and order terms", "lexord"};
    app.add_option("command", o.command, "normalize height bound member enumerate interval findist classes "
                                          "rank condense classify check")
        ->required();
    app.add_option("args", o.args, "grammar file, words, term or catalog");
    app.add_option("--prefixify", o.prefixify, "append a bottom symbol SYM to every word");
    app.add_flag("--encode-binary", o.encode_binary, "encode terminals over 0 < 1");
    app.add_flag("--gnf", o.gnf, "convert to weak Greibach normal form");
    app.add_option("--max-len", o.max_len, "window length for enumerate and classes");
    app.add_flag("--json", o.json_out, "print a JSON report");
    app.add_flag("--trace", o.trace, "include intermediate steps");
    app.add_option("--seed", o.seed, "seed for sampled points and pairs");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const auto it = arity().find(o.command);
    if (it == arity().end()) {
        err << "usage error: unknown command '" << o.command << "'\n";
        return 2;
    }
    const bool arity_ok = o.command == "check" ? o.args.size() <= 1 : o.args.size() == it->second;
    if (!arity_ok) {
        err << "usage error: '" << o.command << "' takes " << it->second << " argument(s)\n";
        return 2;
    }

    Output result;
    try {
        result = dispatch(o);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (o.json_out) {
        json report{{"command", o.command}, {"inputs", result.inputs}, {"result", result.result}};
        if (result.trace)
            report["trace"] = *result.trace;
        out << report.dump(2) << "\n";
    } else {
        for (const auto& line : result.lines)
            out << line << "\n";
    }
    return result.exit_code;
}

}  // namespace lexord::cli
