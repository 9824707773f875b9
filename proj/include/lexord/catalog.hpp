#pragma once

// Fixture catalog: grammars paired with the order terms of their languages,
// expected ranks and classes, and finite-distance witnesses.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexord/condensation.hpp"
#include "lexord/error.hpp"
#include "lexord/interval.hpp"
#include "lexord/ordinal.hpp"
#include "lexord/order_term.hpp"
#include "lexord/pipeline.hpp"

namespace lexord {

struct Witness {
    std::string u;
    std::string v;
    bool finite = false;
};

struct FixtureEntry {
    std::string name;
    std::filesystem::path grammar_path;
    PipelineOptions pipeline;
    std::string term_text;
    Ordinal expected_rank;
    TermClass expected_class = TermClass::Scattered;
    std::vector<Witness> witnesses;
};

inline std::vector<FixtureEntry> load_catalog(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Syntax, "catalog '" + path.string() + "': " + e.what());
    }
    const auto base = path.parent_path();
    std::vector<FixtureEntry> out;
    try {
        for (const auto& j : doc.at("entries")) {
            FixtureEntry e;
            e.name = j.at("name").get<std::string>();
            e.grammar_path = base / j.at("grammar").get<std::string>();
            if (j.contains("prefixify"))
                e.pipeline.prefixify = j.at("prefixify").get<std::string>();
            e.pipeline.encode_binary = j.value("encode_binary", false);
            e.pipeline.gnf = true;
            e.term_text = j.at("term").get<std::string>();
            e.expected_rank = parse_ordinal(j.at("rank").get<std::string>());
            e.expected_class = parse_term_class(j.at("class").get<std::string>());
            for (const auto& w : j.value("witnesses", nlohmann::json::array()))
                e.witnesses.push_back({w.at(0).get<std::string>(), w.at(1).get<std::string>(), w.at(2).get<bool>()});
            out.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Syntax, "catalog '" + path.string() + "': " + e.what());
    }
    return out;
}

struct CheckLine {
    std::string entry;
    std::string check;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckLine> lines;

    bool ok() const {
        return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
    }
};

inline constexpr std::size_t kSortednessWindow = 10;
inline constexpr std::size_t kIntervalWindow = 12;
inline constexpr std::size_t kIntervalPairs = 20;

/// Words of the window strictly between u and v, bounds included.
inline std::vector<Word> filter_window(const std::vector<Word>& window, const Word& u, const Word& v) {
    std::vector<Word> out;
    for (const auto& w : window)
        if (!lex_less(w, u) && !lex_less(v, w))
            out.push_back(w);
    return out;
}

/// Compares the window of the interval grammar for (u, v) with the filtered
/// window of the language; returns an empty string on agreement.
inline std::string interval_window_mismatch(const Grammar& g, const std::vector<Word>& window, const Word& u,
                                            const Word& v, std::size_t max_len) {
    const auto result = interval_grammar(g, u, v);
    const auto got = enumerate_window(result.gprime, max_len);
    const auto want = filter_window(window, u, v);
    if (got == want)
        return {};
    return "interval window has " + std::to_string(got.size()) + " words, expected " + std::to_string(want.size());
}

/// Random pairs u <_l v from a window, deterministic for a seed.
inline std::vector<std::pair<Word, Word>> window_pairs(const std::vector<Word>& window, std::size_t count,
                                                       std::uint64_t seed) {
    std::vector<std::pair<Word, Word>> out;
    if (window.size() < 2)
        return out;
    std::mt19937_64 engine(seed);
    while (out.size() < count) {
        auto i = engine() % window.size();
        auto j = engine() % window.size();
        if (i == j)
            continue;
        if (i > j)
            std::swap(i, j);
        out.emplace_back(window[i], window[j]);
    }
    return out;
}

inline CheckReport check_catalog(const std::vector<FixtureEntry>& entries, std::uint64_t seed = 0) {
    // Grammar files are loaded first so that a missing one aborts the whole run.
    std::vector<PreparedGrammar> grammars;
    for (const auto& e : entries)
        grammars.emplace_back(load_grammar(e.grammar_path), e.pipeline);

    CheckReport report;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const auto& prepared = grammars[i];
        const Grammar& g = prepared.grammar();
        auto add = [&](std::string check, bool pass, std::string detail = {}) {
            report.lines.push_back({e.name, std::move(check), pass, std::move(detail)});
        };
        auto guarded = [&](const std::string& check, auto&& body) {
            try {
                body();
            } catch (const std::exception& ex) {
                add(check, false, ex.what());
            }
        };

        std::optional<OrderTerm> term;
        guarded("term", [&] { term = parse_term(e.term_text); });
        std::optional<Ordinal> rank;
        if (term) {
            guarded("rank", [&] {
                rank = fc_rank(*term).rank;
                add("rank", *rank == e.expected_rank,
                    "got " + to_string(*rank) + ", expected " + to_string(e.expected_rank));
            });
            guarded("class", [&] {
                const auto c = classify(*term);
                add("class", c == e.expected_class,
                    "got " + to_string(c) + ", expected " + to_string(e.expected_class));
            });
        }
        guarded("bound", [&] {
            const auto bound = fc_rank_bound(g);
            const bool ok = rank && *rank <= bound;
            add("bound", ok, (rank ? to_string(*rank) : std::string("?")) + " <= " + to_string(bound));
        });
        for (const auto& w : e.witnesses) {
            const std::string label = "witness " + w.u + " " + w.v;
            guarded(label, [&] {
                const bool got = finite_distance(g, prepared.lift(w.u), prepared.lift(w.v));
                add(label, got == w.finite, got ? "finite" : "infinite");
            });
        }
        guarded("window-sorted", [&] {
            const auto window = enumerate_window(g, kSortednessWindow);
            bool sorted = true;
            for (std::size_t k = 1; k < window.size(); ++k)
                sorted = sorted && lex_less(window[k - 1], window[k]);
            add("window-sorted", sorted && !window.empty(), std::to_string(window.size()) + " words");
        });
        guarded("interval-window", [&] {
            const auto window = enumerate_window(g, kIntervalWindow);
            const auto pairs = window_pairs(window, kIntervalPairs, seed + i);
            std::string failure = pairs.size() == kIntervalPairs ? "" : "window too small";
            for (const auto& [u, v] : pairs) {
                if (!failure.empty())
                    break;
                failure = interval_window_mismatch(g, window, u, v, kIntervalWindow);
            }
            add("interval-window", failure.empty(),
                failure.empty() ? std::to_string(pairs.size()) + " pairs" : failure);
        });
    }
    return report;
}

}  // namespace lexord
