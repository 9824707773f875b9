#pragma once

// Context-free grammars over an ordered alphabet: representation, text format,
// reduction, weak Greibach normalization, height and membership.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexord/error.hpp"

namespace lexord {

/// A terminal, identified by its rank in the alphabet.
using Letter = std::uint32_t;

/// A finite word; letters are alphabet ranks, so std::vector's ordering is the
/// lexicographic order on words.
using Word = std::vector<Letter>;

struct Symbol {
    enum class Kind : std::uint8_t { Terminal, Nonterminal };

    Kind kind = Kind::Terminal;
    std::uint32_t index = 0;

    static constexpr Symbol terminal(std::uint32_t i) { return {Kind::Terminal, i}; }
    static constexpr Symbol nonterminal(std::uint32_t i) { return {Kind::Nonterminal, i}; }

    constexpr bool is_terminal() const { return kind == Kind::Terminal; }
    constexpr bool is_nonterminal() const { return kind == Kind::Nonterminal; }

    auto operator<=>(const Symbol&) const = default;
};

using Rhs = std::vector<Symbol>;

struct Production {
    std::uint32_t lhs = 0;
    Rhs rhs;

    auto operator<=>(const Production&) const = default;
};

class Grammar {
public:
    Grammar(std::vector<std::string> alphabet, std::vector<std::string> nonterminals,
            std::vector<Production> productions, std::uint32_t start)
        : alphabet_(std::move(alphabet)),
          nonterminals_(std::move(nonterminals)),
          productions_(std::move(productions)),
          start_(start) {
        for (std::uint32_t i = 0; i < alphabet_.size(); ++i) {
            if (alphabet_[i].empty())
                throw Error(ErrorKind::InvalidGrammar, "empty alphabet symbol");
            if (!names_.emplace(alphabet_[i], Symbol::terminal(i)).second)
                throw Error(ErrorKind::InvalidGrammar, "duplicate alphabet symbol '" + alphabet_[i] + "'");
        }
        for (std::uint32_t i = 0; i < nonterminals_.size(); ++i) {
            if (nonterminals_[i].empty())
                throw Error(ErrorKind::InvalidGrammar, "empty nonterminal name");
            if (!names_.emplace(nonterminals_[i], Symbol::nonterminal(i)).second)
                throw Error(ErrorKind::InvalidGrammar,
                            "nonterminal '" + nonterminals_[i] + "' clashes with another symbol");
        }
        if (start_ >= nonterminals_.size())
            throw Error(ErrorKind::InvalidGrammar, "start symbol is not a nonterminal");
        alternatives_.resize(nonterminals_.size());
        for (std::size_t p = 0; p < productions_.size(); ++p) {
            const auto& prod = productions_[p];
            if (prod.lhs >= nonterminals_.size())
                throw Error(ErrorKind::InvalidGrammar, "production lhs out of range");
            for (const auto& s : prod.rhs) {
                const std::size_t bound = s.is_terminal() ? alphabet_.size() : nonterminals_.size();
                if (s.index >= bound)
                    throw Error(ErrorKind::InvalidGrammar, "production rhs symbol out of range");
            }
            alternatives_[prod.lhs].push_back(p);
        }
        weak_gnf_ = check_weak_gnf();
    }

    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    const std::vector<std::string>& nonterminals() const noexcept { return nonterminals_; }
    const std::vector<Production>& productions() const noexcept { return productions_; }
    std::uint32_t start() const noexcept { return start_; }
    const std::string& start_name() const { return nonterminals_[start_]; }

    /// Every rhs is terminal+ nonterminal* and the start occurs in no rhs.
    bool weak_gnf() const noexcept { return weak_gnf_; }

    /// Production indices with the given lhs, in declaration order.
    const std::vector<std::size_t>& alternatives(std::uint32_t nonterminal) const {
        return alternatives_[nonterminal];
    }

    std::optional<Symbol> lookup(std::string_view name) const {
        auto it = names_.find(std::string(name));
        if (it == names_.end())
            return std::nullopt;
        return it->second;
    }

    const std::string& name(Symbol s) const {
        return s.is_terminal() ? alphabet_[s.index] : nonterminals_[s.index];
    }

    /// Productions as name sequences, sorted; identifies a grammar up to
    /// production order and nonterminal numbering.
    std::vector<std::pair<std::string, std::vector<std::string>>> named_productions() const {
        std::vector<std::pair<std::string, std::vector<std::string>>> out;
        out.reserve(productions_.size());
        for (const auto& p : productions_) {
            std::vector<std::string> rhs;
            rhs.reserve(p.rhs.size());
            for (const auto& s : p.rhs)
                rhs.push_back(name(s));
            out.emplace_back(nonterminals_[p.lhs], std::move(rhs));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const Grammar& a, const Grammar& b) {
        return a.alphabet_ == b.alphabet_ && a.start_name() == b.start_name() &&
               a.named_productions() == b.named_productions();
    }

private:
    bool check_weak_gnf() const {
        for (const auto& p : productions_) {
            if (p.rhs.empty() || !p.rhs.front().is_terminal())
                return false;
            bool in_tail = false;
            for (const auto& s : p.rhs) {
                if (s.is_nonterminal()) {
                    if (s.index == start_)
                        return false;
                    in_tail = true;
                } else if (in_tail) {
                    return false;
                }
            }
        }
        return true;
    }

    std::vector<std::string> alphabet_;
    std::vector<std::string> nonterminals_;
    std::vector<Production> productions_;
    std::uint32_t start_ = 0;
    std::unordered_map<std::string, Symbol> names_;
    std::vector<std::vector<std::size_t>> alternatives_;
    bool weak_gnf_ = false;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

inline bool is_reserved(std::string_view tok) {
    return tok == "eps" || tok == "->" || tok == "|" || tok == "<";
}

/// Mutable working copy used by the grammar transformations.
struct Draft {
    std::vector<std::string> alphabet;
    std::vector<std::string> names;
    std::vector<std::vector<Rhs>> rules;
    std::uint32_t start = 0;

    Draft() = default;

    explicit Draft(const Grammar& g)
        : alphabet(g.alphabet()), names(g.nonterminals()), rules(g.nonterminals().size()), start(g.start()) {
        for (const auto& p : g.productions())
            add_rule(p.lhs, p.rhs);
    }

    bool taken(const std::string& name) const {
        return std::find(names.begin(), names.end(), name) != names.end() ||
               std::find(alphabet.begin(), alphabet.end(), name) != alphabet.end();
    }

    /// base', then base'1, base'2, ...
    std::string fresh_name(const std::string& base) const {
        std::string candidate = base + "'";
        for (std::size_t i = 1; taken(candidate) || is_reserved(candidate); ++i)
            candidate = base + "'" + std::to_string(i);
        return candidate;
    }

    std::uint32_t add_nonterminal(std::string name) {
        names.push_back(std::move(name));
        rules.emplace_back();
        return static_cast<std::uint32_t>(names.size() - 1);
    }

    void add_rule(std::uint32_t lhs, Rhs rhs) {
        auto& alts = rules[lhs];
        if (std::find(alts.begin(), alts.end(), rhs) == alts.end())
            alts.push_back(std::move(rhs));
    }

    Grammar build() const {
        std::vector<Production> prods;
        for (std::uint32_t a = 0; a < rules.size(); ++a)
            for (const auto& rhs : rules[a])
                prods.push_back({a, rhs});
        return Grammar(alphabet, names, std::move(prods), start);
    }
};

inline std::vector<bool> productive_set(const Grammar& g) {
    std::vector<bool> productive(g.nonterminals().size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
            if (productive[p.lhs])
                continue;
            const bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol s) {
                return s.is_terminal() || productive[s.index];
            });
            if (ok) {
                productive[p.lhs] = true;
                changed = true;
            }
        }
    }
    return productive;
}

inline std::vector<bool> nullable_set(const Grammar& g) {
    std::vector<bool> nullable(g.nonterminals().size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
            if (nullable[p.lhs])
                continue;
            const bool ok = std::all_of(p.rhs.begin(), p.rhs.end(), [&](Symbol s) {
                return s.is_nonterminal() && nullable[s.index];
            });
            if (ok) {
                nullable[p.lhs] = true;
                changed = true;
            }
        }
    }
    return nullable;
}

/// Nonterminals reachable from start through the occurs-in-rhs relation.
inline std::vector<bool> reachable_set(const Grammar& g) {
    std::vector<bool> seen(g.nonterminals().size(), false);
    std::vector<std::uint32_t> stack{g.start()};
    seen[g.start()] = true;
    while (!stack.empty()) {
        const auto a = stack.back();
        stack.pop_back();
        for (auto p : g.alternatives(a))
            for (const auto& s : g.productions()[p].rhs)
                if (s.is_nonterminal() && !seen[s.index]) {
                    seen[s.index] = true;
                    stack.push_back(s.index);
                }
    }
    return seen;
}

/// Keeps the nonterminals flagged in `keep` (start always kept) and the
/// productions that mention only kept nonterminals.
inline Grammar restrict_to(const Grammar& g, const std::vector<bool>& keep) {
    std::vector<std::uint32_t> remap(g.nonterminals().size(), UINT32_MAX);
    std::vector<std::string> names;
    for (std::uint32_t i = 0; i < g.nonterminals().size(); ++i) {
        if (keep[i] || i == g.start()) {
            remap[i] = static_cast<std::uint32_t>(names.size());
            names.push_back(g.nonterminals()[i]);
        }
    }
    std::vector<Production> prods;
    for (const auto& p : g.productions()) {
        if (!keep[p.lhs])
            continue;
        Production q{remap[p.lhs], {}};
        bool ok = true;
        for (const auto& s : p.rhs) {
            if (s.is_nonterminal()) {
                if (!keep[s.index]) {
                    ok = false;
                    break;
                }
                q.rhs.push_back(Symbol::nonterminal(remap[s.index]));
            } else {
                q.rhs.push_back(s);
            }
        }
        if (ok)
            prods.push_back(std::move(q));
    }
    return Grammar(g.alphabet(), std::move(names), std::move(prods), remap[g.start()]);
}

}  // namespace detail

/// Removes every nonterminal that is unproductive or unreachable from start.
/// An unproductive start yields the start alone with no productions.
inline Grammar reduce(const Grammar& g) {
    const auto productive = detail::productive_set(g);
    if (!productive[g.start()])
        return detail::restrict_to(g, std::vector<bool>(g.nonterminals().size(), false));
    const Grammar trimmed = detail::restrict_to(g, productive);
    return detail::restrict_to(trimmed, detail::reachable_set(trimmed));
}

inline bool is_empty_language(const Grammar& g) { return !detail::productive_set(g)[g.start()]; }

inline bool contains_epsilon(const Grammar& g) { return detail::nullable_set(g)[g.start()]; }

// ---------------------------------------------------------------------------
// Text format

inline Grammar parse_grammar(std::string_view text) {
    std::vector<std::string> alphabet;
    bool have_alphabet = false;
    std::optional<std::string> start;
    struct RawProduction {
        std::string lhs;
        std::vector<std::string> rhs;
        std::size_t line;
    };
    std::vector<RawProduction> raw;

    auto fail = [](std::size_t line, const std::string& msg) -> Error {
        return Error(ErrorKind::Syntax, "line " + std::to_string(line) + ": " + msg);
    };

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = std::string_view(line);
        const auto first = body.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || body[first] == '#')
            continue;
        auto toks = detail::split_ws(body);
        if (toks[0] == "alphabet:") {
            if (have_alphabet)
                throw fail(lineno, "alphabet declared twice");
            have_alphabet = true;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (i % 2 == 0) {
                    if (toks[i] != "<")
                        throw fail(lineno, "expected '<' between alphabet symbols");
                    continue;
                }
                if (detail::is_reserved(toks[i]))
                    throw fail(lineno, "reserved token '" + toks[i] + "' used as alphabet symbol");
                if (std::find(alphabet.begin(), alphabet.end(), toks[i]) != alphabet.end())
                    throw Error(ErrorKind::InvalidGrammar, "line " + std::to_string(lineno) +
                                                               ": duplicate alphabet symbol '" + toks[i] + "'");
                alphabet.push_back(toks[i]);
            }
            if (toks.size() % 2 != 0)
                throw fail(lineno, "alphabet line ends with '<'");
        } else if (toks[0] == "start:") {
            if (toks.size() != 2)
                throw fail(lineno, "expected 'start: X'");
            if (start)
                throw fail(lineno, "start declared twice");
            start = toks[1];
        } else if (toks.size() >= 2 && toks[1] == "->") {
            if (!have_alphabet)
                throw fail(lineno, "production before alphabet declaration");
            const std::string& lhs = toks[0];
            if (std::find(alphabet.begin(), alphabet.end(), lhs) != alphabet.end())
                throw Error(ErrorKind::InvalidGrammar,
                            "line " + std::to_string(lineno) + ": production lhs '" + lhs + "' is a terminal");
            if (detail::is_reserved(lhs))
                throw fail(lineno, "reserved token as production lhs");
            std::vector<std::string> current;
            bool saw_eps = false;
            auto flush = [&]() {
                if (current.empty() && !saw_eps)
                    throw fail(lineno, "empty alternative (write 'eps' for the empty sequence)");
                raw.push_back({lhs, current, lineno});
                current.clear();
                saw_eps = false;
            };
            for (std::size_t i = 2; i < toks.size(); ++i) {
                if (toks[i] == "|") {
                    flush();
                    continue;
                }
                if (toks[i] == "eps") {
                    if (!current.empty() || saw_eps)
                        throw fail(lineno, "'eps' must stand alone in an alternative");
                    saw_eps = true;
                    continue;
                }
                if (saw_eps)
                    throw fail(lineno, "'eps' must stand alone in an alternative");
                if (toks[i] == "->" || toks[i] == "<")
                    throw fail(lineno, "unexpected '" + toks[i] + "'");
                current.push_back(toks[i]);
            }
            flush();
        } else {
            throw fail(lineno, "unrecognized line");
        }
    }
    if (!have_alphabet)
        throw Error(ErrorKind::Syntax, "missing 'alphabet:' line");
    if (!start)
        throw Error(ErrorKind::InvalidGrammar, "undeclared start symbol");
    if (std::find(alphabet.begin(), alphabet.end(), *start) != alphabet.end() || detail::is_reserved(*start))
        throw Error(ErrorKind::InvalidGrammar, "start symbol '" + *start + "' is not a nonterminal");

    // Declaration order: start, then lhs in order of first production, then
    // rhs-only nonterminals in order of appearance.
    std::vector<std::string> names{*start};
    auto declare = [&](const std::string& n) {
        if (std::find(names.begin(), names.end(), n) == names.end())
            names.push_back(n);
    };
    for (const auto& r : raw)
        declare(r.lhs);
    for (const auto& r : raw)
        for (const auto& s : r.rhs)
            if (std::find(alphabet.begin(), alphabet.end(), s) == alphabet.end())
                declare(s);

    auto index_of = [](const std::vector<std::string>& v, const std::string& s) {
        return static_cast<std::uint32_t>(std::find(v.begin(), v.end(), s) - v.begin());
    };
    std::vector<Production> prods;
    for (const auto& r : raw) {
        Production p{index_of(names, r.lhs), {}};
        for (const auto& s : r.rhs) {
            const auto t = index_of(alphabet, s);
            p.rhs.push_back(t < alphabet.size() ? Symbol::terminal(t) : Symbol::nonterminal(index_of(names, s)));
        }
        if (std::find(prods.begin(), prods.end(), p) == prods.end())
            prods.push_back(std::move(p));
    }
    return Grammar(std::move(alphabet), std::move(names), std::move(prods), 0);
}

/// Canonical text: header lines, then one line per lhs in declaration order
/// (start first) with alternatives sorted.
inline std::string render_grammar(const Grammar& g) {
    std::string out = "alphabet:";
    for (std::size_t i = 0; i < g.alphabet().size(); ++i)
        out += (i == 0 ? " " : " < ") + g.alphabet()[i];
    out += "\nstart: " + g.start_name() + "\n";

    std::vector<std::uint32_t> order{g.start()};
    for (std::uint32_t a = 0; a < g.nonterminals().size(); ++a)
        if (a != g.start())
            order.push_back(a);
    for (auto a : order) {
        if (g.alternatives(a).empty())
            continue;
        std::vector<std::string> alts;
        for (auto p : g.alternatives(a)) {
            const auto& rhs = g.productions()[p].rhs;
            if (rhs.empty()) {
                alts.emplace_back("eps");
                continue;
            }
            std::string s;
            for (const auto& sym : rhs)
                s += (s.empty() ? "" : " ") + g.name(sym);
            alts.push_back(std::move(s));
        }
        std::sort(alts.begin(), alts.end());
        out += g.nonterminals()[a] + " ->";
        for (std::size_t i = 0; i < alts.size(); ++i)
            out += (i == 0 ? " " : " | ") + alts[i];
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Words

inline bool single_char_alphabet(const std::vector<std::string>& alphabet) {
    return std::all_of(alphabet.begin(), alphabet.end(), [](const std::string& s) { return s.size() == 1; });
}

/// Concatenated characters when every symbol is one character, otherwise
/// comma-separated symbols. `eps` denotes the empty word.
inline Word parse_word(const std::vector<std::string>& alphabet, std::string_view text) {
    Word w;
    if (text == "eps")
        return w;
    auto letter = [&](std::string_view tok) {
        auto it = std::find(alphabet.begin(), alphabet.end(), tok);
        if (it == alphabet.end())
            throw Error(ErrorKind::InvalidWord, "symbol '" + std::string(tok) + "' not in alphabet");
        return static_cast<Letter>(it - alphabet.begin());
    };
    if (single_char_alphabet(alphabet)) {
        for (char c : text)
            w.push_back(letter(std::string_view(&c, 1)));
        return w;
    }
    if (text.empty())
        return w;
    std::size_t pos = 0;
    while (true) {
        const auto comma = text.find(',', pos);
        w.push_back(letter(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return w;
}

inline std::string render_word(const std::vector<std::string>& alphabet, const Word& w) {
    if (w.empty())
        return "eps";
    const bool compact = single_char_alphabet(alphabet);
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0)
            out += ",";
        out += alphabet.at(w[i]);
    }
    return out;
}

inline void validate_word(const Grammar& g, const Word& w) {
    for (auto l : w)
        if (l >= g.alphabet().size())
            throw Error(ErrorKind::InvalidWord, "letter outside the grammar's alphabet");
}

// ---------------------------------------------------------------------------
// Bounded language enumeration (any grammar)

/// All words of L(g) with length <= max_len, computed length by length with a
/// fixpoint per length (handles epsilon and unit productions).
inline std::set<Word> words_up_to(const Grammar& g, std::size_t max_len) {
    const std::size_t n = g.nonterminals().size();
    // table[a][l] = words of length l derivable from a
    std::vector<std::vector<std::set<Word>>> table(n, std::vector<std::set<Word>>(max_len + 1));

    for (std::size_t len = 0; len <= max_len; ++len) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g.productions()) {
                auto& target = table[p.lhs][len];
                Word buffer;
                std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t pos, std::size_t remaining) {
                    if (pos == p.rhs.size()) {
                        if (remaining == 0 && target.insert(buffer).second)
                            changed = true;
                        return;
                    }
                    const Symbol s = p.rhs[pos];
                    if (s.is_terminal()) {
                        if (remaining == 0)
                            return;
                        buffer.push_back(s.index);
                        extend(pos + 1, remaining - 1);
                        buffer.pop_back();
                        return;
                    }
                    for (std::size_t l = 0; l <= remaining; ++l) {
                        // A same-length self reference would alias the set being
                        // filled; iterate a snapshot and let the fixpoint loop rerun.
                        const std::set<Word>* words = &table[s.index][l];
                        std::set<Word> snapshot;
                        if (words == &target) {
                            snapshot = *words;
                            words = &snapshot;
                        }
                        for (const auto& w : *words) {
                            buffer.insert(buffer.end(), w.begin(), w.end());
                            extend(pos + 1, remaining - l);
                            buffer.resize(buffer.size() - w.size());
                        }
                    }
                };
                extend(0, len);
            }
        }
    }
    std::set<Word> out;
    for (const auto& bucket : table[g.start()])
        out.insert(bucket.begin(), bucket.end());
    return out;
}

// ---------------------------------------------------------------------------
// Weak Greibach normal form

namespace detail {

/// Grammar for L(g) \ {eps} without epsilon- or unit productions, reduced.
inline Grammar eliminate_epsilon_and_units(const Grammar& input) {
    const Grammar g = reduce(input);
    const auto nullable = nullable_set(g);
    Draft d;
    d.alphabet = g.alphabet();
    d.names = g.nonterminals();
    d.rules.resize(d.names.size());
    d.start = g.start();

    for (const auto& p : g.productions()) {
        std::vector<std::size_t> optional_at;
        for (std::size_t i = 0; i < p.rhs.size(); ++i)
            if (p.rhs[i].is_nonterminal() && nullable[p.rhs[i].index])
                optional_at.push_back(i);
        const std::size_t variants = std::size_t{1} << optional_at.size();
        for (std::size_t mask = 0; mask < variants; ++mask) {
            Rhs rhs;
            std::size_t k = 0;
            for (std::size_t i = 0; i < p.rhs.size(); ++i) {
                if (k < optional_at.size() && optional_at[k] == i) {
                    const bool drop = (mask >> k) & 1U;
                    ++k;
                    if (drop)
                        continue;
                }
                rhs.push_back(p.rhs[i]);
            }
            if (!rhs.empty())
                d.add_rule(p.lhs, std::move(rhs));
        }
    }

    // unit closure
    const std::size_t n = d.names.size();
    std::vector<std::vector<bool>> unit(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(a)};
        unit[a][a] = true;
        while (!stack.empty()) {
            const auto b = stack.back();
            stack.pop_back();
            for (const auto& rhs : d.rules[b])
                if (rhs.size() == 1 && rhs[0].is_nonterminal() && !unit[a][rhs[0].index]) {
                    unit[a][rhs[0].index] = true;
                    stack.push_back(rhs[0].index);
                }
        }
    }
    Draft e = d;
    for (auto& alts : e.rules)
        alts.clear();
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if (unit[a][b])
                for (const auto& rhs : d.rules[b])
                    if (!(rhs.size() == 1 && rhs[0].is_nonterminal()))
                        e.add_rule(a, rhs);
    return reduce(e.build());
}

/// Substitutes the productions of `with` for the leading occurrence in each
/// production of `lhs` that starts with `with`.
inline void substitute_leading(Draft& d, std::uint32_t lhs, std::uint32_t with) {
    std::vector<Rhs> result;
    for (const auto& rhs : d.rules[lhs]) {
        if (rhs.front() == Symbol::nonterminal(with)) {
            for (const auto& delta : d.rules[with]) {
                Rhs r = delta;
                r.insert(r.end(), rhs.begin() + 1, rhs.end());
                if (std::find(result.begin(), result.end(), r) == result.end())
                    result.push_back(std::move(r));
            }
        } else if (std::find(result.begin(), result.end(), rhs) == result.end()) {
            result.push_back(rhs);
        }
    }
    d.rules[lhs] = std::move(result);
}

}  // namespace detail

/// Converts to weak Greibach normal form. Requires eps not in L(g) and L(g)
/// nonempty; the result is reduced and generates L(g).
inline Grammar to_weak_gnf(const Grammar& input) {
    if (is_empty_language(input))
        throw Error(ErrorKind::EmptyLanguage, "grammar generates the empty language");
    if (contains_epsilon(input))
        throw Error(ErrorKind::EpsilonInLanguage, "grammar generates the empty word; prefixify first");

    detail::Draft d(detail::eliminate_epsilon_and_units(input));

    // Left recursion removal in declaration order.
    const std::uint32_t m = static_cast<std::uint32_t>(d.names.size());
    for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = 0; j < i; ++j)
            detail::substitute_leading(d, i, j);
        std::vector<Rhs> recursive, base;
        for (const auto& rhs : d.rules[i]) {
            if (rhs.front() == Symbol::nonterminal(i))
                recursive.emplace_back(rhs.begin() + 1, rhs.end());
            else
                base.push_back(rhs);
        }
        if (recursive.empty())
            continue;
        const auto z = d.add_nonterminal(d.fresh_name(d.names[i]));
        d.rules[i].clear();
        for (const auto& beta : base) {
            d.add_rule(i, beta);
            Rhs r = beta;
            r.push_back(Symbol::nonterminal(z));
            d.add_rule(i, std::move(r));
        }
        for (const auto& alpha : recursive) {
            d.add_rule(z, alpha);
            Rhs r = alpha;
            r.push_back(Symbol::nonterminal(z));
            d.add_rule(z, std::move(r));
        }
    }

    // Leading-nonterminal substitution along the (now acyclic) left-corner graph.
    const std::size_t n = d.names.size();
    std::vector<int> state(n, 0);
    std::vector<std::uint32_t> finished;
    std::function<void(std::uint32_t)> visit = [&](std::uint32_t a) {
        state[a] = 1;
        for (const auto& rhs : d.rules[a]) {
            if (!rhs.front().is_nonterminal())
                continue;
            const auto b = rhs.front().index;
            if (state[b] == 1)
                throw std::logic_error("left-corner cycle after left recursion removal");
            if (state[b] == 0)
                visit(b);
        }
        state[a] = 2;
        finished.push_back(a);
    };
    for (std::uint32_t a = 0; a < n; ++a)
        if (state[a] == 0)
            visit(a);
    for (auto a : finished) {
        std::set<std::uint32_t> leads;
        for (const auto& rhs : d.rules[a])
            if (rhs.front().is_nonterminal())
                leads.insert(rhs.front().index);
        for (auto b : leads)
            detail::substitute_leading(d, a, b);
    }

    // Terminals after the first nonterminal become fresh nonterminals.
    std::map<std::uint32_t, std::uint32_t> letter_nt;
    for (std::uint32_t a = 0; a < d.names.size(); ++a) {
        for (auto& rhs : d.rules[a]) {
            bool in_tail = false;
            for (auto& s : rhs) {
                if (s.is_nonterminal()) {
                    in_tail = true;
                } else if (in_tail) {
                    auto it = letter_nt.find(s.index);
                    if (it == letter_nt.end()) {
                        const auto x = d.add_nonterminal(d.fresh_name(d.alphabet[s.index]));
                        d.rules[x].push_back(Rhs{s});
                        it = letter_nt.emplace(s.index, x).first;
                    }
                    s = Symbol::nonterminal(it->second);
                }
            }
        }
    }

    bool start_in_rhs = false;
    for (const auto& alts : d.rules)
        for (const auto& rhs : alts)
            if (std::find(rhs.begin(), rhs.end(), Symbol::nonterminal(d.start)) != rhs.end())
                start_in_rhs = true;
    if (start_in_rhs) {
        const auto s = d.add_nonterminal(d.fresh_name(d.names[d.start]));
        d.rules[s] = d.rules[d.start];
        d.start = s;
    }

    Grammar result = reduce(d.build());
    if (!result.weak_gnf())
        throw std::logic_error("weak GNF conversion produced a malformed grammar");
    return result;
}

// ---------------------------------------------------------------------------
// Height

/// Longest chain of strictly descending accessibility classes (edges counted)
/// among the nonterminals reachable from start.
inline std::size_t height(const Grammar& input) {
    if (!input.weak_gnf())
        throw Error(ErrorKind::NotNormalized, "height requires a weak GNF grammar");
    const Grammar g = reduce(input);
    const std::size_t n = g.nonterminals().size();
    std::vector<std::vector<std::uint32_t>> succ(n);
    for (const auto& p : g.productions())
        for (const auto& s : p.rhs)
            if (s.is_nonterminal())
                succ[p.lhs].push_back(s.index);

    // Tarjan; components come out in reverse topological order.
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    int counter = 0, components = 0;
    std::function<void(std::uint32_t)> strongconnect = [&](std::uint32_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : succ[v]) {
            if (index[w] < 0) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::uint32_t w = 0;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = components;
            } while (w != v);
            ++components;
        }
    };
    strongconnect(g.start());

    // Successor components have smaller numbers, so process in increasing order.
    std::vector<std::size_t> longest(components, 0);
    std::vector<std::vector<std::uint32_t>> members(components);
    for (std::uint32_t v = 0; v < n; ++v)
        if (comp[v] >= 0)
            members[comp[v]].push_back(v);
    for (int c = 0; c < components; ++c)
        for (auto v : members[c])
            for (auto w : succ[v])
                if (comp[w] != c)
                    longest[c] = std::max(longest[c], longest[comp[w]] + 1);
    return longest[comp[g.start()]];
}

// ---------------------------------------------------------------------------
// Membership

/// Leftmost-derivation search for weak GNF grammars; other grammars fall back
/// to bounded enumeration.
inline bool member(const Grammar& g, const Word& w) {
    validate_word(g, w);
    if (!g.weak_gnf()) {
        const auto window = words_up_to(g, w.size());
        return window.count(w) > 0;
    }
    using State = std::pair<std::size_t, std::vector<std::uint32_t>>;
    std::set<State> seen;
    std::vector<State> stack{{0, {g.start()}}};
    while (!stack.empty()) {
        auto [pos, pending] = std::move(stack.back());
        stack.pop_back();
        if (pending.empty()) {
            if (pos == w.size())
                return true;
            continue;
        }
        // every pending nonterminal yields at least one letter
        if (pos + pending.size() > w.size())
            continue;
        const auto head = pending.front();
        for (auto pi : g.alternatives(head)) {
            const auto& rhs = g.productions()[pi].rhs;
            std::size_t p = pos;
            std::size_t k = 0;
            bool ok = true;
            for (; k < rhs.size() && rhs[k].is_terminal(); ++k, ++p) {
                if (p >= w.size() || w[p] != rhs[k].index) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            std::vector<std::uint32_t> next;
            for (std::size_t r = k; r < rhs.size(); ++r)
                next.push_back(rhs[r].index);
            next.insert(next.end(), pending.begin() + 1, pending.end());
            State s{p, std::move(next)};
            if (seen.insert(s).second)
                stack.push_back(std::move(s));
        }
    }
    return false;
}

}  // namespace lexord
