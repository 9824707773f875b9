#pragma once

// Interval grammars between two words of a prefix language, language
// finiteness, the finite-distance relation on words and the rank bound.

#include <deque>
#include <functional>
#include <set>
#include <vector>

#include "lexord/error.hpp"
#include "lexord/grammar.hpp"
#include "lexord/lexorder.hpp"
#include "lexord/ordinal.hpp"

namespace lexord {

struct IntervalGrammarResult {
    Grammar gprime;
    std::size_t derivation_count = 0;
    std::vector<Production> added_productions;  // the S' -> w p productions, in gprime's numbering
};

/// Partial leftmost derivation: terminal prefix followed by pending nonterminals.
struct DerivationState {
    Word prefix;
    std::vector<std::uint32_t> tail;

    auto operator<=>(const DerivationState&) const = default;
};

inline constexpr std::size_t kPrefixCheckLength = 16;

namespace detail {

/// Scans a window for a word that is a proper prefix of another. In sorted
/// order such a word is a prefix of its immediate successor.
inline bool window_is_prefix_free(const std::vector<Word>& window) {
    for (std::size_t i = 1; i < window.size(); ++i)
        if (is_prefix(window[i - 1], window[i]))
            return false;
    return true;
}

inline IntervalGrammarResult build_interval_grammar(const Grammar& g, const Word& u, const Word& v) {
    std::set<Rhs> emitted;
    std::size_t derivations = 0;
    std::set<DerivationState> seen;
    std::deque<DerivationState> frontier{{Word{}, {g.start()}}};
    seen.insert(frontier.front());

    while (!frontier.empty()) {
        DerivationState state = std::move(frontier.front());
        frontier.pop_front();
        if (state.tail.empty())
            continue;  // a complete word; u and v enter through their own productions
        const auto head = state.tail.front();
        for (auto pi : g.alternatives(head)) {
            const auto& rhs = g.productions()[pi].rhs;
            ++derivations;
            DerivationState next;
            next.prefix = state.prefix;
            std::size_t k = 0;
            for (; k < rhs.size() && rhs[k].is_terminal(); ++k)
                next.prefix.push_back(rhs[k].index);
            for (std::size_t r = k; r < rhs.size(); ++r)
                next.tail.push_back(rhs[r].index);
            next.tail.insert(next.tail.end(), state.tail.begin() + 1, state.tail.end());

            if (is_prefix(next.prefix, u) || is_prefix(next.prefix, v)) {
                if (seen.insert(next).second)
                    frontier.push_back(std::move(next));
                continue;
            }
            if (strictly_before(u, next.prefix) && strictly_before(next.prefix, v)) {
                Rhs out;
                for (auto l : next.prefix)
                    out.push_back(Symbol::terminal(l));
                for (auto nt : next.tail)
                    out.push_back(Symbol::nonterminal(nt));
                emitted.insert(std::move(out));
            }
        }
    }

    Draft d(g);
    const auto s_prime = d.add_nonterminal(d.fresh_name(g.start_name()));
    d.start = s_prime;
    IntervalGrammarResult result{g, derivations, {}};
    for (const auto& rhs : emitted) {
        d.add_rule(s_prime, rhs);
        result.added_productions.push_back({s_prime, rhs});
    }
    for (const Word* w : {&u, &v}) {
        Rhs rhs;
        for (auto l : *w)
            rhs.push_back(Symbol::terminal(l));
        d.add_rule(s_prime, std::move(rhs));
    }
    result.gprime = d.build();
    return result;
}

}  // namespace detail

/// Grammar for {w in L(g) : u <=_s w <=_s v}. Requires a weak GNF grammar for a
/// prefix language, u and v in L(g), and u <_l v.
inline IntervalGrammarResult interval_grammar(const Grammar& g, const Word& u, const Word& v,
                                              std::size_t prefix_check_length = kPrefixCheckLength) {
    if (!g.weak_gnf())
        throw Error(ErrorKind::NotNormalized, "interval grammar requires a weak GNF grammar");
    validate_word(g, u);
    validate_word(g, v);
    if (!lex_less(u, v))
        throw Error(ErrorKind::OrderViolation, "interval bounds must satisfy u <_l v");
    if (!member(g, u))
        throw Error(ErrorKind::WordNotInLanguage, "lower bound is not in the language");
    if (!member(g, v))
        throw Error(ErrorKind::WordNotInLanguage, "upper bound is not in the language");
    if (prefix_check_length > 0 && !detail::window_is_prefix_free(enumerate_window(g, prefix_check_length)))
        throw Error(ErrorKind::NotPrefixLanguage, "language has a word that is a proper prefix of another");
    return detail::build_interval_grammar(g, u, v);
}

/// Finiteness of L(g): after removing epsilon and unit productions, a reduced
/// grammar generates an infinite language iff its dependency graph has a cycle.
inline bool is_finite_language(const Grammar& input) {
    if (is_empty_language(input))
        return true;
    const Grammar g = detail::eliminate_epsilon_and_units(input);
    if (is_empty_language(g))
        return true;
    const std::size_t n = g.nonterminals().size();
    std::vector<int> state(n, 0);
    std::function<bool(std::uint32_t)> has_cycle = [&](std::uint32_t a) {
        state[a] = 1;
        for (auto pi : g.alternatives(a))
            for (const auto& s : g.productions()[pi].rhs) {
                if (!s.is_nonterminal())
                    continue;
                if (state[s.index] == 1)
                    return true;
                if (state[s.index] == 0 && has_cycle(s.index))
                    return true;
            }
        state[a] = 2;
        return false;
    };
    return !has_cycle(g.start());
}

namespace detail {

inline bool finite_distance_unchecked(const Grammar& g, const Word& u, const Word& v) {
    if (u == v)
        return true;
    const bool ordered = lex_less(u, v);
    const auto result = build_interval_grammar(g, ordered ? u : v, ordered ? v : u);
    return is_finite_language(reduce(result.gprime));
}

}  // namespace detail

/// True iff u and v are at a finite distance in (L(g), <_l).
inline bool finite_distance(const Grammar& g, const Word& u, const Word& v,
                            std::size_t prefix_check_length = kPrefixCheckLength) {
    if (u == v) {
        if (!g.weak_gnf())
            throw Error(ErrorKind::NotNormalized, "finite distance requires a weak GNF grammar");
        validate_word(g, u);
        if (!member(g, u))
            throw Error(ErrorKind::WordNotInLanguage, "word is not in the language");
        return true;
    }
    const bool ordered = lex_less(u, v);
    const auto result = interval_grammar(g, ordered ? u : v, ordered ? v : u, prefix_check_length);
    return is_finite_language(reduce(result.gprime));
}

/// Partition of the window of length max_len into finite-distance classes,
/// each a run of consecutive window words.
inline std::vector<std::vector<Word>> sim1_partition(const Grammar& g, std::size_t max_len,
                                                     std::size_t prefix_check_length = kPrefixCheckLength) {
    if (!g.weak_gnf())
        throw Error(ErrorKind::NotNormalized, "finite distance requires a weak GNF grammar");
    const auto window = enumerate_window(g, max_len);
    const auto check_len = std::max(prefix_check_length, max_len);
    if (prefix_check_length > 0 && !detail::window_is_prefix_free(enumerate_window(g, check_len)))
        throw Error(ErrorKind::NotPrefixLanguage, "language has a word that is a proper prefix of another");
    std::vector<std::vector<Word>> classes;
    for (const auto& w : window) {
        // Classes are intervals of L, so comparing with the previous word decides
        // membership in the current run.
        if (!classes.empty() && detail::finite_distance_unchecked(g, classes.back().back(), w))
            classes.back().push_back(w);
        else
            classes.push_back({w});
    }
    return classes;
}

/// w^height(g) + 1
inline Ordinal fc_rank_bound(const Grammar& g) {
    if (!g.weak_gnf())
        throw Error(ErrorKind::NotNormalized, "rank bound requires a weak GNF grammar");
    return omega_pow(static_cast<std::uint32_t>(height(g))) + Ordinal::finite(1);
}

}  // namespace lexord
