#pragma once

// Lexicographic order on words, prefixification with a bottom symbol,
// order-preserving binary encoding and sorted bounded enumeration.

#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include "lexord/error.hpp"
#include "lexord/grammar.hpp"

namespace lexord {

enum class LexRel {
    LessStrict,                 // u <_s v: first difference has u's letter smaller
    GreaterStrict,              // v <_s u
    ProperPrefixOfSecond,       // u <_p v
    SecondProperPrefixOfFirst,  // v <_p u
    Equal,
};

inline LexRel compare(const Word& u, const Word& v) {
    const auto [iu, iv] = std::mismatch(u.begin(), u.end(), v.begin(), v.end());
    if (iu == u.end() && iv == v.end())
        return LexRel::Equal;
    if (iu == u.end())
        return LexRel::ProperPrefixOfSecond;
    if (iv == v.end())
        return LexRel::SecondProperPrefixOfFirst;
    return *iu < *iv ? LexRel::LessStrict : LexRel::GreaterStrict;
}

/// Checked variant: both words must be over an alphabet of the given size.
inline LexRel compare(std::size_t alphabet_size, const Word& u, const Word& v) {
    for (const Word* w : {&u, &v})
        for (auto l : *w)
            if (l >= alphabet_size)
                throw Error(ErrorKind::InvalidWord, "alphabet mismatch");
    return compare(u, v);
}

/// u <_l v
inline bool lex_less(const Word& u, const Word& v) {
    const auto r = compare(u, v);
    return r == LexRel::LessStrict || r == LexRel::ProperPrefixOfSecond;
}

/// u <_s v
inline bool strictly_before(const Word& u, const Word& v) { return compare(u, v) == LexRel::LessStrict; }

inline bool is_prefix(const Word& prefix, const Word& w) {
    return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

/// Grammar for L(g)._|_ where the bottom symbol is declared below every letter
/// of g's alphabet. Weak GNF shape is preserved.
inline Grammar prefixify(const Grammar& g, const std::string& bottom = "_") {
    if (std::find(g.alphabet().begin(), g.alphabet().end(), bottom) != g.alphabet().end())
        throw Error(ErrorKind::InvalidGrammar, "bottom symbol '" + bottom + "' collides with a terminal");
    if (std::find(g.nonterminals().begin(), g.nonterminals().end(), bottom) != g.nonterminals().end())
        throw Error(ErrorKind::InvalidGrammar, "bottom symbol '" + bottom + "' collides with a nonterminal");
    if (detail::is_reserved(bottom) || bottom.empty())
        throw Error(ErrorKind::InvalidGrammar, "bottom symbol '" + bottom + "' is reserved");

    detail::Draft d;
    d.alphabet.push_back(bottom);
    d.alphabet.insert(d.alphabet.end(), g.alphabet().begin(), g.alphabet().end());
    d.names = g.nonterminals();
    d.rules.resize(d.names.size());
    auto shift = [](Rhs rhs) {
        for (auto& s : rhs)
            if (s.is_terminal())
                ++s.index;
        return rhs;
    };
    for (const auto& p : g.productions())
        d.add_rule(p.lhs, shift(p.rhs));

    const auto end_marker = d.add_nonterminal(d.fresh_name(bottom));
    d.rules[end_marker].push_back(Rhs{Symbol::terminal(0)});
    const auto new_start = d.add_nonterminal(d.fresh_name(g.start_name()));
    for (const auto& rhs : d.rules[g.start()]) {
        Rhs r = rhs;
        r.push_back(Symbol::nonterminal(end_marker));
        d.add_rule(new_start, std::move(r));
    }
    d.start = new_start;
    return reduce(d.build());
}

inline Word append_bottom(const Word& w) {
    Word out;
    out.reserve(w.size() + 1);
    for (auto l : w)
        out.push_back(l + 1);
    out.push_back(0);
    return out;
}

/// Block width of the binary code for an alphabet of `size` letters.
inline std::size_t code_width(std::size_t size) {
    if (size == 0)
        throw Error(ErrorKind::InvalidGrammar, "cannot encode an empty alphabet");
    return size <= 2 ? 1 : static_cast<std::size_t>(std::bit_width(size - 1));
}

/// Fixed-width binary code of each letter's rank (most significant bit first).
inline Word encode_word(std::size_t alphabet_size, const Word& w) {
    const auto width = code_width(alphabet_size);
    Word out;
    out.reserve(w.size() * width);
    for (auto l : w)
        for (std::size_t b = width; b-- > 0;)
            out.push_back((l >> b) & 1U);
    return out;
}

/// Substitutes each terminal by its fixed-width rank code over 0 < 1.
inline Grammar encode_binary(const Grammar& g) {
    const auto width = code_width(g.alphabet().size());
    detail::Draft d;
    d.alphabet = {"0", "1"};
    d.names = g.nonterminals();
    // Nonterminals named like the binary letters are renamed.
    for (auto& name : d.names)
        if (name == "0" || name == "1")
            name = d.fresh_name(name);
    d.rules.resize(d.names.size());
    d.start = g.start();
    for (const auto& p : g.productions()) {
        Rhs rhs;
        for (const auto& s : p.rhs) {
            if (s.is_nonterminal()) {
                rhs.push_back(s);
                continue;
            }
            for (std::size_t b = width; b-- > 0;)
                rhs.push_back(Symbol::terminal((s.index >> b) & 1U));
        }
        d.add_rule(p.lhs, std::move(rhs));
    }
    return d.build();
}

/// Words of L(g) with length <= max_len, strictly increasing under <_l.
inline std::vector<Word> enumerate_window(const Grammar& g, std::size_t max_len) {
    const auto words = words_up_to(g, max_len);
    // std::set<Word> is already in lexicographic order.
    return {words.begin(), words.end()};
}

}  // namespace lexord
