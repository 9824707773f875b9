#include <gtest/gtest.h>

#include <random>

#include "lexord/lexorder.hpp"
#include "lexord/pipeline.hpp"
#include "support.hpp"

using namespace lexord;

namespace {

Word bits(const char* s) { return parse_word({"0", "1"}, s); }

Word random_word(std::mt19937_64& rng, std::size_t alphabet, std::size_t max_len) {
    Word w(rng() % (max_len + 1));
    for (auto& l : w)
        l = static_cast<Letter>(rng() % alphabet);
    return w;
}

}  // namespace

TEST(LexCompare, Cases) {
    EXPECT_EQ(compare(bits("01"), bits("10")), LexRel::LessStrict);
    EXPECT_EQ(compare(bits("10"), bits("01")), LexRel::GreaterStrict);
    EXPECT_EQ(compare(bits("0"), bits("01")), LexRel::ProperPrefixOfSecond);
    EXPECT_EQ(compare(bits("011"), bits("01")), LexRel::SecondProperPrefixOfFirst);
    EXPECT_EQ(compare(bits("eps"), bits("eps")), LexRel::Equal);
    EXPECT_EQ(compare(Word{}, bits("0")), LexRel::ProperPrefixOfSecond);
    EXPECT_TRUE(lex_less(bits("0"), bits("01")));
    EXPECT_TRUE(lex_less(bits("011"), bits("1")));
    EXPECT_FALSE(strictly_before(bits("0"), bits("01")));
    EXPECT_THROW(compare(2, Word{0, 2}, Word{1}), Error);
}

// <_l is a strict total order: exactly one relation holds and it is transitive.
TEST(LexCompare, StrictTotalOrderOnRandomWords) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 2000; ++i) {
        const auto u = random_word(rng, 3, 5), v = random_word(rng, 3, 5), w = random_word(rng, 3, 5);
        EXPECT_EQ(int(lex_less(u, v)) + int(lex_less(v, u)) + int(u == v), 1);
        if (lex_less(u, v) && lex_less(v, w)) {
            EXPECT_TRUE(lex_less(u, w));
        }
        EXPECT_EQ(lex_less(u, v), u < v);
    }
}

TEST(Prefixify, AppendsBottomAndPreservesOrder) {
    const auto g = parse_grammar("alphabet: a < b\nstart: S\nS -> a | a S | b\n");
    const auto p = prefixify(g);
    EXPECT_EQ(p.alphabet(), (std::vector<std::string>{"_", "a", "b"}));
    EXPECT_TRUE(p.weak_gnf());
    std::vector<Word> lifted;
    for (const auto& w : enumerate_window(g, 6))
        lifted.push_back(append_bottom(w));
    EXPECT_EQ(enumerate_window(p, 7), lifted);
    for (std::size_t i = 1; i < lifted.size(); ++i)
        EXPECT_TRUE(strictly_before(lifted[i - 1], lifted[i]));
}

TEST(Prefixify, RejectsCollidingBottom) {
    const auto g = parse_grammar("alphabet: a < b\nstart: S\nS -> a | b\n");
    EXPECT_THROW(prefixify(g, "a"), Error);
    EXPECT_THROW(prefixify(g, "S"), Error);
    EXPECT_THROW(prefixify(g, "eps"), Error);
    EXPECT_NO_THROW(prefixify(g, "#"));
}

TEST(Encode, WidthAndCodes) {
    EXPECT_EQ(code_width(1), 1U);
    EXPECT_EQ(code_width(2), 1U);
    EXPECT_EQ(code_width(3), 2U);
    EXPECT_EQ(code_width(4), 2U);
    EXPECT_EQ(code_width(5), 3U);
    EXPECT_EQ(encode_word(3, Word{0, 1, 2}), (Word{0, 0, 0, 1, 1, 0}));
}

// Fixed-width codes are order preserving for <_l on random words.
TEST(Encode, PreservesLexicographicOrder) {
    std::mt19937_64 rng(11);
    for (std::size_t m : {2, 3, 5, 8}) {
        for (int i = 0; i < 500; ++i) {
            const auto u = random_word(rng, m, 5), v = random_word(rng, m, 5);
            EXPECT_EQ(lex_less(u, v), lex_less(encode_word(m, u), encode_word(m, v)));
            EXPECT_EQ(compare(u, v), compare(encode_word(m, u), encode_word(m, v)));
        }
    }
}

TEST(Encode, GrammarWindowIsEncodedWindow) {
    const auto g = parse_grammar("alphabet: x < y < z\nstart: S\nS -> x S | y | z S z\n");
    const auto e = encode_binary(g);
    EXPECT_EQ(e.alphabet(), (std::vector<std::string>{"0", "1"}));
    std::vector<Word> want;
    for (const auto& w : enumerate_window(g, 5))
        want.push_back(encode_word(3, w));
    std::vector<Word> got;
    for (const auto& w : enumerate_window(e, 10))
        if (w.size() <= 10)
            got.push_back(w);
    EXPECT_EQ(got, want);
}

TEST(Encode, RenamesClashingNonterminals) {
    const auto g = parse_grammar("alphabet: a < b\nstart: 0\n0 -> a 1\n1 -> b\n");
    const auto e = encode_binary(g);
    EXPECT_EQ(enumerate_window(e, 4), (std::vector<Word>{Word{0, 1}}));
}

TEST(Pipeline, LiftsWordsThroughEveryStage) {
    const auto g = load_grammar(lexord::testing::fixture("zeta_sum.grm"));
    PreparedGrammar p(g, {"_", true, true});
    EXPECT_TRUE(p.grammar().weak_gnf());
    EXPECT_EQ(p.lift("101"), (Word{1, 0, 0, 1, 1, 0, 0, 0}));
    for (const auto& w : enumerate_window(g, 6))
        EXPECT_TRUE(member(p.grammar(), p.lift(w))) << render_word(g.alphabet(), w);
}

TEST(Enumerate, WindowIsStrictlySorted) {
    for (const auto* name : {"omega.grm", "omega_star.grm", "zeta.grm", "eta.grm", "omega_omega.grm",
                             "zeta_sum.grm", "eta_omega_sum.grm"}) {
        const auto w = enumerate_window(load_grammar(lexord::testing::fixture(name)), 10);
        ASSERT_FALSE(w.empty());
        for (std::size_t i = 1; i < w.size(); ++i)
            EXPECT_TRUE(lex_less(w[i - 1], w[i])) << name;
    }
}

TEST(Enumerate, OmegaStarWindowExample) {
    const auto g = load_grammar(lexord::testing::fixture("omega_star.grm"));
    EXPECT_EQ(enumerate_window(g, 3), (std::vector<Word>{bits("001"), bits("01"), bits("1")}));
}
