#include <gtest/gtest.h>

#include <random>

#include "lexord/catalog.hpp"
#include "lexord/interval.hpp"
#include "lexord/pipeline.hpp"
#include "support.hpp"

using namespace lexord;
using lexord::testing::fixture;

namespace {

Word bits(const char* s) { return parse_word({"0", "1"}, s); }

ErrorKind error_kind(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::Io;
}

}  // namespace

TEST(IntervalGrammar, OmegaExample) {
    const auto g = load_grammar(fixture("omega.grm"));
    const auto r = interval_grammar(g, bits("0"), bits("1110"));
    EXPECT_EQ(enumerate_window(r.gprime, 10), (std::vector<Word>{bits("0"), bits("10"), bits("110"), bits("1110")}));
    EXPECT_TRUE(is_finite_language(reduce(r.gprime)));
    EXPECT_GT(r.derivation_count, 0U);
}

TEST(IntervalGrammar, EtaIntervalIsInfinite) {
    const auto g = load_grammar(fixture("eta.grm"));
    const auto r = interval_grammar(g, bits("01"), bits("1101"));
    EXPECT_FALSE(is_finite_language(reduce(r.gprime)));
    for (const auto& w : enumerate_window(r.gprime, 10)) {
        EXPECT_FALSE(lex_less(w, bits("01")));
        EXPECT_FALSE(lex_less(bits("1101"), w));
    }
}

TEST(IntervalGrammar, PreconditionErrors) {
    const auto omega = load_grammar(fixture("omega.grm"));
    EXPECT_EQ(error_kind([&] { interval_grammar(omega, bits("10"), bits("0")); }), ErrorKind::OrderViolation);
    EXPECT_EQ(error_kind([&] { interval_grammar(omega, bits("0"), bits("11")); }), ErrorKind::WordNotInLanguage);
    const auto not_prefix = parse_grammar("alphabet: 0 < 1\nstart: S\nS -> 0 | 0 A\nA -> 1\n");
    EXPECT_EQ(error_kind([&] { interval_grammar(not_prefix, bits("0"), bits("01")); }),
              ErrorKind::NotPrefixLanguage);
    const auto not_gnf = parse_grammar("alphabet: 0 < 1\nstart: S\nS -> A\nA -> 0\n");
    EXPECT_EQ(error_kind([&] { interval_grammar(not_gnf, bits("0"), bits("0")); }), ErrorKind::NotNormalized);
}

// Window equality on seeded triples from every fixture grammar.
TEST(IntervalGrammar, WindowsMatchFilteredLanguage) {
    std::size_t triples = 0;
    for (const auto& e : lexord::testing::catalog()) {
        PreparedGrammar p(load_grammar(e.grammar_path), e.pipeline);
        const auto window = enumerate_window(p.grammar(), 12);
        for (const auto& [u, v] : window_pairs(window, 20, 31)) {
            EXPECT_EQ(interval_window_mismatch(p.grammar(), window, u, v, 12), "") << e.name;
            ++triples;
        }
    }
    EXPECT_GE(triples, 100U);
}

TEST(Finiteness, Languages) {
    EXPECT_TRUE(is_finite_language(parse_grammar("alphabet: a\nstart: S\nS -> a | a a\n")));
    EXPECT_FALSE(is_finite_language(parse_grammar("alphabet: a\nstart: S\nS -> a | a S\n")));
    // The cycle through B is unproductive.
    EXPECT_TRUE(is_finite_language(parse_grammar("alphabet: a\nstart: S\nS -> a | B\nB -> a B\n")));
    // A unit cycle alone does not make the language infinite.
    EXPECT_TRUE(is_finite_language(parse_grammar("alphabet: a\nstart: S\nS -> A | a\nA -> S\n")));
    EXPECT_FALSE(is_finite_language(parse_grammar("alphabet: a\nstart: S\nS -> a E S | a\nE -> eps\n")));
    // A cycle through nullable symbols alone pumps nothing.
    EXPECT_TRUE(is_finite_language(parse_grammar("alphabet: a\nstart: S\nS -> E S E | a\nE -> eps\n")));
    EXPECT_TRUE(is_finite_language(parse_grammar("alphabet: a\nstart: S\nS -> S a\n")));
}

// Finiteness agrees with growth of the window: a finite language has no word
// longer than its longest one.
TEST(Finiteness, AgreesWithWindowGrowthOnRandomIntervals) {
    const auto g = load_grammar(fixture("omega_omega.grm"));
    const auto window = enumerate_window(g, 9);
    for (const auto& [u, v] : window_pairs(window, 40, 5)) {
        const auto gp = interval_grammar(g, u, v).gprime;
        const bool finite = is_finite_language(reduce(gp));
        const auto small = enumerate_window(gp, 14);
        const auto large = enumerate_window(gp, 18);
        if (finite)
            EXPECT_EQ(small, large);
        else
            EXPECT_LT(small.size(), large.size());
    }
}

TEST(FiniteDistance, Examples) {
    const auto omega = load_grammar(fixture("omega.grm"));
    EXPECT_TRUE(finite_distance(omega, bits("0"), bits("110")));
    EXPECT_TRUE(finite_distance(omega, bits("110"), bits("0")));
    EXPECT_TRUE(finite_distance(omega, bits("10"), bits("10")));
    const auto eta = load_grammar(fixture("eta.grm"));
    EXPECT_FALSE(finite_distance(eta, bits("01"), bits("1101")));
    const auto oo = load_grammar(fixture("omega_omega.grm"));
    EXPECT_TRUE(finite_distance(oo, bits("0"), bits("100")));
    EXPECT_FALSE(finite_distance(oo, bits("100"), bits("11000")));
}

TEST(Classes, WindowPartitions) {
    const auto omega = sim1_partition(load_grammar(fixture("omega.grm")), 8);
    EXPECT_EQ(omega.size(), 1U);
    const auto zeta = sim1_partition(load_grammar(fixture("zeta.grm")), 8);
    EXPECT_EQ(zeta.size(), 1U);
    const auto eta = sim1_partition(load_grammar(fixture("eta.grm")), 6);
    for (const auto& c : eta)
        EXPECT_EQ(c.size(), 1U);
    // Window of w^w: classes are the w-blocks 1^n 0 (1*0)^(n-1) 1^k 0.
    const auto oo = sim1_partition(load_grammar(fixture("omega_omega.grm")), 6);
    ASSERT_GE(oo.size(), 2U);
    EXPECT_EQ(oo[0].front(), bits("0"));
    EXPECT_EQ(oo[0].back(), bits("101110"));
}

// Classes are unions of runs: two words are related iff they are in the same run.
TEST(Classes, PairwiseAgreesWithRuns) {
    const auto g = load_grammar(fixture("eta_omega_sum.grm"));
    const auto classes = sim1_partition(g, 7);
    std::vector<std::pair<Word, std::size_t>> labelled;
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (const auto& w : classes[c])
            labelled.emplace_back(w, c);
    for (std::size_t i = 0; i < labelled.size(); i += 3)
        for (std::size_t j = i + 1; j < labelled.size(); j += 5)
            EXPECT_EQ(finite_distance(g, labelled[i].first, labelled[j].first),
                      labelled[i].second == labelled[j].second);
}

TEST(RankBound, HeightPlusOne) {
    EXPECT_EQ(to_string(fc_rank_bound(load_grammar(fixture("omega.grm")))), "w + 1");
    EXPECT_EQ(to_string(fc_rank_bound(load_grammar(fixture("omega_omega.grm")))), "w^2 + 1");
    EXPECT_EQ(to_string(fc_rank_bound(parse_grammar("alphabet: a\nstart: S\nS -> a\n"))), "2");
}
