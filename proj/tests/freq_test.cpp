#include <gtest/gtest.h>

#include <cmath>

#include "frobsub/errors.hpp"
#include "frobsub/freq.hpp"
#include "support/oracles.hpp"

using namespace frobsub;
using oracle::subst;

namespace {

const Substitution kFib = subst({{"a", "ab"}, {"b", "a"}});
const Substitution kThueMorse = subst({{"a", "ab"}, {"b", "ba"}});
const Substitution kAabBb = subst({{"a", "aab"}, {"b", "bb"}});
const double kPhi = (1 + std::sqrt(5.0)) / 2;

Word w(const Substitution& s, const std::string& text) {
    return s.alphabet().parse(text);
}

// Frequency of u in s^t(a) by the exact counting recursion.
double counted(const Substitution& s, Letter a, const Word& u, std::uint64_t t) {
    return mpq_class(oracle::count_in_iterate(s, a, u, t), oracle::length_of_iterate(s, a, t)).get_d();
}

// Smallest t with |s^t(a)| >= 10^6.
std::uint64_t million_level(const Substitution& s, Letter a) {
    std::uint64_t t = 0;
    while (oracle::length_of_iterate(s, a, t) < 1000000) ++t;
    return t;
}

}  // namespace

TEST(LetterFrequencies, Examples) {
    const auto fib = letter_frequencies(kFib, 0);
    const auto counts = iterate(kFib, Word{0}, 25);
    const double fa = static_cast<double>(oracle::sliding_count(counts, Word{0})) / counts.size();
    EXPECT_NEAR(fib[0], fa, 1e-9);
    EXPECT_NEAR(fib[0], 1 / kPhi, 1e-12);
    EXPECT_EQ(letter_frequencies(kThueMorse, 0), (FloatVector{0.5, 0.5}));
    const auto r = letter_frequencies(kAabBb, 0);
    EXPECT_NEAR(r[0], 0.0, 1e-9);
    EXPECT_NEAR(r[1], 1.0, 1e-9);
    EXPECT_THROW(letter_frequencies(subst({{"a", "ab"}, {"b", "b"}}), 0), NotExpanding);
}

TEST(GrowthRate, Examples) {
    EXPECT_NEAR(growth_rate(kFib, 0), kPhi, 1e-12);
    EXPECT_NEAR(growth_rate(kAabBb, 0), 2.0, 1e-9);
    EXPECT_NEAR(growth_rate(subst({{"a", "ab"}, {"b", "bbb"}}), 0), 3.0, 1e-9);
    // Raised to the stabilizing power 2, the swap substitution grows by 4 per step.
    EXPECT_NEAR(growth_rate(subst({{"a", "bb"}, {"b", "aa"}}), 0), 4.0, 1e-9);
}

TEST(FactorFrequencies, Examples) {
    auto f = factor_frequencies(kFib, 0, 2);
    EXPECT_NEAR(f.at(w(kFib, "ab")), 1 / (kPhi * kPhi), 1e-10);
    EXPECT_NEAR(f.at(w(kFib, "ba")), 1 / (kPhi * kPhi), 1e-10);
    EXPECT_NEAR(f.at(w(kFib, "aa")), 1 / (kPhi * kPhi * kPhi), 1e-10);
    EXPECT_EQ(f.count(w(kFib, "bb")), 0u);
    for (const auto& [u, x] : f) EXPECT_NEAR(x, counted(kFib, 0, u, 25), 1e-5);

    f = factor_frequencies(kThueMorse, 0, 2);
    EXPECT_NEAR(f.at(w(kThueMorse, "ab")), 1.0 / 3, 1e-10);
    EXPECT_NEAR(f.at(w(kThueMorse, "bb")), 1.0 / 6, 1e-10);
    for (const auto& [u, x] : f) EXPECT_NEAR(x, counted(kThueMorse, 0, u, 15), 1e-4);

    f = factor_frequencies(kAabBb, 0, 2);
    EXPECT_NEAR(f.at(w(kAabBb, "bb")), 1.0, 1e-9);
    EXPECT_NEAR(f.at(w(kAabBb, "aa")), 0.0, 1e-9);
    EXPECT_NEAR(counted(kAabBb, 0, w(kAabBb, "bb"), 200), 1.0, 0.02);

    EXPECT_THROW(factor_frequencies(kFib, 0, 1), InvalidArgument);
}

TEST(FactorFrequencies, MissingSeedIsReported) {
    // 'a' never occurs with a right neighbour, so no length-2 factor starts with it.
    EXPECT_THROW(factor_frequencies(subst({{"a", "bb"}, {"b", "bbb"}}), 0, 2), NoSeedWord);
}

TEST(FactorFrequenciesProperty, SeedChoiceDoesNotMatter) {
    for (const auto& [name, s0] : oracle::substitution_corpus()) {
        const auto p = stabilizing_power(s0);
        const auto s = p == 1 ? s0 : substitution_power(s0, p);
        for (std::size_t n : {2, 3}) {
            const auto b = blow_up(s, n);
            for (Letter a = 0; a < s.size(); ++a) {
                const auto seeds = seed_factors(b.factors, a);
                if (seeds.empty()) continue;
                const auto ref = factor_frequencies_from_seed(b, seeds.front());
                for (std::size_t k = 1; k < seeds.size(); ++k) {
                    const auto other = factor_frequencies_from_seed(b, seeds[k]);
                    double d = 0.0;
                    for (const auto& [u, x] : ref) d += std::abs(x - other.at(u));
                    EXPECT_LE(d, 1e-6) << name << " n=" << n;
                }
            }
        }
    }
}

TEST(FactorFrequenciesProperty, LimitIsBlowUpEigenvector) {
    for (const auto& [name, s0] : oracle::substitution_corpus()) {
        const auto p = stabilizing_power(s0);
        const auto s = p == 1 ? s0 : substitution_power(s0, p);
        const auto b = blow_up(s, 2);
        const auto mn = oracle::dense(incidence_matrix(b.substitution));
        for (Letter a = 0; a < s.size(); ++a) {
            const auto f = factor_frequencies(s0, a, 2);
            oracle::Vec v(b.factors.size());
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = f.at(b.factors.words[k]);
            const auto mv = oracle::mul(mn, v);
            EXPECT_LE(oracle::residual(mn, v, oracle::l1(mv)), 1e-8) << name;
        }
    }
}

TEST(FactorFrequenciesProperty, AgreesWithCountingOracle) {
    // Exact counts in an iterate of length at least 10^6. Trajectories with
    // polynomial growth converge like 1/t, so they are compared separately.
    for (const auto& [name, s0] : oracle::substitution_corpus()) {
        const auto p = stabilizing_power(s0);
        const auto s = p == 1 ? s0 : substitution_power(s0, p);
        for (Letter a = 0; a < s.size(); ++a) {
            const auto g = normalized_limit(incidence_matrix(s), ExactVector::unit(s.size(), a)).growth;
            if (g.degree > 0) continue;
            // Extra levels absorb slow geometric convergence (ratio 2/3 for aaab/bb).
            const auto t = million_level(s, a) + 30;
            const auto tab = frequency_table(s0, a, 3);
            for (const auto& [u, x] : tab.entries) EXPECT_NEAR(x, counted(s, a, u, t), 1e-3) << name << " " << a;
        }
    }
}

TEST(FactorFrequenciesProperty, PolynomialTrajectoriesApproachTheLimitSlowly) {
    // a -> aab, b -> bb: the a-count decays like 1/t, so the counting error shrinks as t grows.
    const auto u = w(kAabBb, "ab");
    const double e20 = std::abs(counted(kAabBb, 0, u, 20));
    const double e200 = std::abs(counted(kAabBb, 0, u, 200));
    EXPECT_LT(e200, e20 / 5);
    EXPECT_NEAR(measure_cylinder(kAabBb, 0, u), 0.0, 1e-9);
}

TEST(SeedIndependence, PrimitiveAndReducibleFixtures) {
    for (const auto& s : {kFib, kThueMorse, subst({{"a", "ab"}, {"b", "ac"}, {"c", "a"}})}) {
        const auto ref = frequency_table(s, 0, 3);
        for (Letter a = 1; a < s.size(); ++a) {
            const auto other = frequency_table(s, a, 3);
            double d = 0.0;
            for (const auto& [u, x] : ref.entries) d += std::abs(x - other.frequency(u));
            EXPECT_LE(d, 1e-8);
        }
    }
    const auto ta = frequency_table(kAabBb, 0, 2), tb = frequency_table(kAabBb, 1, 2);
    double d = 0.0;
    for (const auto& [u, x] : ta.entries) d += std::abs(x - tb.frequency(u));
    EXPECT_LE(d, 1e-8);

    const auto two = subst({{"a", "aaa"}, {"b", "bbb"}, {"c", "cab"}});
    const auto fa = letter_frequencies(two, 0), fb = letter_frequencies(two, 1), fc = letter_frequencies(two, 2);
    EXPECT_GE(l1_distance(fa, fb), 0.1);
    EXPECT_GE(l1_distance(fa, fc), 0.1);
    EXPECT_GE(l1_distance(fb, fc), 0.1);
    EXPECT_NEAR(fc[0], 0.5, 1e-9);
}

TEST(FrequencyTable, InvariantsOnCorpus) {
    for (const auto& [name, s] : oracle::substitution_corpus()) {
        for (Letter a = 0; a < s.size(); ++a) {
            const auto tab = frequency_table(s, a, 3);
            EXPECT_EQ(tab.power_used, stabilizing_power(s));
            EXPECT_GT(tab.growth_rate, 1.0);
            for (std::size_t n = 1; n <= 3; ++n) EXPECT_NEAR(tab.length_sum(n), 1.0, 1e-8) << name;
            for (const auto& [u, x] : tab.entries) {
                EXPECT_GE(x, 0.0);
                EXPECT_LE(x, 1.0);
                if (u.size() >= 2) EXPECT_TRUE(factor_alphabet(s, u.size()).contains(u));
            }
            const auto k = kirchhoff_check(tab, 1e-6);
            EXPECT_TRUE(k.passed) << name << " residual " << k.max_residual;
        }
    }
}

TEST(Kirchhoff, Examples) {
    auto tab = frequency_table(kFib, 0, 2);
    EXPECT_NEAR(tab.frequency(w(kFib, "a")), tab.frequency(w(kFib, "aa")) + tab.frequency(w(kFib, "ba")), 1e-9);
    EXPECT_TRUE(kirchhoff_check(tab, 1e-6).passed);
    auto tm = frequency_table(kThueMorse, 0, 2);
    EXPECT_LE(kirchhoff_check(tm).max_residual, 1e-6);

    tab.entries[w(kFib, "ab")] += 0.1;
    const auto bad = kirchhoff_check(tab, 1e-6);
    EXPECT_FALSE(bad.passed);
    EXPECT_GE(bad.max_residual, 0.09);
}

TEST(MeasureCylinder, Examples) {
    EXPECT_EQ(measure_cylinder(kFib, 0, w(kFib, "bb")), 0.0);
    EXPECT_NEAR(measure_cylinder(kFib, 0, w(kFib, "ab")), 0.381966011250105, 1e-10);
    EXPECT_NEAR(measure_cylinder(kAabBb, 0, w(kAabBb, "b")), 1.0, 1e-9);
    EXPECT_NEAR(measure_cylinder(kThueMorse, 1, w(kThueMorse, "a")), 0.5, 1e-12);
    EXPECT_THROW(measure_cylinder(kFib, 0, Word{}), InvalidArgument);
}

TEST(MeasureCylinderProperty, ProbabilityPerLength) {
    for (const auto& [name, s] : oracle::substitution_corpus()) {
        if (s.size() > 3) continue;
        for (std::size_t n = 1; n <= 3; ++n) {
            double total = 0.0;
            for (const auto& u : oracle::all_words(s.size(), n)) total += measure_cylinder(s, 0, u);
            EXPECT_NEAR(total, 1.0, 1e-8) << name << " n=" << n;
        }
    }
}
