#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "dqv/bounds.hpp"
#include "dqv/errors.hpp"
#include "dqv/game.hpp"
#include "dqv/rng.hpp"

using dqv::SplitMix64;
using dqv::kDefaultSeed;
using namespace dqv::game;

namespace {

// Test-local enumeration of Pr[|S cap C| > alpha |C|] with no budget term,
// kept independent of the library oracle.
double overlap_only_probability(std::int64_t n, double alpha, std::uint32_t s_mask) {
    double total = 0.0;
    for (std::uint32_t c_mask = 0; c_mask < (std::uint32_t{1} << n); ++c_mask) {
        const int c_size = std::popcount(c_mask);
        const int s_cap_c = std::popcount(c_mask & s_mask);
        if (static_cast<double>(s_cap_c) > alpha * static_cast<double>(c_size)) {
            total += std::pow(1.0 / 3.0, c_size) * std::pow(2.0 / 3.0, n - c_size);
        }
    }
    return total;
}

std::vector<std::int64_t> mask_to_set(std::uint32_t mask) {
    std::vector<std::int64_t> s;
    for (std::int64_t x = 1; mask != 0; ++x, mask >>= 1) {
        if ((mask & 1u) != 0) {
            s.push_back(x);
        }
    }
    return s;
}

} // namespace

TEST_CASE("sample_C basics") {
    SplitMix64 rng(kDefaultSeed);
    CHECK(sample_C(0, rng).empty());

    const auto c = sample_C(50, rng);
    std::int64_t prev = 0;
    for (const std::int64_t x : c) {
        CHECK(x > prev);
        CHECK(x <= 50);
        prev = x;
    }
}

TEST_CASE("sample_C mean size at N=300 within three standard errors of 100") {
    SplitMix64 rng(kDefaultSeed);
    const int samples = 100000;
    std::int64_t total = 0;
    for (int i = 0; i < samples; ++i) {
        total += static_cast<std::int64_t>(sample_C(300, rng).size());
    }
    const double mean = static_cast<double>(total) / samples;
    const double standard_error = std::sqrt(300.0 * (1.0 / 3.0) * (2.0 / 3.0) / samples);
    CHECK(std::fabs(mean - 100.0) <= 3.0 * standard_error);
}

TEST_CASE("sample_C hits the full set with probability 3^-N") {
    SplitMix64 rng(kDefaultSeed);
    const int samples = 200000;
    std::int64_t full = 0;
    for (int i = 0; i < samples; ++i) {
        if (sample_C(3, rng).size() == 3) {
            ++full;
        }
    }
    const double p = 1.0 / 27.0;
    const double rate = static_cast<double>(full) / samples;
    const double standard_error = std::sqrt(p * (1.0 - p) / samples);
    CHECK(std::fabs(rate - p) <= 4.0 * standard_error);
}

TEST_CASE("win_condition comparisons are strict and non-strict exactly as stated") {
    const GameParams params{2, 0.25, 0.2, 0.0};
    CHECK(win_condition(params, 1, 1, 0));

    // Zero overlap loses regardless of C.
    for (std::int64_t c_size = 0; c_size <= 2; ++c_size) {
        CHECK_FALSE(win_condition(params, c_size, 0, 0));
    }

    // w = 0 with C covering everything leaves budget 0 <= 0, so only the
    // overlap side decides.
    const GameParams tight{3, 0.25, 0.0, 0.0};
    CHECK(win_condition(tight, 3, 1, 0));
    CHECK_FALSE(win_condition(tight, 3, 1, 1));

    // Overlap exactly alpha*|C| is a loss (strict inequality).
    const GameParams half{8, 0.25, 1.0, 0.0};
    CHECK_FALSE(win_condition(half, 4, 1, 0));
    CHECK(win_condition(half, 4, 2, 0));
}

TEST_CASE("integer budget comparison agrees with its floored form") {
    const double ws[] = {0.0, 0.2, 0.25, 0.5, 0.9467072085033077, 1.0};
    for (const double w : ws) {
        for (std::int64_t slack = 0; slack <= 20; ++slack) {
            const double budget = w * static_cast<double>(slack);
            for (std::int64_t detected = 0; detected <= slack; ++detected) {
                const bool raw = static_cast<double>(detected) <= budget;
                const bool floored = detected <= static_cast<std::int64_t>(std::floor(budget));
                CHECK(raw == floored);
            }
        }
    }
}

TEST_CASE("play with epsilon=1 never counts a coin") {
    const GameParams params{20, 0.25, 0.1, 1.0};
    const std::vector<std::int64_t> s{1, 4, 5, 9, 13, 17, 20};
    SplitMix64 rng(kDefaultSeed);
    for (int i = 0; i < 2000; ++i) {
        const GameOutcome outcome = play(params, s, rng);
        CHECK(outcome.detected_off_c == 0);
        const bool overlap_ok = static_cast<double>(outcome.s_cap_c) >
                                params.alpha * static_cast<double>(outcome.c_size);
        CHECK(outcome.prover_wins == overlap_ok);
    }
}

TEST_CASE("play with epsilon=0 counts all of S off C") {
    const GameParams params{20, 0.25, 0.3, 0.0};
    const std::vector<std::int64_t> s{2, 3, 6, 8, 11, 14, 18};
    SplitMix64 rng(kDefaultSeed);
    for (int i = 0; i < 2000; ++i) {
        const GameOutcome outcome = play(params, s, rng);
        CHECK(outcome.detected_off_c ==
              static_cast<std::int64_t>(s.size()) - outcome.s_cap_c);
    }
}

TEST_CASE("play outcome counts stay within their ranges") {
    const GameParams params{15, 0.3, 0.4, 0.35};
    const std::vector<std::int64_t> s{1, 2, 5, 7, 8, 12, 15};
    SplitMix64 rng(kDefaultSeed);
    for (int i = 0; i < 5000; ++i) {
        const GameOutcome outcome = play(params, s, rng);
        CHECK(outcome.c_size >= 0);
        CHECK(outcome.c_size <= params.n);
        CHECK(outcome.s_cap_c >= 0);
        CHECK(outcome.s_cap_c <= std::min<std::int64_t>(s.size(), outcome.c_size));
        CHECK(outcome.detected_off_c >= 0);
        CHECK(outcome.detected_off_c <= static_cast<std::int64_t>(s.size()) - outcome.s_cap_c);
    }
}

TEST_CASE("play with an empty S never wins") {
    const GameParams params{10, 0.25, 1.0, 0.5};
    SplitMix64 rng(kDefaultSeed);
    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(play(params, {}, rng).prover_wins);
    }
}

TEST_CASE("exact oracle matches hand enumeration") {
    const std::vector<std::int64_t> single{1};
    CHECK(exact_win_probability({2, 0.25, 0.2, 0.0}, single) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    const std::vector<std::int64_t> full3{1, 2, 3};
    CHECK(exact_win_probability({3, 0.4, 0.0, 0.0}, full3) ==
          doctest::Approx(1.0 / 27.0).epsilon(1e-13));

    const std::vector<std::int64_t> first4{1, 2, 3, 4};
    CHECK(exact_win_probability({12, 0.25, 0.2, 0.0}, first4) ==
          doctest::Approx(0.11398631268569794).epsilon(1e-13));

    const std::vector<std::int64_t> spread{2, 3, 5, 7};
    CHECK(exact_win_probability({10, 0.3, 0.25, 0.4}, spread) ==
          doctest::Approx(0.4553372284035293).epsilon(1e-13));

    CHECK(exact_win_probability({10, 0.25, 0.2, 0.0}, {}) == 0.0);
}

TEST_CASE("exact oracle rejects universes above the enumeration guard") {
    const std::vector<std::int64_t> s{1};
    CHECK_THROWS_AS(exact_win_probability({25, 0.25, 0.2, 0.0}, s), dqv::guard_error);
    CHECK_NOTHROW(exact_win_probability({24, 0.25, 0.2, 0.0}, s));
}

TEST_CASE("w at or above one reduces the game to the overlap condition") {
    const std::uint32_t s_mask = 0b0110110101;
    const auto s = mask_to_set(s_mask);
    const double expected = overlap_only_probability(10, 0.3, s_mask);
    CHECK(exact_win_probability({10, 0.3, 1.0, 0.0}, s) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(exact_win_probability({10, 0.3, 1.0, 0.7}, s) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("budget probability is monotone in the floored budget") {
    for (const double p : {0.1, 0.5, 0.97}) {
        double prev = 0.0;
        for (std::int64_t k = 0; k <= 30; ++k) {
            const double cdf = dqv::bounds::exact_binomial_cdf(30, p, k);
            CHECK(cdf >= prev);
            prev = cdf;
        }
        CHECK(prev == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Monte Carlo estimate lands within three half-widths of the oracle") {
    const GameParams params{12, 0.25, 0.2, 0.0};
    const AdversaryStrategy strategy = FixedSet{{1, 2, 3, 4}};
    const auto summary = monte_carlo_win_probability(params, strategy, 1000000, kDefaultSeed, 4);
    const double exact = exact_win_probability(params, std::vector<std::int64_t>{1, 2, 3, 4});
    const double half_width = (summary.ci_high - summary.ci_low) / 2.0;
    CHECK(std::fabs(summary.estimate - exact) <= 3.0 * half_width);
}

TEST_CASE("Monte Carlo tracks the oracle across random configurations") {
    SplitMix64 meta(kDefaultSeed);
    int misses = 0;
    for (int draw = 0; draw < 100; ++draw) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(meta.next_bounded(11));
        const GameParams params{n, meta.next_double() * 0.499, meta.next_double(),
                                meta.next_double()};
        std::uint32_t s_mask = 0;
        for (std::int64_t x = 0; x < n; ++x) {
            if (meta.bernoulli(0.5)) {
                s_mask |= std::uint32_t{1} << x;
            }
        }
        const auto s = mask_to_set(s_mask);
        const double exact = exact_win_probability(params, s);
        const auto summary = monte_carlo_win_probability(params, FixedSet{s}, 100000,
                                                         meta.next_u64(), 4);
        const double half_width = (summary.ci_high - summary.ci_low) / 2.0;
        if (std::fabs(summary.estimate - exact) > 4.0 * half_width) {
            ++misses;
        }
    }
    CHECK(misses <= 1);
}

TEST_CASE("Monte Carlo agrees with the oracle when the budget sits on integers") {
    const GameParams params{10, 0.25, 0.5, 0.3};
    const std::vector<std::int64_t> s{1, 2, 3, 4, 5, 6};
    const double exact = exact_win_probability(params, s);
    const auto summary = monte_carlo_win_probability(params, FixedSet{s}, 200000,
                                                     kDefaultSeed, 4);
    const double half_width = (summary.ci_high - summary.ci_low) / 2.0;
    CHECK(std::fabs(summary.estimate - exact) <= 4.0 * half_width);
}

TEST_CASE("point-mass size distribution behaves like a uniform draw of that size") {
    const GameParams params{12, 0.25, 0.2, 0.0};
    std::vector<double> weights(13, 0.0);
    weights[4] = 1.0;
    const auto summary = monte_carlo_win_probability(params, SizeDistribution{weights},
                                                     200000, kDefaultSeed, 4);
    // C is exchangeable, so every fixed 4-subset has the same win probability
    // and the uniform 4-subset mixture inherits it.
    const double exact = exact_win_probability(params, std::vector<std::int64_t>{1, 2, 3, 4});
    const double half_width = (summary.ci_high - summary.ci_low) / 2.0;
    CHECK(std::fabs(summary.estimate - exact) <= 4.0 * half_width);
}

TEST_CASE("empty-set strategy reports a zero estimate with a zero lower bound") {
    const GameParams params{10, 0.25, 0.2, 0.0};
    const auto summary = monte_carlo_win_probability(params, EmptySet{}, 5000, kDefaultSeed);
    CHECK(summary.successes == 0);
    CHECK(summary.estimate == 0.0);
    CHECK(summary.ci_low == 0.0);
    CHECK(summary.ci_high > 0.0);
}

TEST_CASE("full-set strategy with w=0 wins only on the full verifier set") {
    const GameParams params{3, 0.25, 0.0, 0.0};
    const auto summary = monte_carlo_win_probability(params, FullSet{}, 200000, kDefaultSeed, 4);
    const double exact = exact_win_probability(params, std::vector<std::int64_t>{1, 2, 3});
    CHECK(exact == doctest::Approx(1.0 / 27.0).epsilon(1e-13));
    const double half_width = (summary.ci_high - summary.ci_low) / 2.0;
    CHECK(std::fabs(summary.estimate - exact) <= 4.0 * half_width);
}

TEST_CASE("identical inputs reproduce identical counts across worker splits") {
    const GameParams params{30, 0.25, 0.2, 0.1};
    const AdversaryStrategy strategy = UniformRandomOfSize{12};
    const auto one = monte_carlo_win_probability(params, strategy, 20000, 42, 1);
    const auto four = monte_carlo_win_probability(params, strategy, 20000, 42, 4);
    const auto again = monte_carlo_win_probability(params, strategy, 20000, 42, 4);
    CHECK(one.successes == four.successes);
    CHECK(four.successes == again.successes);
    CHECK(one.estimate == four.estimate);
}

TEST_CASE("strategy sweep covers the requested sizes and finds the argmax") {
    const GameParams params{10, 0.25, 1.0, 0.0};
    const std::vector<std::int64_t> sizes{0, 10};
    const auto result = strategy_sweep(params, sizes, 20000, kDefaultSeed, 4);
    REQUIRE(result.entries.size() == 2);
    CHECK(result.entries[0].size == 0);
    CHECK(result.entries[0].summary.estimate == 0.0);
    CHECK(result.entries[1].size == 10);
    // With the budget condition vacuous, the full set dominates.
    CHECK(result.argmax_index == 1);

    const auto repeat = strategy_sweep(params, sizes, 20000, kDefaultSeed, 1);
    CHECK(repeat.entries[1].summary.successes == result.entries[1].summary.successes);
}

TEST_CASE("strategy sweep at a single size of zero returns one zero estimate") {
    const GameParams params{6, 0.25, 0.2, 0.0};
    const std::vector<std::int64_t> sizes{0};
    const auto result = strategy_sweep(params, sizes, 2000, kDefaultSeed);
    REQUIRE(result.entries.size() == 1);
    CHECK(result.entries[0].summary.estimate == 0.0);
    CHECK(result.argmax_index == 0);
}

TEST_CASE("strategy labels name the family and its size parameter") {
    CHECK(strategy_label(EmptySet{}) == "empty");
    CHECK(strategy_label(FullSet{}) == "full");
    CHECK(strategy_label(FixedSet{{1, 2, 3, 4}}) == "fixed:k=4");
    CHECK(strategy_label(UniformRandomOfSize{7}) == "uniform:m=7");
    CHECK(strategy_label(SizeDistribution{{0.5, 0.5}}) == "size-dist");
}

TEST_CASE("game inputs are validated") {
    SplitMix64 rng(kDefaultSeed);
    const std::vector<std::int64_t> s{1, 2};
    CHECK_THROWS_AS(play({0, 0.25, 0.2, 0.0}, s, rng), std::invalid_argument);
    CHECK_THROWS_AS(play({10, 0.5, 0.2, 0.0}, s, rng), std::invalid_argument);
    CHECK_THROWS_AS(play({10, -0.1, 0.2, 0.0}, s, rng), std::invalid_argument);
    CHECK_THROWS_AS(play({10, 0.25, 1.5, 0.0}, s, rng), std::invalid_argument);
    CHECK_THROWS_AS(play({10, 0.25, 0.2, -0.5}, s, rng), std::invalid_argument);

    const std::vector<std::int64_t> unsorted{2, 1};
    CHECK_THROWS_AS(play({10, 0.25, 0.2, 0.0}, unsorted, rng), std::invalid_argument);
    const std::vector<std::int64_t> out_of_range{1, 11};
    CHECK_THROWS_AS(play({10, 0.25, 0.2, 0.0}, out_of_range, rng), std::invalid_argument);
    const std::vector<std::int64_t> duplicated{3, 3};
    CHECK_THROWS_AS(play({10, 0.25, 0.2, 0.0}, duplicated, rng), std::invalid_argument);

    const GameParams params{10, 0.25, 0.2, 0.0};
    CHECK_THROWS_AS(monte_carlo_win_probability(params, UniformRandomOfSize{11}, 100, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo_win_probability(params, FixedSet{{0}}, 100, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo_win_probability(params, EmptySet{}, 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        monte_carlo_win_probability(params, SizeDistribution{{1.0}}, 100, 1),
        std::invalid_argument);
    std::vector<double> heavy(11, 0.0);
    heavy[2] = 1.5;
    CHECK_THROWS_AS(monte_carlo_win_probability(params, SizeDistribution{heavy}, 100, 1),
                    std::invalid_argument);

    const std::vector<std::int64_t> no_sizes;
    CHECK_THROWS_AS(strategy_sweep(params, no_sizes, 100, 1), std::invalid_argument);
}
