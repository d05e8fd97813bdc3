#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dqv/rng.hpp"
#include "dqv/stats.hpp"

namespace dqv::game {

// One-shot avoidance game. The verifier hides a set C built by per-element
// fair three-sided die rolls; the prover commits to S up front and wins when
// it overlaps more than an alpha-fraction of C while the flagged part of S
// off C stays within a w-fraction of the complement. Each x in S \ C flips a
// coin that lands 1 (flagged) with probability 1 - epsilon.
struct GameParams {
    std::int64_t n = 0;     // universe size
    double alpha = 0.0;     // overlap fraction the prover must beat, [0, 1/2)
    double w = 0.0;         // tolerated off-C fraction, [0, 1]
    double epsilon = 0.0;   // chance a corruption off C goes unflagged, [0, 1]
};

struct EmptySet {};
struct FullSet {};
struct FixedSet {
    std::vector<std::int64_t> elements;  // sorted, unique, 1-based
};
struct UniformRandomOfSize {
    std::int64_t size = 0;
};
struct SizeDistribution {
    std::vector<double> weights;  // weights[m] = Pr[|S| = m], length n+1
};

using AdversaryStrategy =
    std::variant<EmptySet, FullSet, FixedSet, UniformRandomOfSize, SizeDistribution>;

// Short token naming the strategy in result tables ("fixed:k=3" etc).
std::string strategy_label(const AdversaryStrategy& strategy);

struct GameOutcome {
    std::int64_t c_size = 0;
    std::int64_t s_cap_c = 0;          // |S ∩ C|
    std::int64_t detected_off_c = 0;   // coins that came up 1 on S \ C
    bool prover_wins = false;
};

// Each of 1..n joins C independently with probability exactly 1/3.
std::vector<std::int64_t> sample_C(std::int64_t n, SplitMix64& rng);

// Uniform m-subset of 1..n in increasing order (selection sampling: element x
// joins with probability needed/remaining, so every m-subset is equally
// likely). Fills `out` to avoid per-draw allocation in trial loops.
void uniform_subset(std::int64_t n, std::int64_t m, SplitMix64& rng,
                    std::vector<std::int64_t>& out);

// s_cap_c > alpha * c_size (strict) and detected_off_c <= w * (n - c_size).
bool win_condition(const GameParams& params, std::int64_t c_size, std::int64_t s_cap_c,
                   std::int64_t detected_off_c);

// One round: sample C, flip coins for S \ C only (coins on S ∩ C never enter
// the win condition, so they are skipped), evaluate.
GameOutcome play(const GameParams& params, std::span<const std::int64_t> s, SplitMix64& rng);

// Brute-force oracle: enumerates all 2^n values of C with weight
// (1/3)^|C| (2/3)^(n-|C|); condition b) contributes the exact CDF of
// Binomial(|S\C|, 1-epsilon) at floor(w(n-|C|)). Guarded at n <= 24.
double exact_win_probability(const GameParams& params, std::span<const std::int64_t> s);

// Independent plays with per-trial streams derived from (seed, trial index);
// random strategies are resampled every trial. Same counts for any worker
// split.
TrialSummary monte_carlo_win_probability(const GameParams& params,
                                         const AdversaryStrategy& strategy,
                                         std::int64_t trials, std::uint64_t seed,
                                         int workers = 1, double ci_level = 0.99);

struct SweepEntry {
    std::int64_t size = 0;
    TrialSummary summary;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    std::size_t argmax_index = 0;  // entry with the highest win-rate estimate
};

// One UniformRandomOfSize estimate per requested size.
SweepResult strategy_sweep(const GameParams& params, std::span<const std::int64_t> sizes,
                           std::int64_t trials, std::uint64_t seed, int workers = 1,
                           double ci_level = 0.99);

} // namespace dqv::game
