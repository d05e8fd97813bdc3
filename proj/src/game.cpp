#include "dqv/game.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "dqv/bounds.hpp"
#include "dqv/errors.hpp"
#include "dqv/parallel.hpp"

namespace dqv::game {
namespace {

constexpr std::int64_t kExactLimit = 24;

void validate_params(const GameParams& params) {
    if (params.n < 1) {
        throw std::invalid_argument("game: n must be at least 1");
    }
    if (!(params.alpha >= 0.0) || !(params.alpha < 0.5)) {
        throw std::invalid_argument("game: alpha must lie in [0, 1/2)");
    }
    if (!(params.w >= 0.0) || !(params.w <= 1.0)) {
        throw std::invalid_argument("game: w must lie in [0, 1]");
    }
    if (!(params.epsilon >= 0.0) || !(params.epsilon <= 1.0)) {
        throw std::invalid_argument("game: epsilon must lie in [0, 1]");
    }
}

void validate_set(std::int64_t n, std::span<const std::int64_t> s) {
    std::int64_t prev = 0;
    for (const std::int64_t x : s) {
        if (x <= prev || x > n) {
            throw std::invalid_argument("game: S must be sorted, unique, within 1..n");
        }
        prev = x;
    }
}

void validate_strategy(const GameParams& params, const AdversaryStrategy& strategy) {
    if (const auto* fixed = std::get_if<FixedSet>(&strategy)) {
        validate_set(params.n, fixed->elements);
    } else if (const auto* uniform = std::get_if<UniformRandomOfSize>(&strategy)) {
        if (uniform->size < 0 || uniform->size > params.n) {
            throw std::invalid_argument("game: requested |S| outside 0..n");
        }
    } else if (const auto* dist = std::get_if<SizeDistribution>(&strategy)) {
        if (dist->weights.size() != static_cast<std::size_t>(params.n) + 1) {
            throw std::invalid_argument("game: size weights must have n+1 entries");
        }
        double total = 0.0;
        for (const double weight : dist->weights) {
            if (!(weight >= 0.0)) {
                throw std::invalid_argument("game: size weights must be non-negative");
            }
            total += weight;
        }
        if (std::fabs(total - 1.0) > 1e-9) {
            throw std::invalid_argument("game: size weights must sum to 1");
        }
    }
}

std::int64_t sample_size(const SizeDistribution& dist, SplitMix64& rng) {
    const double u = rng.next_double();
    double cumulative = 0.0;
    for (std::size_t m = 0; m < dist.weights.size(); ++m) {
        cumulative += dist.weights[m];
        if (u < cumulative) {
            return static_cast<std::int64_t>(m);
        }
    }
    // u landed in the rounding slack past the last partial sum.
    return static_cast<std::int64_t>(dist.weights.size()) - 1;
}

// Materializes the prover's set for one trial. Fixed strategies reuse their
// storage; random ones fill the caller's scratch buffer.
std::span<const std::int64_t> realize_set(const GameParams& params,
                                          const AdversaryStrategy& strategy, SplitMix64& rng,
                                          std::vector<std::int64_t>& scratch) {
    if (std::holds_alternative<EmptySet>(strategy)) {
        return {};
    }
    if (std::holds_alternative<FullSet>(strategy)) {
        scratch.resize(static_cast<std::size_t>(params.n));
        for (std::int64_t x = 1; x <= params.n; ++x) {
            scratch[static_cast<std::size_t>(x - 1)] = x;
        }
        return scratch;
    }
    if (const auto* fixed = std::get_if<FixedSet>(&strategy)) {
        return fixed->elements;
    }
    if (const auto* uniform = std::get_if<UniformRandomOfSize>(&strategy)) {
        uniform_subset(params.n, uniform->size, rng, scratch);
        return scratch;
    }
    const auto& dist = std::get<SizeDistribution>(strategy);
    uniform_subset(params.n, sample_size(dist, rng), rng, scratch);
    return scratch;
}

} // namespace

std::string strategy_label(const AdversaryStrategy& strategy) {
    if (std::holds_alternative<EmptySet>(strategy)) {
        return "empty";
    }
    if (std::holds_alternative<FullSet>(strategy)) {
        return "full";
    }
    if (const auto* fixed = std::get_if<FixedSet>(&strategy)) {
        return "fixed:k=" + std::to_string(fixed->elements.size());
    }
    if (const auto* uniform = std::get_if<UniformRandomOfSize>(&strategy)) {
        return "uniform:m=" + std::to_string(uniform->size);
    }
    return "size-dist";
}

void uniform_subset(std::int64_t n, std::int64_t m, SplitMix64& rng,
                    std::vector<std::int64_t>& out) {
    if (n < 0 || m < 0 || m > n) {
        throw std::invalid_argument("uniform_subset: need 0 <= m <= n");
    }
    out.clear();
    std::int64_t needed = m;
    for (std::int64_t x = 1; x <= n && needed > 0; ++x) {
        const std::uint64_t remaining = static_cast<std::uint64_t>(n - x + 1);
        if (rng.next_bounded(remaining) < static_cast<std::uint64_t>(needed)) {
            out.push_back(x);
            --needed;
        }
    }
}

std::vector<std::int64_t> sample_C(std::int64_t n, SplitMix64& rng) {
    if (n < 0) {
        throw std::invalid_argument("game: n must be non-negative");
    }
    std::vector<std::int64_t> c;
    for (std::int64_t x = 1; x <= n; ++x) {
        if (rng.die3() == 0) {
            c.push_back(x);
        }
    }
    return c;
}

bool win_condition(const GameParams& params, std::int64_t c_size, std::int64_t s_cap_c,
                   std::int64_t detected_off_c) {
    const bool overlap_ok =
        static_cast<double>(s_cap_c) > params.alpha * static_cast<double>(c_size);
    const bool budget_ok = static_cast<double>(detected_off_c) <=
                           params.w * static_cast<double>(params.n - c_size);
    return overlap_ok && budget_ok;
}

GameOutcome play(const GameParams& params, std::span<const std::int64_t> s, SplitMix64& rng) {
    validate_params(params);
    validate_set(params.n, s);

    // Membership bitmap for C, reused across plays so the hot loop never
    // allocates. Rolling the die for every element in order matches the
    // stream sample_C would consume.
    thread_local std::vector<std::uint8_t> in_c;
    in_c.resize(static_cast<std::size_t>(params.n) + 1);

    GameOutcome outcome;
    for (std::int64_t x = 1; x <= params.n; ++x) {
        const bool member = rng.die3() == 0;
        in_c[static_cast<std::size_t>(x)] = member ? 1 : 0;
        outcome.c_size += member ? 1 : 0;
    }
    const double detect_prob = 1.0 - params.epsilon;
    for (const std::int64_t x : s) {
        if (in_c[static_cast<std::size_t>(x)] != 0) {
            ++outcome.s_cap_c;
        } else if (rng.bernoulli(detect_prob)) {
            ++outcome.detected_off_c;
        }
    }
    outcome.prover_wins =
        win_condition(params, outcome.c_size, outcome.s_cap_c, outcome.detected_off_c);
    return outcome;
}

double exact_win_probability(const GameParams& params, std::span<const std::int64_t> s) {
    validate_params(params);
    validate_set(params.n, s);
    if (params.n > kExactLimit) {
        throw guard_error("game: exact enumeration is limited to n <= 24");
    }

    const int n = static_cast<int>(params.n);
    std::uint32_t s_mask = 0;
    for (const std::int64_t x : s) {
        s_mask |= std::uint32_t{1} << (x - 1);
    }
    const int s_size = std::popcount(s_mask);

    // Weight of a set of size c is (1/3)^c (2/3)^(n-c); consecutive sizes
    // differ by an exact factor of 1/2, so the whole table inherits the
    // rounding of a single pow call.
    std::vector<double> weight(static_cast<std::size_t>(n) + 1);
    weight[0] = std::pow(2.0 / 3.0, n);
    for (int c = 1; c <= n; ++c) {
        weight[static_cast<std::size_t>(c)] = weight[static_cast<std::size_t>(c - 1)] * 0.5;
    }

    // budget_prob[s_off][c] = Pr[Binomial(s_off, 1-eps) <= floor(w (n-c))].
    const double detect_prob = 1.0 - params.epsilon;
    std::vector<std::vector<double>> budget_prob(
        static_cast<std::size_t>(s_size) + 1,
        std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0));
    for (int s_off = 1; s_off <= s_size; ++s_off) {
        for (int c = 0; c <= n; ++c) {
            const auto budget = static_cast<std::int64_t>(
                std::floor(params.w * static_cast<double>(params.n - c)));
            budget_prob[static_cast<std::size_t>(s_off)][static_cast<std::size_t>(c)] =
                bounds::exact_binomial_cdf(s_off, detect_prob,
                                           std::min<std::int64_t>(budget, s_off));
        }
    }

    double total = 0.0;
    double carry = 0.0;
    const std::uint32_t masks = std::uint32_t{1} << n;
    for (std::uint32_t c_mask = 0; c_mask < masks; ++c_mask) {
        const int c_size = std::popcount(c_mask);
        const int s_cap_c = std::popcount(c_mask & s_mask);
        if (!(static_cast<double>(s_cap_c) > params.alpha * static_cast<double>(c_size))) {
            continue;
        }
        const int s_off = s_size - s_cap_c;
        const double term =
            weight[static_cast<std::size_t>(c_size)] *
            budget_prob[static_cast<std::size_t>(s_off)][static_cast<std::size_t>(c_size)];
        const double y = term - carry;
        const double t = total + y;
        carry = (t - total) - y;
        total = t;
    }
    return std::min(total, 1.0);
}

TrialSummary monte_carlo_win_probability(const GameParams& params,
                                         const AdversaryStrategy& strategy,
                                         std::int64_t trials, std::uint64_t seed, int workers,
                                         double ci_level) {
    validate_params(params);
    validate_strategy(params, strategy);
    if (trials < 1) {
        throw std::invalid_argument("game: trials must be at least 1");
    }

    const auto start = std::chrono::steady_clock::now();
    const std::int64_t wins = count_successes(trials, workers, [&](std::int64_t trial) {
        SplitMix64 rng = SplitMix64::for_trial(seed, static_cast<std::uint64_t>(trial));
        thread_local std::vector<std::int64_t> scratch;
        const auto s = realize_set(params, strategy, rng, scratch);
        return play(params, s, rng).prover_wins;
    });
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return summarize_trials(wins, trials, ci_level, seed, elapsed.count());
}

SweepResult strategy_sweep(const GameParams& params, std::span<const std::int64_t> sizes,
                           std::int64_t trials, std::uint64_t seed, int workers,
                           double ci_level) {
    if (sizes.empty()) {
        throw std::invalid_argument("game: sweep needs at least one size");
    }
    SweepResult result;
    result.entries.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const UniformRandomOfSize strategy{sizes[i]};
        const std::uint64_t entry_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        result.entries.push_back(
            {sizes[i], monte_carlo_win_probability(params, strategy, trials, entry_seed,
                                                   workers, ci_level)});
        if (result.entries[i].summary.estimate >
            result.entries[result.argmax_index].summary.estimate) {
            result.argmax_index = i;
        }
    }
    return result;
}

} // namespace dqv::game
