#pragma once

#include <cstdint>

namespace dqv {

enum class IntervalMethod { WilsonCC, ClopperPearson };

struct ConfidenceInterval {
    double low = 0.0;
    double high = 1.0;
};

// Two-sided interval for a binomial proportion. Default is the Wilson score
// interval with continuity correction (Newcombe 1998); Clopper-Pearson is
// available where a conservative exact interval is wanted.
ConfidenceInterval confidence_interval(std::int64_t successes, std::int64_t trials,
                                       double level,
                                       IntervalMethod method = IntervalMethod::WilsonCC);

// Aggregate result of a batch of Monte Carlo trials.
struct TrialSummary {
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    double ci_level = 0.99;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
};

TrialSummary summarize_trials(std::int64_t successes, std::int64_t trials,
                              double level, std::uint64_t seed,
                              double wall_seconds = 0.0,
                              IntervalMethod method = IntervalMethod::WilsonCC);

} // namespace dqv
