#include "dqv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

namespace dqv {

namespace {

ConfidenceInterval wilson_cc(std::int64_t s, std::int64_t n, double level) {
    const boost::math::normal_distribution<double> unit;
    const double z = boost::math::quantile(unit, 0.5 + level / 2.0);
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(s) / nn;
    const double z2 = z * z;
    const double denom = 2.0 * (nn + z2);

    ConfidenceInterval ci;
    if (s == 0) {
        ci.low = 0.0;
    } else {
        const double root = z * std::sqrt(z2 - 2.0 - 1.0 / nn + 4.0 * p * (nn * (1.0 - p) + 1.0));
        ci.low = std::max(0.0, (2.0 * nn * p + z2 - 1.0 - root) / denom);
    }
    if (s == n) {
        ci.high = 1.0;
    } else {
        const double root = z * std::sqrt(z2 + 2.0 - 1.0 / nn + 4.0 * p * (nn * (1.0 - p) - 1.0));
        ci.high = std::min(1.0, (2.0 * nn * p + z2 + 1.0 + root) / denom);
    }
    return ci;
}

ConfidenceInterval clopper_pearson(std::int64_t s, std::int64_t n, double level) {
    const double tail = (1.0 - level) / 2.0;
    ConfidenceInterval ci;
    if (s == 0) {
        ci.low = 0.0;
    } else {
        const boost::math::beta_distribution<double> lo(static_cast<double>(s),
                                                        static_cast<double>(n - s + 1));
        ci.low = boost::math::quantile(lo, tail);
    }
    if (s == n) {
        ci.high = 1.0;
    } else {
        const boost::math::beta_distribution<double> hi(static_cast<double>(s + 1),
                                                        static_cast<double>(n - s));
        ci.high = boost::math::quantile(hi, 1.0 - tail);
    }
    return ci;
}

} // namespace

ConfidenceInterval confidence_interval(std::int64_t successes, std::int64_t trials,
                                       double level, IntervalMethod method) {
    if (trials <= 0)
        throw std::invalid_argument("confidence_interval: trials must be positive");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("confidence_interval: successes out of range");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence_interval: level must lie in (0, 1)");
    return method == IntervalMethod::WilsonCC ? wilson_cc(successes, trials, level)
                                              : clopper_pearson(successes, trials, level);
}

TrialSummary summarize_trials(std::int64_t successes, std::int64_t trials,
                              double level, std::uint64_t seed,
                              double wall_seconds, IntervalMethod method) {
    const ConfidenceInterval ci = confidence_interval(successes, trials, level, method);
    TrialSummary out;
    out.successes = successes;
    out.trials = trials;
    out.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    out.ci_low = ci.low;
    out.ci_high = ci.high;
    out.ci_level = level;
    out.seed = seed;
    out.wall_seconds = wall_seconds;
    return out;
}

} // namespace dqv
