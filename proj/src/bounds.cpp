#include "dqv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dqv/errors.hpp"

namespace dqv::bounds {

namespace {

double lchoose(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n + 1)) -
           std::lgamma(static_cast<double>(k + 1)) -
           std::lgamma(static_cast<double>(n - k + 1));
}

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

double hoeffding_form(std::int64_t n, double p, double k) {
    const double nn = static_cast<double>(n);
    const double d = nn * p - k;
    return std::exp(-2.0 * d * d / nn);
}

void check_prob(double p, const char* who) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(who) + ": p must lie in [0, 1]");
}

void check_hypergeom_range(std::int64_t Npop, std::int64_t K, std::int64_t n, const char* who) {
    if (Npop < 1)
        throw std::invalid_argument(std::string(who) + ": population must be positive");
    if (K < 0 || K > Npop)
        throw std::invalid_argument(std::string(who) + ": K outside [0, population]");
    if (n < 0 || n > Npop)
        throw std::invalid_argument(std::string(who) + ": n outside [0, population]");
}

// Root of x(1/x - 1)^2 = 3/A for any A > 0. The discriminant is expanded as
// (3/A)(4 + 3/A); forming (2 + 3/A)^2 - 4 directly cancels half the digits
// once 3/A drops below 1e-8. A Newton step then pins the last bits.
long double a_prime_root(long double A) {
    const long double r = 3.0L / A;
    long double x = (2.0L + r - std::sqrt(r * (4.0L + r))) / 2.0L;
    for (int i = 0; i < 2; ++i) {
        const long double m = 1.0L - x;
        x -= (m * m - r * x) / (-2.0L * m - r);
    }
    return x;
}

void check_threshold_inputs(const ThresholdInputs& in) {
    if (in.n_rounds < 1)
        throw std::invalid_argument("threshold_report: n_rounds must be positive");
    if (!(in.alpha > 0.0 && in.alpha < 0.5))
        throw std::invalid_argument("threshold_report: alpha must lie in (0, 1/2)");
    if (!(in.delta > 0.0 && in.delta < 0.5))
        throw std::invalid_argument("threshold_report: delta must lie in (0, 1/2)");
    if (!(in.epsilon >= 0.0 && in.epsilon <= 1.0))
        throw std::invalid_argument("threshold_report: epsilon must lie in [0, 1]");
}

} // namespace

double hoeffding_lower_tail(std::int64_t n, double p, double k) {
    if (n < 1) throw std::invalid_argument("hoeffding_lower_tail: n must be positive");
    check_prob(p, "hoeffding_lower_tail");
    if (!(k <= static_cast<double>(n) * p))
        throw std::invalid_argument("hoeffding_lower_tail: requires k <= n*p");
    return hoeffding_form(n, p, k);
}

double hoeffding_upper_tail(std::int64_t n, double p, double k) {
    if (n < 1) throw std::invalid_argument("hoeffding_upper_tail: n must be positive");
    check_prob(p, "hoeffding_upper_tail");
    if (!(k >= static_cast<double>(n) * p))
        throw std::invalid_argument("hoeffding_upper_tail: requires k >= n*p");
    // Reflected so the identity with hoeffding_lower_tail(n, 1-p, n-k) is
    // bitwise, not just mathematical.
    return hoeffding_form(n, 1.0 - p, static_cast<double>(n) - k);
}

double hypergeom_tail_low(std::int64_t Npop, std::int64_t K, std::int64_t n, double lambda) {
    check_hypergeom_range(Npop, K, n, "hypergeom_tail_low");
    const double mean = static_cast<double>(n) * static_cast<double>(K) / static_cast<double>(Npop);
    if (!(lambda > 0.0 && lambda < mean))
        throw std::invalid_argument("hypergeom_tail_low: requires 0 < lambda < n*K/population");
    const double d = static_cast<double>(K) / static_cast<double>(Npop) -
                     lambda / static_cast<double>(n);
    return std::exp(-2.0 * static_cast<double>(n) * d * d);
}

double hypergeom_tail_high(std::int64_t Npop, std::int64_t K, std::int64_t n, double lambda) {
    check_hypergeom_range(Npop, K, n, "hypergeom_tail_high");
    const double mean = static_cast<double>(n) * static_cast<double>(K) / static_cast<double>(Npop);
    if (!(lambda > mean))
        throw std::invalid_argument("hypergeom_tail_high: requires lambda > n*K/population");
    const double d = lambda / static_cast<double>(n) -
                     static_cast<double>(K) / static_cast<double>(Npop);
    return std::exp(-2.0 * static_cast<double>(n) * d * d);
}

double exact_binomial_cdf(std::int64_t n, double p, std::int64_t k) {
    if (n < 1) throw std::invalid_argument("exact_binomial_cdf: n must be positive");
    check_prob(p, "exact_binomial_cdf");
    if (k < 0 || k > n)
        throw std::invalid_argument("exact_binomial_cdf: k outside [0, n]");
    if (k == n || p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    KahanSum acc;
    for (std::int64_t i = 0; i <= k; ++i) {
        acc.add(std::exp(lchoose(n, i) + static_cast<double>(i) * lp +
                         static_cast<double>(n - i) * lq));
    }
    return std::min(acc.sum, 1.0);
}

double exact_hypergeom_cdf(std::int64_t Npop, std::int64_t K, std::int64_t n, std::int64_t k) {
    check_hypergeom_range(Npop, K, n, "exact_hypergeom_cdf");
    const std::int64_t lo = std::max<std::int64_t>(0, n - (Npop - K));
    const std::int64_t hi = std::min(n, K);
    if (k < lo) return 0.0;
    if (k >= hi) return 1.0;
    const double lden = lchoose(Npop, n);
    KahanSum acc;
    for (std::int64_t i = lo; i <= k; ++i)
        acc.add(std::exp(lchoose(K, i) + lchoose(Npop - K, n - i) - lden));
    return std::min(acc.sum, 1.0);
}

double compute_A(std::int64_t n_rounds, double alpha, double delta) {
    if (n_rounds < 1) throw std::invalid_argument("compute_A: n_rounds must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("compute_A: alpha must be positive");
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("compute_A: delta must lie in (0, 1/2)");
    return alpha * alpha * static_cast<double>(n_rounds) / (6.0 * std::log(2.0 / delta));
}

long double compute_A_prime(double A) {
    if (!(A >= 100.0))
        throw feasibility_error("compute_A_prime: calculus requires A >= 100, got A = " +
                                std::to_string(A));
    return a_prime_root(static_cast<long double>(A));
}

ThresholdReport threshold_report(const ThresholdInputs& inputs) {
    check_threshold_inputs(inputs);
    ThresholdReport rep;
    rep.inputs = inputs;
    const double scaled_alpha = (1.0 - inputs.epsilon) * inputs.alpha;
    rep.A = scaled_alpha * scaled_alpha * static_cast<double>(inputs.n_rounds) /
            (6.0 * std::log(2.0 / inputs.delta));
    if (rep.A > 0.0) {
        const double inv_root = 1.0 / std::sqrt(rep.A);
        rep.A_prime = static_cast<double>(a_prime_root(static_cast<long double>(rep.A)));
        rep.f = (1.0 - inv_root) * rep.A_prime;
        rep.g = inv_root / 2.0;
        rep.w = rep.f * (1.0 - inputs.epsilon) * inputs.alpha;
        rep.noise_threshold = rep.f * inputs.alpha - rep.g;
        rep.feasible_A = rep.A >= 100.0;
        rep.feasible_f = rep.f >= 0.9;
    } else {
        const double nan = std::nan("");
        rep.A_prime = rep.f = rep.g = rep.w = rep.noise_threshold = nan;
    }
    return rep;
}

std::int64_t min_rounds(double alpha, double delta, double epsilon, double target_p_noise) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("min_rounds: alpha must lie in (0, 1/2)");
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("min_rounds: delta must lie in (0, 1/2)");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("min_rounds: epsilon must lie in [0, 1)");
    if (!(target_p_noise < alpha))
        throw std::invalid_argument(
            "min_rounds: no finite N reaches a noise threshold at or above alpha");

    const auto meets_target = [&](std::int64_t n) {
        const ThresholdReport r = threshold_report({n, alpha, delta, epsilon});
        return r.feasible() && r.noise_threshold > target_p_noise;
    };

    std::int64_t hi = 1;
    while (!meets_target(hi)) {
        if (hi > (std::int64_t{1} << 50))
            throw std::runtime_error("min_rounds: search exceeded 2^50 rounds");
        hi *= 2;
    }
    std::int64_t lo = hi / 2;
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (meets_target(mid) ? hi : lo) = mid;
    }
    if (hi > 1 && meets_target(hi - 1))
        throw std::logic_error("min_rounds: threshold not monotone at N = " + std::to_string(hi));
    return hi;
}

double alpha_from_q(double q) {
    if (!(q >= 0.0 && q < 0.5))
        throw std::invalid_argument("alpha_from_q: q must lie in [0, 1/2)");
    return (1.0 - 2.0 * q) / (2.0 - 2.0 * q);
}

SingleRunParams single_run_parameters(double q) {
    if (!(q > 0.0 && q < 0.5))
        throw std::invalid_argument("single_run_parameters: q must lie in (0, 1/2)");
    return {1.0 - q / 3.0, (q + 2.0) / 3.0};
}

double lmko_threshold(std::int64_t k, double q) {
    if (k < 1) throw std::invalid_argument("lmko_threshold: k must be at least 1");
    return alpha_from_q(q) / static_cast<double>(k);
}

} // namespace dqv::bounds
