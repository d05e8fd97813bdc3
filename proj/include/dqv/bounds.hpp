#pragma once

#include <cstdint>

namespace dqv::bounds {

// ---------------------------------------------------------------------------
// Concentration inequalities (closed form) and the exact CDFs that bound them.
// ---------------------------------------------------------------------------

// Pr[Bin(n, p) <= k] <= exp(-2(np - k)^2 / n), valid for k <= np.
double hoeffding_lower_tail(std::int64_t n, double p, double k);

// Pr[Bin(n, p) >= k] <= exp(-2(np - k)^2 / n), valid for k >= np.
// Equals hoeffding_lower_tail(n, 1-p, n-k) bit for bit.
double hoeffding_upper_tail(std::int64_t n, double p, double k);

// Pr[Hyp(Npop, K, n) <= lambda] <= exp(-2n(K/Npop - lambda/n)^2),
// valid for 0 < lambda < nK/Npop.
double hypergeom_tail_low(std::int64_t Npop, std::int64_t K, std::int64_t n, double lambda);

// Pr[Hyp(Npop, K, n) >= lambda] <= exp(-2n(lambda/n - K/Npop)^2),
// valid for lambda > nK/Npop.
double hypergeom_tail_high(std::int64_t Npop, std::int64_t K, std::int64_t n, double lambda);

// Sum_{i<=k} C(n,i) p^i (1-p)^(n-i), accumulated in log space with
// compensated summation. Absolute error target 1e-12.
double exact_binomial_cdf(std::int64_t n, double p, std::int64_t k);

// Sum_{i<=k} C(K,i) C(Npop-K, n-i) / C(Npop, n), same accumulation scheme.
double exact_hypergeom_cdf(std::int64_t Npop, std::int64_t K, std::int64_t n, std::int64_t k);

// ---------------------------------------------------------------------------
// Threshold calculus for the multi-round verification protocol.
// ---------------------------------------------------------------------------

struct ThresholdInputs {
    std::int64_t n_rounds = 0;
    double alpha = 0.0;    // corruption fraction target, in [0, 1/2)
    double delta = 0.0;    // failure budget, in (0, 1/2)
    double epsilon = 0.0;  // undetected-corruption coin bias, in [0, 1]
};

struct ThresholdReport {
    ThresholdInputs inputs;
    double A = 0.0;
    double A_prime = 0.0;
    double f = 0.0;
    double g = 0.0;
    double w = 0.0;
    double noise_threshold = 0.0;
    bool feasible_A = false;  // A >= 100
    bool feasible_f = false;  // f >= 9/10
    bool feasible() const { return feasible_A && feasible_f; }
};

// A = alpha^2 N / (6 ln(2/delta)). Natural logarithm throughout.
double compute_A(std::int64_t n_rounds, double alpha, double delta);

// Smaller root of x(1/x - 1)^2 = 3/A, i.e. ((2 + 3/A) - sqrt((2 + 3/A)^2 - 4))/2.
// Extended precision so the root identity holds to 1e-12 relative error over
// the whole working range of A; a double does not have enough resolution near
// the x -> 1 end. Requires A >= 100, the regime where the calculus applies.
long double compute_A_prime(double A);

// Full derived-quantity chain. The epsilon model folds (1-eps)^2 into A and
// scales w by (1-eps); epsilon = 0 gives A' , f, g, w of the base analysis:
//   A = (1-eps)^2 alpha^2 N / (6 ln(2/delta))
//   f = A'(1 - A^{-1/2}),  g = A^{-1/2}/2
//   w = (1 - A^{-1/2}) A' (1-eps) alpha,  noise_threshold = f alpha - g
// Infeasible regimes (A < 100 or f < 9/10) come back flagged, not thrown,
// so sweeps can chart the feasible frontier. Derived fields are NaN when
// A = 0 (epsilon = 1).
ThresholdReport threshold_report(const ThresholdInputs& inputs);

// Smallest N whose report is feasible with noise_threshold > target_p_noise.
// Exponential search then bisection; noise_threshold is nondecreasing in N.
std::int64_t min_rounds(double alpha, double delta, double epsilon, double target_p_noise);

// alpha = (2q - 1)/(2q - 2) for inherent error probability q in [0, 1/2).
double alpha_from_q(double q);

struct SingleRunParams {
    double c = 0.0;  // completeness
    double s = 0.0;  // soundness
    double gap() const { return c - s; }
};

// Completeness/soundness of one base-protocol run: c = 1 - q/3, s = (q + 2)/3,
// so the gap is (1 - 2q)/3 and q = 1/3 lands on (8/9, 7/9).
SingleRunParams single_run_parameters(double q);

// Noise ceiling of the k-fold sequential-repetition approach: alpha(q)/k.
double lmko_threshold(std::int64_t k, double q);

} // namespace dqv::bounds
