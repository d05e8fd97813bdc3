#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dqv/bounds.hpp"
#include "dqv/game.hpp"
#include "dqv/stats.hpp"

namespace dqv::experiments {

using ordered_json = nlohmann::ordered_json;

// One line of the result table shared by all trial-based experiments. The
// pass verdict always compares the interval's upper end against the failure
// budget, never the point estimate.
struct ExperimentRow {
    std::string experiment;
    std::int64_t n_rounds = 0;
    double alpha = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double w = 0.0;
    double p_noise = 0.0;
    std::string strategy;
    TrialSummary summary;
    bool pass = false;
};

// Abort rate of an honest prover under round noise, at the w derived from the
// threshold calculus. p_noise at or past the derived threshold (or an
// infeasible calculus point) marks the run out-of-regime but still runs it.
struct HonestAbortResult {
    bounds::ThresholdReport threshold;
    double q = 0.0;
    double p_noise = 0.0;
    bool out_of_regime = false;
    ExperimentRow row;
    bool pass = false;
};

HonestAbortResult honest_abort_experiment(const bounds::ThresholdInputs& inputs, double q,
                                          double p_noise, std::int64_t trials,
                                          std::uint64_t seed, int workers = 1);

// Success = the verdict contradicts the promise label without an abort, under
// plans that corrupt a uniformly random set of rounds per trial, one sweep
// entry per requested set size. p_zero < 0 selects the promise boundary 1-q.
struct AdversaryResult {
    bounds::ThresholdReport threshold;
    double q = 0.0;
    double p_zero = 0.0;
    double p_noise = 0.0;
    bool out_of_regime = false;
    std::vector<ExperimentRow> rows;
    std::size_t max_index = 0;  // row with the highest success estimate
    bool pass = false;          // every row's ci_high within delta
};

AdversaryResult adversary_experiment(const bounds::ThresholdInputs& inputs, double q,
                                     double p_noise, std::span<const std::int64_t> sizes,
                                     std::int64_t trials, std::uint64_t seed, int workers = 1,
                                     double p_zero = -1.0);

// A grid point for the avoidance-game bound: the game parameters plus the
// failure budget they were derived for.
struct LemmaPoint {
    game::GameParams params;
    double delta = 0.0;
};

// Small-universe cross-check row: the exact enumeration sits next to the
// Monte Carlo estimate. These points cannot satisfy the bound preconditions
// (the feasible region starts far above the enumeration guard), so they are
// flagged as extrapolation and judged on oracle agreement instead of delta.
struct LemmaCorner {
    game::GameParams params;
    std::int64_t size = 0;
    double exact = 0.0;
    TrialSummary summary;
    bool pass = false;  // |estimate - exact| <= 4 interval half-widths
};

struct LemmaValidationResult {
    std::vector<ExperimentRow> rows;
    std::vector<LemmaCorner> corners;
    bool pass = false;
};

// Rejects any point whose derived A falls below 100 or whose w exceeds the
// bound's ceiling; corner points instead must fit the enumeration guard.
LemmaValidationResult lemma_validation(std::span<const LemmaPoint> points,
                                       std::span<const std::int64_t> sizes,
                                       std::span<const game::GameParams> corners,
                                       std::int64_t trials, std::uint64_t seed,
                                       int workers = 1);

// Exhaustive exact-CDF-vs-closed-form sweep for one bound family.
struct TailBoundFamilyResult {
    std::string family;
    std::int64_t points = 0;
    std::int64_t violations = 0;  // exact mass above the closed form
    double max_ratio = 0.0;       // worst exact/bound over the grid
    bool pass = false;
};

struct TailBoundResult {
    std::vector<TailBoundFamilyResult> families;
    std::int64_t total_points = 0;
    bool pass = false;
};

// Fixed grid of over 10^4 points across both binomial tails and both
// hypergeometric tails. Upper-tail masses are evaluated through the
// reflection identity; the naive complement loses to cancellation once the
// tail drops below 1e-14.
TailBoundResult tail_bound_validation();

// Derived-threshold trend over a list of round counts, with the k-fold
// repetition ceilings alpha/k as reference levels.
struct ThresholdCurveRow {
    std::int64_t n_rounds = 0;
    double A = 0.0;
    double f = 0.0;
    double g = 0.0;
    double noise_threshold = 0.0;
    double lmko_k2 = 0.0;
    double lmko_k1 = 0.0;
    bool feasible = false;
};

struct ThresholdCurveResult {
    double alpha = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double q = 0.0;  // inverse of alpha, echoed for the reference ceilings
    std::vector<ThresholdCurveRow> rows;
};

ThresholdCurveResult threshold_curve(double alpha, double delta, double epsilon,
                                     std::span<const std::int64_t> n_values);

// ---------------------------------------------------------------------------
// Output writers. CSV output is byte-identical for identical (config, seed)
// regardless of worker count; wall-clock time lives only in the JSON.
// ---------------------------------------------------------------------------

// Shortest round-trip decimal form, the same on every run.
std::string format_double(double value);

std::string to_csv(std::span<const ExperimentRow> rows);
std::vector<ExperimentRow> tail_rows(const TailBoundResult& result);
std::string curve_csv(const ThresholdCurveResult& result);
std::string curve_svg(const ThresholdCurveResult& result);

ordered_json to_json(const TrialSummary& summary);
ordered_json to_json(const bounds::ThresholdReport& report);
ordered_json to_json(const ExperimentRow& row);
ordered_json to_json(const HonestAbortResult& result);
ordered_json to_json(const AdversaryResult& result);
ordered_json to_json(const LemmaValidationResult& result);
ordered_json to_json(const TailBoundResult& result);
ordered_json to_json(const ThresholdCurveResult& result);

} // namespace dqv::experiments
