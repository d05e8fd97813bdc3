#include "dqv/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "dqv/parallel.hpp"
#include "dqv/protocol.hpp"
#include "dqv/rng.hpp"

namespace dqv::experiments {

namespace {

constexpr double kCiLevel = 0.99;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void check_trials(std::int64_t trials, const char* where) {
    if (trials < 1)
        throw std::invalid_argument(std::string(where) + ": trials must be positive");
}

bool in_regime(const bounds::ThresholdReport& report, double p_noise) {
    return report.feasible() && p_noise < report.noise_threshold;
}

ExperimentRow make_row(std::string experiment, const bounds::ThresholdInputs& inputs, double w,
                       double p_noise, std::string strategy, const TrialSummary& summary,
                       double budget) {
    ExperimentRow row;
    row.experiment = std::move(experiment);
    row.n_rounds = inputs.n_rounds;
    row.alpha = inputs.alpha;
    row.delta = inputs.delta;
    row.epsilon = inputs.epsilon;
    row.w = w;
    row.p_noise = p_noise;
    row.strategy = std::move(strategy);
    row.summary = summary;
    row.pass = summary.ci_high <= budget;
    return row;
}

} // namespace

HonestAbortResult honest_abort_experiment(const bounds::ThresholdInputs& inputs, double q,
                                          double p_noise, std::int64_t trials,
                                          std::uint64_t seed, int workers) {
    check_trials(trials, "honest_abort_experiment");
    HonestAbortResult result;
    result.threshold = bounds::threshold_report(inputs);
    result.q = q;
    result.p_noise = p_noise;
    result.out_of_regime = !in_regime(result.threshold, p_noise);

    protocol::ProtocolParams params;
    params.n = inputs.n_rounds;
    params.w = result.threshold.w;
    params.p_noise = p_noise;
    params.p_zero = 1.0 - q;
    params.q = q;

    const auto start = std::chrono::steady_clock::now();
    const std::int64_t hits = count_successes(trials, workers, [&](std::int64_t t) {
        SplitMix64 rng = SplitMix64::for_trial(seed, static_cast<std::uint64_t>(t));
        const protocol::RunReport report = protocol::run_protocol(params, rng);
        return report.verdict.kind == protocol::VerdictKind::Abort;
    });
    const TrialSummary summary =
        summarize_trials(hits, trials, kCiLevel, seed, seconds_since(start));

    result.row = make_row("honest-abort", inputs, params.w, p_noise, "honest", summary,
                          inputs.delta);
    result.pass = result.row.pass;
    return result;
}

AdversaryResult adversary_experiment(const bounds::ThresholdInputs& inputs, double q,
                                     double p_noise, std::span<const std::int64_t> sizes,
                                     std::int64_t trials, std::uint64_t seed, int workers,
                                     double p_zero) {
    check_trials(trials, "adversary_experiment");
    if (sizes.empty())
        throw std::invalid_argument("adversary_experiment: sizes must be non-empty");

    AdversaryResult result;
    result.threshold = bounds::threshold_report(inputs);
    result.q = q;
    result.p_zero = p_zero < 0.0 ? 1.0 - q : p_zero;
    result.p_noise = p_noise;
    result.out_of_regime = !in_regime(result.threshold, p_noise);

    protocol::ProtocolParams params;
    params.n = inputs.n_rounds;
    params.w = result.threshold.w;
    params.p_noise = p_noise;
    params.p_zero = result.p_zero;
    params.q = q;

    const InstanceLabel label = params.instance_label();
    if (label == InstanceLabel::Unpromised)
        throw std::invalid_argument("adversary_experiment: p_zero falls in the promise gap");
    const protocol::VerdictKind wrong =
        label == InstanceLabel::Yes ? protocol::VerdictKind::Reject
                                    : protocol::VerdictKind::Accept;

    result.rows.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::int64_t m = sizes[i];
        if (m < 0 || m > inputs.n_rounds)
            throw std::invalid_argument("adversary_experiment: corrupted set size out of range");
        const std::uint64_t entry_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        const auto start = std::chrono::steady_clock::now();
        const std::int64_t hits = count_successes(trials, workers, [&](std::int64_t t) {
            thread_local std::vector<std::int64_t> subset;
            thread_local protocol::AttackPlan plan;
            SplitMix64 rng = SplitMix64::for_trial(entry_seed, static_cast<std::uint64_t>(t));
            game::uniform_subset(params.n, m, rng, subset);
            plan.assign(static_cast<std::size_t>(params.n), protocol::RoundAttack::Honest);
            for (std::int64_t x : subset)
                plan[static_cast<std::size_t>(x - 1)] = protocol::RoundAttack::NonBenignPauli;
            const protocol::RunReport report = protocol::run_protocol(params, plan, rng);
            return report.verdict.kind == wrong;
        });
        const TrialSummary summary =
            summarize_trials(hits, trials, kCiLevel, entry_seed, seconds_since(start));
        result.rows.push_back(make_row("adversary-success", inputs, params.w, p_noise,
                                       game::strategy_label(game::UniformRandomOfSize{m}),
                                       summary, inputs.delta));
    }

    result.max_index = 0;
    result.pass = true;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        if (result.rows[i].summary.estimate > result.rows[result.max_index].summary.estimate)
            result.max_index = i;
        result.pass = result.pass && result.rows[i].pass;
    }
    return result;
}

LemmaValidationResult lemma_validation(std::span<const LemmaPoint> points,
                                       std::span<const std::int64_t> sizes,
                                       std::span<const game::GameParams> corners,
                                       std::int64_t trials, std::uint64_t seed, int workers) {
    check_trials(trials, "lemma_validation");
    LemmaValidationResult result;
    result.pass = true;

    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const LemmaPoint& point = points[pi];
        const double scaled = (1.0 - point.params.epsilon) * point.params.alpha;
        if (!(scaled > 0.0))
            throw std::invalid_argument(
                "lemma_validation: (1 - epsilon) * alpha must be positive");
        const double A = bounds::compute_A(point.params.n, scaled, point.delta);
        if (!(A >= 100.0))
            throw std::invalid_argument(
                "lemma_validation: point sits below the feasibility floor A >= 100");
        const bounds::ThresholdReport report = bounds::threshold_report(
            {point.params.n, point.params.alpha, point.delta, point.params.epsilon});
        if (!(point.params.w <= report.w))
            throw std::invalid_argument(
                "lemma_validation: w exceeds the budget the bound covers");

        const bounds::ThresholdInputs inputs{point.params.n, point.params.alpha, point.delta,
                                             point.params.epsilon};
        const std::uint64_t point_seed = derive_seed(seed, static_cast<std::uint64_t>(pi));
        for (std::size_t si = 0; si < sizes.size(); ++si) {
            const game::UniformRandomOfSize strategy{sizes[si]};
            const TrialSummary summary = game::monte_carlo_win_probability(
                point.params, strategy, trials,
                derive_seed(point_seed, static_cast<std::uint64_t>(si)), workers, kCiLevel);
            ExperimentRow row = make_row("lemma-validation", inputs, point.params.w, 0.0,
                                         game::strategy_label(strategy), summary, point.delta);
            result.pass = result.pass && row.pass;
            result.rows.push_back(std::move(row));
        }
    }

    std::uint64_t corner_index = 0;
    for (const game::GameParams& corner : corners) {
        std::vector<std::int64_t> corner_sizes = {0, corner.n / 4, corner.n / 2,
                                                  3 * corner.n / 4, corner.n};
        std::sort(corner_sizes.begin(), corner_sizes.end());
        corner_sizes.erase(std::unique(corner_sizes.begin(), corner_sizes.end()),
                           corner_sizes.end());
        for (std::int64_t m : corner_sizes) {
            // A uniformly random m-subset wins exactly as often as any fixed
            // m-subset: the die and the coins treat all elements alike.
            std::vector<std::int64_t> fixed(static_cast<std::size_t>(m));
            std::iota(fixed.begin(), fixed.end(), std::int64_t{1});
            LemmaCorner entry;
            entry.params = corner;
            entry.size = m;
            entry.exact = game::exact_win_probability(corner, fixed);
            entry.summary = game::monte_carlo_win_probability(
                corner, game::UniformRandomOfSize{m}, trials,
                derive_seed(seed, 7000 + corner_index), workers, kCiLevel);
            const double half = 0.5 * (entry.summary.ci_high - entry.summary.ci_low);
            entry.pass = std::abs(entry.summary.estimate - entry.exact) <= 4.0 * half;
            result.pass = result.pass && entry.pass;
            result.corners.push_back(std::move(entry));
            ++corner_index;
        }
    }
    return result;
}

TailBoundResult tail_bound_validation() {
    TailBoundFamilyResult bin_low{"binomial_lower", 0, 0, 0.0, false};
    TailBoundFamilyResult bin_high{"binomial_upper", 0, 0, 0.0, false};
    TailBoundFamilyResult hyp_low{"hypergeom_lower", 0, 0, 0.0, false};
    TailBoundFamilyResult hyp_high{"hypergeom_upper", 0, 0, 0.0, false};

    const auto record = [](TailBoundFamilyResult& family, double exact, double bound) {
        ++family.points;
        if (exact > bound) ++family.violations;
        if (bound > 0.0) family.max_ratio = std::max(family.max_ratio, exact / bound);
    };

    constexpr std::int64_t kBinomialN[] = {10, 16, 25, 40, 64, 100, 160, 250, 400, 640, 1000};
    for (std::int64_t n : kBinomialN) {
        for (int pi = 1; pi <= 19; ++pi) {
            const double p = 0.05 * pi;
            const double mean = p * static_cast<double>(n);
            for (int t = 0; t <= 20; ++t) {
                const double frac = static_cast<double>(t) / 20.0;

                const double k_low = frac * mean;
                const double exact_low = bounds::exact_binomial_cdf(
                    n, p, static_cast<std::int64_t>(std::floor(k_low)));
                record(bin_low, exact_low, bounds::hoeffding_lower_tail(n, p, k_low));

                const double k_high = mean + frac * (static_cast<double>(n) - mean);
                // Upper-tail mass through the reflected CDF; 1 - cdf cancels
                // catastrophically once the tail drops below ~1e-14.
                const std::int64_t k_ceil =
                    std::min<std::int64_t>(n, static_cast<std::int64_t>(std::ceil(k_high)));
                const double exact_high = bounds::exact_binomial_cdf(n, 1.0 - p, n - k_ceil);
                record(bin_high, exact_high, bounds::hoeffding_upper_tail(n, p, k_high));
            }
        }
    }

    constexpr std::int64_t kPopulations[] = {40, 100, 240, 600};
    constexpr double kSuccessFractions[] = {0.2, 0.35, 0.5, 0.65, 0.8};
    constexpr double kDrawFractions[] = {0.1, 0.3, 0.5};
    for (std::int64_t population : kPopulations) {
        for (double kf : kSuccessFractions) {
            const auto K = static_cast<std::int64_t>(
                std::llround(kf * static_cast<double>(population)));
            for (double nf : kDrawFractions) {
                const auto n = static_cast<std::int64_t>(
                    std::llround(nf * static_cast<double>(population)));
                const double mean = static_cast<double>(n) * static_cast<double>(K) /
                                    static_cast<double>(population);
                for (int t = 1; t <= 19; ++t) {
                    const double frac = static_cast<double>(t) / 20.0;

                    const double lam_low = frac * mean;
                    const double exact_low = bounds::exact_hypergeom_cdf(
                        population, K, n, static_cast<std::int64_t>(std::floor(lam_low)));
                    record(hyp_low, exact_low,
                           bounds::hypergeom_tail_low(population, K, n, lam_low));

                    const double lam_high = mean + frac * (static_cast<double>(n) - mean);
                    const std::int64_t lam_ceil = std::min<std::int64_t>(
                        n, static_cast<std::int64_t>(std::ceil(lam_high)));
                    const double exact_high =
                        bounds::exact_hypergeom_cdf(population, population - K, n, n - lam_ceil);
                    record(hyp_high, exact_high,
                           bounds::hypergeom_tail_high(population, K, n, lam_high));
                }
            }
        }
    }

    TailBoundResult result;
    result.pass = true;
    for (TailBoundFamilyResult family : {bin_low, bin_high, hyp_low, hyp_high}) {
        family.pass = family.violations == 0;
        result.total_points += family.points;
        result.pass = result.pass && family.pass;
        result.families.push_back(std::move(family));
    }
    return result;
}

ThresholdCurveResult threshold_curve(double alpha, double delta, double epsilon,
                                     std::span<const std::int64_t> n_values) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("threshold_curve: alpha must lie in (0, 1/2)");
    ThresholdCurveResult result;
    result.alpha = alpha;
    result.delta = delta;
    result.epsilon = epsilon;
    result.q = (1.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha);
    const double lmko_k2 = bounds::lmko_threshold(2, result.q);
    const double lmko_k1 = bounds::lmko_threshold(1, result.q);
    result.rows.reserve(n_values.size());
    for (std::int64_t n : n_values) {
        const bounds::ThresholdReport report =
            bounds::threshold_report({n, alpha, delta, epsilon});
        result.rows.push_back({n, report.A, report.f, report.g, report.noise_threshold,
                               lmko_k2, lmko_k1, report.feasible()});
    }
    return result;
}

std::string format_double(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    (void)ec;
    return std::string(buffer, end);
}

namespace {

const char* bool_text(bool value) { return value ? "true" : "false"; }

void append_row(std::string& out, const ExperimentRow& row) {
    out += row.experiment;
    out += ',';
    out += std::to_string(row.n_rounds);
    out += ',';
    out += format_double(row.alpha);
    out += ',';
    out += format_double(row.delta);
    out += ',';
    out += format_double(row.epsilon);
    out += ',';
    out += format_double(row.w);
    out += ',';
    out += format_double(row.p_noise);
    out += ',';
    out += row.strategy;
    out += ',';
    out += std::to_string(row.summary.trials);
    out += ',';
    out += std::to_string(row.summary.successes);
    out += ',';
    out += format_double(row.summary.estimate);
    out += ',';
    out += format_double(row.summary.ci_low);
    out += ',';
    out += format_double(row.summary.ci_high);
    out += ',';
    out += bool_text(row.pass);
    out += '\n';
}

} // namespace

std::string to_csv(std::span<const ExperimentRow> rows) {
    std::string out =
        "experiment,n_rounds,alpha,delta,epsilon,w,p_noise,strategy,trials,successes,"
        "estimate,ci_low,ci_high,pass\n";
    for (const ExperimentRow& row : rows) append_row(out, row);
    return out;
}

std::vector<ExperimentRow> tail_rows(const TailBoundResult& result) {
    std::vector<ExperimentRow> rows;
    rows.reserve(result.families.size());
    for (const TailBoundFamilyResult& family : result.families) {
        ExperimentRow row;
        row.experiment = "tail-bounds";
        row.strategy = family.family;
        row.summary.trials = family.points;
        row.summary.successes = family.violations;  // violation count, not wins
        row.summary.estimate = family.max_ratio;
        row.summary.ci_low = 0.0;
        row.summary.ci_high = 0.0;
        row.summary.ci_level = 0.0;
        row.pass = family.pass;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string curve_csv(const ThresholdCurveResult& result) {
    std::string out = "n_rounds,A,f,g,noise_threshold,lmko_k2,lmko_k1,feasible\n";
    for (const ThresholdCurveRow& row : result.rows) {
        out += std::to_string(row.n_rounds);
        out += ',';
        out += format_double(row.A);
        out += ',';
        out += format_double(row.f);
        out += ',';
        out += format_double(row.g);
        out += ',';
        out += format_double(row.noise_threshold);
        out += ',';
        out += format_double(row.lmko_k2);
        out += ',';
        out += format_double(row.lmko_k1);
        out += ',';
        out += bool_text(row.feasible);
        out += '\n';
    }
    return out;
}

namespace {

std::string fixed2(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.2f", value);
    return buffer;
}

std::string fixed4(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.4f", value);
    return buffer;
}

} // namespace

std::string curve_svg(const ThresholdCurveResult& result) {
    constexpr double kLeft = 80.0;
    constexpr double kRight = 770.0;
    constexpr double kTop = 40.0;
    constexpr double kBottom = 440.0;

    struct Point {
        double x = 0.0;
        double y = 0.0;
    };
    std::vector<Point> points;
    double lmko_k2 = 0.0;
    double lmko_k1 = 0.0;
    for (const ThresholdCurveRow& row : result.rows) {
        lmko_k2 = row.lmko_k2;
        lmko_k1 = row.lmko_k1;
        if (row.n_rounds >= 1 && std::isfinite(row.noise_threshold))
            points.push_back({std::log10(static_cast<double>(row.n_rounds)),
                              row.noise_threshold});
    }

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
                      "viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    if (points.empty()) {
        svg += "<text x=\"400\" y=\"250\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\">no plottable rows</text>\n</svg>\n";
        return svg;
    }

    double x_min = points.front().x;
    double x_max = points.front().x;
    double y_min = std::min(lmko_k2, lmko_k1);
    double y_max = std::max(lmko_k2, lmko_k1);
    for (const Point& pt : points) {
        x_min = std::min(x_min, pt.x);
        x_max = std::max(x_max, pt.x);
        y_min = std::min(y_min, pt.y);
        y_max = std::max(y_max, pt.y);
    }
    if (x_max - x_min < 1e-9) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    const double y_pad = std::max(0.05 * (y_max - y_min), 0.01);
    y_min -= y_pad;
    y_max += y_pad;

    const auto map_x = [&](double x) {
        return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
    };
    const auto map_y = [&](double y) {
        return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop);
    };

    svg += "<rect x=\"" + fixed2(kLeft) + "\" y=\"" + fixed2(kTop) + "\" width=\"" +
           fixed2(kRight - kLeft) + "\" height=\"" + fixed2(kBottom - kTop) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    for (std::int64_t e = static_cast<std::int64_t>(std::ceil(x_min));
         e <= static_cast<std::int64_t>(std::floor(x_max)); ++e) {
        const double px = map_x(static_cast<double>(e));
        svg += "<line x1=\"" + fixed2(px) + "\" y1=\"" + fixed2(kBottom) + "\" x2=\"" +
               fixed2(px) + "\" y2=\"" + fixed2(kBottom + 6.0) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed2(px) + "\" y=\"" + fixed2(kBottom + 22.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" +
               std::to_string(e) + "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double y = y_min + (y_max - y_min) * static_cast<double>(i) / 4.0;
        const double py = map_y(y);
        svg += "<line x1=\"" + fixed2(kLeft - 6.0) + "\" y1=\"" + fixed2(py) + "\" x2=\"" +
               fixed2(kLeft) + "\" y2=\"" + fixed2(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed2(kLeft - 10.0) + "\" y=\"" + fixed2(py + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               fixed4(y) + "</text>\n";
    }

    for (const double level : {lmko_k2, lmko_k1}) {
        const double py = map_y(level);
        svg += "<line x1=\"" + fixed2(kLeft) + "\" y1=\"" + fixed2(py) + "\" x2=\"" +
               fixed2(kRight) + "\" y2=\"" + fixed2(py) +
               "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    }
    svg += "<text x=\"" + fixed2(kLeft + 8.0) + "\" y=\"" + fixed2(map_y(lmko_k2) - 6.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"gray\">two-run repetition "
           "ceiling</text>\n";
    svg += "<text x=\"" + fixed2(kLeft + 8.0) + "\" y=\"" + fixed2(map_y(lmko_k1) - 6.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"gray\">single-run "
           "ceiling</text>\n";

    svg += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i > 0) svg += ' ';
        svg += fixed2(map_x(points[i].x)) + "," + fixed2(map_y(points[i].y));
    }
    svg += "\"/>\n";

    svg += "<text x=\"425\" y=\"480\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">rounds (log scale)</text>\n";
    svg += "<text x=\"20\" y=\"240\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\" transform=\"rotate(-90 20 240)\">tolerated noise rate</text>\n";
    svg += "<text x=\"425\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">derived noise threshold vs rounds</text>\n";
    svg += "</svg>\n";
    return svg;
}

ordered_json to_json(const TrialSummary& summary) {
    return ordered_json{{"successes", summary.successes},
                        {"trials", summary.trials},
                        {"estimate", summary.estimate},
                        {"ci_low", summary.ci_low},
                        {"ci_high", summary.ci_high},
                        {"ci_level", summary.ci_level},
                        {"seed", summary.seed},
                        {"wall_seconds", summary.wall_seconds}};
}

ordered_json to_json(const bounds::ThresholdReport& report) {
    return ordered_json{{"n_rounds", report.inputs.n_rounds},
                        {"alpha", report.inputs.alpha},
                        {"delta", report.inputs.delta},
                        {"epsilon", report.inputs.epsilon},
                        {"A", report.A},
                        {"A_prime", static_cast<double>(report.A_prime)},
                        {"f", report.f},
                        {"g", report.g},
                        {"w", report.w},
                        {"noise_threshold", report.noise_threshold},
                        {"feasible_A", report.feasible_A},
                        {"feasible_f", report.feasible_f},
                        {"feasible", report.feasible()}};
}

ordered_json to_json(const ExperimentRow& row) {
    return ordered_json{{"experiment", row.experiment},
                        {"n_rounds", row.n_rounds},
                        {"alpha", row.alpha},
                        {"delta", row.delta},
                        {"epsilon", row.epsilon},
                        {"w", row.w},
                        {"p_noise", row.p_noise},
                        {"strategy", row.strategy},
                        {"summary", to_json(row.summary)},
                        {"pass", row.pass}};
}

ordered_json to_json(const HonestAbortResult& result) {
    return ordered_json{{"experiment", "honest-abort"},
                        {"threshold", to_json(result.threshold)},
                        {"q", result.q},
                        {"p_noise", result.p_noise},
                        {"out_of_regime", result.out_of_regime},
                        {"row", to_json(result.row)},
                        {"pass", result.pass}};
}

ordered_json to_json(const AdversaryResult& result) {
    ordered_json rows = ordered_json::array();
    for (const ExperimentRow& row : result.rows) rows.push_back(to_json(row));
    return ordered_json{{"experiment", "adversary-success"},
                        {"threshold", to_json(result.threshold)},
                        {"q", result.q},
                        {"p_zero", result.p_zero},
                        {"p_noise", result.p_noise},
                        {"out_of_regime", result.out_of_regime},
                        {"rows", std::move(rows)},
                        {"max_index", result.max_index},
                        {"pass", result.pass}};
}

ordered_json to_json(const LemmaValidationResult& result) {
    ordered_json rows = ordered_json::array();
    for (const ExperimentRow& row : result.rows) rows.push_back(to_json(row));
    ordered_json corners = ordered_json::array();
    for (const LemmaCorner& corner : result.corners) {
        corners.push_back(ordered_json{{"n", corner.params.n},
                                       {"alpha", corner.params.alpha},
                                       {"w", corner.params.w},
                                       {"epsilon", corner.params.epsilon},
                                       {"size", corner.size},
                                       {"exact", corner.exact},
                                       {"summary", to_json(corner.summary)},
                                       {"pass", corner.pass}});
    }
    return ordered_json{{"experiment", "lemma-validation"},
                        {"rows", std::move(rows)},
                        {"corners", std::move(corners)},
                        {"pass", result.pass}};
}

ordered_json to_json(const TailBoundResult& result) {
    ordered_json families = ordered_json::array();
    for (const TailBoundFamilyResult& family : result.families) {
        families.push_back(ordered_json{{"family", family.family},
                                        {"points", family.points},
                                        {"violations", family.violations},
                                        {"max_ratio", family.max_ratio},
                                        {"pass", family.pass}});
    }
    return ordered_json{{"experiment", "tail-bounds"},
                        {"families", std::move(families)},
                        {"total_points", result.total_points},
                        {"pass", result.pass}};
}

ordered_json to_json(const ThresholdCurveResult& result) {
    ordered_json rows = ordered_json::array();
    for (const ThresholdCurveRow& row : result.rows) {
        rows.push_back(ordered_json{{"n_rounds", row.n_rounds},
                                    {"A", row.A},
                                    {"f", row.f},
                                    {"g", row.g},
                                    {"noise_threshold", row.noise_threshold},
                                    {"lmko_k2", row.lmko_k2},
                                    {"lmko_k1", row.lmko_k1},
                                    {"feasible", row.feasible}});
    }
    return ordered_json{{"experiment", "threshold-curve"},
                        {"alpha", result.alpha},
                        {"delta", result.delta},
                        {"epsilon", result.epsilon},
                        {"q", result.q},
                        {"rows", std::move(rows)}};
}

} // namespace dqv::experiments
