#include "dqv/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dqv/bounds.hpp"
#include "dqv/circuit.hpp"
#include "dqv/errors.hpp"
#include "dqv/experiments.hpp"
#include "dqv/game.hpp"
#include "dqv/instance.hpp"
#include "dqv/protocol.hpp"
#include "dqv/rng.hpp"
#include "dqv/stats.hpp"

namespace dqv::cli {

namespace {

namespace fs = std::filesystem;
using njson = nlohmann::json;
using experiments::format_double;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInfeasible = 2;
constexpr int kGuard = 3;
constexpr int kBoundFail = 4;

void print_kv(std::ostream& out, const std::string& key, const std::string& value) {
    out << std::left << std::setw(17) << key << ' ' << value << '\n';
}

std::string fixed6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    return buffer;
}

std::vector<std::int64_t> parse_subset(const std::string& text) {
    std::vector<std::int64_t> elements;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        const auto first = token.find_first_not_of(" \t");
        if (first == std::string::npos)
            throw std::invalid_argument("--set expects comma-separated integers, got '" +
                                        text + "'");
        const auto last = token.find_last_not_of(" \t");
        token = token.substr(first, last - first + 1);
        std::size_t used = 0;
        std::int64_t value = 0;
        try {
            value = std::stoll(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size())
            throw std::invalid_argument("--set expects comma-separated integers, got '" +
                                        token + "'");
        elements.push_back(value);
    }
    return elements;
}

void write_file(const fs::path& path, const std::string& content, std::ostream& out) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::invalid_argument("cannot open " + path.string() + " for writing");
    file << content;
    if (!file)
        throw std::invalid_argument("write to " + path.string() + " failed");
    out << "wrote " << path.string() << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw std::invalid_argument("cannot open " + path);
    std::stringstream stream;
    stream << file.rdbuf();
    return stream.str();
}

// ---------------------------------------------------------------------------
// thresholds
// ---------------------------------------------------------------------------

struct ThresholdsOptions {
    double alpha = 0.0;
    double q = 0.0;
    double delta = 0.05;
    double epsilon = 0.0;
    std::int64_t n = 0;
    double target_noise = 0.0;
    bool strict = false;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* q_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* target_opt = nullptr;
};

void print_report(std::ostream& out, const bounds::ThresholdReport& report) {
    print_kv(out, "n_rounds", std::to_string(report.inputs.n_rounds));
    print_kv(out, "alpha", format_double(report.inputs.alpha));
    print_kv(out, "delta", format_double(report.inputs.delta));
    print_kv(out, "epsilon", format_double(report.inputs.epsilon));
    print_kv(out, "A", format_double(report.A));
    print_kv(out, "A_prime", format_double(static_cast<double>(report.A_prime)));
    print_kv(out, "f", format_double(report.f));
    print_kv(out, "g", format_double(report.g));
    print_kv(out, "w", format_double(report.w));
    print_kv(out, "noise_threshold", format_double(report.noise_threshold));
    print_kv(out, "feasible", report.feasible() ? "true" : "false");
    out << experiments::to_json(report).dump(2) << '\n';
}

int cmd_thresholds(const ThresholdsOptions& opt, std::ostream& out) {
    double alpha = opt.alpha;
    double q = opt.q;
    if (opt.q_opt->count() > 0) {
        alpha = bounds::alpha_from_q(q);
    } else if (opt.alpha_opt->count() > 0) {
        if (!(alpha > 0.0 && alpha < 0.5))
            throw std::invalid_argument("--alpha must lie in (0, 1/2)");
        q = (1.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha);
    } else {
        throw std::invalid_argument("one of --alpha or --q is required");
    }

    if (opt.n_opt->count() == 0 && opt.target_opt->count() == 0) {
        // Conversion-only mode: echo the parameter map and the single-run
        // baseline the repetition ceilings come from.
        const bounds::SingleRunParams single = bounds::single_run_parameters(q);
        print_kv(out, "alpha", format_double(alpha));
        print_kv(out, "q", format_double(q));
        print_kv(out, "completeness", format_double(single.c));
        print_kv(out, "soundness", format_double(single.s));
        print_kv(out, "gap", format_double(single.gap()));
        print_kv(out, "lmko_k1", format_double(bounds::lmko_threshold(1, q)));
        print_kv(out, "lmko_k2", format_double(bounds::lmko_threshold(2, q)));
        return kOk;
    }

    std::int64_t n = opt.n;
    if (opt.target_opt->count() > 0) {
        n = bounds::min_rounds(alpha, opt.delta, opt.epsilon, opt.target_noise);
        print_kv(out, "solved_n_rounds", std::to_string(n));
    }
    const bounds::ThresholdReport report =
        bounds::threshold_report({n, alpha, opt.delta, opt.epsilon});
    print_report(out, report);
    if (opt.strict && !report.feasible()) {
        out << "error: parameters are infeasible under --strict\n";
        return kInfeasible;
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// game
// ---------------------------------------------------------------------------

struct GameOptions {
    std::int64_t n = 0;
    double alpha = 0.0;
    double w = 0.0;
    double epsilon = 0.0;
    std::string strategy = "uniform";
    std::string set_text;
    std::int64_t size = 0;
    std::int64_t trials = 10000;
    std::uint64_t seed = kDefaultSeed;
    int workers = 1;
    double ci_level = 0.99;
    std::string out_path;
    CLI::Option* set_opt = nullptr;
};

game::AdversaryStrategy build_strategy(const GameOptions& opt) {
    if (opt.strategy == "empty") return game::EmptySet{};
    if (opt.strategy == "full") return game::FullSet{};
    if (opt.strategy == "fixed") return game::FixedSet{parse_subset(opt.set_text)};
    return game::UniformRandomOfSize{opt.size};
}

int cmd_game_simulate(const GameOptions& opt, std::ostream& out) {
    const game::GameParams params{opt.n, opt.alpha, opt.w, opt.epsilon};
    const game::AdversaryStrategy strategy = build_strategy(opt);
    const TrialSummary summary = game::monte_carlo_win_probability(
        params, strategy, opt.trials, opt.seed, opt.workers, opt.ci_level);
    const std::string label = game::strategy_label(strategy);
    print_kv(out, "strategy", label);
    print_kv(out, "trials", std::to_string(summary.trials));
    print_kv(out, "successes", std::to_string(summary.successes));
    print_kv(out, "estimate", format_double(summary.estimate));
    print_kv(out, "ci_low", format_double(summary.ci_low));
    print_kv(out, "ci_high", format_double(summary.ci_high));
    print_kv(out, "ci_level", format_double(summary.ci_level));
    print_kv(out, "seed", std::to_string(summary.seed));
    if (!opt.out_path.empty()) {
        std::string csv = "n,alpha,w,epsilon,strategy,trials,successes,estimate,ci_low,"
                          "ci_high,seed\n";
        csv += std::to_string(opt.n) + ',' + format_double(opt.alpha) + ',' +
               format_double(opt.w) + ',' + format_double(opt.epsilon) + ',' + label + ',' +
               std::to_string(summary.trials) + ',' + std::to_string(summary.successes) +
               ',' + format_double(summary.estimate) + ',' + format_double(summary.ci_low) +
               ',' + format_double(summary.ci_high) + ',' + std::to_string(summary.seed) +
               '\n';
        write_file(opt.out_path, csv, out);
    }
    return kOk;
}

int cmd_game_exact(const GameOptions& opt, std::ostream& out) {
    const game::GameParams params{opt.n, opt.alpha, opt.w, opt.epsilon};
    const std::vector<std::int64_t> s = parse_subset(opt.set_text);
    const double probability = game::exact_win_probability(params, s);
    print_kv(out, "set_size", std::to_string(s.size()));
    print_kv(out, "win_probability", fixed6(probability));
    print_kv(out, "exact_value", format_double(probability));
    if (!opt.out_path.empty()) {
        std::string csv = "n,alpha,w,epsilon,set_size,win_probability\n";
        csv += std::to_string(opt.n) + ',' + format_double(opt.alpha) + ',' +
               format_double(opt.w) + ',' + format_double(opt.epsilon) + ',' +
               std::to_string(s.size()) + ',' + format_double(probability) + '\n';
        write_file(opt.out_path, csv, out);
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// protocol
// ---------------------------------------------------------------------------

struct ProtocolOptions {
    std::int64_t n = 0;
    double w = 0.0;
    double p_noise = 0.0;
    double p_zero = 1.0;
    std::string circuit_path;
    int qubits = 0;
    double q = 1.0 / 3.0;
    std::int64_t trials = 1;
    std::uint64_t seed = kDefaultSeed;
    std::string attack = "none";
    std::string corruption = "wrong-bit";
    CLI::Option* p_zero_opt = nullptr;
    CLI::Option* circuit_opt = nullptr;
};

int cmd_protocol(const ProtocolOptions& opt, std::ostream& out) {
    protocol::ProtocolParams params;
    params.n = opt.n;
    params.w = opt.w;
    params.p_noise = opt.p_noise;
    params.q = opt.q;
    params.corruption = opt.corruption == "uniform" ? protocol::CorruptionModel::UniformRandom
                                                    : protocol::CorruptionModel::WrongBit;

    if (opt.circuit_opt->count() > 0) {
        const std::string text = read_file(opt.circuit_path);
        const circuit::Circuit parsed = opt.qubits > 0
                                            ? circuit::parse_circuit(text, opt.qubits)
                                            : circuit::parse_circuit(text);
        params.p_zero = circuit::acceptance_probability(parsed);
        print_kv(out, "circuit_qubits", std::to_string(parsed.n_qubits));
        print_kv(out, "p_zero", format_double(params.p_zero));
    } else if (opt.p_zero_opt->count() > 0) {
        params.p_zero = opt.p_zero;
    } else {
        throw std::invalid_argument("one of --p-zero or --circuit is required");
    }
    print_kv(out, "instance_label",
             dqv::to_string(label_from_probability(params.p_zero, params.q)));

    protocol::AttackPlan plan;
    if (opt.attack == "benign")
        plan.assign(static_cast<std::size_t>(params.n), protocol::RoundAttack::BenignPauli);
    else if (opt.attack == "full")
        plan.assign(static_cast<std::size_t>(params.n), protocol::RoundAttack::NonBenignPauli);

    const auto run_once = [&](std::uint64_t index) {
        SplitMix64 rng = SplitMix64::for_trial(opt.seed, index);
        return plan.empty() ? protocol::run_protocol(params, rng)
                            : protocol::run_protocol(params, plan, rng);
    };

    if (opt.trials < 1)
        throw std::invalid_argument("--trials must be positive");
    if (opt.trials == 1) {
        const protocol::RunReport report = run_once(0);
        for (const auto& [key, value] : protocol::counts_record(report.counts, report.verdict))
            print_kv(out, key, value);
        return kOk;
    }

    std::int64_t accepts = 0;
    std::int64_t rejects = 0;
    std::int64_t abort_x = 0;
    std::int64_t abort_z = 0;
    std::int64_t abort_degenerate = 0;
    for (std::int64_t t = 0; t < opt.trials; ++t) {
        const protocol::Verdict verdict = run_once(static_cast<std::uint64_t>(t)).verdict;
        switch (verdict.kind) {
            case protocol::VerdictKind::Accept: ++accepts; break;
            case protocol::VerdictKind::Reject: ++rejects; break;
            case protocol::VerdictKind::Abort:
                if (verdict.abort_reason == protocol::AbortReason::XTests)
                    ++abort_x;
                else if (verdict.abort_reason == protocol::AbortReason::ZTests)
                    ++abort_z;
                else
                    ++abort_degenerate;
                break;
        }
    }
    const TrialSummary summary = summarize_trials(accepts, opt.trials, 0.99, opt.seed);
    print_kv(out, "trials", std::to_string(opt.trials));
    print_kv(out, "accept", std::to_string(accepts));
    print_kv(out, "reject", std::to_string(rejects));
    print_kv(out, "abort_x", std::to_string(abort_x));
    print_kv(out, "abort_z", std::to_string(abort_z));
    print_kv(out, "abort_degenerate", std::to_string(abort_degenerate));
    print_kv(out, "accept_rate", format_double(summary.estimate));
    print_kv(out, "ci_low", format_double(summary.ci_low));
    print_kv(out, "ci_high", format_double(summary.ci_high));
    return kOk;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct ExperimentOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    int workers = 0;
    bool allow_out_of_regime = false;
    bool timings = false;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
};

njson load_config(const ExperimentOptions& opt) {
    njson config = njson::parse(read_file(opt.config_path));
    if (!config.is_object())
        throw std::invalid_argument("config: top level must be a JSON object");
    for (const std::string& item : opt.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("--set expects key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        njson parsed = njson::parse(value, nullptr, false);
        if (parsed.is_discarded())
            config[key] = value;
        else
            config[key] = std::move(parsed);
    }
    if (opt.seed_opt->count() > 0) config["seed"] = opt.seed;
    if (opt.workers_opt->count() > 0) config["workers"] = opt.workers;
    return config;
}

std::vector<std::int64_t> int_list(const njson& array, const char* key) {
    if (!array.is_array())
        throw std::invalid_argument(std::string("config: '") + key + "' must be an array");
    std::vector<std::int64_t> values;
    values.reserve(array.size());
    for (const njson& v : array) values.push_back(v.get<std::int64_t>());
    return values;
}

std::vector<std::int64_t> tenth_steps(std::int64_t n) {
    std::vector<std::int64_t> sizes;
    for (int i = 0; i <= 10; ++i) sizes.push_back(i * n / 10);
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
}

int check_regime(const bounds::ThresholdReport& report, double p_noise, bool allow,
                 std::ostream& out) {
    const bool in_regime = report.feasible() && p_noise < report.noise_threshold;
    if (in_regime || allow) return kOk;
    out << "error: configuration is out of regime (feasible="
        << (report.feasible() ? "true" : "false")
        << ", noise_threshold=" << format_double(report.noise_threshold)
        << ", p_noise=" << format_double(p_noise)
        << "); pass --allow-out-of-regime to run it anyway\n";
    return kInvalid;
}

void emit(const fs::path& out_dir, const std::string& name, const std::string& csv,
          const experiments::ordered_json& json, std::ostream& out) {
    write_file(out_dir / (name + ".csv"), csv, out);
    write_file(out_dir / (name + ".json"), json.dump(2) + "\n", out);
}

int finish(bool pass, std::ostream& out) {
    out << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kOk : kBoundFail;
}

int run_honest_abort(const njson& config, const ExperimentOptions& opt, std::ostream& out) {
    const bounds::ThresholdInputs inputs{
        config.at("n_rounds").get<std::int64_t>(), config.at("alpha").get<double>(),
        config.at("delta").get<double>(), config.value("epsilon", 0.0)};
    const double q = config.value("q", 1.0 / 3.0);
    const double p_noise = config.at("p_noise").get<double>();
    const int gate = check_regime(bounds::threshold_report(inputs), p_noise,
                                  opt.allow_out_of_regime, out);
    if (gate != kOk) return gate;

    experiments::HonestAbortResult result = experiments::honest_abort_experiment(
        inputs, q, p_noise, config.value("trials", std::int64_t{1000}),
        config.value("seed", kDefaultSeed), config.value("workers", 1));
    print_kv(out, "abort_rate", format_double(result.row.summary.estimate));
    print_kv(out, "ci_high", format_double(result.row.summary.ci_high));
    print_kv(out, "delta", format_double(inputs.delta));
    const std::vector<experiments::ExperimentRow> rows = {result.row};
    const std::string csv = experiments::to_csv(rows);
    if (!opt.timings) result.row.summary.wall_seconds = 0.0;
    emit(opt.out_dir, "honest-abort", csv, experiments::to_json(result), out);
    return finish(result.pass, out);
}

int run_adversary_sweep(const njson& config, const ExperimentOptions& opt, std::ostream& out) {
    const bounds::ThresholdInputs inputs{
        config.at("n_rounds").get<std::int64_t>(), config.at("alpha").get<double>(),
        config.at("delta").get<double>(), config.value("epsilon", 0.0)};
    const double q = config.value("q", 1.0 / 3.0);
    const double p_noise = config.value("p_noise", 0.0);
    const int gate = check_regime(bounds::threshold_report(inputs), p_noise,
                                  opt.allow_out_of_regime, out);
    if (gate != kOk) return gate;

    std::vector<std::int64_t> sizes = config.contains("sizes")
                                          ? int_list(config.at("sizes"), "sizes")
                                          : tenth_steps(inputs.n_rounds);
    experiments::AdversaryResult result = experiments::adversary_experiment(
        inputs, q, p_noise, sizes, config.value("trials", std::int64_t{1000}),
        config.value("seed", kDefaultSeed), config.value("workers", 1),
        config.value("p_zero", -1.0));
    const experiments::ExperimentRow& top = result.rows[result.max_index];
    print_kv(out, "sweep_entries", std::to_string(result.rows.size()));
    print_kv(out, "max_strategy", top.strategy);
    print_kv(out, "max_estimate", format_double(top.summary.estimate));
    print_kv(out, "max_ci_high", format_double(top.summary.ci_high));
    print_kv(out, "delta", format_double(inputs.delta));
    const std::string csv = experiments::to_csv(result.rows);
    if (!opt.timings)
        for (experiments::ExperimentRow& row : result.rows) row.summary.wall_seconds = 0.0;
    emit(opt.out_dir, "adversary-success", csv, experiments::to_json(result), out);
    return finish(result.pass, out);
}

int run_lemma_validation(const njson& config, const ExperimentOptions& opt,
                         std::ostream& out) {
    std::vector<experiments::LemmaPoint> points;
    for (const njson& p : config.value("points", njson::array())) {
        const std::int64_t n = p.at("n").get<std::int64_t>();
        const double alpha = p.at("alpha").get<double>();
        const double delta = p.at("delta").get<double>();
        const double epsilon = p.value("epsilon", 0.0);
        double w = p.value("w", -1.0);
        if (w < 0.0) w = bounds::threshold_report({n, alpha, delta, epsilon}).w;
        points.push_back({game::GameParams{n, alpha, w, epsilon}, delta});
    }
    std::vector<game::GameParams> corners;
    for (const njson& c : config.value("corners", njson::array()))
        corners.push_back({c.at("n").get<std::int64_t>(), c.at("alpha").get<double>(),
                           c.at("w").get<double>(), c.value("epsilon", 0.0)});
    std::vector<std::int64_t> sizes;
    if (config.contains("sizes"))
        sizes = int_list(config.at("sizes"), "sizes");
    else if (!points.empty())
        sizes = tenth_steps(points.front().params.n);
    if (points.empty() && corners.empty())
        throw std::invalid_argument("config: lemma-validation needs 'points' or 'corners'");

    experiments::LemmaValidationResult result = experiments::lemma_validation(
        points, sizes, corners, config.value("trials", std::int64_t{1000}),
        config.value("seed", kDefaultSeed), config.value("workers", 1));
    print_kv(out, "rows", std::to_string(result.rows.size()));
    print_kv(out, "corners", std::to_string(result.corners.size()));
    const std::string csv = experiments::to_csv(result.rows);
    if (!opt.timings) {
        for (experiments::ExperimentRow& row : result.rows) row.summary.wall_seconds = 0.0;
        for (experiments::LemmaCorner& corner : result.corners)
            corner.summary.wall_seconds = 0.0;
    }
    emit(opt.out_dir, "lemma-validation", csv, experiments::to_json(result), out);
    return finish(result.pass, out);
}

int run_tail_bound(const ExperimentOptions& opt, std::ostream& out) {
    const experiments::TailBoundResult result = experiments::tail_bound_validation();
    print_kv(out, "total_points", std::to_string(result.total_points));
    for (const experiments::TailBoundFamilyResult& family : result.families)
        print_kv(out, family.family, std::to_string(family.violations) + " violations");
    emit(opt.out_dir, "tail-bounds", experiments::to_csv(experiments::tail_rows(result)),
         experiments::to_json(result), out);
    return finish(result.pass, out);
}

int run_threshold_curve(const njson& config, const ExperimentOptions& opt,
                        std::ostream& out) {
    double alpha = 0.0;
    if (config.contains("alpha"))
        alpha = config.at("alpha").get<double>();
    else if (config.contains("q"))
        alpha = bounds::alpha_from_q(config.at("q").get<double>());
    else
        throw std::invalid_argument("config: threshold-curve needs 'alpha' or 'q'");
    std::vector<std::int64_t> n_values;
    if (config.contains("n_values")) {
        n_values = int_list(config.at("n_values"), "n_values");
    } else {
        for (std::int64_t decade = 100000; decade <= 10000000; decade *= 10)
            for (std::int64_t mult : {1, 2, 5}) n_values.push_back(mult * decade);
        n_values.push_back(100000000);
    }
    const experiments::ThresholdCurveResult result = experiments::threshold_curve(
        alpha, config.at("delta").get<double>(), config.value("epsilon", 0.0), n_values);
    print_kv(out, "rows", std::to_string(result.rows.size()));
    const fs::path out_dir(opt.out_dir);
    write_file(out_dir / "threshold-curve.csv", experiments::curve_csv(result), out);
    write_file(out_dir / "threshold-curve.svg", experiments::curve_svg(result), out);
    write_file(out_dir / "threshold-curve.json", experiments::to_json(result).dump(2) + "\n",
               out);
    out << "PASS\n";
    return kOk;
}

int cmd_experiment(const ExperimentOptions& opt, std::ostream& out) {
    const njson config = load_config(opt);
    const std::string kind = config.at("experiment").get<std::string>();
    if (kind == "honest-abort") return run_honest_abort(config, opt, out);
    if (kind == "adversary-success") return run_adversary_sweep(config, opt, out);
    if (kind == "lemma-validation") return run_lemma_validation(config, opt, out);
    if (kind == "tail-bounds") return run_tail_bound(opt, out);
    if (kind == "threshold-curve") return run_threshold_curve(config, opt, out);
    throw std::invalid_argument("config: unknown experiment '" + kind + "'");
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out) {
    CLI::App app{"Simulation lab for noise-tolerant multi-round verification"};
    app.name("dqvlab");
    app.require_subcommand(1);

    ThresholdsOptions thr;
    CLI::App* thresholds = app.add_subcommand(
        "thresholds", "Derived abort budget and noise threshold for a round count");
    thr.alpha_opt = thresholds->add_option("--alpha", thr.alpha,
                                           "corruption fraction target in (0, 1/2)");
    thr.q_opt = thresholds->add_option("--q", thr.q,
                                       "inherent error rate in [0, 1/2), alternative to "
                                       "--alpha");
    thr.alpha_opt->excludes(thr.q_opt);
    thr.q_opt->excludes(thr.alpha_opt);
    thresholds->add_option("--delta", thr.delta, "failure budget")->capture_default_str();
    thresholds->add_option("--epsilon", thr.epsilon, "undetected-corruption coin bias")
        ->capture_default_str();
    thr.n_opt = thresholds->add_option("--n", thr.n, "round count");
    thr.target_opt = thresholds->add_option(
        "--target-noise", thr.target_noise,
        "solve for the smallest round count whose threshold exceeds this rate");
    thr.n_opt->excludes(thr.target_opt);
    thr.target_opt->excludes(thr.n_opt);
    thresholds->add_flag("--strict", thr.strict, "exit 2 when the point is infeasible");

    GameOptions sim;
    GameOptions exa;
    CLI::App* game_cmd = app.add_subcommand("game", "Set-avoidance game oracles");
    game_cmd->require_subcommand(1);
    CLI::App* simulate = game_cmd->add_subcommand("simulate", "Monte Carlo win probability");
    CLI::App* exact = game_cmd->add_subcommand("exact", "Exact win probability by "
                                                        "enumeration (n <= 24)");
    for (auto& [sub, opt] : {std::pair<CLI::App*, GameOptions*>{simulate, &sim},
                             std::pair<CLI::App*, GameOptions*>{exact, &exa}}) {
        sub->add_option("--n", opt->n, "universe size")->required();
        sub->add_option("--alpha", opt->alpha, "overlap fraction to beat")->required();
        sub->add_option("--w", opt->w, "tolerated off-set fraction")->required();
        sub->add_option("--epsilon", opt->epsilon, "chance a corruption goes unflagged")
            ->capture_default_str();
        opt->set_opt = sub->add_option("--set", opt->set_text,
                                       "comma-separated 1-based elements of S");
        sub->add_option("--out", opt->out_path, "write a CSV copy of the result here");
    }
    simulate->add_option("--strategy", sim.strategy, "set-picking strategy")
        ->check(CLI::IsMember({"empty", "full", "fixed", "uniform"}))
        ->capture_default_str();
    simulate->add_option("--size", sim.size, "subset size for --strategy uniform")
        ->capture_default_str();
    simulate->add_option("--trials", sim.trials, "Monte Carlo trials")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    simulate->add_option("--workers", sim.workers, "worker threads (0 = hardware)")
        ->capture_default_str();
    simulate->add_option("--ci-level", sim.ci_level, "confidence level")
        ->capture_default_str();

    ProtocolOptions pro;
    CLI::App* protocol_cmd =
        app.add_subcommand("protocol", "Run the multi-round verification protocol");
    protocol_cmd->add_option("--n", pro.n, "number of rounds")->required();
    protocol_cmd->add_option("--w", pro.w, "per-class abort fraction in (0, 1]")->required();
    protocol_cmd->add_option("--p-noise", pro.p_noise, "per-round noise rate")
        ->capture_default_str();
    pro.p_zero_opt = protocol_cmd->add_option("--p-zero", pro.p_zero,
                                              "clean-round zero-output probability");
    pro.circuit_opt = protocol_cmd->add_option("--circuit", pro.circuit_path,
                                               "circuit file; its output-zero mass becomes "
                                               "p-zero");
    pro.p_zero_opt->excludes(pro.circuit_opt);
    pro.circuit_opt->excludes(pro.p_zero_opt);
    protocol_cmd->add_option("--qubits", pro.qubits, "force the circuit width (0 = infer)")
        ->capture_default_str();
    protocol_cmd->add_option("--q", pro.q, "promise-gap parameter")->capture_default_str();
    protocol_cmd->add_option("--trials", pro.trials, "independent runs")
        ->capture_default_str();
    protocol_cmd->add_option("--seed", pro.seed, "RNG seed")->capture_default_str();
    protocol_cmd->add_option("--attack", pro.attack, "per-round tampering plan")
        ->check(CLI::IsMember({"none", "benign", "full"}))
        ->capture_default_str();
    protocol_cmd->add_option("--corruption", pro.corruption,
                             "how tampered computation rounds pick their output bit")
        ->check(CLI::IsMember({"wrong-bit", "uniform"}))
        ->capture_default_str();

    ExperimentOptions exp;
    CLI::App* experiment =
        app.add_subcommand("experiment", "Run a configured experiment and write its files");
    experiment->add_option("config", exp.config_path, "JSON config file")->required();
    experiment->add_option("--out-dir", exp.out_dir, "output directory")
        ->capture_default_str();
    experiment->add_option("--set", exp.overrides, "override a config key (key=value)");
    exp.seed_opt = experiment->add_option("--seed", exp.seed, "override the config seed");
    exp.workers_opt =
        experiment->add_option("--workers", exp.workers, "override the config worker count");
    experiment->add_flag("--allow-out-of-regime", exp.allow_out_of_regime,
                         "run even where the threshold calculus gives no guarantee");
    experiment->add_flag("--timings", exp.timings,
                         "keep wall-clock times in the JSON output");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, out);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (thresholds->parsed()) return cmd_thresholds(thr, out);
        if (simulate->parsed()) return cmd_game_simulate(sim, out);
        if (exact->parsed()) return cmd_game_exact(exa, out);
        if (protocol_cmd->parsed()) return cmd_protocol(pro, out);
        if (experiment->parsed()) return cmd_experiment(exp, out);
    } catch (const guard_error& e) {
        out << "error: " << e.what() << '\n';
        return kGuard;
    } catch (const feasibility_error& e) {
        out << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        out << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << '\n';
        return kInvalid;
    }
    out << "error: no subcommand given\n";
    return kInvalid;
}

} // namespace dqv::cli
