#include "dqv/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqv::protocol {
namespace {

void validate_params(const ProtocolParams& params) {
    if (params.n < 1) {
        throw std::invalid_argument("protocol: n must be at least 1");
    }
    if (!(params.w > 0.0) || !(params.w <= 1.0)) {
        throw std::invalid_argument("protocol: w must lie in (0, 1]");
    }
    if (!(params.p_noise >= 0.0) || !(params.p_noise <= 1.0)) {
        throw std::invalid_argument("protocol: p_noise must lie in [0, 1]");
    }
    if (!(params.p_zero >= 0.0) || !(params.p_zero <= 1.0)) {
        throw std::invalid_argument("protocol: p_zero must lie in [0, 1]");
    }
    if (!(params.q >= 0.0) || !(params.q < 0.5)) {
        throw std::invalid_argument("protocol: q must lie in [0, 1/2)");
    }
}

RoundType type_from_die(std::uint32_t face) {
    switch (face) {
        case 0:
            return RoundType::Computation;
        case 1:
            return RoundType::XTest;
        default:
            return RoundType::ZTest;
    }
}

int corrupted_bit(const ProtocolParams& params, SplitMix64& rng) {
    if (params.corruption == CorruptionModel::UniformRandom) {
        return static_cast<int>(rng.next_bounded(2));
    }
    // Opposite of the honest majority bit.
    return params.p_zero >= 0.5 ? 1 : 0;
}

RoundResult simulate_impl(RoundType type, const ProtocolParams& params, RoundAttack attack,
                          SplitMix64& rng, bool& corrupted) {
    RoundResult result;
    result.round_type = type;
    corrupted = false;
    if (type != RoundType::Computation) {
        result.test_failed = attack == RoundAttack::NonBenignPauli || rng.bernoulli(params.p_noise);
        return result;
    }
    if (attack == RoundAttack::NonBenignPauli || rng.bernoulli(params.p_noise)) {
        corrupted = true;
        result.output_bit = corrupted_bit(params, rng);
    } else {
        result.output_bit = rng.bernoulli(params.p_zero) ? 0 : 1;
    }
    return result;
}

RunReport run_impl(const ProtocolParams& params, std::span<const RoundAttack> plan,
                   SplitMix64& rng) {
    validate_params(params);
    if (!plan.empty() && plan.size() != static_cast<std::size_t>(params.n)) {
        throw std::invalid_argument("protocol: attack plan length must equal n");
    }

    // Reused partition buffer; filling it consumes the same die stream as
    // sample_partition.
    thread_local std::vector<RoundType> partition;
    partition.resize(static_cast<std::size_t>(params.n));
    for (auto& type : partition) {
        type = type_from_die(rng.die3());
    }

    RunCounts counts;
    counts.n = params.n;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const RoundAttack attack = plan.empty() ? RoundAttack::Honest : plan[i];
        bool corrupted = false;
        const RoundResult result = simulate_impl(partition[i], params, attack, rng, corrupted);
        switch (result.round_type) {
            case RoundType::Computation:
                ++counts.sc;
                counts.zeros += *result.output_bit == 0 ? 1 : 0;
                counts.corrupted += corrupted ? 1 : 0;
                break;
            case RoundType::XTest:
                ++counts.sx;
                counts.failed_x += *result.test_failed ? 1 : 0;
                break;
            case RoundType::ZTest:
                ++counts.sz;
                counts.failed_z += *result.test_failed ? 1 : 0;
                break;
        }
    }
    return {verdict_from_counts(counts, params.w), counts};
}

} // namespace

std::string to_string(const Verdict& verdict) {
    switch (verdict.kind) {
        case VerdictKind::Accept:
            return "accept";
        case VerdictKind::Reject:
            return "reject";
        default:
            break;
    }
    switch (*verdict.abort_reason) {
        case AbortReason::XTests:
            return "abort_x";
        case AbortReason::ZTests:
            return "abort_z";
        default:
            return "abort_degenerate";
    }
}

std::vector<RoundType> sample_partition(std::int64_t n, SplitMix64& rng) {
    if (n < 1) {
        throw std::invalid_argument("protocol: n must be at least 1");
    }
    std::vector<RoundType> partition(static_cast<std::size_t>(n));
    for (auto& type : partition) {
        type = type_from_die(rng.die3());
    }
    return partition;
}

RoundResult simulate_round(RoundType type, const ProtocolParams& params, RoundAttack attack,
                           SplitMix64& rng) {
    validate_params(params);
    bool corrupted = false;
    return simulate_impl(type, params, attack, rng, corrupted);
}

Verdict verdict_from_counts(const RunCounts& counts, double w) {
    if (!(w > 0.0) || !(w <= 1.0)) {
        throw std::invalid_argument("protocol: w must lie in (0, 1]");
    }
    if (counts.sc == 0 || counts.sx == 0 || counts.sz == 0) {
        return {VerdictKind::Abort, AbortReason::DegeneratePartition};
    }
    if (static_cast<double>(counts.failed_x) >= w * static_cast<double>(counts.sx)) {
        return {VerdictKind::Abort, AbortReason::XTests};
    }
    if (static_cast<double>(counts.failed_z) >= w * static_cast<double>(counts.sz)) {
        return {VerdictKind::Abort, AbortReason::ZTests};
    }
    if (counts.zeros * 2 >= counts.sc) {
        return {VerdictKind::Accept, std::nullopt};
    }
    return {VerdictKind::Reject, std::nullopt};
}

Verdict verdict(std::span<const RoundResult> results, double w) {
    if (results.empty()) {
        throw std::invalid_argument("protocol: verdict needs at least one round");
    }
    RunCounts counts;
    counts.n = static_cast<std::int64_t>(results.size());
    for (const RoundResult& result : results) {
        switch (result.round_type) {
            case RoundType::Computation:
                ++counts.sc;
                counts.zeros += result.output_bit.value() == 0 ? 1 : 0;
                break;
            case RoundType::XTest:
                ++counts.sx;
                counts.failed_x += result.test_failed.value() ? 1 : 0;
                break;
            case RoundType::ZTest:
                ++counts.sz;
                counts.failed_z += result.test_failed.value() ? 1 : 0;
                break;
        }
    }
    return verdict_from_counts(counts, w);
}

RunReport run_protocol(const ProtocolParams& params, const AttackPlan& plan, SplitMix64& rng) {
    if (plan.empty()) {
        throw std::invalid_argument("protocol: attack plan length must equal n");
    }
    return run_impl(params, plan, rng);
}

RunReport run_protocol(const ProtocolParams& params, SplitMix64& rng) {
    return run_impl(params, {}, rng);
}

std::int64_t min_corrupted_for_flip(std::int64_t c_size, double q) {
    if (c_size < 0) {
        throw std::invalid_argument("min_corrupted_for_flip: c_size must be non-negative");
    }
    if (!(q >= 0.0) || !(q < 0.5)) {
        throw std::invalid_argument("min_corrupted_for_flip: q must lie in [0, 1/2)");
    }
    const double rhs = static_cast<double>(c_size) * (1.0 - 2.0 * q);
    const double scale = 2.0 * (1.0 - q);
    std::int64_t k =
        std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(rhs / scale)) - 1);
    while (!(static_cast<double>(k) * scale > rhs)) {
        ++k;
    }
    return k;
}

bool pooled_tests_within_budget(const RunCounts& counts, double w) {
    return static_cast<double>(counts.failed_x + counts.failed_z) <=
           w * static_cast<double>(counts.sx + counts.sz);
}

std::vector<std::pair<std::string, std::string>> counts_record(const RunCounts& counts,
                                                               const Verdict& verdict) {
    return {
        {"n", std::to_string(counts.n)},
        {"sc", std::to_string(counts.sc)},
        {"sx", std::to_string(counts.sx)},
        {"sz", std::to_string(counts.sz)},
        {"zeros", std::to_string(counts.zeros)},
        {"failed_x", std::to_string(counts.failed_x)},
        {"failed_z", std::to_string(counts.failed_z)},
        {"corrupted", std::to_string(counts.corrupted)},
        {"verdict", to_string(verdict)},
    };
}

} // namespace dqv::protocol
