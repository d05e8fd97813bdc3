#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dqv/instance.hpp"
#include "dqv/rng.hpp"

namespace dqv::protocol {

enum class RoundType { Computation, XTest, ZTest };

// Per-round prover behavior. A benign deviation leaves both the computation
// outcome and the test statistics untouched; a non-benign one corrupts the
// computation output and trips every test it lands on.
enum class RoundAttack { Honest, BenignPauli, NonBenignPauli };

using AttackPlan = std::vector<RoundAttack>;

// What a corrupted computation round emits: the bit opposite the honest
// majority (worst case for the verifier) or a fair coin (for noise-only
// studies).
enum class CorruptionModel { WrongBit, UniformRandom };

struct ProtocolParams {
    std::int64_t n = 0;      // number of rounds
    double w = 0.0;          // abort once a w-fraction of a test class fails, (0, 1]
    double p_noise = 0.0;    // per-round honest failure probability
    double p_zero = 1.0;     // clean computation round emits 0 with this probability
    double q = 1.0 / 3.0;    // promise-gap parameter, [0, 1/2)
    CorruptionModel corruption = CorruptionModel::WrongBit;

    InstanceLabel instance_label() const { return label_from_probability(p_zero, q); }
};

struct RoundResult {
    RoundType round_type = RoundType::Computation;
    std::optional<bool> test_failed;  // set iff the round is a test round
    std::optional<int> output_bit;    // set iff the round is a computation round
};

enum class VerdictKind { Accept, Reject, Abort };
enum class AbortReason { XTests, ZTests, DegeneratePartition };

struct Verdict {
    VerdictKind kind = VerdictKind::Accept;
    std::optional<AbortReason> abort_reason;  // set iff kind == Abort
};

// "accept", "reject", "abort_x", "abort_z", or "abort_degenerate".
std::string to_string(const Verdict& verdict);

struct RunCounts {
    std::int64_t n = 0;
    std::int64_t sc = 0;         // computation rounds
    std::int64_t sx = 0;         // X-test rounds
    std::int64_t sz = 0;         // Z-test rounds
    std::int64_t zeros = 0;      // computation rounds that output 0
    std::int64_t failed_x = 0;
    std::int64_t failed_z = 0;
    std::int64_t corrupted = 0;  // computation rounds whose output was corrupted
};

struct RunReport {
    Verdict verdict;
    RunCounts counts;
};

// Each round independently Computation, XTest, or ZTest with probability 1/3.
std::vector<RoundType> sample_partition(std::int64_t n, SplitMix64& rng);

// One round. Test rounds fail with probability p_noise when the prover is
// honest or benign and with certainty under a non-benign attack. Computation
// rounds output 0 with probability p_zero unless a noise event (probability
// p_noise) or a non-benign attack corrupts the bit per the corruption model;
// corrupted rounds skip the clean draw.
RoundResult simulate_round(RoundType type, const ProtocolParams& params, RoundAttack attack,
                           SplitMix64& rng);

// Abort(degenerate) if any round class is empty, Abort(X/Z) once that class
// has failed_A >= w*|S_A| (an exact comparison whenever w and the counts are
// exactly representable, e.g. dyadic w), otherwise Accept iff at least half
// of the computation rounds output 0 (integer comparison, no rounding).
Verdict verdict_from_counts(const RunCounts& counts, double w);

// Tallies the per-round results and delegates to verdict_from_counts. The
// corrupted count is not recoverable from results alone and reads 0 here.
Verdict verdict(std::span<const RoundResult> results, double w);

// Samples a partition, simulates every round (plan entry i governs round i),
// and returns the verdict with the full tally.
RunReport run_protocol(const ProtocolParams& params, const AttackPlan& plan, SplitMix64& rng);

// Honest run: every round follows the protocol.
RunReport run_protocol(const ProtocolParams& params, SplitMix64& rng);

// Smallest number of corrupted computation-round outputs that can flip the
// majority vote against an honest prover: the least k with
// 2k(1-q) > C_size(1-2q).
std::int64_t min_corrupted_for_flip(std::int64_t c_size, double q);

// Game-style view that pools both test classes: true iff
// failed_x + failed_z <= w*(sx + sz). Verdicts use the per-class rule; the
// pooled budget is implied by it (no abort forces this to hold).
bool pooled_tests_within_budget(const RunCounts& counts, double w);

// Flat serialization for result tables, keys n, sc, sx, sz, zeros, failed_x,
// failed_z, corrupted, verdict.
std::vector<std::pair<std::string, std::string>> counts_record(const RunCounts& counts,
                                                               const Verdict& verdict);

} // namespace dqv::protocol
