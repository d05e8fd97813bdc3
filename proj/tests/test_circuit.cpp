#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "dqv/circuit.hpp"
#include "dqv/errors.hpp"
#include "dqv/rng.hpp"

using dqv::InstanceLabel;
using dqv::SplitMix64;
using dqv::kDefaultSeed;
using namespace dqv::circuit;

namespace {

Circuit random_circuit(int n_qubits, int depth, bool with_t, SplitMix64& rng) {
    Circuit circuit;
    circuit.n_qubits = n_qubits;
    for (int i = 0; i < depth; ++i) {
        Gate gate;
        switch (rng.next_bounded(with_t ? 5 : 4)) {
            case 0:
                gate.tag = GateTag::X;
                break;
            case 1:
                gate.tag = GateTag::Z;
                break;
            case 2:
                gate.tag = GateTag::H;
                break;
            case 3:
                gate.tag = GateTag::CNOT;
                break;
            default:
                gate.tag = GateTag::T;
                break;
        }
        gate.target = static_cast<int>(rng.next_bounded(static_cast<std::uint64_t>(n_qubits)));
        if (gate.tag == GateTag::CNOT) {
            do {
                gate.control =
                    static_cast<int>(rng.next_bounded(static_cast<std::uint64_t>(n_qubits)));
            } while (gate.control == gate.target);
        }
        circuit.gates.push_back(gate);
    }
    return circuit;
}

double norm_squared(const StateVector& state) {
    double total = 0.0;
    for (const auto& amplitude : state) {
        total += std::norm(amplitude);
    }
    return total;
}

bool message_contains(const std::exception& error, const std::string& needle) {
    return std::string(error.what()).find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("an empty single-wire circuit stays in the zero state") {
    const Circuit circuit{1, {}};
    const StateVector state = simulate(circuit);
    REQUIRE(state.size() == 2);
    CHECK(state[0] == std::complex<double>{1.0, 0.0});
    CHECK(state[1] == std::complex<double>{0.0, 0.0});
}

TEST_CASE("standard single-qubit gate actions") {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    const StateVector plus = simulate({1, {{GateTag::H, 0}}});
    CHECK(plus[0].real() == doctest::Approx(inv_sqrt2).epsilon(1e-14));
    CHECK(plus[1].real() == doctest::Approx(inv_sqrt2).epsilon(1e-14));

    const StateVector phased = simulate({1, {{GateTag::H, 0}, {GateTag::T, 0}}});
    CHECK(phased[0].real() == doctest::Approx(inv_sqrt2).epsilon(1e-14));
    CHECK(phased[1].real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(phased[1].imag() == doctest::Approx(0.5).epsilon(1e-14));

    const StateVector flipped = simulate({1, {{GateTag::X, 0}}});
    CHECK(flipped[1] == std::complex<double>{1.0, 0.0});

    const StateVector negated = simulate({1, {{GateTag::X, 0}, {GateTag::Z, 0}}});
    CHECK(negated[1] == std::complex<double>{-1.0, 0.0});
}

TEST_CASE("wire indices map to little-endian basis bits") {
    const StateVector state = simulate({2, {{GateTag::X, 1}}});
    REQUIRE(state.size() == 4);
    CHECK(state[2] == std::complex<double>{1.0, 0.0});
}

TEST_CASE("CNOT flips the target only when the control is set") {
    const StateVector bell = simulate({2, {{GateTag::H, 0}, {GateTag::CNOT, 1, 0}}});
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    CHECK(bell[0].real() == doctest::Approx(inv_sqrt2).epsilon(1e-14));
    CHECK(bell[3].real() == doctest::Approx(inv_sqrt2).epsilon(1e-14));
    CHECK(std::norm(bell[1]) == 0.0);
    CHECK(std::norm(bell[2]) == 0.0);

    // Control wire 0 is clear here, so the target must stay put.
    const StateVector idle = simulate({2, {{GateTag::X, 1}, {GateTag::CNOT, 1, 0}}});
    CHECK(idle[2].real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("acceptance probability reads the last wire") {
    CHECK(acceptance_probability({1, {}}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(acceptance_probability({1, {{GateTag::X, 0}}}) == doctest::Approx(0.0));
    CHECK(acceptance_probability({1, {{GateTag::H, 0}}}) == doctest::Approx(0.5).epsilon(1e-14));

    // Entangled pair: the last wire is uniform.
    CHECK(acceptance_probability({2, {{GateTag::H, 0}, {GateTag::CNOT, 1, 0}}}) ==
          doctest::Approx(0.5).epsilon(1e-14));

    // H T H interferes to (1 + cos(pi/4))/2.
    const double expected = (1.0 + std::cos(std::numbers::pi / 4.0)) / 2.0;
    CHECK(acceptance_probability({1, {{GateTag::H, 0}, {GateTag::T, 0}, {GateTag::H, 0}}}) ==
          doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("instance classification against the promise boundaries") {
    const Circuit identity{1, {}};
    const Circuit flip{1, {{GateTag::X, 0}}};
    const Circuit uniform{1, {{GateTag::H, 0}}};
    CHECK(classify_instance(identity, 1.0 / 3.0) == InstanceLabel::Yes);
    CHECK(classify_instance(flip, 1.0 / 3.0) == InstanceLabel::No);
    CHECK(classify_instance(uniform, 1.0 / 3.0) == InstanceLabel::Unpromised);

    const Circuit interference{1, {{GateTag::H, 0}, {GateTag::T, 0}, {GateTag::H, 0}}};
    CHECK(classify_instance(interference, 0.1) == InstanceLabel::Unpromised);
    CHECK(classify_instance(interference, 0.2) == InstanceLabel::Yes);

    CHECK_THROWS_AS(classify_instance(identity, 0.5), std::invalid_argument);
}

TEST_CASE("a Yes label is preserved as the promise loosens") {
    SplitMix64 rng(kDefaultSeed);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit circuit = random_circuit(4, 40, true, rng);
        bool seen_yes = false;
        for (const double q : {0.05, 0.15, 0.25, 0.35, 0.45}) {
            const bool yes = classify_instance(circuit, q) == InstanceLabel::Yes;
            if (seen_yes) {
                CHECK(yes);
            }
            seen_yes = seen_yes || yes;
        }
    }
}

TEST_CASE("simulation is norm preserving") {
    SplitMix64 rng(kDefaultSeed);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit circuit = random_circuit(6, 200, true, rng);
        CHECK(std::fabs(norm_squared(simulate(circuit)) - 1.0) <= 1e-10);
    }

    // Every prefix of a fixed deep circuit stays normalized.
    const Circuit deep = random_circuit(5, 40, true, rng);
    for (std::size_t depth = 0; depth <= deep.gates.size(); ++depth) {
        Circuit prefix{deep.n_qubits,
                       {deep.gates.begin(), deep.gates.begin() + static_cast<long>(depth)}};
        CHECK(std::fabs(norm_squared(simulate(prefix)) - 1.0) <= 1e-10);
    }
}

TEST_CASE("Pauli classification depends only on the measured wires") {
    const std::vector<int> last{3};
    CHECK(classify_pauli({PauliTag::I, PauliTag::I, PauliTag::I, PauliTag::I}, last) ==
          PauliClass::Benign);
    CHECK(classify_pauli({PauliTag::X, PauliTag::Y, PauliTag::X, PauliTag::Z}, last) ==
          PauliClass::Benign);
    CHECK(classify_pauli({PauliTag::I, PauliTag::I, PauliTag::I, PauliTag::Y}, last) ==
          PauliClass::NonBenign);
    CHECK(classify_pauli({PauliTag::I, PauliTag::I, PauliTag::I, PauliTag::X}, last) ==
          PauliClass::NonBenign);

    const std::vector<int> both{1, 3};
    CHECK(classify_pauli({PauliTag::X, PauliTag::Z, PauliTag::Y, PauliTag::I}, both) ==
          PauliClass::Benign);
    CHECK(classify_pauli({PauliTag::I, PauliTag::X, PauliTag::I, PauliTag::Z}, both) ==
          PauliClass::NonBenign);

    const std::vector<int> outside{7};
    CHECK_THROWS_AS(classify_pauli({PauliTag::I, PauliTag::I}, outside), std::invalid_argument);
}

TEST_CASE("benign Paulis on the measured wire never shift the distribution") {
    SplitMix64 rng(kDefaultSeed);
    for (int trial = 0; trial < 30; ++trial) {
        const int width = 2 + static_cast<int>(rng.next_bounded(5));
        const Circuit circuit = random_circuit(width, 60, true, rng);
        PauliString pauli(static_cast<std::size_t>(width), PauliTag::I);
        pauli.back() = PauliTag::Z;
        const InvarianceResult result = benign_invariance_check(circuit, pauli);
        CHECK(result.holds);
        CHECK(result.distance <= 1e-10);

        pauli.back() = PauliTag::I;
        CHECK(benign_invariance_check(circuit, pauli).distance == 0.0);
    }
}

TEST_CASE("benign invariance rejects Paulis outside its claim") {
    const Circuit circuit{2, {{GateTag::H, 0}}};
    CHECK_THROWS_AS(benign_invariance_check(circuit, {PauliTag::I, PauliTag::X}),
                    std::invalid_argument);
    CHECK_THROWS_AS(benign_invariance_check(circuit, {PauliTag::I, PauliTag::Y}),
                    std::invalid_argument);
    CHECK_THROWS_AS(benign_invariance_check(circuit, {PauliTag::Z, PauliTag::I}),
                    std::invalid_argument);
    CHECK_THROWS_AS(benign_invariance_check(circuit, {PauliTag::I}), std::invalid_argument);
}

TEST_CASE("appending Z to the measured wire leaves acceptance untouched") {
    SplitMix64 rng(kDefaultSeed);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit circuit = random_circuit(5, 50, true, rng);
        const double before = acceptance_probability(circuit);
        circuit.gates.push_back({GateTag::Z, circuit.n_qubits - 1});
        CHECK(acceptance_probability(circuit) == before);
    }
}

TEST_CASE("the Pauli pad decrypts to the clean distribution") {
    // No-op keys change nothing at all.
    const Circuit bell{2, {{GateTag::H, 0}, {GateTag::CNOT, 1, 0}}};
    CHECK(qotp_roundtrip(bell, {{0, 0}, {0, 0}}) == 0.0);

    // One H with an X key exercises the swap rule on its own.
    const Circuit single{1, {{GateTag::H, 0}}};
    CHECK(qotp_roundtrip(single, {{1}, {0}}) <= 1e-12);

    SplitMix64 rng(kDefaultSeed);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit circuit = random_circuit(6, 60, false, rng);
        PauliKeys keys;
        for (int wire = 0; wire < 6; ++wire) {
            keys.a.push_back(static_cast<std::uint8_t>(rng.next_bounded(2)));
            keys.b.push_back(static_cast<std::uint8_t>(rng.next_bounded(2)));
        }
        worst = std::max(worst, qotp_roundtrip(circuit, keys));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("the pad rejects T gates and malformed keys") {
    const Circuit with_t{1, {{GateTag::T, 0}}};
    CHECK_THROWS_AS(qotp_roundtrip(with_t, {{0}, {0}}), std::invalid_argument);

    const Circuit plain{2, {{GateTag::H, 0}}};
    CHECK_THROWS_AS(qotp_roundtrip(plain, {{0}, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(qotp_roundtrip(plain, {{0, 2}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("circuit text parses with comments and inferred width") {
    const std::string text =
        "# prepares an entangled pair\n"
        "\n"
        "H 0\n"
        "CNOT 0 1\n"
        "  # indented comment\n"
        "Z 1\n";
    const Circuit circuit = parse_circuit(text);
    CHECK(circuit.n_qubits == 2);
    REQUIRE(circuit.gates.size() == 3);
    CHECK(circuit.gates[0].tag == GateTag::H);
    CHECK(circuit.gates[1].tag == GateTag::CNOT);
    CHECK(circuit.gates[1].control == 0);
    CHECK(circuit.gates[1].target == 1);
    CHECK(circuit.gates[2].tag == GateTag::Z);

    const Circuit widened = parse_circuit(text, 4);
    CHECK(widened.n_qubits == 4);

    CHECK_THROWS_AS(parse_circuit(text, 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit(text, 0), std::invalid_argument);
}

TEST_CASE("parse failures name the offending line") {
    try {
        parse_circuit("H 0\nROTATE 1\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& error) {
        CHECK(message_contains(error, "line 2"));
        CHECK(message_contains(error, "ROTATE"));
    }
    try {
        parse_circuit("H 0\nCNOT 1 1\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& error) {
        CHECK(message_contains(error, "line 2"));
    }
    CHECK_THROWS_AS(parse_circuit("H\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("X -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("CNOT 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_circuit("H 0 0\n"), std::invalid_argument);
}

TEST_CASE("width limits and wire ranges are enforced") {
    Circuit wide{13, {}};
    CHECK_THROWS_AS(simulate(wide), dqv::guard_error);

    Circuit empty{0, {}};
    CHECK_THROWS_AS(simulate(empty), std::invalid_argument);

    Circuit stray{2, {{GateTag::X, 5}}};
    CHECK_THROWS_AS(simulate(stray), std::invalid_argument);

    Circuit overlapping{2, {{GateTag::CNOT, 1, 1}}};
    CHECK_THROWS_AS(simulate(overlapping), std::invalid_argument);
}
