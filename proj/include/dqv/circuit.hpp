#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dqv/instance.hpp"

namespace dqv::circuit {

enum class GateTag { X, Z, H, CNOT, T };

struct Gate {
    GateTag tag = GateTag::X;
    int target = 0;
    int control = -1;  // CNOT only
};

// Wire 0 is the least significant bit of a basis-state index; the measured
// output sits on the last wire (n_qubits - 1).
struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
};

using StateVector = std::vector<std::complex<double>>;

enum class PauliTag { I, X, Y, Z };
using PauliString = std::vector<PauliTag>;

enum class PauliClass { Benign, NonBenign };

// Per-wire encryption bits for the Pauli one-time pad X^a Z^b.
struct PauliKeys {
    std::vector<std::uint8_t> a;
    std::vector<std::uint8_t> b;
};

// Applies the gate list to |0...0> and returns the full statevector. Rejects
// more than 12 wires (the amplitude array doubles per wire).
StateVector simulate(const Circuit& circuit);

// Probability of measuring 0 on the last wire.
double acceptance_probability(const Circuit& circuit);

// Yes when the acceptance probability reaches 1-q, No when it is at most q.
InstanceLabel classify_instance(const Circuit& circuit, double q);

// Benign iff every measured wire carries I or Z; wires outside the measured
// set may carry anything.
PauliClass classify_pauli(const PauliString& pauli, std::span<const int> measured_wires);

struct InvarianceResult {
    bool holds = false;
    double distance = 0.0;  // total variation on the last-wire distribution
};

// Checks that inserting the Pauli before measurement leaves the last-wire
// distribution unchanged (within 1e-10). Only Paulis supported on the last
// wire by I or Z qualify; anything else is rejected.
InvarianceResult benign_invariance_check(const Circuit& circuit, const PauliString& pauli);

// Encrypts |0...0> with X^a Z^b, runs the circuit while conjugating the keys
// through each gate (H swaps a and b; CNOT adds a control->target and
// b target->control; X and Z commute up to phase), decrypts, and returns the
// total-variation distance to the unencrypted run's distribution. T gates are
// rejected: the pad does not track them.
double qotp_roundtrip(const Circuit& circuit, const PauliKeys& keys);

// Text format: one gate per line, "<TAG> <wire>" or "CNOT <control> <target>",
// zero-indexed wires; blank lines and lines starting with '#' are skipped.
// Width is inferred as the highest wire plus one unless given explicitly.
Circuit parse_circuit(const std::string& text);
Circuit parse_circuit(const std::string& text, int n_qubits);

} // namespace dqv::circuit
