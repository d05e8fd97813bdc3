#include "dqv/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "dqv/errors.hpp"

namespace dqv::circuit {
namespace {

constexpr int kMaxQubits = 12;

void validate_circuit(const Circuit& circuit) {
    if (circuit.n_qubits < 1) {
        throw std::invalid_argument("circuit: needs at least one wire");
    }
    if (circuit.n_qubits > kMaxQubits) {
        throw guard_error("circuit: statevector simulation is limited to 12 wires");
    }
    for (const Gate& gate : circuit.gates) {
        if (gate.target < 0 || gate.target >= circuit.n_qubits) {
            throw std::invalid_argument("circuit: gate wire out of range");
        }
        if (gate.tag == GateTag::CNOT) {
            if (gate.control < 0 || gate.control >= circuit.n_qubits) {
                throw std::invalid_argument("circuit: control wire out of range");
            }
            if (gate.control == gate.target) {
                throw std::invalid_argument("circuit: CNOT needs distinct wires");
            }
        }
    }
}

void apply_x(StateVector& state, std::size_t bit) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & bit) == 0) {
            std::swap(state[i], state[i | bit]);
        }
    }
}

void apply_z(StateVector& state, std::size_t bit) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & bit) != 0) {
            state[i] = -state[i];
        }
    }
}

void apply_h(StateVector& state, std::size_t bit) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & bit) == 0) {
            const std::complex<double> lo = state[i];
            const std::complex<double> hi = state[i | bit];
            state[i] = (lo + hi) * inv_sqrt2;
            state[i | bit] = (lo - hi) * inv_sqrt2;
        }
    }
}

void apply_t(StateVector& state, std::size_t bit) {
    const std::complex<double> phase{std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & bit) != 0) {
            state[i] *= phase;
        }
    }
}

void apply_cnot(StateVector& state, std::size_t control_bit, std::size_t target_bit) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & control_bit) != 0 && (i & target_bit) == 0) {
            std::swap(state[i], state[i | target_bit]);
        }
    }
}

void apply_gate(StateVector& state, const Gate& gate) {
    const std::size_t bit = std::size_t{1} << gate.target;
    switch (gate.tag) {
        case GateTag::X:
            apply_x(state, bit);
            break;
        case GateTag::Z:
            apply_z(state, bit);
            break;
        case GateTag::H:
            apply_h(state, bit);
            break;
        case GateTag::T:
            apply_t(state, bit);
            break;
        case GateTag::CNOT:
            apply_cnot(state, std::size_t{1} << gate.control, bit);
            break;
    }
}

void apply_pauli(StateVector& state, const PauliString& pauli) {
    for (std::size_t wire = 0; wire < pauli.size(); ++wire) {
        const std::size_t bit = std::size_t{1} << wire;
        switch (pauli[wire]) {
            case PauliTag::I:
                break;
            case PauliTag::X:
                apply_x(state, bit);
                break;
            case PauliTag::Z:
                apply_z(state, bit);
                break;
            case PauliTag::Y:
                // Y = iXZ; the phases matter once amplitudes recombine.
                for (std::size_t i = 0; i < state.size(); ++i) {
                    if ((i & bit) == 0) {
                        const std::complex<double> lo = state[i];
                        const std::complex<double> hi = state[i | bit];
                        state[i] = std::complex<double>{0.0, -1.0} * hi;
                        state[i | bit] = std::complex<double>{0.0, 1.0} * lo;
                    }
                }
                break;
        }
    }
}

// Probability of reading 0 on the last wire.
double last_wire_zero_mass(const StateVector& state, int n_qubits) {
    const std::size_t bit = std::size_t{1} << (n_qubits - 1);
    double mass = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & bit) == 0) {
            mass += std::norm(state[i]);
        }
    }
    return mass;
}

void validate_keys(const Circuit& circuit, const PauliKeys& keys) {
    const auto n = static_cast<std::size_t>(circuit.n_qubits);
    if (keys.a.size() != n || keys.b.size() != n) {
        throw std::invalid_argument("qotp: key arrays must have one bit per wire");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (keys.a[i] > 1 || keys.b[i] > 1) {
            throw std::invalid_argument("qotp: keys must be bits");
        }
    }
}

void apply_keys(StateVector& state, const PauliKeys& keys) {
    for (std::size_t wire = 0; wire < keys.a.size(); ++wire) {
        const std::size_t bit = std::size_t{1} << wire;
        if (keys.b[wire] != 0) {
            apply_z(state, bit);
        }
        if (keys.a[wire] != 0) {
            apply_x(state, bit);
        }
    }
}

[[noreturn]] void parse_fail(std::size_t line_number, const std::string& message) {
    throw std::invalid_argument("circuit: line " + std::to_string(line_number) + ": " + message);
}

Circuit parse_impl(const std::string& text, int forced_width) {
    Circuit circuit;
    int max_wire = -1;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(lines, line)) {
        ++line_number;
        std::istringstream tokens(line);
        std::string tag;
        if (!(tokens >> tag) || tag.front() == '#') {
            continue;
        }
        Gate gate;
        int args_needed = 1;
        if (tag == "X") {
            gate.tag = GateTag::X;
        } else if (tag == "Z") {
            gate.tag = GateTag::Z;
        } else if (tag == "H") {
            gate.tag = GateTag::H;
        } else if (tag == "T") {
            gate.tag = GateTag::T;
        } else if (tag == "CNOT") {
            gate.tag = GateTag::CNOT;
            args_needed = 2;
        } else {
            parse_fail(line_number, "unknown gate '" + tag + "'");
        }
        int first = 0;
        if (!(tokens >> first) || first < 0) {
            parse_fail(line_number, "expected a wire index after '" + tag + "'");
        }
        if (args_needed == 2) {
            int second = 0;
            if (!(tokens >> second) || second < 0) {
                parse_fail(line_number, "CNOT needs a control and a target wire");
            }
            if (second == first) {
                parse_fail(line_number, "CNOT needs distinct wires");
            }
            gate.control = first;
            gate.target = second;
            max_wire = std::max({max_wire, first, second});
        } else {
            gate.target = first;
            max_wire = std::max(max_wire, first);
        }
        std::string extra;
        if (tokens >> extra) {
            parse_fail(line_number, "unexpected token '" + extra + "'");
        }
        circuit.gates.push_back(gate);
    }
    if (forced_width > 0) {
        if (max_wire >= forced_width) {
            throw std::invalid_argument("circuit: a gate uses a wire beyond the given width");
        }
        circuit.n_qubits = forced_width;
    } else {
        circuit.n_qubits = max_wire + 1;
    }
    return circuit;
}

} // namespace

StateVector simulate(const Circuit& circuit) {
    validate_circuit(circuit);
    StateVector state(std::size_t{1} << circuit.n_qubits);
    state[0] = 1.0;
    for (const Gate& gate : circuit.gates) {
        apply_gate(state, gate);
    }
    return state;
}

double acceptance_probability(const Circuit& circuit) {
    return last_wire_zero_mass(simulate(circuit), circuit.n_qubits);
}

InstanceLabel classify_instance(const Circuit& circuit, double q) {
    return label_from_probability(acceptance_probability(circuit), q);
}

PauliClass classify_pauli(const PauliString& pauli, std::span<const int> measured_wires) {
    for (const int wire : measured_wires) {
        if (wire < 0 || static_cast<std::size_t>(wire) >= pauli.size()) {
            throw std::invalid_argument("classify_pauli: measured wire out of range");
        }
        if (pauli[static_cast<std::size_t>(wire)] == PauliTag::X ||
            pauli[static_cast<std::size_t>(wire)] == PauliTag::Y) {
            return PauliClass::NonBenign;
        }
    }
    return PauliClass::Benign;
}

InvarianceResult benign_invariance_check(const Circuit& circuit, const PauliString& pauli) {
    validate_circuit(circuit);
    if (pauli.size() != static_cast<std::size_t>(circuit.n_qubits)) {
        throw std::invalid_argument("benign_invariance_check: Pauli length must match width");
    }
    const auto last = static_cast<std::size_t>(circuit.n_qubits - 1);
    for (std::size_t wire = 0; wire < pauli.size(); ++wire) {
        if (wire != last && pauli[wire] != PauliTag::I) {
            throw std::invalid_argument(
                "benign_invariance_check: support must sit on the measured wire");
        }
    }
    if (pauli[last] == PauliTag::X || pauli[last] == PauliTag::Y) {
        throw std::invalid_argument("benign_invariance_check: Pauli is not benign");
    }

    const StateVector plain = simulate(circuit);
    StateVector tampered = plain;
    apply_pauli(tampered, pauli);
    const double distance = std::fabs(last_wire_zero_mass(plain, circuit.n_qubits) -
                                      last_wire_zero_mass(tampered, circuit.n_qubits));
    return {distance <= 1e-10, distance};
}

double qotp_roundtrip(const Circuit& circuit, const PauliKeys& keys) {
    validate_circuit(circuit);
    validate_keys(circuit, keys);
    for (const Gate& gate : circuit.gates) {
        if (gate.tag == GateTag::T) {
            throw std::invalid_argument("qotp: T gates are not tracked by the pad");
        }
    }

    StateVector encrypted(std::size_t{1} << circuit.n_qubits);
    encrypted[0] = 1.0;
    apply_keys(encrypted, keys);

    PauliKeys running = keys;
    for (const Gate& gate : circuit.gates) {
        apply_gate(encrypted, gate);
        const auto target = static_cast<std::size_t>(gate.target);
        switch (gate.tag) {
            case GateTag::H:
                std::swap(running.a[target], running.b[target]);
                break;
            case GateTag::CNOT: {
                const auto control = static_cast<std::size_t>(gate.control);
                running.a[target] ^= running.a[control];
                running.b[control] ^= running.b[target];
                break;
            }
            default:
                break;  // X and Z leave the keys alone
        }
    }
    apply_keys(encrypted, running);

    const StateVector plain = simulate(circuit);
    double distance = 0.0;
    for (std::size_t i = 0; i < plain.size(); ++i) {
        distance += std::fabs(std::norm(encrypted[i]) - std::norm(plain[i]));
    }
    return distance / 2.0;
}

Circuit parse_circuit(const std::string& text) { return parse_impl(text, 0); }

Circuit parse_circuit(const std::string& text, int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("circuit: width must be positive");
    }
    return parse_impl(text, n_qubits);
}

} // namespace dqv::circuit
