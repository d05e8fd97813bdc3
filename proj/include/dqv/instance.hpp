#pragma once

#include <stdexcept>

namespace dqv {

// Promise classification for a decision instance whose acceptance probability
// is p: Yes when p >= 1-q, No when p <= q; anything in between violates the
// promise. Both boundaries are inclusive.
enum class InstanceLabel { Yes, No, Unpromised };

constexpr const char* to_string(InstanceLabel label) {
    switch (label) {
        case InstanceLabel::Yes:
            return "YES";
        case InstanceLabel::No:
            return "NO";
        default:
            return "UNPROMISED";
    }
}

inline InstanceLabel label_from_probability(double p, double q) {
    if (!(q >= 0.0) || !(q < 0.5)) {
        throw std::invalid_argument("label_from_probability: q must lie in [0, 1/2)");
    }
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::invalid_argument("label_from_probability: p must lie in [0, 1]");
    }
    if (p >= 1.0 - q) {
        return InstanceLabel::Yes;
    }
    if (p <= q) {
        return InstanceLabel::No;
    }
    return InstanceLabel::Unpromised;
}

} // namespace dqv
