#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wsbn {

using StateId = std::uint32_t;
using LetterId = std::uint32_t;

enum class Direction : std::uint8_t { Broadcast, Receive };

/// A process transition label: `!!a` (broadcast) or `??a` (receive).
struct TransitionLabel {
    Direction kind = Direction::Broadcast;
    LetterId letter = 0;

    friend auto operator<=>(const TransitionLabel&, const TransitionLabel&) = default;
};

constexpr TransitionLabel broadcast(LetterId a) { return {Direction::Broadcast, a}; }
constexpr TransitionLabel receive(LetterId a) { return {Direction::Receive, a}; }

// Dense label numbering used by the saturation engine: letters in declaration
// order, broadcast before receive.
constexpr std::size_t label_index(TransitionLabel l) {
    return 2 * static_cast<std::size_t>(l.letter) + (l.kind == Direction::Receive ? 1 : 0);
}
constexpr TransitionLabel label_from_index(std::size_t i) {
    return {i % 2 == 0 ? Direction::Broadcast : Direction::Receive, static_cast<LetterId>(i / 2)};
}

enum class Outcome { Coverable, NotCoverable, ResourceExhausted };

constexpr std::string_view to_string(Outcome o) {
    switch (o) {
    case Outcome::Coverable: return "coverable";
    case Outcome::NotCoverable: return "not-coverable";
    case Outcome::ResourceExhausted: return "resource-exhausted";
    }
    return "?";
}

/// Collects results of optional runtime invariant checks performed by the
/// saturation engines (monotone growth, antichain bases).
struct InvariantAudit {
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::vector<std::string> messages;

    void record(bool ok, std::string_view what) {
        ++checks;
        if (!ok) {
            ++violations;
            if (messages.size() < 32) messages.emplace_back(what);
        }
    }
};

struct ResourceLimits {
    std::size_t max_basis = 100000;
    std::size_t max_iterations = 10000;
    /// Optional instrumentation sink; engines verify their invariants when set.
    InvariantAudit* audit = nullptr;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ResourceExhausted : public Error {
public:
    using Error::Error;
};

class ClassViolation : public Error {
public:
    using Error::Error;
};

class SelfLoop : public Error {
public:
    using Error::Error;
};

class WitnessExtractionFailed : public Error {
public:
    using Error::Error;
};

} // namespace wsbn
