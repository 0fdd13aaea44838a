// Error taxonomy shared by the library: every failure carries a code so callers
// (and the CLI exit-code mapping) can distinguish bad input, negative decisions,
// and internal invariant violations.
#pragma once

#include <stdexcept>
#include <string>

namespace debtswap {

enum class Errc {
    InvalidNetwork,        // structural validation failed
    InvalidSwap,           // endpoints not distinct, liabilities differ, multi-edge
    NotFound,              // bank/edge lookup failed
    IterationLimit,        // clearing failed to converge within its round budget
    EnumerationTooLarge,   // brute-force candidate space above the guard
    NotIntegral,           // operation requires integer liabilities/assets
    NotEdgeRanking,        // operation requires edge-ranking rules
    CyclicActiveEdges,     // active edges do not form a forest (invariant violation)
    PreconditionViolated,  // scheduler precondition (residuals/degree) failed
    StepBudgetExceeded,    // scheduler ran past its hard step cap
    ClassificationMismatch,// emitted swap does not classify as promised
    BoundViolated,         // a proven counting bound failed at runtime
    Inconsistent,          // reachability requested between inconsistent networks
    IdenticalNetworks,     // reachability requested between equal networks
    SequenceInvalid,       // swap-sequence replay failed
    ParseError,            // malformed document / formula / CLI value
    ValidationError,       // well-formed document with invalid content
    IoError,               // underlying file I/O failed
    Internal,              // "cannot happen" states
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::InvalidNetwork: return "InvalidNetwork";
        case Errc::InvalidSwap: return "InvalidSwap";
        case Errc::NotFound: return "NotFound";
        case Errc::IterationLimit: return "IterationLimit";
        case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
        case Errc::NotIntegral: return "NotIntegral";
        case Errc::NotEdgeRanking: return "NotEdgeRanking";
        case Errc::CyclicActiveEdges: return "CyclicActiveEdges";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::StepBudgetExceeded: return "StepBudgetExceeded";
        case Errc::ClassificationMismatch: return "ClassificationMismatch";
        case Errc::BoundViolated: return "BoundViolated";
        case Errc::Inconsistent: return "Inconsistent";
        case Errc::IdenticalNetworks: return "IdenticalNetworks";
        case Errc::SequenceInvalid: return "SequenceInvalid";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
        case Errc::IoError: return "IoError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

    // True for conditions that indicate a bug in this library rather than bad input.
    bool internal() const {
        switch (code_) {
            case Errc::CyclicActiveEdges:
            case Errc::BoundViolated:
            case Errc::ClassificationMismatch:
            case Errc::IterationLimit:
            case Errc::Internal:
                return true;
            default:
                return false;
        }
    }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool cond, Errc code, const std::string& message) {
    if (!cond) raise(code, message);
}

}  // namespace debtswap
