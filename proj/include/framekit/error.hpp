#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace framekit {

enum class Errc {
    not_divisible,
    division_by_zero,
    both_zero,
    parse_error,
    io_error,
    precondition_violated,
    setup_violated,
    centered_odd_order,
    necessary_conditions_fail,
    condition_ii_fails,
    internal_shift_mismatch,
    unknown_demo,
    level_mismatch,
    complex_mask,
    invalid_argument,
};

constexpr std::string_view to_string(Errc e) {
    switch (e) {
    case Errc::not_divisible: return "NotDivisible";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::both_zero: return "BothZero";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::setup_violated: return "SetupViolated";
    case Errc::centered_odd_order: return "CenteredOddOrder";
    case Errc::necessary_conditions_fail: return "NecessaryConditionsFail";
    case Errc::condition_ii_fails: return "ConditionIIFails";
    case Errc::internal_shift_mismatch: return "InternalShiftMismatch";
    case Errc::unknown_demo: return "UnknownDemo";
    case Errc::level_mismatch: return "LevelMismatch";
    case Errc::complex_mask: return "ComplexMask";
    case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library. The code is the stable part;
/// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace framekit
