#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qinterp {

enum class ErrorKind {
    NotPrime,
    DegreeZero,
    CapExceeded,
    DivideByZero,
    FieldMismatch,
    EmptyPolynomial,
    LengthMismatch,
    InvalidParams,
    BudgetExceeded,
    InsufficientSamples,
    IndexOutOfRange,
    SingularHankel,
    WrongRootCount,
    ZeroWeight,
    AttemptsExhausted,
    BadRegisterIndex,
    ShapeMismatch,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can branch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// True for the three failure kinds that mean "z has no good preimage".
inline bool is_not_in_good_range(ErrorKind kind) noexcept {
    return kind == ErrorKind::SingularHankel || kind == ErrorKind::WrongRootCount ||
           kind == ErrorKind::ZeroWeight;
}

}  // namespace qinterp
