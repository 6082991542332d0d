#pragma once

#include <stdexcept>
#include <string>

namespace kappa {

/// Operands built over different presentations were combined.
class PresentationMismatch : public std::invalid_argument {
public:
    PresentationMismatch() : std::invalid_argument("operands belong to different presentations") {}
};

/// A computation needed a deeper truncation order than its inputs carry.
class TruncationUnderflow : public std::runtime_error {
public:
    TruncationUnderflow(int needed, int available)
        : std::runtime_error("truncation underflow: need order " + std::to_string(needed) +
                             ", input known only to order " + std::to_string(available)),
          needed_(needed), available_(available)
    {}
    int needed() const { return needed_; }
    int available() const { return available_; }

private:
    int needed_;
    int available_;
};

/// A kappa-prefactor shift found nonzero coefficients below the shift.
class CancellationFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace kappa
