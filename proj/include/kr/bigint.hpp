#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace kr {

// All arithmetic in this library is exact. Int never overflows.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Error taxonomy shared across the library. The code identifies which
// contract was violated; the message carries the witness.
enum class ErrorCode {
    CompositionNotZero,
    InvalidInvolution,
    UnstableTruncation,
    InconsistentTemplate,
    NotFreeAction,
    NonCommutingMorphism,
    NonCollapsing,
    NotOnVariety,
    DegenerateRadius,
    HarnackViolation,
    NotSpecifiedInPaper,
    InvalidComplex,
    UnsupportedParams,
    BadInput,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace kr
