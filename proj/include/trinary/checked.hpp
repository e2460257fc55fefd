#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trinary {

/// Raised when a 64-bit intermediate would wrap. Never silently truncated.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Raised when an argument violates a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b, const char* what = "add") {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError(std::string("64-bit overflow in ") + what);
    }
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b, const char* what = "sub") {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw OverflowError(std::string("64-bit overflow in ") + what);
    }
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b, const char* what = "mul") {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError(std::string("64-bit overflow in ") + what);
    }
    return r;
}

inline std::int64_t neg(std::int64_t a, const char* what = "neg") {
    return sub(0, a, what);
}

// 2*x + y, the shape shared by both recursions.
inline std::int64_t twice_plus(std::int64_t x, std::int64_t y, const char* what) {
    return add(mul(2, x, what), y, what);
}

}  // namespace checked
}  // namespace trinary
