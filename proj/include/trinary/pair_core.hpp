#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "trinary/checked.hpp"

namespace trinary {

/// Child selector. The order A < B < C is the canonical top-to-bottom order
/// used for every traversal and serialization.
///
///   A: f applied to (m, -n), g applied to (u, -v)
///   B: f applied to (m,  n), g applied to (u,  v)
///   C: f applied to (n,  m), g applied to (v,  u)
enum class Branch : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Branch, 3> kBranches{Branch::A, Branch::B, Branch::C};

constexpr char to_char(Branch b) noexcept {
    return static_cast<char>('A' + static_cast<int>(b));
}

inline std::optional<Branch> branch_from_char(char c) noexcept {
    switch (c) {
        case 'A': return Branch::A;
        case 'B': return Branch::B;
        case 'C': return Branch::C;
        default: return std::nullopt;
    }
}

/// Relatively prime pair with m > n >= 1.
struct CoprimePair {
    std::int64_t m = 0;
    std::int64_t n = 0;

    friend constexpr bool operator==(const CoprimePair&, const CoprimePair&) = default;
    friend constexpr auto operator<=>(const CoprimePair&, const CoprimePair&) = default;

    [[nodiscard]] bool is_valid() const noexcept { return m > n && n >= 1 && std::gcd(m, n) == 1; }
    [[nodiscard]] bool both_odd() const noexcept { return (m & 1) == 1 && (n & 1) == 1; }

    /// Validating constructor; throws PreconditionError on a bad pair.
    static CoprimePair checked(std::int64_t m, std::int64_t n) {
        CoprimePair p{m, n};
        if (!p.is_valid()) {
            std::ostringstream os;
            os << "(" << m << "," << n << ") is not a coprime pair with m > n >= 1";
            throw PreconditionError(os.str());
        }
        return p;
    }
};

/// Coefficients (u, v) with m*u + n*v = 1 for an associated CoprimePair.
struct BezoutPair {
    std::int64_t u = 0;
    std::int64_t v = 0;

    friend constexpr bool operator==(const BezoutPair&, const BezoutPair&) = default;
    friend constexpr auto operator<=>(const BezoutPair&, const BezoutPair&) = default;
};

struct PythagoreanTriple {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    friend constexpr bool operator==(const PythagoreanTriple&, const PythagoreanTriple&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CoprimePair& p) {
    return os << "(" << p.m << "," << p.n << ")";
}
inline std::ostream& operator<<(std::ostream& os, const BezoutPair& q) {
    return os << "(" << q.u << "," << q.v << ")";
}
inline std::ostream& operator<<(std::ostream& os, const PythagoreanTriple& t) {
    return os << "(" << t.x << "," << t.y << "," << t.z << ")";
}
inline std::ostream& operator<<(std::ostream& os, Branch b) { return os << to_char(b); }

template <class T>
std::string to_string(const T& value) {
    std::ostringstream os;
    os << value;
    return os.str();
}

namespace detail {

template <class Payload>
[[noreturn]] inline void overflow_at(const char* op, const Payload& at, Branch b) {
    std::ostringstream os;
    os << op << ": 64-bit overflow expanding node " << at << " along branch " << to_char(b);
    throw OverflowError(os.str());
}

}  // namespace detail

/// One step of the pair recursion f(m, n) = (2m + n, m) on the chosen input form.
inline CoprimePair f_child(const CoprimePair& p, Branch b) {
    // A: f(m, -n) = (2m - n, m);  B: f(m, n) = (2m + n, m);  C: f(n, m) = (2n + m, n)
    const std::int64_t doubled = b == Branch::C ? p.n : p.m;
    const std::int64_t other = b == Branch::C ? p.m : p.n;
    std::int64_t t;
    std::int64_t first;
    const bool overflow = __builtin_mul_overflow(doubled, 2, &t) ||
                          (b == Branch::A ? __builtin_sub_overflow(t, other, &first)
                                          : __builtin_add_overflow(t, other, &first));
    if (overflow) {
        detail::overflow_at("f_child", p, b);
    }
    return {first, doubled};
}

/// One step of the Bezout recursion g(u, v) = (v, u - 2v) on the chosen input form.
/// If m*u + n*v = 1 then the result is a Bezout pair for f_child(p, b).
inline BezoutPair g_child(const BezoutPair& q, Branch b) {
    std::int64_t t;
    std::int64_t second;
    switch (b) {
        case Branch::A:  // g(u, -v) = (-v, u + 2v)
            if (q.v == INT64_MIN || __builtin_mul_overflow(q.v, 2, &t) ||
                __builtin_add_overflow(q.u, t, &second)) {
                detail::overflow_at("g_child", q, b);
            }
            return {-q.v, second};
        case Branch::B:  // g(u, v) = (v, u - 2v)
            if (__builtin_mul_overflow(q.v, 2, &t) || __builtin_sub_overflow(q.u, t, &second)) {
                detail::overflow_at("g_child", q, b);
            }
            return {q.v, second};
        case Branch::C:  // g(v, u) = (u, v - 2u)
            if (__builtin_mul_overflow(q.u, 2, &t) || __builtin_sub_overflow(q.v, t, &second)) {
                detail::overflow_at("g_child", q, b);
            }
            return {q.u, second};
    }
    return {};
}

/// (m^2 - n^2, 2mn, m^2 + n^2).
inline PythagoreanTriple triple(const CoprimePair& p) {
    const auto m2 = checked::mul(p.m, p.m, "triple");
    const auto n2 = checked::mul(p.n, p.n, "triple");
    return {checked::sub(m2, n2, "triple"), checked::mul(2, checked::mul(p.m, p.n, "triple"), "triple"),
            checked::add(m2, n2, "triple")};
}

/// m*u + n*v == 1, with overflow checking.
inline bool verify_bezout(const CoprimePair& p, const BezoutPair& q) {
    return checked::add(checked::mul(p.m, q.u, "verify_bezout"), checked::mul(p.n, q.v, "verify_bezout"),
                        "verify_bezout") == 1;
}

}  // namespace trinary
