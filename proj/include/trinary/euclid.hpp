#pragma once

#include <cstdint>
#include <sstream>

#include "trinary/checked.hpp"
#include "trinary/pair_core.hpp"

namespace trinary {

/// g = gcd(A, B) together with coefficients (U, V) such that A*U + B*V = g.
struct GcdResult {
    std::int64_t g = 0;
    BezoutPair coeffs;

    friend constexpr bool operator==(const GcdResult&, const GcdResult&) = default;
};

/// Extended Euclidean algorithm with the classical normalization
///
///   egcd(A, 0) = (A, 1, 0)
///   egcd(A, B) = (g, y, x - floor(A / B) * y)  where (g, x, y) = egcd(B, A mod B)
///
/// evaluated bottom-up. This reproduces gcd(2,1) = [1,0,1], gcd(3,1) = [1,0,1]
/// and gcd(3,2) = [1,1,-1], the values used as Bezout tree roots.
inline GcdResult extended_gcd(std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 1) {
        std::ostringstream os;
        os << "extended_gcd requires positive inputs, got (" << a << "," << b << ")";
        throw PreconditionError(os.str());
    }
    std::int64_t r0 = a, r1 = b;
    std::int64_t s0 = 1, s1 = 0;
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        const std::int64_t r2 = r0 - q * r1;
        const std::int64_t s2 = checked::sub(s0, checked::mul(q, s1, "extended_gcd"), "extended_gcd");
        const std::int64_t t2 = checked::sub(t0, checked::mul(q, t1, "extended_gcd"), "extended_gcd");
        r0 = r1, r1 = r2;
        s0 = s1, s1 = s2;
        t0 = t1, t1 = t2;
    }
    return {r0, {s0, t0}};
}

}  // namespace trinary
