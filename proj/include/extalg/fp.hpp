#pragma once

#include <cstdint>
#include <stdexcept>

namespace extalg {

/// Arithmetic in the prime field F_p for small odd p. All residues are kept
/// in [0, p).
struct Fp {
    int32_t p;

    int32_t norm(int64_t a) const {
        int64_t m = a % p;
        return static_cast<int32_t>(m < 0 ? m + p : m);
    }
    int32_t add(int32_t a, int32_t b) const { return norm(int64_t(a) + b); }
    int32_t sub(int32_t a, int32_t b) const { return norm(int64_t(a) - b); }
    int32_t mul(int32_t a, int32_t b) const { return norm(int64_t(a) * b); }
    int32_t neg(int32_t a) const { return norm(-int64_t(a)); }

    int32_t pow(int32_t a, int64_t e) const {
        int64_t base = norm(a), acc = 1;
        while (e > 0) {
            if (e & 1) acc = acc * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return static_cast<int32_t>(acc);
    }

    int32_t inv(int32_t a) const {
        a = norm(a);
        if (a == 0) throw std::domain_error("Fp::inv: division by zero");
        return pow(a, p - 2);
    }
};

inline bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace extalg
