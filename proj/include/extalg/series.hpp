#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "extalg/group.hpp"

namespace extalg {

/// Exact prefix c_0..c_N of a power series with nonnegative integer
/// coefficients.
struct CoeffSeries {
    std::vector<mpz_class> coeffs;

    const mpz_class& operator[](size_t n) const { return coeffs.at(n); }
    size_t size() const { return coeffs.size(); }
};

namespace detail {

/// Coefficients of 1 / [(1-t) prod_{m=1}^{r-1} (1 - t - (p^m - 1) t^2)],
/// expanded one inverse factor at a time: dividing a series C by
/// (1 - t - K t^2) yields b_n = b_{n-1} + K b_{n-2} + c_n.
inline std::vector<mpz_class> poincare_prefix(int p, int r, int N) {
    std::vector<mpz_class> c(N + 1, 0);
    c[0] = 1;
    mpz_class pm = 1; // p^m
    for (int m = 0; m < r; ++m) {
        mpz_class K = pm - 1; // m = 0 gives the 1/(1-t) factor
        std::vector<mpz_class> b(N + 1, 0);
        for (int n = 0; n <= N; ++n) {
            b[n] = c[n];
            if (n >= 1) b[n] += b[n - 1];
            if (n >= 2) b[n] += K * b[n - 2];
        }
        c = std::move(b);
        pm *= p;
    }
    return c;
}

} // namespace detail

inline CoeffSeries poincare_coeffs(const GroupCtx& ctx, int N) {
    return CoeffSeries{detail::poincare_prefix(ctx.p(), ctx.r(), N)};
}

struct RecurrenceReport {
    bool ok = true;
    int first_failing_n = -1;
    std::string detail;
};

/// Verifies the rank-lowering dimension recurrence
///   c^(r)_n = c^(r-1)_n + c^(r)_{n-1} + (p^{r-1} - 1) c^(r)_{n-2}
/// for 2 <= n <= N. The coefficient counts the complements of an index-p
/// subgroup other than the chosen one: a hyperplane H has p^{r-1}
/// complements (sections of G -> G/H), one of which is singled out.
inline RecurrenceReport recurrence_check(const GroupCtx& ctx, int N) {
    if (ctx.r() < 2) throw InvalidRank("recurrence_check requires rank >= 2");
    const int p = ctx.p(), r = ctx.r();
    auto cr = detail::poincare_prefix(p, r, N);
    auto cr1 = detail::poincare_prefix(p, r - 1, N);
    mpz_class K = 1;
    for (int j = 0; j < r - 1; ++j) K *= p;
    K -= 1;
    for (int n = 2; n <= N; ++n) {
        mpz_class rhs = cr1[n] + cr[n - 1] + K * cr[n - 2];
        if (cr[n] != rhs) {
            return RecurrenceReport{false, n,
                                    "c(" + std::to_string(n) + ") = " + cr[n].get_str() +
                                        " but recurrence gives " + rhs.get_str()};
        }
    }
    return RecurrenceReport{};
}

} // namespace extalg
