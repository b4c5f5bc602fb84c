#pragma once

#include <gmpxx.h>

#include <array>
#include <vector>

#include "extalg/rewrite.hpp"
#include "extalg/word.hpp"

namespace extalg {

namespace detail {

// Block automaton states; tau may not follow tau (no tau_i tau_i) or the
// standard-line gamma (no gamma_{Y_i} tau_i). Gammas are always allowed.
enum class BlockState { Start, AfterTau, AfterStdGamma, AfterOtherGamma };

inline bool tau_allowed(BlockState s) {
    return s == BlockState::Start || s == BlockState::AfterOtherGamma;
}

} // namespace detail

/// All degree-d words of block type i (alphabet tau_i and gamma_X with
/// pos X = i) accepted by the block automaton, in lexicographic atom order.
inline std::vector<Word> block_words(const GroupCtx& ctx, int i, int d) {
    if (i < 1 || i > ctx.r()) throw std::out_of_range("block type out of range");
    std::vector<Atom> gammas;
    for (const Line& x : lines_by_position(ctx, i)) gammas.push_back(ctx.gamma_atom(x));
    const Atom tau = ctx.tau_atom(i);
    const Atom std_gamma = gammas.front(); // Y_i comes first in line order

    std::vector<Word> out;
    Word cur;
    auto dfs = [&](auto&& self, int remaining, detail::BlockState state) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (detail::tau_allowed(state)) {
            cur.push_back(tau);
            self(self, remaining - 1, detail::BlockState::AfterTau);
            cur.pop_back();
        }
        if (remaining >= 2) {
            for (Atom g : gammas) {
                cur.push_back(g);
                self(self, remaining - 2,
                     g == std_gamma ? detail::BlockState::AfterStdGamma
                                    : detail::BlockState::AfterOtherGamma);
                cur.pop_back();
            }
        }
    };
    dfs(dfs, d, detail::BlockState::Start);
    return out;
}

/// Number of accepted block-i words per degree 0..n, by automaton DP over
/// the end states [AfterTau, AfterStdGamma, AfterOtherGamma].
inline std::vector<mpz_class> block_counts(const GroupCtx& ctx, int i, int n) {
    if (i < 1 || i > ctx.r()) throw std::out_of_range("block type out of range");
    mpz_class num_gammas = 1; // p^{i-1} gammas of position i
    for (int j = 0; j < i - 1; ++j) num_gammas *= ctx.p();

    std::vector<std::array<mpz_class, 3>> dp(std::max(n, 0) + 1);
    std::vector<mpz_class> out(n + 1);
    out[0] = 1; // the empty word
    for (int d = 1; d <= n; ++d) {
        // tau appended to a degree d-1 word not ending in tau or gamma_{Y_i}
        dp[d][0] = (d - 1 == 0) ? 1 : dp[d - 1][2];
        // a gamma appended to any degree d-2 word
        mpz_class total_d2 = (d - 2 < 0) ? 0 : out[d - 2];
        dp[d][1] = total_d2;
        dp[d][2] = total_d2 * (num_gammas - 1);
        out[d] = dp[d][0] + dp[d][1] + dp[d][2];
    }
    return out;
}

/// Cardinality of the admissible basis in degree n, via convolution of the
/// per-block automaton counts.
inline mpz_class count_basis(const GroupCtx& ctx, int n) {
    std::vector<mpz_class> total(n + 1, 0);
    total[0] = 1;
    for (int i = 1; i <= ctx.r(); ++i) {
        std::vector<mpz_class> block = block_counts(ctx, i, n);
        std::vector<mpz_class> next(n + 1, 0);
        for (int a = 0; a <= n; ++a) {
            if (total[a] == 0) continue;
            for (int b = 0; a + b <= n; ++b) next[a + b] += total[a] * block[b];
        }
        total = std::move(next);
    }
    return total[n];
}

/// The admissible words of degree n: concatenations w_1..w_r over all degree
/// compositions, compositions in descending lexicographic order, each w_i
/// running through block_words(i, d_i) in block order.
inline std::vector<Word> admissible_basis(const GroupCtx& ctx, int n) {
    std::vector<Word> out;
    Word cur;
    auto dfs = [&](auto&& self, int block, int remaining) -> void {
        if (block == ctx.r()) { // place the full remainder in the last block
            for (const Word& bw : block_words(ctx, block, remaining)) {
                size_t mark = cur.size();
                cur.insert(cur.end(), bw.begin(), bw.end());
                out.push_back(cur);
                cur.resize(mark);
            }
            return;
        }
        for (int d = remaining; d >= 0; --d) {
            for (const Word& bw : block_words(ctx, block, d)) {
                size_t mark = cur.size();
                cur.insert(cur.end(), bw.begin(), bw.end());
                self(self, block + 1, remaining - d);
                cur.resize(mark);
            }
        }
    };
    if (ctx.r() == 1) {
        return block_words(ctx, 1, n);
    }
    dfs(dfs, 1, n);
    return out;
}

} // namespace extalg
