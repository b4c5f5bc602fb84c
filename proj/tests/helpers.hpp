#pragma once

#include <random>
#include <vector>

#include "extalg/word.hpp"

namespace extalg::testing {

/// Every word of exactly the given degree, by brute-force recursion over the
/// full atom alphabet. Test-side oracle, independent of basis enumeration.
inline std::vector<Word> all_words(const GroupCtx& ctx, int degree) {
    std::vector<Word> out;
    Word cur;
    auto dfs = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (Atom a = 0; a < ctx.num_atoms(); ++a) {
            if (ctx.atom_degree(a) > remaining) continue;
            cur.push_back(a);
            self(self, remaining - ctx.atom_degree(a));
            cur.pop_back();
        }
    };
    dfs(dfs, degree);
    return out;
}

inline Word random_word(const GroupCtx& ctx, int degree, std::mt19937_64& rng) {
    Word w;
    int remaining = degree;
    while (remaining > 0) {
        if (remaining == 1) {
            w.push_back(ctx.tau_atom(1 + int(rng() % ctx.r())));
            remaining = 0;
        } else {
            Atom a = Atom(rng() % ctx.num_atoms());
            w.push_back(a);
            remaining -= ctx.atom_degree(a);
        }
    }
    return w;
}

inline Element random_element(const GroupCtx& ctx, int max_degree, int max_terms,
                              std::mt19937_64& rng) {
    Element e(ctx);
    size_t n_terms = 1 + rng() % uint64_t(max_terms);
    for (size_t t = 0; t < n_terms; ++t) {
        int degree = int(rng() % uint64_t(max_degree + 1));
        e.add_term(random_word(ctx, degree, rng), 1 + int64_t(rng() % uint64_t(ctx.p() - 1)));
    }
    return e;
}

} // namespace extalg::testing
