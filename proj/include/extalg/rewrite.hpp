#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "extalg/parse.hpp"
#include "extalg/relations.hpp"
#include "extalg/word.hpp"

namespace extalg {

/// Classification of the forbidden two-atom sequences. A word is admissible
/// exactly when no consecutive pair matches any of them.
enum class ForbiddenTag { S1, S2, S3, S4, S5 };

inline const char* to_string(ForbiddenTag t) {
    switch (t) {
        case ForbiddenTag::S1: return "S1";
        case ForbiddenTag::S2: return "S2";
        case ForbiddenTag::S3: return "S3";
        case ForbiddenTag::S4: return "S4";
        case ForbiddenTag::S5: return "S5";
    }
    return "?";
}

namespace detail {
inline bool is_standard_line(const Line& x) {
    for (size_t j = 0; j + 1 < static_cast<size_t>(x.position); ++j)
        if (x.rep[j] != 0) return false;
    return true; // rep = e_{position}
}
} // namespace detail

/// Matches a consecutive atom pair against S1..S5. At most one tag can match
/// a given pair, so rule priority never arises at a single site.
inline std::optional<ForbiddenTag> classify_pair(const GroupCtx& ctx, Atom a, Atom b) {
    const bool ta = ctx.atom_is_tau(a), tb = ctx.atom_is_tau(b);
    if (ta && tb) {
        return ctx.atom_tau_index(b) <= ctx.atom_tau_index(a)
                   ? std::optional(ForbiddenTag::S1)
                   : std::nullopt;
    }
    if (ta && !tb) {
        return ctx.atom_position(b) < ctx.atom_tau_index(a) ? std::optional(ForbiddenTag::S2)
                                                            : std::nullopt;
    }
    if (!ta && tb) {
        int m = ctx.atom_position(a), i = ctx.atom_tau_index(b);
        if (i < m) return ForbiddenTag::S5;
        if (i == m && detail::is_standard_line(ctx.atom_line(a))) return ForbiddenTag::S3;
        return std::nullopt;
    }
    return ctx.atom_position(b) < ctx.atom_position(a) ? std::optional(ForbiddenTag::S4)
                                                       : std::nullopt;
}

inline bool is_admissible(const GroupCtx& ctx, const Word& w) {
    for (size_t k = 0; k + 1 < w.size(); ++k)
        if (classify_pair(ctx, w[k], w[k + 1])) return false;
    return true;
}

/// Pre-admissible: the word factors as w_1..w_r with w_i of type i, i.e. the
/// atom positions are nondecreasing left to right.
inline bool is_pre_admissible(const GroupCtx& ctx, const Word& w) {
    for (size_t k = 0; k + 1 < w.size(); ++k)
        if (ctx.atom_position(w[k]) > ctx.atom_position(w[k + 1])) return false;
    return true;
}

/// One in-place replacement: the pair starting at `site` was rewritten, and
/// `replacement` is the resulting element (same degree as the input word).
struct RewriteOutcome {
    ForbiddenTag rule;
    size_t site;
    Element replacement;
};

struct FuelExhausted : std::runtime_error {
    uint64_t steps;
    Element partial;
    FuelExhausted(uint64_t steps_, Element partial_)
        : std::runtime_error("rewriting fuel exhausted after " + std::to_string(steps_) +
                             " steps (termination guard; not a mathematical fact)"),
          steps(steps_), partial(std::move(partial_)) {}
};

/// Site-selection strategies. Leftmost is the default and the one the public
/// rewrite_step exposes; the others exist to test order-independence.
enum class Strategy { Leftmost, Rightmost, RandomSite };

inline constexpr uint64_t kDefaultFuel = 1'000'000;

class Rewriter {
public:
    Rewriter(GroupCtx&&, Strategy = Strategy::Leftmost, uint64_t = 0) = delete;
    explicit Rewriter(const GroupCtx& ctx, Strategy strategy = Strategy::Leftmost,
                      uint64_t seed = 0)
        : ctx_(&ctx), strategy_(strategy), rng_(seed) {}

    const GroupCtx& ctx() const { return *ctx_; }
    Strategy strategy() const { return strategy_; }
    void reseed(uint64_t seed) { rng_.seed(seed); }

    /// Per-step trace hook: (rule, site, live term count after the step).
    void set_trace(std::function<void(ForbiddenTag, size_t, size_t)> fn) { trace_ = std::move(fn); }

    /// Replaces the leftmost forbidden pair of w, or returns nullopt when w is
    /// already admissible.
    std::optional<RewriteOutcome> step(const Word& w) const {
        for (size_t k = 0; k + 1 < w.size(); ++k) {
            if (auto tag = classify_pair(*ctx_, w[k], w[k + 1])) {
                Element repl(*ctx_);
                const Element& pair = pair_replacement(w[k], w[k + 1], *tag);
                for (const auto& [pw, pc] : pair.terms())
                    repl.add_term(splice(w, k, pw), pc);
                return RewriteOutcome{*tag, k, std::move(repl)};
            }
        }
        return std::nullopt;
    }

    /// Full reduction of a single word; the result has admissible support.
    Element word_normal_form(const Word& w, uint64_t fuel = kDefaultFuel) const {
        const bool memoizable = strategy_ != Strategy::RandomSite;
        if (memoizable) {
            auto it = memo_.find(w);
            if (it != memo_.end()) return it->second;
        }
        Element done(*ctx_);
        Element::TermMap todo{WordOrder{ctx_->r()}};
        todo.emplace(w, 1);
        uint64_t steps = 0;
        while (!todo.empty()) {
            auto first = todo.begin();
            Word cur = first->first;
            int32_t coeff = first->second;
            todo.erase(first);

            auto site = find_site(cur);
            if (!site) {
                done.add_term(cur, coeff);
                continue;
            }
            if (steps >= fuel) {
                Element partial = done;
                partial.add_term(cur, coeff);
                for (const auto& [tw, tc] : todo) partial.add_term(tw, tc);
                throw FuelExhausted(steps, std::move(partial));
            }
            ++steps;
            auto [k, tag] = *site;
            const Element& pair = pair_replacement(cur[k], cur[k + 1], tag);
            for (const auto& [pw, pc] : pair.terms()) {
                Word nw = splice(cur, k, pw);
                int32_t nc = ctx_->fp().mul(coeff, pc);
                auto [it, inserted] = todo.emplace(std::move(nw), nc);
                if (!inserted) {
                    it->second = ctx_->fp().add(it->second, nc);
                    if (it->second == 0) todo.erase(it);
                }
            }
            if (trace_) trace_(tag, k, todo.size() + done.support_size());
        }
        if (memoizable) memo_.emplace(w, done);
        return done;
    }

    /// Reduction of an arbitrary element, word by word (fuel is per word).
    Element normal_form(const Element& e, uint64_t fuel = kDefaultFuel) const {
        if (!ctx_->same_as(e.ctx()))
            throw ContextMismatch("normal_form: element belongs to another context");
        Element out(*ctx_);
        for (const auto& [w, c] : e.terms()) {
            Element nf = word_normal_form(w, fuel);
            for (const auto& [nw, nc] : nf.terms()) out.add_term(nw, int64_t(c) * nc);
        }
        return out;
    }

    /// The algebra product: concatenate, then reduce.
    Element multiply(const Element& a, const Element& b, uint64_t fuel = kDefaultFuel) const {
        return normal_form(mul_raw(a, b), fuel);
    }

private:
    const GroupCtx* ctx_;
    Strategy strategy_;
    mutable std::mt19937_64 rng_;
    std::function<void(ForbiddenTag, size_t, size_t)> trace_;
    mutable std::unordered_map<Word, Element, WordHash> memo_;
    mutable std::unordered_map<int64_t, Element> pair_cache_;

    static Word splice(const Word& w, size_t k, const Word& mid) {
        Word out;
        out.reserve(w.size() - 2 + mid.size());
        out.insert(out.end(), w.begin(), w.begin() + k);
        out.insert(out.end(), mid.begin(), mid.end());
        out.insert(out.end(), w.begin() + k + 2, w.end());
        return out;
    }

    std::optional<std::pair<size_t, ForbiddenTag>> find_site(const Word& w) const {
        switch (strategy_) {
            case Strategy::Leftmost:
                for (size_t k = 0; k + 1 < w.size(); ++k)
                    if (auto t = classify_pair(*ctx_, w[k], w[k + 1])) return std::pair{k, *t};
                return std::nullopt;
            case Strategy::Rightmost:
                for (size_t k = w.size(); k >= 2; --k)
                    if (auto t = classify_pair(*ctx_, w[k - 2], w[k - 1]))
                        return std::pair{k - 2, *t};
                return std::nullopt;
            case Strategy::RandomSite: {
                std::vector<std::pair<size_t, ForbiddenTag>> sites;
                for (size_t k = 0; k + 1 < w.size(); ++k)
                    if (auto t = classify_pair(*ctx_, w[k], w[k + 1])) sites.push_back({k, *t});
                if (sites.empty()) return std::nullopt;
                return sites[rng_() % sites.size()];
            }
        }
        return std::nullopt;
    }

    /// The element the two-atom word `ab` equals in the algebra. Derived from
    /// R1/R2 (S1), R4 (S2, S5), R3 (S3) and R5 (S4).
    const Element& pair_replacement(Atom a, Atom b, ForbiddenTag tag) const {
        int64_t key = int64_t(a) * ctx_->num_atoms() + b;
        auto it = pair_cache_.find(key);
        if (it != pair_cache_.end()) return it->second;

        const GroupCtx& ctx = *ctx_;
        Element repl(ctx);
        switch (tag) {
            case ForbiddenTag::S1: {
                int i = ctx.atom_tau_index(a), j = ctx.atom_tau_index(b);
                if (i == j) {
                    if (ctx.p() == 3) repl -= kernel_complement_sum(ctx, coordinate_hom(ctx, i));
                } else { // j < i
                    repl.add_term(Word{b, a}, -1);
                    if (ctx.p() == 3) {
                        // gamma side fixed by tau-linearity and the square rule
                        Homomorphism fi = coordinate_hom(ctx, i), fj = coordinate_hom(ctx, j);
                        repl -= kernel_complement_sum(ctx, hom_sum(ctx, fi, fj));
                        repl += kernel_complement_sum(ctx, fi);
                        repl += kernel_complement_sum(ctx, fj);
                    }
                }
                break;
            }
            case ForbiddenTag::S2:
                repl.add_term(Word{b, a}, 1);
                break;
            case ForbiddenTag::S3: {
                // gamma_{Y_m} tau_m = tau_m S - sum_{X != Y_m} gamma_X tau_m,
                // with S the kernel-complement sum of phi_m (rearranged R3).
                int m = ctx.atom_tau_index(b);
                for (const Line& x : lines_not_in_kernel(ctx, coordinate_hom(ctx, m))) {
                    Atom g = ctx.gamma_atom(x);
                    repl.add_term(Word{b, g}, 1);
                    if (g != a) repl.add_term(Word{g, b}, -1);
                }
                break;
            }
            case ForbiddenTag::S4: {
                // gamma_X gamma_Y = gamma_Y gamma_X
                //   + sum_c (gamma_{X_c} gamma_X - gamma_X gamma_{X_c}),
                // X_c = <x + c y>, from R5 with Q = <X, Y>.
                const Line& x = ctx.atom_line(a);
                const Line& y = ctx.atom_line(b);
                repl.add_term(Word{b, a}, 1);
                for (int32_t c = 1; c < ctx.p(); ++c) {
                    Vector v(ctx.r());
                    for (int j = 0; j < ctx.r(); ++j)
                        v[j] = ctx.fp().add(x.rep[j], ctx.fp().mul(c, y.rep[j]));
                    Atom gc = ctx.gamma_atom(canonical_line(ctx, v));
                    repl.add_term(Word{gc, a}, 1);
                    repl.add_term(Word{a, gc}, -1);
                }
                break;
            }
            case ForbiddenTag::S5: {
                // gamma_X tau_l = tau_l gamma_X
                //   + (alpha/beta) (gamma_X tau_m - tau_m gamma_X),
                // m = pos X, alpha = phi_l(x), beta = phi_m(x) = 1 for the
                // canonical representative. From R4 with (i, j) = (l, m).
                const Line& x = ctx.atom_line(a);
                int l = ctx.atom_tau_index(b), m = x.position;
                repl.add_term(Word{b, a}, 1);
                int32_t alpha = x.rep[l - 1];
                if (alpha != 0) {
                    Atom tm = ctx.tau_atom(m);
                    repl.add_term(Word{a, tm}, alpha);
                    repl.add_term(Word{tm, a}, ctx.fp().neg(alpha));
                }
                break;
            }
        }
        return pair_cache_.emplace(key, std::move(repl)).first->second;
    }
};

// --- structured check reports ---

struct CheckFailure {
    std::string subject;
    std::string detail;
};

struct CheckReport {
    bool ok = true;
    size_t checked = 0;
    std::vector<CheckFailure> failures;

    void fail(std::string subject, std::string detail) {
        ok = false;
        failures.push_back({std::move(subject), std::move(detail)});
    }
};

/// Reduces every generated relation instance; each must hit zero exactly.
inline CheckReport check_relations(const GroupCtx& ctx, uint64_t fuel = kDefaultFuel) {
    CheckReport report;
    Rewriter rw(ctx);
    for (const RelationInstance& rel : relation_instances(ctx)) {
        ++report.checked;
        try {
            Element nf = rw.normal_form(rel.element, fuel);
            if (!nf.is_zero())
                report.fail(rel.id, "normal form is nonzero: " + format_element(nf));
        } catch (const FuelExhausted& e) {
            report.fail(rel.id, e.what());
        }
    }
    return report;
}

namespace detail {
// Deterministic random word of the exact requested degree.
inline Word random_word(const GroupCtx& ctx, int degree, std::mt19937_64& rng) {
    Word w;
    int remaining = degree;
    while (remaining > 0) {
        if (remaining == 1) {
            w.push_back(ctx.tau_atom(1 + int(rng() % ctx.r())));
            remaining -= 1;
        } else {
            int32_t a = int32_t(rng() % ctx.num_atoms());
            w.push_back(a);
            remaining -= ctx.atom_degree(a);
        }
    }
    return w;
}
} // namespace detail

/// Reduces seeded random words under the three strategies and requires
/// identical results, idempotence and degree preservation. This is the
/// empirical stand-in for confluence; uniqueness of the reduced form is a
/// theorem, not an assumption of the engine.
inline CheckReport check_confluence(const GroupCtx& ctx, size_t sample_count, int max_degree,
                                    uint64_t seed, uint64_t fuel = kDefaultFuel) {
    CheckReport report;
    Rewriter left(ctx, Strategy::Leftmost);
    Rewriter right(ctx, Strategy::Rightmost);
    Rewriter random(ctx, Strategy::RandomSite, seed);
    std::mt19937_64 rng(seed);
    for (size_t k = 0; k < sample_count; ++k) {
        int degree = 1 + int(rng() % uint64_t(max_degree));
        Word w = detail::random_word(ctx, degree, rng);
        ++report.checked;
        std::string wtxt = format_word(ctx, w);
        try {
            Element a = left.word_normal_form(w, fuel);
            Element b = right.word_normal_form(w, fuel);
            random.reseed(seed ^ (k * 0x9e3779b97f4a7c15ull));
            Element c = random.word_normal_form(w, fuel);
            if (!(a == b))
                report.fail(wtxt, "leftmost and rightmost reductions disagree");
            if (!(a == c))
                report.fail(wtxt, "leftmost and random-site reductions disagree");
            if (!(left.normal_form(a, fuel) == a)) report.fail(wtxt, "normal form not idempotent");
            for (const auto& [nw, nc] : a.terms()) {
                if (word_degree(ctx, nw) != degree) {
                    report.fail(wtxt, "degree not preserved");
                    break;
                }
                if (!is_admissible(ctx, nw)) {
                    report.fail(wtxt, "support contains a non-admissible word");
                    break;
                }
            }
        } catch (const FuelExhausted& e) {
            report.fail(wtxt, e.what());
        }
    }
    return report;
}

} // namespace extalg
