#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "extalg/group.hpp"

namespace extalg {

/// An atom code as defined by GroupCtx: tau_i or gamma_X.
using Atom = int32_t;

/// A word is a concatenation of atoms; the empty word is the unit.
using Word = std::vector<Atom>;

inline int word_degree(const GroupCtx& ctx, const Word& w) {
    int d = 0;
    for (Atom a : w) d += ctx.atom_degree(a);
    return d;
}

inline Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

/// Total order on words: degree first, then lexicographic on atom codes.
/// The degree of an atom is recovered from its code and the rank.
struct WordOrder {
    int r = 0;

    int degree(const Word& w) const {
        int d = 0;
        for (Atom a : w) d += (a < r ? 1 : 2);
        return d;
    }
    bool operator()(const Word& a, const Word& b) const {
        int da = degree(a), db = degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

struct WordHash {
    size_t operator()(const Word& w) const {
        size_t h = 1469598103934665603ull;
        for (Atom a : w) {
            h ^= static_cast<size_t>(a) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// A finitely supported F_p-linear combination of words. Coefficients are
/// kept nonzero and in [1, p); terms are ordered by (degree, word-lex).
/// The context must outlive every element built from it.
class Element {
public:
    using TermMap = std::map<Word, int32_t, WordOrder>;

    explicit Element(GroupCtx&&) = delete; // the context must outlive the element
    explicit Element(const GroupCtx& ctx) : ctx_(&ctx), terms_(WordOrder{ctx.r()}) {}

    static Element zero(const GroupCtx& ctx) { return Element(ctx); }
    static Element unit(const GroupCtx& ctx) { return from_word(ctx, Word{}, 1); }
    static Element from_word(const GroupCtx& ctx, const Word& w, int64_t c = 1) {
        Element e(ctx);
        e.add_term(w, c);
        return e;
    }

    const GroupCtx& ctx() const { return *ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t support_size() const { return terms_.size(); }

    void add_term(const Word& w, int64_t c) {
        int32_t cn = ctx_->fp().norm(c);
        if (cn == 0) return;
        auto [it, inserted] = terms_.emplace(w, cn);
        if (!inserted) {
            it->second = ctx_->fp().add(it->second, cn);
            if (it->second == 0) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        check_ctx(o);
        for (const auto& [w, c] : o.terms_) add_term(w, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        check_ctx(o);
        for (const auto& [w, c] : o.terms_) add_term(w, ctx_->fp().neg(c));
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }

    friend Element operator*(int64_t s, const Element& e) {
        Element out(*e.ctx_);
        int32_t sn = e.ctx_->fp().norm(s);
        if (sn == 0) return out;
        for (const auto& [w, c] : e.terms_) out.terms_.emplace(w, e.ctx_->fp().mul(sn, c));
        return out;
    }

    friend bool operator==(const Element& a, const Element& b) {
        return a.ctx_->same_as(*b.ctx_) && a.terms_ == b.terms_;
    }

    /// True if every term has the same degree d (vacuously true when zero).
    bool is_homogeneous(int* degree_out = nullptr) const {
        int d = -1;
        for (const auto& [w, c] : terms_) {
            int wd = word_degree(*ctx_, w);
            if (d < 0) d = wd;
            else if (wd != d) return false;
        }
        if (degree_out) *degree_out = d;
        return true;
    }

    void check_ctx(const Element& o) const {
        if (!ctx_->same_as(*o.ctx_))
            throw ContextMismatch("elements built over different (p, r) contexts");
    }

private:
    const GroupCtx* ctx_;
    TermMap terms_;
};

/// Concatenation product on the free algebra, extended bilinearly. No
/// reduction happens here.
inline Element mul_raw(const Element& a, const Element& b) {
    a.check_ctx(b);
    Element out(a.ctx());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms())
            out.add_term(concat(wa, wb), int64_t(ca) * cb);
    return out;
}

inline Element commutator_raw(const Element& a, const Element& b) {
    return mul_raw(a, b) - mul_raw(b, a);
}

/// Sum of gamma_X over all lines X not contained in Ker(phi).
inline Element kernel_complement_sum(const GroupCtx& ctx, const Homomorphism& phi) {
    Element e(ctx);
    for (const Line& x : lines_not_in_kernel(ctx, phi)) e.add_term(Word{ctx.gamma_atom(x)}, 1);
    return e;
}

inline Element tau_element(const GroupCtx& ctx, int i) {
    return Element::from_word(ctx, Word{ctx.tau_atom(i)}, 1);
}
inline Element gamma_element(const GroupCtx& ctx, const Line& x) {
    return Element::from_word(ctx, Word{ctx.gamma_atom(x)}, 1);
}

/// tau_phi expanded through linearity into sum(c_i tau_i).
inline Element tau_hom_element(const GroupCtx& ctx, const Homomorphism& phi) {
    Element e(ctx);
    for (int i = 1; i <= ctx.r(); ++i) {
        int32_t c = ctx.fp().norm(phi.covector[i - 1]);
        if (c != 0) e.add_term(Word{ctx.tau_atom(i)}, c);
    }
    return e;
}

} // namespace extalg
