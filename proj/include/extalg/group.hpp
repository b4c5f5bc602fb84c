#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "extalg/fp.hpp"

namespace extalg {

struct UnsupportedPrime : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidRank : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ZeroVector : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct EqualLines : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ContextMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

/// A vector in F_p^r, coordinates in [0, p).
using Vector = std::vector<int32_t>;

/// An order-p subgroup of (C_p)^r, stored by its canonical generator: the
/// unique scalar multiple whose last nonzero coordinate is 1. Its position is
/// the (1-based) index of that coordinate.
struct Line {
    Vector rep;
    int position = 0;

    friend bool operator==(const Line& a, const Line& b) { return a.rep == b.rep; }
    friend bool operator<(const Line& a, const Line& b) {
        if (a.position != b.position) return a.position < b.position;
        return a.rep < b.rep;
    }
};

/// A rank-2 subgroup, stored as the two rows of the reduced row echelon form
/// of any spanning pair (unique per subgroup).
struct Plane {
    Vector b0, b1;

    friend bool operator==(const Plane& a, const Plane& b) {
        return a.b0 == b.b0 && a.b1 == b.b1;
    }
    friend bool operator<(const Plane& a, const Plane& b) {
        if (a.b0 != b.b0) return a.b0 < b.b0;
        return a.b1 < b.b1;
    }
};

/// An F_p-valued homomorphism (C_p)^r -> F_p, i.e. a covector.
struct Homomorphism {
    Vector covector;

    bool is_zero() const {
        return std::all_of(covector.begin(), covector.end(), [](int32_t c) { return c == 0; });
    }
    friend bool operator==(const Homomorphism& a, const Homomorphism& b) {
        return a.covector == b.covector;
    }
};

/// Immutable per-(p, r) context: field arithmetic, the line table in
/// (position, lex) order, and the atom encoding shared by all word-level
/// modules. Atom codes: [0, r) is tau_1..tau_r, [r, r + #lines) is gamma_X
/// with X the line at global index code - r.
class GroupCtx {
public:
    GroupCtx(int p, int r) : fp_{p}, r_(r) {
        if (p < 3 || !is_prime(p))
            throw UnsupportedPrime("p must be an odd prime, got " + std::to_string(p));
        if (r < 1) throw InvalidRank("rank must be >= 1, got " + std::to_string(r));
        pos_offset_.assign(r + 1, 0);
        for (int i = 1; i <= r; ++i) {
            pos_offset_[i - 1] = static_cast<int>(lines_.size());
            // reps (c_1, .., c_{i-1}, 1, 0, .., 0) in lex order
            Vector v(r, 0);
            v[i - 1] = 1;
            int free = i - 1;
            int64_t total = 1;
            for (int j = 0; j < free; ++j) total *= p;
            for (int64_t code = 0; code < total; ++code) {
                int64_t c = code;
                for (int j = free - 1; j >= 0; --j) {
                    v[j] = static_cast<int32_t>(c % p);
                    c /= p;
                }
                lines_.push_back(Line{v, i});
            }
        }
        pos_offset_[r] = static_cast<int>(lines_.size());
    }

    int p() const { return fp_.p; }
    int r() const { return r_; }
    const Fp& fp() const { return fp_; }

    bool same_as(const GroupCtx& o) const { return fp_.p == o.fp_.p && r_ == o.r_; }

    const std::vector<Line>& lines() const { return lines_; }
    int num_lines() const { return static_cast<int>(lines_.size()); }
    const Line& line(int idx) const { return lines_.at(idx); }

    /// Global index of a canonical line: position block offset plus the rank
    /// of its free coordinates read as a base-p number.
    int line_index(const Line& x) const {
        int i = x.position;
        int64_t code = 0;
        for (int j = 0; j < i - 1; ++j) code = code * fp_.p + x.rep[j];
        return pos_offset_[i - 1] + static_cast<int>(code);
    }

    // --- atom encoding ---
    int num_atoms() const { return r_ + num_lines(); }
    int32_t tau_atom(int i) const { return i - 1; }           // i in [1, r]
    int32_t gamma_atom(int line_idx) const { return r_ + line_idx; }
    int32_t gamma_atom(const Line& x) const { return r_ + line_index(x); }
    bool atom_is_tau(int32_t a) const { return a < r_; }
    int atom_tau_index(int32_t a) const { return a + 1; }     // 1-based
    const Line& atom_line(int32_t a) const { return lines_[a - r_]; }
    int atom_degree(int32_t a) const { return a < r_ ? 1 : 2; }
    int atom_position(int32_t a) const {
        return a < r_ ? a + 1 : lines_[a - r_].position;
    }

private:
    Fp fp_;
    int r_;
    std::vector<Line> lines_;
    std::vector<int> pos_offset_;
};

inline GroupCtx make_context(int p, int r) { return GroupCtx(p, r); }

inline Line canonical_line(const GroupCtx& ctx, const Vector& v) {
    if (static_cast<int>(v.size()) != ctx.r())
        throw std::invalid_argument("vector has wrong length");
    int last = -1;
    for (int j = 0; j < ctx.r(); ++j)
        if (ctx.fp().norm(v[j]) != 0) last = j;
    if (last < 0) throw ZeroVector("cannot form a line from the zero vector");
    int32_t s = ctx.fp().inv(ctx.fp().norm(v[last]));
    Vector rep(ctx.r(), 0);
    for (int j = 0; j <= last; ++j) rep[j] = ctx.fp().mul(ctx.fp().norm(v[j]), s);
    return Line{std::move(rep), last + 1};
}

inline int position(const Line& x) { return x.position; }

inline std::vector<Line> lines_by_position(const GroupCtx& ctx, int i) {
    if (i < 1 || i > ctx.r()) throw std::out_of_range("position out of range");
    std::vector<Line> out;
    for (const Line& x : ctx.lines())
        if (x.position == i) out.push_back(x);
    return out;
}

inline int apply_hom(const GroupCtx& ctx, const Homomorphism& phi, const Vector& v) {
    int64_t acc = 0;
    for (int j = 0; j < ctx.r(); ++j) acc += int64_t(phi.covector[j]) * v[j];
    return ctx.fp().norm(acc);
}

inline Homomorphism coordinate_hom(const GroupCtx& ctx, int i) {
    Vector c(ctx.r(), 0);
    c.at(i - 1) = 1;
    return Homomorphism{std::move(c)};
}

inline Homomorphism hom_sum(const GroupCtx& ctx, const Homomorphism& a, const Homomorphism& b) {
    Vector c(ctx.r());
    for (int j = 0; j < ctx.r(); ++j) c[j] = ctx.fp().add(a.covector[j], b.covector[j]);
    return Homomorphism{std::move(c)};
}

/// All lines X with phi(X) != 0, in global (position, lex) order. Empty for
/// phi = 0 (the corresponding summation is empty).
inline std::vector<Line> lines_not_in_kernel(const GroupCtx& ctx, const Homomorphism& phi) {
    std::vector<Line> out;
    for (const Line& x : ctx.lines())
        if (apply_hom(ctx, phi, x.rep) != 0) out.push_back(x);
    return out;
}

namespace detail {
// Row-reduce two independent vectors to the canonical RREF basis of their span.
inline Plane rref_pair(const GroupCtx& ctx, Vector u, Vector v) {
    const Fp& fp = ctx.fp();
    // leading index of u
    auto lead = [&](const Vector& w) {
        for (int j = 0; j < ctx.r(); ++j)
            if (w[j] != 0) return j;
        return ctx.r();
    };
    auto scale = [&](Vector& w, int32_t s) {
        for (auto& c : w) c = fp.mul(c, s);
    };
    auto axpy = [&](Vector& w, int32_t s, const Vector& z) {
        for (int j = 0; j < ctx.r(); ++j) w[j] = fp.add(w[j], fp.mul(s, z[j]));
    };
    int lu = lead(u), lv = lead(v);
    if (lu > lv) { std::swap(u, v); std::swap(lu, lv); }
    scale(u, fp.inv(u[lu]));
    if (lv == lu) {
        axpy(v, fp.neg(v[lu]), u);
        lv = lead(v);
    }
    if (lv >= ctx.r()) throw EqualLines("vectors span a single line, not a plane");
    scale(v, fp.inv(v[lv]));
    axpy(u, fp.neg(u[lv]), v);
    return Plane{std::move(u), std::move(v)};
}
} // namespace detail

inline Plane plane_span(const GroupCtx& ctx, const Line& x, const Line& y) {
    if (x == y) throw EqualLines("plane_span requires two distinct lines");
    return detail::rref_pair(ctx, x.rep, y.rep);
}

/// The p + 1 lines of a plane, in global (position, lex) order.
inline std::vector<Line> lines_of_plane(const GroupCtx& ctx, const Plane& q) {
    std::set<Line> seen;
    seen.insert(canonical_line(ctx, q.b0));
    const Fp& fp = ctx.fp();
    for (int32_t c = 0; c < ctx.p(); ++c) {
        Vector w(ctx.r());
        for (int j = 0; j < ctx.r(); ++j) w[j] = fp.add(q.b1[j], fp.mul(c, q.b0[j]));
        seen.insert(canonical_line(ctx, w));
    }
    return std::vector<Line>(seen.begin(), seen.end());
}

/// All rank-2 subgroups, deterministically ordered by their RREF basis.
inline std::vector<Plane> all_planes(const GroupCtx& ctx) {
    std::set<Plane> seen;
    const auto& ls = ctx.lines();
    for (size_t a = 0; a < ls.size(); ++a)
        for (size_t b = a + 1; b < ls.size(); ++b)
            seen.insert(plane_span(ctx, ls[a], ls[b]));
    return std::vector<Plane>(seen.begin(), seen.end());
}

inline std::string format_vector(const Vector& v) {
    std::string s = "[";
    for (size_t j = 0; j < v.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(v[j]);
    }
    return s + "]";
}

} // namespace extalg
