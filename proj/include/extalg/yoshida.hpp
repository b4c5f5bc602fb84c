#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "extalg/fpmat.hpp"
#include "extalg/group.hpp"

namespace extalg {

struct SizeGuard : std::domain_error {
    using std::domain_error::domain_error;
};
struct InternalCheckFailed : std::logic_error {
    using std::logic_error::logic_error;
};
struct NotNilpotent : std::logic_error {
    using std::logic_error::logic_error;
};

/// A subgroup of (C_p)^r as the reduced row echelon basis of its F_p-span.
/// The RREF is the unique representative of the subspace; rank 0 is the
/// trivial subgroup.
struct Subgroup {
    FpMat basis; // rank x r, RREF rows

    int rank() const { return basis.rows(); }

    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.basis == b.basis; }
    friend bool operator<(const Subgroup& a, const Subgroup& b) {
        if (a.rank() != b.rank()) return a.rank() < b.rank();
        return a.basis.flat() < b.basis.flat();
    }
};

inline void check_size_guard(const GroupCtx& ctx, bool guard_override) {
    if (guard_override) return;
    int64_t order = 1;
    for (int j = 0; j < ctx.r(); ++j) order *= ctx.p();
    if (ctx.r() > 3 || order > 125)
        throw SizeGuard("group of order " + std::to_string(order) +
                        " exceeds the oracle default guard (r <= 3 and p^r <= 125); "
                        "pass guard_override to force");
}

/// Every subgroup (= subspace), ordered by rank then lexicographic RREF.
inline std::vector<Subgroup> all_subgroups(const GroupCtx& ctx, bool guard_override = false) {
    check_size_guard(ctx, guard_override);
    const int r = ctx.r(), p = ctx.p();
    std::vector<Subgroup> out;
    out.push_back(Subgroup{FpMat(p, 0, r)});

    // enumerate RREFs of each rank: pivot column sets, then free entries
    for (int s = 1; s <= r; ++s) {
        std::vector<int> piv(s);
        for (int i = 0; i < s; ++i) piv[i] = i;
        auto next_combination = [&]() {
            int i = s - 1;
            while (i >= 0 && piv[i] == r - s + i) --i;
            if (i < 0) return false;
            ++piv[i];
            for (int j = i + 1; j < s; ++j) piv[j] = piv[j - 1] + 1;
            return true;
        };
        do {
            // free positions: (row, col) with col > piv[row] and col not a pivot
            std::vector<std::pair<int, int>> free_pos;
            std::vector<bool> is_piv(r, false);
            for (int c : piv) is_piv[c] = true;
            for (int i = 0; i < s; ++i)
                for (int c = piv[i] + 1; c < r; ++c)
                    if (!is_piv[c]) free_pos.push_back({i, c});
            std::vector<int32_t> val(free_pos.size(), 0);
            while (true) {
                FpMat m(p, s, r);
                for (int i = 0; i < s; ++i) m.at(i, piv[i]) = 1;
                for (size_t k = 0; k < free_pos.size(); ++k)
                    m.at(free_pos[k].first, free_pos[k].second) = val[k];
                out.push_back(Subgroup{std::move(m)});
                int k = int(free_pos.size()) - 1;
                while (k >= 0 && val[k] == p - 1) val[k--] = 0;
                if (k < 0) break;
                ++val[k];
            }
        } while (next_combination());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The permutation module k[G/H]: canonical coset representatives (pivot
/// coordinates of H zeroed out) in lex order, plus the permutation action of
/// the r standard generators.
struct PermModule {
    Subgroup H;
    std::vector<Vector> cosets;
    std::vector<FpMat> gen_action; // column convention: v -> action * v

    int dim() const { return int(cosets.size()); }
};

namespace detail {

inline Vector coset_rep(const GroupCtx& ctx, const Subgroup& h, Vector v) {
    // eliminate the pivot coordinates using the RREF rows of h
    const Fp& fp = ctx.fp();
    for (int i = 0; i < h.basis.rows(); ++i) {
        int lead = -1;
        for (int j = 0; j < ctx.r(); ++j)
            if (h.basis.at(i, j) != 0) {
                lead = j;
                break;
            }
        int32_t f = v[lead];
        if (f == 0) continue;
        for (int j = 0; j < ctx.r(); ++j) v[j] = fp.sub(v[j], fp.mul(f, h.basis.at(i, j)));
    }
    return v;
}

} // namespace detail

inline PermModule perm_module(const GroupCtx& ctx, const Subgroup& h) {
    PermModule m{h, {}, {}};
    const int r = ctx.r(), p = ctx.p();
    int64_t total = 1;
    for (int j = 0; j < r; ++j) total *= p;
    std::map<Vector, int> index;
    for (int64_t code = 0; code < total; ++code) {
        Vector v(r);
        int64_t c = code;
        for (int j = r - 1; j >= 0; --j) {
            v[j] = int32_t(c % p);
            c /= p;
        }
        Vector rep = detail::coset_rep(ctx, h, v);
        if (index.emplace(rep, 0).second) m.cosets.push_back(rep);
    }
    std::sort(m.cosets.begin(), m.cosets.end());
    for (size_t i = 0; i < m.cosets.size(); ++i) index[m.cosets[i]] = int(i);

    for (int g = 0; g < r; ++g) {
        FpMat a(p, m.dim(), m.dim());
        for (int j = 0; j < m.dim(); ++j) {
            Vector moved = m.cosets[j];
            moved[g] = ctx.fp().add(moved[g], 1);
            a.at(index.at(detail::coset_rep(ctx, h, moved)), j) = 1;
        }
        m.gen_action.push_back(std::move(a));
    }
    return m;
}

/// The space of kG-maps k[G/H] -> k[G/K], as concrete matrices solving the
/// equivariance system M rho_H(g) = rho_K(g) M over the r generators. Each
/// basis matrix has a defining 1 at flat position leads[k], so coordinates in
/// this basis are read off those positions.
struct HomSpace {
    int src = 0, dst = 0; // object indices
    std::vector<FpMat> basis;
    std::vector<int> leads;

    int dim() const { return int(basis.size()); }
};

inline HomSpace hom_space(const GroupCtx& ctx, const PermModule& src, const PermModule& dst) {
    const int ds = src.dim(), dd = dst.dim();
    // unknowns: M(i, j) flattened as i * ds + j
    FpMat sys(ctx.p(), ctx.r() * dd * ds, dd * ds);
    int row = 0;
    for (int g = 0; g < ctx.r(); ++g) {
        const FpMat& Ps = src.gen_action[g];
        const FpMat& Pd = dst.gen_action[g];
        for (int i = 0; i < dd; ++i)
            for (int j = 0; j < ds; ++j) {
                // (M Ps - Pd M)(i, j) = sum_k M(i,k) Ps(k,j) - Pd(i,k) M(k,j)
                for (int k = 0; k < ds; ++k)
                    if (Ps.at(k, j) != 0)
                        sys.at(row, i * ds + k) =
                            ctx.fp().add(sys.at(row, i * ds + k), Ps.at(k, j));
                for (int k = 0; k < dd; ++k)
                    if (Pd.at(i, k) != 0)
                        sys.at(row, k * ds + j) =
                            ctx.fp().sub(sys.at(row, k * ds + j), Pd.at(i, k));
                ++row;
            }
    }
    Nullspace ns = nullspace(std::move(sys));
    HomSpace hs;
    hs.leads = ns.leads;
    for (int k = 0; k < ns.basis.rows(); ++k) {
        FpMat m(ctx.p(), dd, ds);
        for (int i = 0; i < dd; ++i)
            for (int j = 0; j < ds; ++j) m.at(i, j) = ns.basis.at(k, i * ds + j);
        hs.basis.push_back(std::move(m));
    }
    return hs;
}

/// The endomorphism algebra of the direct sum of all transitive permutation
/// modules: objects are the subgroups, hom blocks are solved equivariant
/// matrix spaces, composition is matrix product re-expressed in block
/// coordinates. Module categories over it realize cohomological Mackey
/// functors, which is all the oracle needs.
class YoshidaAlgebra {
public:
    YoshidaAlgebra(GroupCtx&&, bool = false) = delete; // must outlive the algebra
    explicit YoshidaAlgebra(const GroupCtx& ctx, bool guard_override = false)
        : ctx_(&ctx), objects_(all_subgroups(ctx, guard_override)) {
        const int n = num_objects();
        for (const Subgroup& h : objects_) modules_.push_back(perm_module(ctx, h));
        blocks_.resize(size_t(n) * n);
        block_offset_.assign(size_t(n) * n, 0);
        int offset = 0;
        for (int dst = 0; dst < n; ++dst)
            for (int src = 0; src < n; ++src) {
                HomSpace hs = hom_space(ctx, modules_[src], modules_[dst]);
                hs.src = src;
                hs.dst = dst;
                block_offset_[size_t(dst) * n + src] = offset;
                offset += hs.dim();
                blocks_[size_t(dst) * n + src] = std::move(hs);
                // cross-check the double-coset dimension |G| / |H K|
                if (block(dst, src).dim() != expected_hom_dim(src, dst))
                    throw InternalCheckFailed("hom space dimension disagrees with |G|/|HK|");
            }
        dim_ = offset;
        basis_ref_.reserve(dim_);
        for (int dst = 0; dst < n; ++dst)
            for (int src = 0; src < n; ++src)
                for (int k = 0; k < block(dst, src).dim(); ++k)
                    basis_ref_.push_back({dst, src, k});
    }

    const GroupCtx& ctx() const { return *ctx_; }
    int num_objects() const { return int(objects_.size()); }
    const std::vector<Subgroup>& objects() const { return objects_; }
    const PermModule& module(int obj) const { return modules_.at(obj); }
    const HomSpace& block(int dst, int src) const {
        return blocks_.at(size_t(dst) * num_objects() + src);
    }
    int block_offset(int dst, int src) const {
        return block_offset_.at(size_t(dst) * num_objects() + src);
    }
    int dim() const { return dim_; }

    struct BasisRef {
        int dst, src, k;
    };
    const BasisRef& basis_ref(int global) const { return basis_ref_.at(global); }
    const FpMat& basis_matrix(int global) const {
        const BasisRef& ref = basis_ref_.at(global);
        return block(ref.dst, ref.src).basis[ref.k];
    }

    int64_t expected_hom_dim(int src, int dst) const {
        FpMat stacked(ctx_->p(), objects_[src].rank() + objects_[dst].rank(), ctx_->r());
        int row = 0;
        for (const Subgroup* s : {&objects_[src], &objects_[dst]})
            for (int i = 0; i < s->basis.rows(); ++i, ++row)
                for (int j = 0; j < ctx_->r(); ++j) stacked.at(row, j) = s->basis.at(i, j);
        int rank_hk = rref(stacked);
        int64_t d = 1;
        for (int j = 0; j < ctx_->r() - rank_hk; ++j) d *= ctx_->p();
        return d;
    }

    /// Index of the trivial subgroup among the objects (always 0: rank sorts first).
    int trivial_object() const { return 0; }

    /// Coordinates (global, sparse) of the identity of object Q.
    std::vector<std::pair<int, int32_t>> identity_coords(int obj) const {
        return coords_in_block(obj, obj, FpMat::identity(ctx_->p(), modules_[obj].dim()));
    }

    /// Expresses a matrix living in hom block (dst, src) in global basis
    /// coordinates; verifies the expansion reproduces the matrix.
    std::vector<std::pair<int, int32_t>> coords_in_block(int dst, int src, const FpMat& m) const {
        const HomSpace& hs = block(dst, src);
        std::vector<std::pair<int, int32_t>> out;
        FpMat rebuilt(ctx_->p(), m.rows(), m.cols());
        for (int k = 0; k < hs.dim(); ++k) {
            int32_t c = m.flat()[hs.leads[k]];
            if (c == 0) continue;
            out.push_back({block_offset(dst, src) + k, c});
            rebuilt = matadd(rebuilt, hs.basis[k], c);
        }
        if (!(rebuilt == m))
            throw InternalCheckFailed("matrix does not lie in its hom block span");
        return out;
    }

    /// Composition of basis elements: global index s after t (s: B->C applied
    /// to the output of t: A->B); zero when the inner objects differ.
    const std::vector<std::pair<int, int32_t>>& compose(int s, int t) const {
        int64_t key = int64_t(s) * dim_ + t;
        auto it = comp_cache_.find(key);
        if (it != comp_cache_.end()) return it->second;
        const BasisRef& rs = basis_ref_[s];
        const BasisRef& rt = basis_ref_[t];
        std::vector<std::pair<int, int32_t>> coords;
        if (rs.src == rt.dst)
            coords = coords_in_block(rs.dst, rt.src,
                                     matmul(basis_matrix(s), basis_matrix(t)));
        return comp_cache_.emplace(key, std::move(coords)).first->second;
    }

private:
    const GroupCtx* ctx_;
    std::vector<Subgroup> objects_;
    std::vector<PermModule> modules_;
    std::vector<HomSpace> blocks_;
    std::vector<int> block_offset_;
    std::vector<BasisRef> basis_ref_;
    int dim_ = 0;
    mutable std::unordered_map<int64_t, std::vector<std::pair<int, int32_t>>> comp_cache_;
};

} // namespace extalg
