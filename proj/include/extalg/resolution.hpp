#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "extalg/yoshida.hpp"

namespace extalg {

/// The simple module S_Q: one-dimensional, supported at object Q, with the
/// diagonal block acting through the character lambda (the common column sum
/// of an equivariant endomorphism of k[G/Q]).
struct SimpleModule {
    int object;
    std::vector<int32_t> lambda; // value on each (Q,Q)-block basis element
};

/// Builds S_Q and verifies its support from first principles: for every H,
/// the norm of G/Q acting on the dual of the Brauer quotient k[(G/H)^Q] has
/// rank 1 when H = Q and rank 0 otherwise.
inline SimpleModule simple_S(const YoshidaAlgebra& A, int q) {
    const GroupCtx& ctx = A.ctx();
    const Subgroup& Q = A.objects()[q];
    const PermModule& transversal = A.module(q); // coset reps of Q in G

    for (int h = 0; h < A.num_objects(); ++h) {
        const PermModule& mod = A.module(h);
        // Q-fixed cosets span the Brauer quotient of a permutation module
        std::vector<int> fixed;
        std::map<Vector, int> index;
        for (int j = 0; j < mod.dim(); ++j) index[mod.cosets[j]] = j;
        for (int j = 0; j < mod.dim(); ++j) {
            bool fix = true;
            for (int i = 0; i < Q.basis.rows() && fix; ++i) {
                Vector moved = mod.cosets[j];
                for (int c = 0; c < ctx.r(); ++c)
                    moved[c] = ctx.fp().add(moved[c], Q.basis.at(i, c));
                fix = detail::coset_rep(ctx, mod.H, moved) == mod.cosets[j];
            }
            if (fix) fixed.push_back(j);
        }
        std::map<int, int> fixed_index;
        for (size_t k = 0; k < fixed.size(); ++k) fixed_index[fixed[k]] = int(k);

        FpMat norm(ctx.p(), int(fixed.size()), int(fixed.size()));
        for (const Vector& g : transversal.cosets) {
            for (size_t k = 0; k < fixed.size(); ++k) {
                Vector moved = mod.cosets[fixed[k]];
                for (int c = 0; c < ctx.r(); ++c) moved[c] = ctx.fp().add(moved[c], g[c]);
                int dst = index.at(detail::coset_rep(ctx, mod.H, moved));
                auto it = fixed_index.find(dst);
                if (it == fixed_index.end())
                    throw InternalCheckFailed("norm left the Q-fixed subspace");
                norm.at(it->second, int(k)) =
                    ctx.fp().add(norm.at(it->second, int(k)), 1);
            }
        }
        int rank = rank_of(norm);
        if (rank != (h == q ? 1 : 0))
            throw InternalCheckFailed("simple functor support check failed at object " +
                                      std::to_string(h));
    }

    SimpleModule s{q, {}};
    for (const FpMat& m : A.block(q, q).basis) {
        int32_t sum0 = 0;
        for (int i = 0; i < m.rows(); ++i) sum0 = ctx.fp().add(sum0, m.at(i, 0));
        for (int j = 1; j < m.cols(); ++j) {
            int32_t sj = 0;
            for (int i = 0; i < m.rows(); ++i) sj = ctx.fp().add(sj, m.at(i, j));
            if (sj != sum0)
                throw InternalCheckFailed("endomorphism column sums are not constant");
        }
        s.lambda.push_back(sum0);
    }
    return s;
}

using SparseVec = std::vector<std::pair<int, int32_t>>;

/// rad(A) = all off-diagonal blocks plus the augmentation kernel of each
/// local diagonal block; the simples' annihilators cut out exactly this.
/// leads[k] is a global coordinate where basis[k] is 1 and every other
/// radical basis element vanishes.
struct RadicalInfo {
    std::vector<SparseVec> basis; // sparse global coordinates
    std::vector<int> leads;
    int nilpotency = 0;           // least m with rad^m = 0
};

namespace detail {

inline SparseVec sparse_product(const YoshidaAlgebra& A, const SparseVec& a, const SparseVec& b) {
    std::map<int, int64_t> acc;
    for (const auto& [s, cs] : a)
        for (const auto& [t, ct] : b)
            for (const auto& [u, cu] : A.compose(s, t)) acc[u] += int64_t(cs) * ct * cu;
    SparseVec out;
    for (const auto& [u, c] : acc) {
        int32_t cn = A.ctx().fp().norm(c);
        if (cn != 0) out.push_back({u, cn});
    }
    return out;
}

} // namespace detail

inline RadicalInfo radical(const YoshidaAlgebra& A) {
    RadicalInfo rad;
    const int n = A.num_objects();
    std::vector<SimpleModule> simples;
    for (int q = 0; q < n; ++q) simples.push_back(simple_S(A, q));

    for (int g = 0; g < A.dim(); ++g) {
        const auto& ref = A.basis_ref(g);
        if (ref.dst != ref.src) {
            rad.basis.push_back({{g, 1}});
            rad.leads.push_back(g);
        }
    }
    for (int q = 0; q < n; ++q) {
        const auto& lambda = simples[q].lambda;
        FpMat row(A.ctx().p(), 1, int(lambda.size()));
        for (size_t k = 0; k < lambda.size(); ++k) row.at(0, int(k)) = lambda[k];
        Nullspace ns = nullspace(std::move(row));
        for (int k = 0; k < ns.basis.rows(); ++k) {
            SparseVec v;
            for (int j = 0; j < ns.basis.cols(); ++j)
                if (ns.basis.at(k, j) != 0)
                    v.push_back({A.block_offset(q, q) + j, ns.basis.at(k, j)});
            rad.basis.push_back(std::move(v));
            rad.leads.push_back(A.block_offset(q, q) + ns.leads[k]);
        }
    }

    // nilpotency: iterate rad^m until the span dies
    std::vector<SparseVec> power = rad.basis;
    rad.nilpotency = 1;
    while (!power.empty()) {
        if (rad.nilpotency > A.dim()) throw NotNilpotent("radical powers do not vanish");
        Echelon ech(A.ctx().p(), A.dim());
        std::vector<SparseVec> next;
        for (const SparseVec& r : rad.basis) {
            for (const SparseVec& v : power) {
                SparseVec prod = detail::sparse_product(A, r, v);
                if (prod.empty()) continue;
                std::vector<int32_t> dense(A.dim(), 0);
                for (const auto& [u, c] : prod) dense[u] = c;
                if (ech.insert(std::move(dense))) next.push_back(std::move(prod));
            }
        }
        power = std::move(next);
        ++rad.nilpotency;
    }
    return rad;
}

/// One stage of the minimal resolution: multiplicity of each projective
/// A e_Q in P_n, plus the dimension bookkeeping of the stage.
struct ResolutionStage {
    std::vector<int> mult;
    int dim_p = 0;
    int dim_k = 0; // dimension of the syzygy ker(P_n -> K_{n-1})
};

struct Resolution {
    std::vector<ResolutionStage> stages;
};

namespace detail {

/// A submodule of a finite direct sum of projectives A e_{Q_j}, as echelon
/// basis rows over the ambient coordinates (slot-major, A-coordinates per
/// slot). `leads` are the defining ambient coordinates of the rows, so
/// membership coordinates are gathered, not solved.
struct ModuleSpace {
    std::vector<int> slot_obj;
    std::vector<std::vector<int32_t>> basis;
    std::vector<int> leads;

    int dim() const { return int(basis.size()); }
    int ambient(int alg_dim) const { return int(slot_obj.size()) * alg_dim; }
};

inline void accumulate_left(const YoshidaAlgebra& A, const SparseVec& rho,
                            const std::vector<int32_t>& v, std::vector<int32_t>& out,
                            int32_t scale = 1) {
    const int D = A.dim();
    const int slots = int(v.size()) / D;
    for (const auto& [s, cs] : rho) {
        const int need_dst = A.basis_ref(s).src;
        for (int j = 0; j < slots; ++j) {
            const int base = j * D;
            for (int t = 0; t < D; ++t) {
                int32_t vt = v[base + t];
                if (vt == 0 || A.basis_ref(t).dst != need_dst) continue;
                int64_t f = int64_t(cs) * vt * scale;
                for (const auto& [u, cu] : A.compose(s, t))
                    out[base + u] = A.ctx().fp().norm(out[base + u] + f * cu);
            }
        }
    }
}

inline std::vector<int32_t> gather_coords(const ModuleSpace& mod, const std::vector<int32_t>& v) {
    std::vector<int32_t> out(mod.dim());
    for (int k = 0; k < mod.dim(); ++k) out[k] = v[mod.leads[k]];
    return out;
}

} // namespace detail

/// Minimal projective resolution of S_1 (the simple at the trivial subgroup),
/// built stage by stage: P_{n+1} is the projective cover of the syzygy K_n,
/// with multiplicities read off e_Q (K_n / rad K_n).
inline Resolution minimal_resolution(const YoshidaAlgebra& A, int n_max,
                                     const RadicalInfo& rad) {
    const int D = A.dim();
    const int triv = A.trivial_object();
    Resolution res;

    auto proj_dim = [&](int q) {
        int d = 0;
        for (int k = 0; k < A.num_objects(); ++k) d += A.block(k, q).dim();
        return d;
    };

    // P_0 = A e_1; K_0 = rad e_1, spanned by the radical basis elements
    // supported on source-object 1 (they are coordinate-disjoint by block).
    detail::ModuleSpace K;
    K.slot_obj = {triv};
    for (size_t i = 0; i < rad.basis.size(); ++i) {
        const SparseVec& r = rad.basis[i];
        if (A.basis_ref(r.front().first).src != triv) continue;
        std::vector<int32_t> v(D, 0);
        for (const auto& [u, c] : r) v[u] = c;
        K.basis.push_back(std::move(v));
        K.leads.push_back(rad.leads[i]);
    }
    {
        ResolutionStage st;
        st.mult.assign(A.num_objects(), 0);
        st.mult[triv] = 1;
        st.dim_p = proj_dim(triv);
        st.dim_k = K.dim();
        if (st.dim_p != st.dim_k + 1)
            throw InternalCheckFailed("P_0 bookkeeping failed");
        res.stages.push_back(std::move(st));
    }

    for (int n = 1; n <= n_max; ++n) {
        // rad K in K-coordinates
        Echelon rad_ech(A.ctx().p(), K.dim());
        std::vector<int32_t> prod(K.ambient(D));
        for (const auto& v : K.basis) {
            for (const SparseVec& r : rad.basis) {
                std::fill(prod.begin(), prod.end(), 0);
                detail::accumulate_left(A, r, v, prod);
                rad_ech.insert(detail::gather_coords(K, prod));
            }
        }

        // top multiplicities and lifted generators per object
        std::vector<int> mult(A.num_objects(), 0);
        std::vector<std::pair<int, std::vector<int32_t>>> lifts; // (object, vector)
        {
            Echelon ech = rad_ech;
            for (int q = 0; q < A.num_objects(); ++q) {
                for (const auto& v : K.basis) {
                    std::vector<int32_t> w(v.size(), 0);
                    for (size_t idx = 0; idx < v.size(); ++idx)
                        if (v[idx] != 0 && A.basis_ref(int(idx % size_t(D))).dst == q)
                            w[idx] = v[idx];
                    if (ech.insert(detail::gather_coords(K, w))) {
                        ++mult[q];
                        lifts.push_back({q, std::move(w)});
                    }
                }
            }
        }

        // P_{n} = sum of A e_q with the found multiplicities; its map to K
        // sends the unit of each slot to the lift.
        detail::ModuleSpace P;
        int dim_p = 0;
        for (const auto& [q, w] : lifts) {
            P.slot_obj.push_back(q);
            dim_p += proj_dim(q);
        }

        std::vector<std::vector<int32_t>> images; // rows: K-coords of images
        std::vector<std::pair<int, int>> domain;  // (slot, global basis index)
        std::vector<int32_t> img(K.ambient(D));
        for (size_t j = 0; j < lifts.size(); ++j) {
            for (int s = 0; s < D; ++s) {
                if (A.basis_ref(s).src != lifts[j].first) continue;
                std::fill(img.begin(), img.end(), 0);
                detail::accumulate_left(A, {{s, 1}}, lifts[j].second, img);
                images.push_back(detail::gather_coords(K, img));
                domain.push_back({int(j), s});
            }
        }
        if (int(images.size()) != dim_p)
            throw InternalCheckFailed("projective cover domain dimension mismatch");

        // surjectivity of the cover (Nakayama) and the kernel
        FpMat m(A.ctx().p(), dim_p, K.dim());
        for (int i = 0; i < dim_p; ++i)
            for (int j = 0; j < K.dim(); ++j) m.at(i, j) = images[i][j];
        if (rank_of(m) != K.dim())
            throw InternalCheckFailed("projective cover is not surjective onto the syzygy");

        Nullspace ker = nullspace(m.transposed());

        detail::ModuleSpace K_next;
        K_next.slot_obj = P.slot_obj;
        for (int k = 0; k < ker.basis.rows(); ++k) {
            std::vector<int32_t> v(size_t(P.slot_obj.size()) * D, 0);
            for (int c = 0; c < ker.basis.cols(); ++c)
                if (ker.basis.at(k, c) != 0)
                    v[size_t(domain[c].first) * D + domain[c].second] = ker.basis.at(k, c);
            K_next.basis.push_back(std::move(v));
            K_next.leads.push_back(int(size_t(domain[ker.leads[k]].first) * D +
                                       domain[ker.leads[k]].second));
        }

        ResolutionStage st;
        st.mult = mult;
        st.dim_p = dim_p;
        st.dim_k = K_next.dim();
        if (st.dim_p != K.dim() + st.dim_k)
            throw InternalCheckFailed("rank-nullity bookkeeping failed at stage " +
                                      std::to_string(n));
        res.stages.push_back(std::move(st));
        K = std::move(K_next);
    }
    return res;
}

inline void check_ext_guard(const GroupCtx& ctx, int n_max, bool guard_override) {
    if (guard_override) return;
    check_size_guard(ctx, false);
    int cap = ctx.r() == 1 ? 8 : (ctx.r() == 2 ? 5 : 0);
    if (n_max > cap)
        throw SizeGuard("ext_dims default guard allows n <= " + std::to_string(cap) +
                        " at rank " + std::to_string(ctx.r()) +
                        "; pass guard_override to force");
}

/// dim Ext^n(S_1, S_1) for 0 <= n <= n_max, read off the multiplicity of
/// A e_1 in the minimal resolution.
inline std::vector<int> ext_dims(const GroupCtx& ctx, int n_max, bool guard_override = false) {
    check_ext_guard(ctx, n_max, guard_override);
    YoshidaAlgebra A(ctx, guard_override);
    RadicalInfo rad = radical(A);
    Resolution res = minimal_resolution(A, n_max, rad);
    std::vector<int> out;
    for (const auto& st : res.stages) out.push_back(st.mult[A.trivial_object()]);
    return out;
}

} // namespace extalg
