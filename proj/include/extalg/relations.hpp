#pragma once

#include <string>
#include <vector>

#include "extalg/word.hpp"

namespace extalg {

/// One defining relation, stored in difference form: `element` must reduce
/// to zero in the quotient algebra. `family` is the rule family tag (R1..R5
/// for the finite presentation, L1..L4 for the homomorphism-indexed one).
struct RelationInstance {
    std::string family;
    std::string id;
    Element element;
};

namespace detail {

inline std::vector<Homomorphism> binary_hom_sample(const GroupCtx& ctx) {
    std::vector<Homomorphism> out;
    int64_t total = 1;
    for (int j = 0; j < ctx.r(); ++j) total *= 2;
    for (int64_t mask = 1; mask < total; ++mask) { // nonzero only
        Vector c(ctx.r(), 0);
        for (int j = 0; j < ctx.r(); ++j)
            if (mask >> j & 1) c[j] = 1;
        out.push_back(Homomorphism{std::move(c)});
    }
    return out;
}

inline std::string hom_id(const Homomorphism& phi) { return format_vector(phi.covector); }

} // namespace detail

/// All relation instances for the context, one Element per instance. The R
/// families give the finite presentation; the L families re-encode the
/// homomorphism-indexed presentation over the sample of {0,1}-coefficient
/// covectors, with tau_phi expanded through linearity. Both must reduce to
/// zero, which cross-checks that the two presentations agree.
inline std::vector<RelationInstance> relation_instances(const GroupCtx& ctx) {
    std::vector<RelationInstance> out;
    const int r = ctx.r();
    const bool p3 = ctx.p() == 3;

    auto sum_not_ker = [&](const Homomorphism& phi) { return kernel_complement_sum(ctx, phi); };

    // R1: tau_i^2 = 0 (p >= 5), or -sum_{X not<= Ker phi_i} gamma_X (p = 3)
    for (int i = 1; i <= r; ++i) {
        Element e = mul_raw(tau_element(ctx, i), tau_element(ctx, i));
        if (p3) e += sum_not_ker(coordinate_hom(ctx, i));
        out.push_back({"R1", "R1[i=" + std::to_string(i) + "]", e});
    }

    // R2 for j < i (j = i is R1 doubled). For p = 3 the gamma side is the one
    // forced by linearity of tau and the tau-square relation:
    //   tau_i tau_j + tau_j tau_i = tau_{phi_i+phi_j}^2 - tau_i^2 - tau_j^2.
    for (int i = 2; i <= r; ++i) {
        for (int j = 1; j < i; ++j) {
            Element ti = tau_element(ctx, i), tj = tau_element(ctx, j);
            Element e = mul_raw(ti, tj) + mul_raw(tj, ti);
            if (p3) {
                Homomorphism fi = coordinate_hom(ctx, i), fj = coordinate_hom(ctx, j);
                e += sum_not_ker(hom_sum(ctx, fi, fj));
                e -= sum_not_ker(fi);
                e -= sum_not_ker(fj);
            }
            out.push_back({"R2", "R2[i=" + std::to_string(i) + ",j=" + std::to_string(j) + "]", e});
        }
    }

    // R3: [tau_i, sum_{X not<= Ker phi_i} gamma_X] = 0
    for (int i = 1; i <= r; ++i) {
        Element e = commutator_raw(tau_element(ctx, i), sum_not_ker(coordinate_hom(ctx, i)));
        out.push_back({"R3", "R3[i=" + std::to_string(i) + "]", e});
    }

    // R4: [phi_j(x) tau_i - phi_i(x) tau_j, gamma_<x>] = 0 for i < j, one
    // canonical representative x per line (scaling x scales the relation).
    for (int i = 1; i <= r; ++i) {
        for (int j = i + 1; j <= r; ++j) {
            for (const Line& x : ctx.lines()) {
                int32_t a = x.rep[i - 1], b = x.rep[j - 1];
                if (a == 0 && b == 0) continue;
                Element lhs = b * tau_element(ctx, i) - a * tau_element(ctx, j);
                Element e = commutator_raw(lhs, gamma_element(ctx, x));
                out.push_back({"R4", "R4[i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                                         ",x=" + format_vector(x.rep) + "]",
                               e});
            }
        }
    }

    // R5: [gamma_X, sum_{Y < Q} gamma_Y] = 0 for every plane Q and X < Q
    const auto planes = all_planes(ctx);
    for (size_t qi = 0; qi < planes.size(); ++qi) {
        Element s(ctx);
        const auto plane_lines = lines_of_plane(ctx, planes[qi]);
        for (const Line& y : plane_lines) s += gamma_element(ctx, y);
        for (const Line& x : plane_lines) {
            Element e = commutator_raw(gamma_element(ctx, x), s);
            out.push_back({"R5", "R5[Q=" + std::to_string(qi) + ",X=" + format_vector(x.rep) + "]", e});
        }
    }

    // L instances over the {0,1}-coefficient sample, tau_phi expanded.
    const auto sample = detail::binary_hom_sample(ctx);

    // L1 (via L2): tau_phi tau_psi + tau_psi tau_phi, the linearity
    // cross-terms of (tau_{phi+psi})^2 = (tau_phi + tau_psi)^2
    for (size_t a = 0; a < sample.size(); ++a) {
        for (size_t b = a + 1; b < sample.size(); ++b) {
            const Homomorphism &phi = sample[a], &psi = sample[b];
            Element tp = tau_hom_element(ctx, phi), tq = tau_hom_element(ctx, psi);
            Element e = mul_raw(tp, tq) + mul_raw(tq, tp);
            if (p3) {
                e += sum_not_ker(hom_sum(ctx, phi, psi));
                e -= sum_not_ker(phi);
                e -= sum_not_ker(psi);
            }
            out.push_back({"L1", "L1[phi=" + detail::hom_id(phi) + ",psi=" + detail::hom_id(psi) + "]", e});
        }
    }

    for (const Homomorphism& phi : sample) {
        Element tp = tau_hom_element(ctx, phi);
        Element s = sum_not_ker(phi);

        Element sq = mul_raw(tp, tp);
        if (p3) sq += s;
        out.push_back({"L2", "L2[sq,phi=" + detail::hom_id(phi) + "]", sq});

        out.push_back({"L2", "L2[comm,phi=" + detail::hom_id(phi) + "]", commutator_raw(tp, s)});

        // L3: [tau_phi, gamma_X] for X <= Ker phi
        for (const Line& x : ctx.lines()) {
            if (apply_hom(ctx, phi, x.rep) != 0) continue;
            Element e = commutator_raw(tp, gamma_element(ctx, x));
            out.push_back({"L3", "L3[phi=" + detail::hom_id(phi) + ",X=" + format_vector(x.rep) + "]", e});
        }
    }

    // L4 coincides with R5 literally (it does not involve tau_phi)
    for (size_t qi = 0; qi < planes.size(); ++qi) {
        Element s(ctx);
        const auto plane_lines = lines_of_plane(ctx, planes[qi]);
        for (const Line& y : plane_lines) s += gamma_element(ctx, y);
        for (const Line& x : plane_lines) {
            Element e = commutator_raw(gamma_element(ctx, x), s);
            out.push_back({"L4", "L4[Q=" + std::to_string(qi) + ",X=" + format_vector(x.rep) + "]", e});
        }
    }

    return out;
}

} // namespace extalg
