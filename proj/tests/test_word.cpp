#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "extalg/relations.hpp"
#include "extalg/word.hpp"
#include "helpers.hpp"

using namespace extalg;

TEST_CASE("degrees and concatenation") {
    auto ctx = make_context(3, 2);
    Word w{ctx.tau_atom(1), ctx.gamma_atom(canonical_line(ctx, {0, 1}))};
    CHECK(word_degree(ctx, w) == 3);
    Word c = concat(Word{ctx.tau_atom(1)}, Word{ctx.gamma_atom(canonical_line(ctx, {0, 1}))});
    CHECK(c == w);
}

TEST_CASE("unit law and modular cancellation") {
    auto ctx = make_context(3, 2);
    Element e = Element::from_word(ctx, Word{ctx.tau_atom(1)}, 2);
    CHECK(mul_raw(Element::unit(ctx), e) == e);
    CHECK(mul_raw(e, Element::unit(ctx)) == e);

    Word w{ctx.tau_atom(2)};
    Element z = Element::from_word(ctx, w, 2) + Element::from_word(ctx, w, 1);
    CHECK(z.is_zero()); // 2 + 1 = 0 mod 3
}

TEST_CASE("context mismatch is rejected") {
    auto a = make_context(3, 2);
    auto b = make_context(5, 2);
    CHECK_THROWS_AS(mul_raw(Element::unit(a), Element::unit(b)), ContextMismatch);
}

TEST_CASE("mul_raw is associative and bilinear on sampled elements") {
    auto ctx = make_context(3, 2);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        Element a = testing::random_element(ctx, 3, 3, rng);
        Element b = testing::random_element(ctx, 3, 3, rng);
        Element c = testing::random_element(ctx, 3, 3, rng);
        CHECK(mul_raw(mul_raw(a, b), c) == mul_raw(a, mul_raw(b, c)));
        CHECK(mul_raw(a + b, c) == mul_raw(a, c) + mul_raw(b, c));
        CHECK(mul_raw(a, b + c) == mul_raw(a, b) + mul_raw(a, c));
        CHECK(mul_raw(2 * a, b) == 2 * mul_raw(a, b));
    }
}

TEST_CASE("term order is degree-first") {
    auto ctx = make_context(3, 2);
    Element e(ctx);
    e.add_term(Word{ctx.gamma_atom(0)}, 1);        // degree 2
    e.add_term(Word{ctx.tau_atom(2)}, 1);          // degree 1
    e.add_term(Word{}, 1);                         // degree 0
    std::vector<int> degrees;
    for (const auto& [w, c] : e.terms()) degrees.push_back(word_degree(ctx, w));
    CHECK(degrees == std::vector<int>{0, 1, 2});
}

namespace {

int expected_degree(const std::string& family) {
    if (family == "R1" || family == "R2" || family == "L1") return 2;
    if (family == "R3" || family == "R4" || family == "L3") return 3;
    if (family == "R5" || family == "L4") return 4;
    return -1; // L2 has both degree-2 (square) and degree-3 (commutator) forms
}

} // namespace

TEST_CASE("relation instances are homogeneous with the family degree") {
    for (int p : {3, 5}) {
        for (int r : {1, 2}) {
            auto ctx = make_context(p, r);
            for (const auto& rel : relation_instances(ctx)) {
                int d = -1;
                CHECK(rel.element.is_homogeneous(&d));
                if (rel.element.is_zero()) continue;
                int want = expected_degree(rel.family);
                if (rel.family == "L2")
                    want = rel.id.find("sq") != std::string::npos ? 2 : 3;
                CHECK(d == want);
            }
        }
    }
}

TEST_CASE("spec'd relation instances appear verbatim") {
    SECTION("R2 at p = 5") {
        auto ctx = make_context(5, 2);
        Element want(ctx);
        want.add_term(Word{ctx.tau_atom(2), ctx.tau_atom(1)}, 1);
        want.add_term(Word{ctx.tau_atom(1), ctx.tau_atom(2)}, 1);
        bool found = false;
        for (const auto& rel : relation_instances(ctx))
            if (rel.id == "R2[i=2,j=1]") {
                found = true;
                CHECK(rel.element == want);
            }
        CHECK(found);
    }
    SECTION("R1 at p = 3 includes the kernel-complement gammas") {
        auto ctx = make_context(3, 2);
        Element want(ctx);
        want.add_term(Word{ctx.tau_atom(1), ctx.tau_atom(1)}, 1);
        for (Vector v : {Vector{1, 0}, Vector{1, 1}, Vector{2, 1}})
            want.add_term(Word{ctx.gamma_atom(canonical_line(ctx, v))}, 1);
        bool found = false;
        for (const auto& rel : relation_instances(ctx))
            if (rel.id == "R1[i=1]") {
                found = true;
                CHECK(rel.element == want);
            }
        CHECK(found);
    }
    SECTION("R5 over the full plane at (3,2)") {
        auto ctx = make_context(3, 2);
        Element s(ctx);
        for (const Line& y : ctx.lines()) s += gamma_element(ctx, y);
        Line x = canonical_line(ctx, {1, 0});
        Element want = mul_raw(gamma_element(ctx, x), s) - mul_raw(s, gamma_element(ctx, x));
        int hits = 0;
        for (const auto& rel : relation_instances(ctx))
            if (rel.family == "R5" && rel.id.find("X=[1,0]") != std::string::npos) {
                ++hits;
                CHECK(rel.element == want);
            }
        CHECK(hits == 1); // only one plane exists at rank 2
    }
}

TEST_CASE("relation instance counts at (3,2)") {
    auto ctx = make_context(3, 2);
    std::map<std::string, int> by_family;
    for (const auto& rel : relation_instances(ctx)) by_family[rel.family]++;
    CHECK(by_family["R1"] == 2);
    CHECK(by_family["R2"] == 1);
    CHECK(by_family["R3"] == 2);
    CHECK(by_family["R4"] == 4);  // all four lines meet (phi_1, phi_2) != (0,0)
    CHECK(by_family["R5"] == 4);  // one plane, four lines
    CHECK(by_family["L1"] == 3);  // pairs from the 3 nonzero {0,1}-covectors
    CHECK(by_family["L2"] == 6);  // square + commutator per covector
    CHECK(by_family["L4"] == 4);
}
