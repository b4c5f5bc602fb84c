#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "extalg/basis.hpp"
#include "extalg/parse.hpp"
#include "helpers.hpp"

using namespace extalg;

TEST_CASE("block_words on the documented examples") {
    auto ctx = make_context(3, 2);

    auto b12 = block_words(ctx, 1, 2);
    REQUIRE(b12.size() == 1);
    CHECK(format_word(ctx, b12[0]) == "g[1,0]");

    auto b22 = block_words(ctx, 2, 2);
    REQUIRE(b22.size() == 3);
    CHECK(format_word(ctx, b22[0]) == "g[0,1]");
    CHECK(format_word(ctx, b22[1]) == "g[1,1]");
    CHECK(format_word(ctx, b22[2]) == "g[2,1]");

    for (int i = 1; i <= 2; ++i) {
        auto b0 = block_words(ctx, i, 0);
        REQUIRE(b0.size() == 1);
        CHECK(b0[0].empty());
    }
}

TEST_CASE("block word counts satisfy a_d = a_{d-1} + (p^{i-1}-1) a_{d-2}") {
    for (int p : {3, 5}) {
        auto ctx = make_context(p, 3);
        for (int i = 1; i <= 3; ++i) {
            auto counts = block_counts(ctx, i, 12);
            REQUIRE(counts[0] == 1);
            REQUIRE(counts[1] == 1);
            mpz_class g = 1;
            for (int j = 0; j < i - 1; ++j) g *= p;
            for (int d = 2; d <= 12; ++d)
                CHECK(counts[d] == counts[d - 1] + (g - 1) * counts[d - 2]);
            // counts agree with explicit enumeration in small degrees
            for (int d = 0; d <= 6; ++d)
                CHECK(counts[d] == mpz_class(block_words(ctx, i, d).size()));
        }
    }
}

TEST_CASE("admissible_basis on the documented examples") {
    auto ctx = make_context(3, 2);

    auto a0 = admissible_basis(ctx, 0);
    REQUIRE(a0.size() == 1);
    CHECK(a0[0].empty());
    CHECK(count_basis(ctx, 0) == 1);

    auto a1 = admissible_basis(ctx, 1);
    REQUIRE(a1.size() == 2);
    CHECK(format_word(ctx, a1[0]) == "t1");
    CHECK(format_word(ctx, a1[1]) == "t2");

    auto a2 = admissible_basis(ctx, 2);
    REQUIRE(a2.size() == 5);
    CHECK(format_word(ctx, a2[0]) == "g[1,0]");
    CHECK(format_word(ctx, a2[1]) == "t1.t2");
    CHECK(format_word(ctx, a2[2]) == "g[0,1]");
    CHECK(format_word(ctx, a2[3]) == "g[1,1]");
    CHECK(format_word(ctx, a2[4]) == "g[2,1]");
    CHECK(count_basis(ctx, 2) == 5);
}

TEST_CASE("enumeration matches the admissibility filter exhaustively") {
    for (int p : {3, 5}) {
        for (int r : {1, 2}) {
            auto ctx = make_context(p, r);
            for (int n = 0; n <= 5; ++n) {
                std::set<Word> filtered;
                for (const Word& w : testing::all_words(ctx, n))
                    if (is_admissible(ctx, w)) filtered.insert(w);
                auto enumerated = admissible_basis(ctx, n);
                std::set<Word> enum_set(enumerated.begin(), enumerated.end());
                CHECK(enum_set.size() == enumerated.size()); // no duplicates
                CHECK(enum_set == filtered);
                CHECK(count_basis(ctx, n) == mpz_class(enumerated.size()));
                for (const Word& w : enumerated) CHECK(is_admissible(ctx, w));
            }
        }
    }
}

TEST_CASE("normal form fixes basis words and lands in their span") {
    auto ctx = make_context(3, 2);
    Rewriter rw(ctx);
    for (int n = 0; n <= 5; ++n) {
        auto basis = admissible_basis(ctx, n);
        std::set<Word> basis_set(basis.begin(), basis.end());
        for (const Word& w : basis) CHECK(rw.word_normal_form(w) == Element::from_word(ctx, w));
        for (const Word& w : testing::all_words(ctx, n)) {
            Element nf = rw.word_normal_form(w);
            CHECK(nf.support_size() <= basis.size());
            for (const auto& [nw, c] : nf.terms()) CHECK(basis_set.count(nw) == 1);
        }
    }
}
