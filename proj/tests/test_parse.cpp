#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "extalg/parse.hpp"
#include "helpers.hpp"

using namespace extalg;

TEST_CASE("parses the documented forms") {
    auto ctx = make_context(3, 2);

    Element a = parse_element(ctx, "2*t1.g[0,1] + t2");
    CHECK(a.support_size() == 2);
    Element expect(ctx);
    expect.add_term(Word{ctx.tau_atom(1), ctx.gamma_atom(canonical_line(ctx, {0, 1}))}, 2);
    expect.add_term(Word{ctx.tau_atom(2)}, 1);
    CHECK(a == expect);

    CHECK(parse_element(ctx, "1") == Element::unit(ctx));
    CHECK(parse_element(ctx, "0").is_zero());

    auto c52 = make_context(5, 2);
    Element cube = parse_element(c52, "t1.t1.t1"); // parser does not reduce
    CHECK(cube.support_size() == 1);
    CHECK(word_degree(c52, cube.terms().begin()->first) == 3);
}

TEST_CASE("non-canonical line literals are canonicalized, never rejected") {
    auto ctx = make_context(3, 2);
    CHECK(parse_element(ctx, "g[2,0]") == parse_element(ctx, "g[1,0]"));
    CHECK(parse_element(ctx, "g[1,2]") == parse_element(ctx, "g[2,1]"));
}

TEST_CASE("signs, coefficients and the unit word") {
    auto ctx = make_context(5, 1);
    CHECK(parse_element(ctx, "- t1") == Element::from_word(ctx, Word{ctx.tau_atom(1)}, 4));
    CHECK(parse_element(ctx, "3") == 3 * Element::unit(ctx));
    CHECK(parse_element(ctx, "2*1 + t1 - t1") == 2 * Element::unit(ctx));
    CHECK(parse_element(ctx, "7*t1") == Element::from_word(ctx, Word{ctx.tau_atom(1)}, 2));
}

TEST_CASE("parse errors carry positions") {
    auto ctx = make_context(3, 2);
    CHECK_THROWS_AS(parse_element(ctx, "t1 +"), ParseError);
    CHECK_THROWS_AS(parse_element(ctx, "2 t1"), ParseError);
    CHECK_THROWS_AS(parse_element(ctx, "t9"), ParseError);
    CHECK_THROWS_AS(parse_element(ctx, "g[1]"), ParseError);
    CHECK_THROWS_AS(parse_element(ctx, "g[0,0]"), ParseError);
    CHECK_THROWS_AS(parse_element(ctx, "t1..t2"), ParseError);
    CHECK_THROWS_AS(parse_element(ctx, ""), ParseError);
    try {
        parse_element(ctx, "t1 + &");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos == 5);
    }
}

TEST_CASE("format round trips") {
    auto ctx = make_context(5, 2);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        Element e = testing::random_element(ctx, 4, 4, rng);
        std::string s = format_element(e);
        CHECK(parse_element(ctx, s) == e);
        CHECK(format_element(parse_element(ctx, s)) == s);
    }
    CHECK(format_element(Element::zero(ctx)) == "0");
}

TEST_CASE("balanced coefficient display") {
    auto ctx = make_context(5, 2);
    Element e = Element::from_word(ctx, Word{ctx.tau_atom(1), ctx.tau_atom(2)}, 4);
    CHECK(format_element(e) == "- t1.t2"); // 4 = -1 mod 5
    Element f = Element::from_word(ctx, Word{ctx.tau_atom(1)}, 3);
    CHECK(format_element(f) == "- 2*t1");
}

TEST_CASE("JSON round trip") {
    auto ctx = make_context(3, 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        Element e = testing::random_element(ctx, 4, 4, rng);
        CHECK(element_from_json(ctx, element_to_json(e)) == e);
    }
    auto wrong = make_context(5, 2);
    CHECK_THROWS_AS(element_from_json(wrong, element_to_json(Element::unit(ctx))),
                    ContextMismatch);
}
