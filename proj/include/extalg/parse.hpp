#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "extalg/word.hpp"

#include "json.hpp"

namespace extalg {

struct ParseError : std::runtime_error {
    size_t pos;
    std::string expected;
    ParseError(size_t pos_, const std::string& expected_, const std::string& found)
        : std::runtime_error("parse error at position " + std::to_string(pos_) + ": expected " +
                             expected_ + ", found " + found),
          pos(pos_), expected(expected_) {}
};

inline std::string format_atom(const GroupCtx& ctx, Atom a) {
    if (ctx.atom_is_tau(a)) return "t" + std::to_string(ctx.atom_tau_index(a));
    std::string s = "g[";
    const Line& x = ctx.atom_line(a);
    for (int j = 0; j < ctx.r(); ++j) {
        if (j) s += ",";
        s += std::to_string(x.rep[j]);
    }
    return s + "]";
}

inline std::string format_word(const GroupCtx& ctx, const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += ".";
        s += format_atom(ctx, w[k]);
    }
    return s;
}

/// Canonical text form: terms in (degree, word-lex) order, coefficients shown
/// balanced (residues above p/2 print as negatives), unit word shown as a
/// bare coefficient. The zero element prints as "0".
inline std::string format_element(const Element& e) {
    const GroupCtx& ctx = e.ctx();
    if (e.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : e.terms()) {
        int32_t bal = c <= ctx.p() / 2 ? c : c - ctx.p();
        bool negative = bal < 0;
        int32_t mag = negative ? -bal : bal;
        if (first) {
            if (negative) s += "- ";
        } else {
            s += negative ? " - " : " + ";
        }
        if (w.empty()) s += std::to_string(mag);
        else {
            if (mag != 1) s += std::to_string(mag) + "*";
            s += format_word(ctx, w);
        }
        first = false;
    }
    return s;
}

namespace detail {

class ElementParser {
public:
    ElementParser(const GroupCtx& ctx, std::string_view text) : ctx_(ctx), text_(text) {}

    Element parse() {
        Element e(ctx_);
        skip_ws();
        int32_t sign = 1;
        if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1 : 1;
        parse_term(e, sign);
        skip_ws();
        while (pos_ < text_.size()) {
            char op = take();
            if (op != '+' && op != '-') fail("'+' or '-'", std::string(1, op));
            parse_term(e, op == '-' ? -1 : 1);
            skip_ws();
        }
        return e;
    }

private:
    const GroupCtx& ctx_;
    std::string_view text_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected, const std::string& found) {
        throw ParseError(pos_, expected, found);
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

    int64_t parse_int() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("an integer", pos_ < text_.size() ? std::string(1, peek()) : "end of input");
        int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (take() - '0');
        return v;
    }

    Atom parse_atom() {
        skip_ws();
        char c = peek();
        if (c == 't') {
            ++pos_;
            int64_t i = parse_int();
            if (i < 1 || i > ctx_.r())
                fail("a generator index in [1," + std::to_string(ctx_.r()) + "]", std::to_string(i));
            return ctx_.tau_atom(static_cast<int>(i));
        }
        if (c == 'g') {
            ++pos_;
            skip_ws();
            if (take() != '[') fail("'['", std::string(1, text_[pos_ - 1]));
            Vector v;
            v.push_back(static_cast<int32_t>(ctx_.fp().norm(parse_int())));
            skip_ws();
            while (peek() == ',') {
                ++pos_;
                v.push_back(static_cast<int32_t>(ctx_.fp().norm(parse_int())));
                skip_ws();
            }
            if (take() != ']') fail("']'", std::string(1, text_[pos_ - 1]));
            if (static_cast<int>(v.size()) != ctx_.r())
                fail(std::to_string(ctx_.r()) + " coordinates", std::to_string(v.size()));
            size_t at = pos_;
            try {
                return ctx_.gamma_atom(canonical_line(ctx_, v));
            } catch (const ZeroVector&) {
                throw ParseError(at, "a nonzero line vector", format_vector(v));
            }
        }
        fail("an atom ('t<i>' or 'g[..]')", pos_ < text_.size() ? std::string(1, c) : "end of input");
    }

    void parse_term(Element& e, int32_t sign) {
        skip_ws();
        int64_t coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_int();
            saw_coeff = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            } else if (peek() == 't' || peek() == 'g') {
                fail("'*' between coefficient and word", std::string(1, peek()));
            } else {
                // bare coefficient: a multiple of the unit word
                e.add_term(Word{}, sign * coeff);
                return;
            }
        }
        // word := atom ('.' atom)* | '1'
        skip_ws();
        if (saw_coeff && peek() == '1' && !std::isdigit(static_cast<unsigned char>(pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'))) {
            ++pos_;
            e.add_term(Word{}, sign * coeff);
            return;
        }
        Word w;
        w.push_back(parse_atom());
        skip_ws();
        while (peek() == '.') {
            ++pos_;
            w.push_back(parse_atom());
            skip_ws();
        }
        e.add_term(w, sign * coeff);
    }
};

} // namespace detail

inline Element parse_element(const GroupCtx& ctx, std::string_view text) {
    return detail::ElementParser(ctx, text).parse();
}

inline nlohmann::json element_to_json(const Element& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, c] : e.terms()) {
        nlohmann::json word = nlohmann::json::array();
        for (Atom a : w) word.push_back(format_atom(e.ctx(), a));
        terms.push_back({{"coeff", c}, {"word", word}});
    }
    return {{"p", e.ctx().p()}, {"r", e.ctx().r()}, {"terms", terms}};
}

inline Element element_from_json(const GroupCtx& ctx, const nlohmann::json& j) {
    if (j.at("p").get<int>() != ctx.p() || j.at("r").get<int>() != ctx.r())
        throw ContextMismatch("JSON element was built over a different (p, r)");
    Element e(ctx);
    for (const auto& t : j.at("terms")) {
        Word w;
        for (const auto& s : t.at("word")) {
            std::string atom = s.get<std::string>();
            Element one = parse_element(ctx, atom);
            w.push_back(one.terms().begin()->first.at(0));
        }
        e.add_term(w, t.at("coeff").get<int64_t>());
    }
    return e;
}

} // namespace extalg
