#include <doctest.h>

#include "extlin/errors.hpp"
#include "extlin/rng.hpp"
#include "extlin/scalar.hpp"

#include <cstdint>
#include <numeric>
#include <string>

using namespace extlin;

namespace {

Rational random_rational(Rng& rng) {
    long num = rng.range(-20, 20);
    long den = rng.range(1, 9);
    Rational q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

Gaussian random_gaussian(Rng& rng) { return Gaussian(random_rational(rng), random_rational(rng)); }

FieldElement random_element(Rng& rng, bool gaussian) {
    if (gaussian)
        return random_gaussian(rng);
    return random_rational(rng);
}

} // namespace

TEST_CASE("rational arithmetic") {
    FieldElement a = parse_field_element("1/2"), b = parse_field_element("1/3");
    CHECK(format(add(a, b)) == "5/6");
    CHECK(format(mul(parse_field_element("2/3"), parse_field_element("3/2"))) == "1");
    CHECK(format(parse_field_element("3")) == "3");
}

TEST_CASE("gaussian arithmetic") {
    FieldElement a = parse_field_element("1/2+1/2i"), b = parse_field_element("1/2-1/2i");
    FieldElement s = add(a, b);
    CHECK(std::get<Gaussian>(s) == Gaussian(Rational(1)));
    FieldElement i = parse_field_element("i");
    FieldElement inv_i = inv(i);
    CHECK(std::get<Gaussian>(inv_i) == Gaussian(Rational(0), Rational(-1)));
    CHECK(format(inv_i) == "0-1i");
}

TEST_CASE("parse of the signed gaussian example") {
    FieldElement x = parse_field_element("\xE2\x88\x92" "1/2+2/3i");
    REQUIRE(std::holds_alternative<Gaussian>(x));
    CHECK(std::get<Gaussian>(x).re() == Rational(-1, 2));
    CHECK(std::get<Gaussian>(x).im() == Rational(2, 3));
    CHECK(format(parse_field_element(" - 1 / 2 + 2/3 i ")) == "-1/2+2/3i");
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(add(parse_field_element("1"), parse_field_element("1+i")), VariantMismatch);
    CHECK_THROWS_AS(inv(parse_field_element("0")), DivisionByZero);
    CHECK_THROWS_AS(inv(parse_field_element("0+0i")), DivisionByZero);
    try {
        parse_field_element("1/2x");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    try {
        parse_field_element("1/0");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 2);
    }
    CHECK_THROWS_AS(parse_field_element(""), ParseError);
    CHECK_THROWS_AS(parse_field_element("1+2"), ParseError);
    CHECK_THROWS_AS(parse_field_element("+"), ParseError);
}

TEST_CASE("additive identity and involution") {
    Rng rng(11);
    for (int k = 0; k < 50; ++k) {
        FieldElement x = random_element(rng, k % 2);
        FieldElement zero = (k % 2) ? FieldElement(Gaussian()) : FieldElement(Rational(0));
        CHECK(equal(add(x, zero), x));
        FieldElement g = random_element(rng, true);
        CHECK(equal(conj(conj(g)), g));
    }
}

TEST_CASE("field axioms on random triples") {
    Rng rng(12);
    for (int k = 0; k < 200; ++k) {
        bool gauss = k % 2;
        FieldElement a = random_element(rng, gauss), b = random_element(rng, gauss),
                     c = random_element(rng, gauss);
        CHECK(equal(add(add(a, b), c), add(a, add(b, c))));
        CHECK(equal(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
        CHECK(equal(mul(a, b), mul(b, a)));
        if (!to_scalar(a).is_zero()) {
            FieldElement one = gauss ? FieldElement(Gaussian(1)) : FieldElement(Rational(1));
            CHECK(equal(mul(a, inv(a)), one));
        }
    }
}

TEST_CASE("conjugation is multiplicative") {
    Rng rng(13);
    for (int k = 0; k < 100; ++k) {
        FieldElement a = random_element(rng, true), b = random_element(rng, true);
        CHECK(equal(conj(mul(a, b)), mul(conj(a), conj(b))));
    }
}

TEST_CASE("canonical form after operations") {
    Rng rng(14);
    for (int k = 0; k < 100; ++k) {
        Gaussian g = std::get<Gaussian>(mul(random_element(rng, true), random_element(rng, true)));
        CHECK(g.re().get_den() > 0);
        CHECK(gcd(g.re().get_num(), g.re().get_den()) == 1);
        CHECK(gcd(g.im().get_num(), g.im().get_den()) == 1);
    }
}

namespace {

// Independent canonicalization with machine integers.
std::string canonical_part(std::int64_t p, std::int64_t q) {
    std::int64_t g = std::gcd(p < 0 ? -p : p, q);
    if (g == 0)
        g = 1;
    p /= g;
    q /= g;
    return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

std::string noisy_number(Rng& rng, std::int64_t p, std::int64_t q) {
    std::string pad = rng.coin() ? " " : "";
    std::string s = std::to_string(p);
    if (q != 1 || rng.coin())
        s += pad + "/" + pad + std::to_string(q);
    return s;
}

} // namespace

TEST_CASE("round-trip fuzz corpus") {
    Rng rng(15);
    for (int k = 0; k < 100; ++k) {
        std::int64_t p = rng.range(-60, 60), q = rng.range(1, 12);
        std::int64_t r = rng.range(0, 60), s = rng.range(1, 12);
        bool gaussian = rng.coin();
        std::string text = noisy_number(rng, p, q);
        std::string expected = canonical_part(p, q);
        if (gaussian) {
            bool minus = rng.coin();
            text += std::string(rng.coin() ? " " : "") + (minus ? "-" : "+") + " " + noisy_number(rng, r, s) + "i";
            std::int64_t im = minus ? -r : r;
            expected += (im < 0 ? "-" : "+") + canonical_part(im < 0 ? -im : im, s) + "i";
        }
        CAPTURE(text);
        CHECK(format(parse_field_element(text)) == expected);
        CHECK(format(parse_field_element(expected)) == expected);
    }
}
