#include "extlin/scalar.hpp"

#include "extlin/errors.hpp"

#include <ostream>
#include <utility>
#include <vector>

namespace extlin {

Gaussian Gaussian::inv() const {
    if (is_zero())
        throw DivisionByZero("inverse of zero");
    if (is_real())
        return Gaussian(Rational(1) / re_);
    Rational norm = re_ * re_ + im_ * im_;
    return Gaussian(re_ / norm, -im_ / norm);
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
    re_ += o.re_;
    if (!o.is_real())
        im_ += o.im_;
    return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
    re_ -= o.re_;
    if (!o.is_real())
        im_ -= o.im_;
    return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

void Gaussian::add_product(const Gaussian& a, const Gaussian& b) {
    if (a.is_zero() || b.is_zero())
        return;
    if (a.is_real() && b.is_real()) {
        re_ += a.re_ * b.re_;
        return;
    }
    *this += a * b;
}

void Gaussian::sub_product(const Gaussian& a, const Gaussian& b) {
    if (a.is_zero() || b.is_zero())
        return;
    if (a.is_real() && b.is_real()) {
        re_ -= a.re_ * b.re_;
        return;
    }
    *this -= a * b;
}

namespace {

const Gaussian& as_gaussian_checked(const FieldElement& a, const FieldElement& b) {
    if (a.index() != b.index())
        throw VariantMismatch("field elements from different fields (rational vs gaussian)");
    return std::get<Gaussian>(a);
}

} // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
        return Rational(std::get<Rational>(a) + std::get<Rational>(b));
    const Gaussian& x = as_gaussian_checked(a, b);
    return x + std::get<Gaussian>(b);
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
        return Rational(std::get<Rational>(a) * std::get<Rational>(b));
    const Gaussian& x = as_gaussian_checked(a, b);
    return x * std::get<Gaussian>(b);
}

FieldElement neg(const FieldElement& a) {
    if (const auto* q = std::get_if<Rational>(&a))
        return Rational(-*q);
    return -std::get<Gaussian>(a);
}

FieldElement inv(const FieldElement& a) {
    if (const auto* q = std::get_if<Rational>(&a)) {
        if (sgn(*q) == 0)
            throw DivisionByZero("inverse of zero");
        return Rational(Rational(1) / *q);
    }
    return std::get<Gaussian>(a).inv();
}

FieldElement conj(const FieldElement& a) {
    if (std::holds_alternative<Rational>(a))
        return a;
    return std::get<Gaussian>(a).conj();
}

bool equal(const FieldElement& a, const FieldElement& b) {
    if (a.index() != b.index())
        return false;
    if (const auto* q = std::get_if<Rational>(&a))
        return *q == std::get<Rational>(b);
    return std::get<Gaussian>(a) == std::get<Gaussian>(b);
}

Scalar to_scalar(const FieldElement& a) {
    if (const auto* q = std::get_if<Rational>(&a))
        return Scalar(*q);
    return std::get<Gaussian>(a);
}

namespace {

struct Token {
    char c;
    std::size_t offset;
};

class Parser {
public:
    explicit Parser(std::string_view text) {
        for (std::size_t i = 0; i < text.size();) {
            unsigned char ch = static_cast<unsigned char>(text[i]);
            if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
                ++i;
                continue;
            }
            // U+2212 MINUS SIGN
            if (ch == 0xE2 && i + 2 < text.size() &&
                static_cast<unsigned char>(text[i + 1]) == 0x88 &&
                static_cast<unsigned char>(text[i + 2]) == 0x92) {
                tokens_.push_back({'-', i});
                i += 3;
                continue;
            }
            tokens_.push_back({static_cast<char>(ch), i});
            ++i;
        }
        end_offset_ = text.size();
    }

    FieldElement parse() {
        if (tokens_.empty())
            throw ParseError("empty scalar", 0);
        int sign = parse_sign();
        if (peek() == 'i') {
            ++pos_;
            expect_end();
            return Gaussian(Rational(0), Rational(sign));
        }
        Rational first = parse_unsigned_rational() * sign;
        if (peek() == 'i') {
            ++pos_;
            expect_end();
            return Gaussian(Rational(0), first);
        }
        if (at_end())
            return first;
        if (peek() != '+' && peek() != '-')
            fail("expected '+', '-' or 'i'");
        int im_sign = parse_sign();
        Rational im(im_sign);
        if (peek() != 'i')
            im = parse_unsigned_rational() * im_sign;
        if (peek() != 'i')
            fail("expected 'i' after imaginary part");
        ++pos_;
        expect_end();
        return Gaussian(first, im);
    }

private:
    bool at_end() const { return pos_ >= tokens_.size(); }
    char peek() const { return at_end() ? '\0' : tokens_[pos_].c; }
    std::size_t offset() const { return at_end() ? end_offset_ : tokens_[pos_].offset; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, offset()); }

    void expect_end() const {
        if (!at_end())
            fail("unexpected trailing character");
    }

    int parse_sign() {
        if (peek() == '-') {
            ++pos_;
            return -1;
        }
        if (peek() == '+')
            ++pos_;
        return 1;
    }

    mpz_class parse_digits() {
        std::string digits;
        while (!at_end() && peek() >= '0' && peek() <= '9') {
            digits.push_back(peek());
            ++pos_;
        }
        if (digits.empty())
            fail("expected digit");
        return mpz_class(digits, 10);
    }

    Rational parse_unsigned_rational() {
        mpz_class num = parse_digits();
        mpz_class den = 1;
        if (peek() == '/') {
            ++pos_;
            std::size_t at = offset();
            den = parse_digits();
            if (den == 0)
                throw ParseError("zero denominator", at);
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t end_offset_ = 0;
};

} // namespace

FieldElement parse_field_element(std::string_view text) { return Parser(text).parse(); }

Scalar parse_scalar(std::string_view text) { return to_scalar(parse_field_element(text)); }

std::string format_rational(const Rational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string format_gaussian(const Gaussian& g) {
    std::string s = format_rational(g.re());
    if (sgn(g.im()) < 0)
        s += "-" + format_rational(Rational(-g.im()));
    else
        s += "+" + format_rational(g.im());
    return s + "i";
}

} // namespace

std::string format(const FieldElement& a) {
    if (const auto* q = std::get_if<Rational>(&a))
        return format_rational(*q);
    return format_gaussian(std::get<Gaussian>(a));
}

std::string format_scalar(const Scalar& a) {
    if (a.is_real())
        return format_rational(a.re());
    return format_gaussian(a);
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << format_scalar(g); }

} // namespace extlin
