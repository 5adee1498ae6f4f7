#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace extlin {

using Rational = mpq_class;

/// Element of the Gaussian rationals Q(i). Every rational is a Gaussian with
/// zero imaginary part; arithmetic takes a fast path when both parts are real.
class Gaussian {
public:
    Gaussian() = default;
    Gaussian(long n) : re_(n) {}
    Gaussian(Rational re) : re_(std::move(re)) {}
    Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }
    bool is_one() const noexcept { return is_real() && re_ == 1; }

    Gaussian conj() const { return Gaussian(re_, -im_); }
    Gaussian inv() const;

    Gaussian& operator+=(const Gaussian& o);
    Gaussian& operator-=(const Gaussian& o);
    Gaussian& operator*=(const Gaussian& o);
    Gaussian& operator/=(const Gaussian& o) { return *this *= o.inv(); }

    /// this += a * b without temporaries for the real case.
    void add_product(const Gaussian& a, const Gaussian& b);
    void sub_product(const Gaussian& a, const Gaussian& b);

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    Gaussian operator-() const { return Gaussian(-re_, -im_); }

    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

private:
    Rational re_{0};
    Rational im_{0};
};

/// The scalar type of all linear algebra in the engine.
using Scalar = Gaussian;

/// A field element tagged with its field: the rationals or the Gaussian rationals.
using FieldElement = std::variant<Rational, Gaussian>;

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement inv(const FieldElement& a);
FieldElement conj(const FieldElement& a);
bool equal(const FieldElement& a, const FieldElement& b);

/// Embeds either variant into Q(i).
Scalar to_scalar(const FieldElement& a);

/// Grammar: "[+-]p[/q]" or "[+-]p[/q] (+|-) r[/s] i", whitespace-insensitive,
/// U+2212 accepted as minus. An imaginary part selects the Gaussian variant.
FieldElement parse_field_element(std::string_view text);
std::string format(const FieldElement& a);

/// Parses into Q(i) directly (used for matrix entries).
Scalar parse_scalar(std::string_view text);
/// Real values print as rationals, others as "re+imi".
std::string format_scalar(const Scalar& a);
std::string format_rational(const Rational& q);

std::ostream& operator<<(std::ostream& os, const Gaussian& g);

} // namespace extlin
