#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace fhodge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Element of the Gaussian rationals Q(i). Exact; stands in for the complex
/// numbers everywhere in the library. Conjugation fixes Q.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(const Integer& v) : re_(v) {}
    Scalar(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(0, 1); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_rational() const { return sgn(im_) == 0; }
    bool is_integer() const { return is_rational() && re_.get_den() == 1; }

    Scalar conj() const { return Scalar(re_, -im_); }
    Rational norm() const { return re_ * re_ + im_ * im_; }
    Scalar inverse() const;

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    /// *this += a * b (or -=) without a temporary Scalar.
    void add_product(const Scalar& a, const Scalar& b, bool subtract = false);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

    /// "a/b" or "a/b+c/d*i", lowest terms, explicit sign on the imaginary part.
    std::string str() const;
    /// Accepts the output of str() plus the shorthands "i", "-i", "c/d*i".
    static Scalar parse(std::string_view text);

private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline void add_product(Scalar& acc, const Scalar& a, const Scalar& b) { acc.add_product(a, b); }
inline void sub_product(Scalar& acc, const Scalar& a, const Scalar& b) { acc.add_product(a, b, true); }
template <typename T>
void add_product(T& acc, const T& a, const T& b) {
    acc += a * b;
}
template <typename T>
void sub_product(T& acc, const T& a, const T& b) {
    acc -= a * b;
}

inline Scalar inverse(const Scalar& s) { return s.inverse(); }
inline Rational inverse(const Rational& q) { return 1 / q; }

inline Scalar conj(const Scalar& s) { return s.conj(); }

Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

}  // namespace fhodge
