#include "fhodge/scalar.hpp"

#include <ostream>

#include "fhodge/errors.hpp"

namespace fhodge {

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero scalar");
    Rational n = norm();
    return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (o.is_rational()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    if (is_rational()) {
        Rational r = re_;
        re_ = r * o.re_;
        im_ = r * o.im_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

void Scalar::add_product(const Scalar& a, const Scalar& b, bool subtract) {
    thread_local Rational t;
    auto acc = [&](Rational& dst, const Rational& x, const Rational& y, bool neg) {
        if (sgn(x) == 0 || sgn(y) == 0) return;
        mpq_mul(t.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
        if (neg != subtract)
            mpq_sub(dst.get_mpq_t(), dst.get_mpq_t(), t.get_mpq_t());
        else
            mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), t.get_mpq_t());
    };
    acc(re_, a.re_, b.re_, false);
    acc(re_, a.im_, b.im_, true);
    acc(im_, a.re_, b.im_, false);
    acc(im_, a.im_, b.re_, false);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_rational()) {
        if (sgn(o.re_) == 0) throw Error(Errc::DivisionByZero, "division by zero scalar");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string Scalar::str() const {
    if (is_rational()) return re_.get_str();
    std::string out = re_.get_str();
    out += sgn(im_) > 0 ? "+" : "-";
    out += Rational(abs(im_)).get_str();
    out += "*i";
    return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace {

bool rational_syntax(std::string_view t) {
    if (t.empty()) return false;
    std::size_t pos = 0;
    if (t[0] == '-' || t[0] == '+') pos = 1;
    bool digits = false, slash = false, den_digits = false;
    for (; pos < t.size(); ++pos) {
        char c = t[pos];
        if (c >= '0' && c <= '9') {
            (slash ? den_digits : digits) = true;
        } else if (c == '/' && !slash && digits) {
            slash = true;
        } else {
            return false;
        }
    }
    return digits && (!slash || den_digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (!text.empty() && text[0] == '+') text.remove_prefix(1);
    if (!rational_syntax(text)) throw Error(Errc::Malformed, "bad rational: '" + std::string(text) + "'");
    Rational q;
    if (q.set_str(std::string(text), 10) != 0) throw Error(Errc::Malformed, "bad rational: '" + std::string(text) + "'");
    if (sgn(q.get_den()) == 0) throw Error(Errc::Malformed, "zero denominator: '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

Integer parse_integer(std::string_view text) {
    Rational q = parse_rational(text);
    if (q.get_den() != 1) throw Error(Errc::Malformed, "expected integer: '" + std::string(text) + "'");
    return q.get_num();
}

Scalar Scalar::parse(std::string_view text) {
    if (text.empty()) throw Error(Errc::Malformed, "empty scalar");
    if (text.back() != 'i') return Scalar(parse_rational(text));

    std::string_view body = text.substr(0, text.size() - 1);
    if (!body.empty() && body.back() == '*') body.remove_suffix(1);
    // split at the last sign that is not leading
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    std::string_view re_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
    Rational im;
    if (im_part.empty() || im_part == "+") {
        im = 1;
    } else if (im_part == "-") {
        im = -1;
    } else {
        im = parse_rational(im_part);
    }
    Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
    return Scalar(re, im);
}

}  // namespace fhodge
