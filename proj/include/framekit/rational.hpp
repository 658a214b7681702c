#pragma once

#include <cctype>
#include <complex>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "error.hpp"

namespace framekit {

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}
    Rational(long n, long d) : q_(mpz_class(n), mpz_class(d == 0 ? 1 : d)) {
        if (d == 0)
            throw Error(Errc::division_by_zero, "rational with zero denominator");
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Builds n/d from arbitrary-size integers given as decimal strings.
    static Rational from_strings(const std::string& num, const std::string& den = "1") {
        mpz_class n, d;
        if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
            throw Error(Errc::parse_error, "bad integer in '" + num + "/" + den + "'");
        if (d == 0)
            throw Error(Errc::division_by_zero, "rational with zero denominator");
        return Rational(mpq_class(n, d));
    }

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    double to_double() const { return q_.get_d(); }
    std::string to_string() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero())
            throw Error(Errc::division_by_zero, "rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class q_{0};
};

/// Complex number with rational real and imaginary parts. This is the
/// coefficient field for every mask.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    /// |x|^2 = re^2 + im^2
    Rational norm2() const { return re_ * re_ + im_ * im_; }
    GaussianRational conj() const { return {re_, -im_}; }

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        Rational n = o.norm2();
        if (n.is_zero())
            throw Error(Errc::division_by_zero, "gaussian rational division by zero");
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// "a/b+c/d*i" with zero parts omitted: "1/2", "-3*i", "0".
    std::string to_string() const {
        if (im_.is_zero())
            return re_.to_string();
        std::string im_part;
        Rational mag = im_.sign() < 0 ? -im_ : im_;
        im_part = mag.to_string() + "*i";
        if (re_.is_zero())
            return (im_.sign() < 0 ? "-" : "") + im_part;
        return re_.to_string() + (im_.sign() < 0 ? "-" : "+") + im_part;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

private:
    Rational re_;
    Rational im_;
};

namespace detail {

inline bool is_power_of_two(const mpz_class& n) {
    return n > 0 && mpz_popcount(n.get_mpz_t()) == 1;
}

// Parses an unsigned number: digits, digits/digits, or digits.digits.
// Decimals must denote a dyadic rational.
inline Rational parse_unsigned_number(std::string_view tok, std::string_view whole) {
    auto fail = [&](const std::string& why) {
        return Error(Errc::parse_error, "'" + std::string(whole) + "': " + why);
    };
    auto all_digits = [](std::string_view s) {
        if (s.empty())
            return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    if (auto slash = tok.find('/'); slash != std::string_view::npos) {
        auto n = tok.substr(0, slash), d = tok.substr(slash + 1);
        if (!all_digits(n) || !all_digits(d))
            throw fail("malformed fraction");
        if (all_digits(d) && mpz_class(std::string(d)) == 0)
            throw fail("zero denominator");
        return Rational::from_strings(std::string(n), std::string(d));
    }
    if (auto dot = tok.find('.'); dot != std::string_view::npos) {
        auto ip = tok.substr(0, dot), fp = tok.substr(dot + 1);
        if (!(ip.empty() || all_digits(ip)) || !all_digits(fp))
            throw fail("malformed decimal");
        std::string den = "1" + std::string(fp.size(), '0');
        Rational r = Rational::from_strings((ip.empty() ? "0" : std::string(ip)) + std::string(fp), den);
        if (!is_power_of_two(r.denominator()))
            throw fail("decimal is not an exact dyadic rational; write it as p/q");
        return r;
    }
    if (!all_digits(tok))
        throw fail("not a rational literal");
    return Rational::from_strings(std::string(tok));
}

} // namespace detail

/// Parses coefficient text. Accepts integers, "p/q", exact dyadic decimals
/// and sums such as "1/2-3/4*i", "i", "-2*i". Anything that is not an exact
/// Gaussian rational is rejected.
inline GaussianRational parse_gaussian(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw Error(Errc::parse_error, "empty coefficient");

    GaussianRational acc;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw Error(Errc::parse_error, "'" + s + "': expected sign between terms");
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-')
            ++end;
        std::string_view term(s.data() + pos, end - pos);
        if (term.empty())
            throw Error(Errc::parse_error, "'" + s + "': empty term");

        bool imag = false;
        if (term.back() == 'i') {
            imag = true;
            term.remove_suffix(1);
            if (!term.empty() && term.back() == '*')
                term.remove_suffix(1);
            else if (!term.empty())
                throw Error(Errc::parse_error, "'" + s + "': imaginary terms are written c*i");
        }
        Rational value = term.empty() && imag ? Rational(1) : detail::parse_unsigned_number(term, s);
        if (sign < 0)
            value = -value;
        acc += imag ? GaussianRational(Rational(0), value) : GaussianRational(value);
        pos = end;
    }
    return acc;
}

} // namespace framekit
