#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <iterator>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace framekit {

/// Finite sum  sum_n a_n z^n  with z = e^{-2 pi i gamma} and Gaussian
/// rational coefficients. Zero coefficients are never stored, so equality is
/// plain map equality and the zero polynomial has empty support.
class LaurentPoly {
public:
    using map_type = std::map<int, GaussianRational>;

    LaurentPoly() = default;
    LaurentPoly(GaussianRational c) { set(0, std::move(c)); }
    LaurentPoly(long c) : LaurentPoly(GaussianRational(c)) {}
    LaurentPoly(std::initializer_list<std::pair<const int, GaussianRational>> terms) {
        for (const auto& [n, c] : terms)
            add_to(n, c);
    }
    explicit LaurentPoly(const map_type& terms) {
        for (const auto& [n, c] : terms)
            add_to(n, c);
    }

    /// c * z^n
    static LaurentPoly monomial(GaussianRational c, int n) {
        LaurentPoly p;
        p.set(n, std::move(c));
        return p;
    }

    const map_type& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }

    // Only meaningful for nonzero polynomials.
    int min_exp() const { return c_.begin()->first; }
    int max_exp() const { return c_.rbegin()->first; }
    const GaussianRational& lowest_coeff() const { return c_.begin()->second; }
    const GaussianRational& leading_coeff() const { return c_.rbegin()->second; }

    GaussianRational coeff(int n) const {
        auto it = c_.find(n);
        return it == c_.end() ? GaussianRational() : it->second;
    }

    void set(int n, GaussianRational c) {
        if (c.is_zero())
            c_.erase(n);
        else
            c_[n] = std::move(c);
    }

    void add_to(int n, const GaussianRational& c) {
        if (c.is_zero())
            return;
        auto [it, inserted] = c_.try_emplace(n, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                c_.erase(it);
        }
    }

    bool has_real_coeffs() const {
        return std::all_of(c_.begin(), c_.end(), [](const auto& t) { return t.second.is_real(); });
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [n, c] : c_)
            r.c_.emplace_hint(r.c_.end(), n, -c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [n, c] : o.c_)
            add_to(n, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [n, c] : o.c_)
            add_to(n, -c);
        return *this;
    }
    LaurentPoly& operator*=(const GaussianRational& s) {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& [n, c] : c_)
            c *= s;
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const GaussianRational& s) { return a *= s; }
    friend LaurentPoly operator*(const GaussianRational& s, LaurentPoly a) { return a *= s; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [n, x] : a.c_)
            for (const auto& [m, y] : b.c_)
                r.add_to(n + m, x * y);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
        if (p.is_zero())
            return os << "0";
        bool first = true;
        for (const auto& [n, c] : p.c_) {
            if (!first)
                os << " + ";
            first = false;
            os << "(" << c << ")";
            if (n != 0)
                os << "z^" << n;
        }
        return os;
    }

private:
    map_type c_;
};

inline std::string to_text(const LaurentPoly& p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

inline LaurentPoly lp_add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
inline LaurentPoly lp_sub(const LaurentPoly& p, const LaurentPoly& q) { return p - q; }
inline LaurentPoly lp_mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

/// Pointwise complex conjugate on the unit circle: a_n z^n -> conj(a_n) z^{-n}.
inline LaurentPoly lp_conj(const LaurentPoly& p) {
    LaurentPoly r;
    for (const auto& [n, c] : p.terms())
        r.set(-n, c.conj());
    return r;
}

/// gamma -> gamma + 1/2, i.e. z -> -z.
inline LaurentPoly lp_half_shift(const LaurentPoly& p) {
    LaurentPoly r;
    for (const auto& [n, c] : p.terms())
        r.set(n, n % 2 == 0 ? c : -c);
    return r;
}

/// Multiplication by the Laurent unit z^k.
inline LaurentPoly lp_shift(const LaurentPoly& p, int k) {
    LaurentPoly r;
    for (const auto& [n, c] : p.terms())
        r.set(n + k, c);
    return r;
}

inline LaurentPoly lp_pow(LaurentPoly base, unsigned e) {
    LaurentPoly r(1);
    while (e) {
        if (e & 1u)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return r;
}

/// A polynomial is real valued on the circle iff it equals its conjugate.
inline bool lp_is_real_valued(const LaurentPoly& p) { return lp_conj(p) == p; }

enum class EvalPoint { gamma_0, gamma_half };

/// gamma = 0 is z = 1 (sum of coefficients), gamma = 1/2 is z = -1.
inline GaussianRational lp_eval_exact(const LaurentPoly& p, EvalPoint at) {
    GaussianRational s;
    for (const auto& [n, c] : p.terms()) {
        if (at == EvalPoint::gamma_half && n % 2 != 0)
            s -= c;
        else
            s += c;
    }
    return s;
}

/// Double precision evaluation at gamma. Nonnegative and negative exponents
/// are summed by two separate Horner passes in w = z and w = 1/z.
inline std::complex<double> lp_eval_float(const LaurentPoly& p, double gamma) {
    if (p.is_zero())
        return {0.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * gamma;
    const std::complex<double> z(std::cos(angle), -std::sin(angle));
    const std::complex<double> zinv = std::conj(z);

    std::complex<double> pos(0.0, 0.0), neg(0.0, 0.0);
    const auto& t = p.terms();
    if (p.max_exp() >= 0) {
        auto it = t.rbegin();
        for (int n = p.max_exp(); n >= 0; --n) {
            pos *= z;
            if (it != t.rend() && it->first == n) {
                pos += it->second.to_complex();
                ++it;
            }
        }
    }
    if (p.min_exp() < 0) {
        auto it = t.begin();
        // neg = sum_{n<0} a_n w^{-n-1}, then multiplied by w = 1/z
        for (int n = p.min_exp(); n < 0; ++n) {
            neg *= zinv;
            if (it != t.end() && it->first == n) {
                neg += it->second.to_complex();
                ++it;
            }
        }
        neg *= zinv;
    }
    return pos + neg;
}

namespace detail {

// Dense ordinary polynomial, index = degree. Used for exact division and gcd
// after stripping the z^k unit from a Laurent polynomial.
using Dense = std::vector<GaussianRational>;

inline Dense to_dense(const LaurentPoly& p) {
    Dense d(static_cast<std::size_t>(p.max_exp() - p.min_exp() + 1));
    for (const auto& [n, c] : p.terms())
        d[static_cast<std::size_t>(n - p.min_exp())] = c;
    return d;
}

inline LaurentPoly from_dense(const Dense& d, int offset = 0) {
    LaurentPoly p;
    for (std::size_t k = 0; k < d.size(); ++k)
        p.set(static_cast<int>(k) + offset, d[k]);
    return p;
}

inline void trim(Dense& d) {
    while (!d.empty() && d.back().is_zero())
        d.pop_back();
}

// Long division num = q * den + r with deg r < deg den. den must be trimmed and nonempty.
inline std::pair<Dense, Dense> divmod(Dense num, const Dense& den) {
    trim(num);
    if (num.size() < den.size())
        return {Dense{}, num};
    const GaussianRational inv_lead = GaussianRational(1) / den.back();
    Dense q(num.size() - den.size() + 1);
    for (std::size_t k = q.size(); k-- > 0;) {
        const GaussianRational f = num[k + den.size() - 1] * inv_lead;
        q[k] = f;
        if (f.is_zero())
            continue;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[k + j] -= f * den[j];
    }
    num.resize(den.size() - 1);
    trim(num);
    trim(q);
    return {q, num};
}

inline void make_monic(Dense& d) {
    const GaussianRational inv = GaussianRational(1) / d.back();
    for (auto& c : d)
        c *= inv;
}

} // namespace detail

/// Exact quotient q with q * d == p in the Laurent ring.
inline LaurentPoly lp_divide_exact(const LaurentPoly& p, const LaurentPoly& d) {
    if (d.is_zero())
        throw Error(Errc::division_by_zero, "Laurent division by the zero polynomial");
    if (p.is_zero())
        return {};
    // p = z^a P, d = z^b D with P(0), D(0) != 0; Laurent units are c z^k, so
    // d | p in the Laurent ring iff D | P as ordinary polynomials.
    auto [q, r] = detail::divmod(detail::to_dense(p), detail::to_dense(d));
    if (!r.empty())
        throw Error(Errc::not_divisible, "remainder is nonzero");
    return detail::from_dense(q, p.min_exp() - d.min_exp());
}

/// Representative of the associate class {c z^k p}: lowest exponent 0 and
/// leading coefficient 1.
inline LaurentPoly lp_normalize(const LaurentPoly& p) {
    if (p.is_zero())
        return p;
    LaurentPoly r = lp_shift(p, -p.min_exp());
    return r * (GaussianRational(1) / r.leading_coeff());
}

/// Greatest common divisor over Q(i), normalized by lp_normalize.
inline LaurentPoly lp_gcd(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.is_zero() && q.is_zero())
        throw Error(Errc::both_zero, "gcd(0, 0) is undefined");
    if (p.is_zero())
        return lp_normalize(q);
    if (q.is_zero())
        return lp_normalize(p);
    detail::Dense a = detail::to_dense(p), b = detail::to_dense(q);
    detail::make_monic(a);
    detail::make_monic(b);
    while (!b.empty()) {
        auto r = detail::divmod(a, b).second;
        if (!r.empty())
            detail::make_monic(r);
        a = std::move(b);
        b = std::move(r);
    }
    return lp_normalize(detail::from_dense(a));
}

/// Named trigonometric building blocks, all 1-periodic.
namespace trig {

/// sin^2(pi gamma) = (2 - z - z^-1)/4
inline LaurentPoly sin2() { return {{-1, Rational(-1, 4)}, {0, Rational(1, 2)}, {1, Rational(-1, 4)}}; }
/// cos^2(pi gamma) = (2 + z + z^-1)/4
inline LaurentPoly cos2() { return {{-1, Rational(1, 4)}, {0, Rational(1, 2)}, {1, Rational(1, 4)}}; }
/// e^{-pi i gamma} sin(pi gamma) = (1 - z)/(2i)
inline LaurentPoly esin() {
    return {{0, GaussianRational(Rational(0), Rational(-1, 2))}, {1, GaussianRational(Rational(0), Rational(1, 2))}};
}
/// e^{-pi i gamma} cos(pi gamma) = (1 + z)/2
inline LaurentPoly ecos() { return {{0, Rational(1, 2)}, {1, Rational(1, 2)}}; }
/// -i sin(pi gamma) cos(pi gamma) = (z - z^-1)/4
inline LaurentPoly misc() { return {{-1, Rational(-1, 4)}, {1, Rational(1, 4)}}; }
/// sin(pi gamma) cos(pi gamma) = (z^-1 - z)/(4i)
inline LaurentPoly sincos() {
    return {{-1, GaussianRational(Rational(0), Rational(-1, 4))}, {1, GaussianRational(Rational(0), Rational(1, 4))}};
}

} // namespace trig

} // namespace framekit
