#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "extension.hpp"
#include "masks.hpp"

namespace framekit {

/// Samples of a compactly supported real function on the grid x_i = i 2^-level.
/// Indices outside [start, start + size) hold zero.
struct SampledFunction {
    int level = 0;
    std::int64_t start = 0;
    std::vector<double> samples;

    double step() const { return std::ldexp(1.0, -level); }
    std::int64_t end() const { return start + static_cast<std::int64_t>(samples.size()); }
    double x(std::int64_t i) const { return static_cast<double>(i) * step(); }

    double at_index(std::int64_t i) const {
        return i < start || i >= end() ? 0.0 : samples[static_cast<std::size_t>(i - start)];
    }

    /// Linear interpolation between grid samples; zero outside the support.
    double at(double xv) const {
        const double u = xv / step();
        const double fl = std::floor(u);
        const auto i = static_cast<std::int64_t>(fl);
        const double t = u - fl;
        if (t == 0.0)
            return at_index(i);
        return (1.0 - t) * at_index(i) + t * at_index(i + 1);
    }

    /// Drops zero samples at both ends.
    SampledFunction& trim() {
        auto first = std::find_if(samples.begin(), samples.end(), [](double v) { return v != 0.0; });
        if (first == samples.end()) {
            samples.clear();
            return *this;
        }
        auto last = std::find_if(samples.rbegin(), samples.rend(), [](double v) { return v != 0.0; }).base();
        start += first - samples.begin();
        samples = std::vector<double>(first, last);
        return *this;
    }
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline std::vector<std::pair<int, double>> real_coeffs(const Mask& m, const char* what) {
    if (!m.poly.has_real_coeffs())
        throw Error(Errc::complex_mask, std::string(what) + " has non-real coefficients");
    std::vector<std::pair<int, double>> out;
    for (const auto& [k, c] : m.poly.terms())
        out.emplace_back(k, c.re().to_double());
    return out;
}

// Cox-de Boor on the integer knots 0..N.
inline double bspline_value(int order, double x) {
    if (x < 0.0 || x >= order)
        return 0.0;
    std::vector<double> b(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k)
        b[static_cast<std::size_t>(k)] = (x >= k && x < k + 1) ? 1.0 : 0.0;
    for (int n = 2; n <= order; ++n)
        for (int k = 0; k + n <= order; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            b[kk] = ((x - k) * b[kk] + (k + n - x) * b[kk + 1]) / (n - 1);
        }
    return b[0];
}

} // namespace detail

/// B_N(x + shift) sampled at level J.
inline SampledFunction bspline_exact(int order, int level, int shift = 0) {
    if (order < 1)
        throw Error(Errc::invalid_argument, "B-spline order must be >= 1");
    SampledFunction f;
    f.level = level;
    const std::int64_t scale = std::int64_t{1} << level;
    f.start = -static_cast<std::int64_t>(shift) * scale;
    const std::int64_t last = static_cast<std::int64_t>(order - shift) * scale;
    for (std::int64_t i = f.start; i <= last; ++i)
        f.samples.push_back(detail::bspline_value(order, f.x(i) + shift));
    return f;
}

struct CascadeResult {
    SampledFunction phi;
    int iterations = 0;
    double last_change = std::numeric_limits<double>::infinity();
    bool converged = false;
};

/// Fixed-point iteration phi <- 2 sum_k a_k phi(2x - k) on the level-J grid,
/// started from the indicator of [0, 1). Stops once the sup-norm change is
/// at most tol; otherwise reports non-convergence after max_iter steps.
inline CascadeResult cascade(const Mask& m0, int level, double tol = 1e-10, int max_iter = 40) {
    if (!check_setup(m0))
        throw Error(Errc::setup_violated, "cascade needs m0(0) = 1");
    if (level < 0)
        throw Error(Errc::invalid_argument, "level must be nonnegative");
    const auto taps = detail::real_coeffs(m0, "refinement mask");
    const std::int64_t scale = std::int64_t{1} << level;
    const std::int64_t lo = std::min<std::int64_t>(0, m0.poly.min_exp()) * scale;
    const std::int64_t hi = std::max<std::int64_t>(1, m0.poly.max_exp()) * scale;

    CascadeResult r;
    r.phi.level = level;
    r.phi.start = lo;
    r.phi.samples.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::int64_t i = 0; i < scale; ++i)
        r.phi.samples[static_cast<std::size_t>(i - lo)] = 1.0;

    std::vector<double> next(r.phi.samples.size());
    for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
        double change = 0.0;
        for (std::int64_t i = lo; i <= hi; ++i) {
            double s = 0.0;
            for (const auto& [k, a] : taps)
                s += a * r.phi.at_index(2 * i - k * scale);
            const double v = 2.0 * s;
            change = std::max(change, std::abs(v - r.phi.samples[static_cast<std::size_t>(i - lo)]));
            if (!std::isfinite(v))
                change = std::numeric_limits<double>::infinity();
            next[static_cast<std::size_t>(i - lo)] = v;
        }
        r.phi.samples.swap(next);
        r.last_change = change;
        if (change <= tol) {
            r.converged = true;
            break;
        }
    }
    r.iterations = std::min(r.iterations, max_iter);
    return r;
}

/// psi(x) = sum_k c_k phi(2x - k) with c_k the time coefficients of the mask,
/// sampled on phi's grid.
inline SampledFunction wavelet_from_mask(const Mask& m, const SampledFunction& phi) {
    if (phi.level < 1)
        throw Error(Errc::invalid_argument, "wavelet_from_mask needs phi at level >= 1");
    SampledFunction psi;
    psi.level = phi.level;
    if (m.poly.is_zero() || phi.samples.empty()) {
        psi.start = phi.start;
        return psi;
    }
    std::vector<std::pair<int, double>> taps;
    for (const auto& [k, c] : time_coeffs_from_mask(m).coeffs) {
        if (!c.is_real())
            throw Error(Errc::complex_mask, "wavelet mask has non-real coefficients");
        taps.emplace_back(k, c.re().to_double());
    }
    const std::int64_t scale = std::int64_t{1} << phi.level;
    const std::int64_t first = detail::ceil_div(phi.start + m.poly.min_exp() * scale, 2);
    const std::int64_t last = detail::floor_div(phi.end() - 1 + m.poly.max_exp() * scale, 2);
    psi.start = first;
    for (std::int64_t i = first; i <= last; ++i) {
        double s = 0.0;
        for (const auto& [k, c] : taps)
            s += c * phi.at_index(2 * i - k * scale);
        psi.samples.push_back(s);
    }
    return psi;
}

/// Riemann sum  h sum_i f_i g_i.
inline double inner_product(const SampledFunction& f, const SampledFunction& g) {
    if (f.level != g.level)
        throw Error(Errc::level_mismatch, "inner product of functions on different grids");
    const std::int64_t a = std::max(f.start, g.start), b = std::min(f.end(), g.end());
    double s = 0.0;
    for (std::int64_t i = a; i < b; ++i)
        s += f.at_index(i) * g.at_index(i);
    return s * f.step();
}

/// Riemann sums on the grid and its 2^r subsamplings, Richardson-extrapolated
/// in h^2. Exact up to roundoff for piecewise polynomials of degree < 2 depth + 2
/// whose breakpoints lie on the coarsest grid used.
inline double inner_product_romberg(const SampledFunction& f, const SampledFunction& g, int depth) {
    if (f.level != g.level)
        throw Error(Errc::level_mismatch, "inner product of functions on different grids");
    if (depth < 0 || depth > f.level)
        throw Error(Errc::invalid_argument, "romberg depth must lie in [0, level]");
    const std::int64_t a = std::max(f.start, g.start), b = std::min(f.end(), g.end());
    std::vector<double> t;
    for (int r = 0; r <= depth; ++r) {
        const std::int64_t stride = std::int64_t{1} << r;
        double s = 0.0;
        for (std::int64_t i = detail::ceil_div(a, stride) * stride; i < b; i += stride)
            s += f.at_index(i) * g.at_index(i);
        t.push_back(s * f.step() * static_cast<double>(stride));
    }
    for (int m = 1; m <= depth; ++m) {
        const double w = std::pow(4.0, m);
        for (int r = 0; r + m <= depth; ++r)
            t[static_cast<std::size_t>(r)] = (w * t[static_cast<std::size_t>(r)] - t[static_cast<std::size_t>(r + 1)]) / (w - 1.0);
    }
    return t[0];
}

/// sqrt(sum (f - g)^2) / sqrt(sum f^2) over the union of supports.
inline double relative_l2_error(const SampledFunction& f, const SampledFunction& g) {
    if (f.level != g.level)
        throw Error(Errc::level_mismatch, "error between functions on different grids");
    const std::int64_t a = std::min(f.start, g.start), b = std::max(f.end(), g.end());
    double num = 0.0, den = 0.0;
    for (std::int64_t i = a; i < b; ++i) {
        const double d = f.at_index(i) - g.at_index(i);
        num += d * d;
        den += f.at_index(i) * f.at_index(i);
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

struct FramePair {
    SampledFunction psi;  // synthesis generator
    SampledFunction psit; // analysis generator
};

struct FrameSpec {
    int j_min = -6;
    int j_max = 8;
    std::vector<FramePair> generators;
};

/// Truncated dual-frame expansion
///   sum_l sum_{j=j_min}^{j_max} sum_k <f, D^j T_k psit_l> D^j T_k psi_l
/// evaluated on f's grid. Every k whose translate meets supp f is included.
/// For j >= 0 the inner products are Riemann sums on psit's grid with f taken
/// as the step function f(x) = f_i on [x_i, x_{i+1}), the same model the
/// plain grid sum uses; for j < 0 they are sums on f's grid with psit
/// linearly interpolated.
inline SampledFunction frame_reconstruct(const SampledFunction& f, const FrameSpec& spec) {
    if (spec.j_min > spec.j_max)
        throw Error(Errc::invalid_argument, "j_min > j_max");
    if (spec.generators.empty())
        throw Error(Errc::invalid_argument, "frame spec has no generators");
    for (const auto& g : spec.generators)
        if (g.psi.level != f.level || g.psit.level != f.level)
            throw Error(Errc::level_mismatch, "generators and f must share one grid level");

    const int J = f.level;
    const double h = f.step();
    const std::int64_t scale = std::int64_t{1} << J;

    SampledFunction out;
    out.level = J;
    if (f.samples.empty())
        return out;

    struct Term {
        std::size_t l;
        int j;
        std::int64_t k_lo, k_hi;
    };
    std::vector<Term> terms;
    std::int64_t out_lo = f.start, out_hi = f.end() - 1;
    for (std::size_t l = 0; l < spec.generators.size(); ++l) {
        const auto& g = spec.generators[l];
        if (g.psi.samples.empty() || g.psit.samples.empty())
            continue;
        for (int j = spec.j_min; j <= spec.j_max; ++j) {
            // D^j T_k psit meets supp f iff k in (2^j x_fs - x_te, 2^j x_fe - x_ts); in index units
            // (scaled by 2^J) for j >= 0, or by 2^{J-j} for j < 0, everything stays integral.
            std::int64_t k_lo, k_hi;
            if (j >= 0) {
                const std::int64_t p = std::int64_t{1} << j;
                k_lo = detail::floor_div(p * f.start - (g.psit.end() - 1), scale);
                k_hi = detail::ceil_div(p * (f.end() - 1) - g.psit.start, scale);
            } else {
                const std::int64_t p = std::int64_t{1} << -j;
                k_lo = detail::floor_div(f.start - p * (g.psit.end() - 1), p * scale);
                k_hi = detail::ceil_div((f.end() - 1) - p * g.psit.start, p * scale);
            }
            terms.push_back({l, j, k_lo, k_hi});
            // output support of D^j T_k psi
            if (j >= 0) {
                const std::int64_t p = std::int64_t{1} << j;
                out_lo = std::min(out_lo, detail::floor_div(g.psi.start + k_lo * scale, p));
                out_hi = std::max(out_hi, detail::ceil_div(g.psi.end() - 1 + k_hi * scale, p));
            } else {
                const std::int64_t p = std::int64_t{1} << -j;
                out_lo = std::min(out_lo, p * (g.psi.start + k_lo * scale));
                out_hi = std::max(out_hi, p * (g.psi.end() - 1 + k_hi * scale));
            }
        }
    }

    out.start = out_lo;
    out.samples.assign(static_cast<std::size_t>(out_hi - out_lo + 1), 0.0);

    for (const auto& t : terms) {
        const auto& g = spec.generators[t.l];
        const double amp = std::pow(2.0, 0.5 * t.j); // 2^{j/2}
        for (std::int64_t k = t.k_lo; k <= t.k_hi; ++k) {
            double c = 0.0;
            if (t.j >= 0) {
                // 2^{-j/2} h sum_i f((i h + k) 2^-j) psit_i, f held constant on its own cells
                const std::int64_t p = std::int64_t{1} << t.j;
                for (std::int64_t i = g.psit.start; i < g.psit.end(); ++i)
                    c += f.at_index(detail::floor_div(i + k * scale, p)) * g.psit.at_index(i);
                c *= h / amp;
            } else {
                const double dil = std::ldexp(1.0, t.j);
                for (std::int64_t i = f.start; i < f.end(); ++i)
                    c += f.at_index(i) * g.psit.at(dil * f.x(i) - static_cast<double>(k));
                c *= h * amp;
            }
            if (c == 0.0)
                continue;
            const double w = c * amp;
            if (t.j >= 0) {
                const std::int64_t p = std::int64_t{1} << t.j;
                const std::int64_t lo = detail::ceil_div(g.psi.start + k * scale, p);
                const std::int64_t hi = detail::floor_div(g.psi.end() - 1 + k * scale, p);
                for (std::int64_t i = lo; i <= hi; ++i)
                    out.samples[static_cast<std::size_t>(i - out_lo)] += w * g.psi.at_index(p * i - k * scale);
            } else {
                const std::int64_t p = std::int64_t{1} << -t.j;
                const double dil = std::ldexp(1.0, t.j);
                const std::int64_t lo = p * (g.psi.start + k * scale);
                const std::int64_t hi = p * (g.psi.end() - 1 + k * scale);
                for (std::int64_t i = lo; i <= hi; ++i)
                    out.samples[static_cast<std::size_t>(i - out_lo)] +=
                        w * g.psi.at(dil * out.x(i) - static_cast<double>(k));
            }
        }
    }
    return out;
}

/// Max over gamma_s = s / samples of |sum conj(m_l) mt_l - 1| and
/// |sum conj(m_l) mt_l(. + 1/2)|, in double precision.
inline std::pair<double, double> mep_residual_float(const MaskSystem& sys, int samples = 1024) {
    if (samples < 2)
        throw Error(Errc::invalid_argument, "need at least 2 samples");
    sys.validate();
    double r1 = 0.0, r2 = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double g = static_cast<double>(s) / samples;
        auto row = [&](const Mask& m, const Mask& mt) {
            const auto c = std::conj(lp_eval_float(m.poly, g));
            return std::pair{c * lp_eval_float(mt.poly, g), c * lp_eval_float(mt.poly, g + 0.5)};
        };
        auto [a, b] = row(sys.m0, sys.mt0);
        for (std::size_t l = 0; l < sys.n(); ++l) {
            auto [x, y] = row(sys.gens[l], sys.tgens[l]);
            a += x;
            b += y;
        }
        r1 = std::max(r1, std::abs(a - 1.0));
        r2 = std::max(r2, std::abs(b));
    }
    return {r1, r2};
}

/// Two columns x, value; full double precision.
inline void write_csv(const std::string& path, const SampledFunction& f) {
    std::ofstream os(path);
    if (!os)
        throw Error(Errc::io_error, "cannot write " + path);
    os << "x,value\n" << std::setprecision(17);
    for (std::int64_t i = f.start; i < f.end(); ++i)
        os << f.x(i) << ',' << f.at_index(i) << '\n';
}

} // namespace framekit
