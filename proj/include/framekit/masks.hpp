#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "laurent.hpp"

namespace framekit {

/// A 1-periodic trigonometric polynomial used as a refinement or wavelet mask.
struct Mask {
    LaurentPoly poly;
    std::string label;

    friend bool operator==(const Mask& a, const Mask& b) { return a.poly == b.poly; }
};

/// Two-scale coefficients: psi(x) = sum_k c_k phi(2x - k).
struct TimeCoeffs {
    std::map<int, GaussianRational> coeffs;

    friend bool operator==(const TimeCoeffs& a, const TimeCoeffs& b) = default;
};

/// Mask of psi(x) = sum_k c_k phi(2x - k) is (1/2) sum_k c_k z^k.
inline Mask mask_from_time_coeffs(const TimeCoeffs& c, std::string label = {}) {
    Mask m{{}, std::move(label)};
    const GaussianRational half(Rational(1, 2));
    for (const auto& [k, v] : c.coeffs)
        m.poly.add_to(k, v * half);
    return m;
}

inline TimeCoeffs time_coeffs_from_mask(const Mask& m) {
    TimeCoeffs c;
    for (const auto& [k, v] : m.poly.terms())
        c.coeffs.emplace(k, v * GaussianRational(2));
    return c;
}

/// Refinement mask of the order-N B-spline. Uncentered: ((1+z)/2)^N, the
/// mask of B_N supported on [0, N]. Centered (N even): cos^N(pi gamma), the
/// mask of B_N(x + N/2).
inline Mask bspline_mask(int order, bool centered = false) {
    if (order < 1)
        throw Error(Errc::invalid_argument, "B-spline order must be >= 1");
    if (centered) {
        if (order % 2 != 0)
            throw Error(Errc::centered_odd_order, "centered B-spline mask needs an even order");
        return {lp_pow(trig::cos2(), static_cast<unsigned>(order / 2)), "B" + std::to_string(order) + "-centered"};
    }
    return {lp_pow(trig::ecos(), static_cast<unsigned>(order)), "B" + std::to_string(order)};
}

/// The wavelet system of a polynomial mask is Bessel iff the mask vanishes at 0.
inline bool is_bessel_mask(const Mask& m) {
    return lp_eval_exact(m.poly, EvalPoint::gamma_0).is_zero();
}

/// A refinement mask of a scaling function with phi-hat(0) = 1 has m0(0) = 1.
inline bool check_setup(const Mask& m0) {
    return lp_eval_exact(m0.poly, EvalPoint::gamma_0) == GaussianRational(1);
}

/// f = e^{-pi i gamma} sin(pi gamma) * Lambda_1; requires f(0) = 0.
inline LaurentPoly factor_sin(const Mask& f) {
    if (!is_bessel_mask(f))
        throw Error(Errc::precondition_violated, "factor_sin needs f(0) = 0");
    return lp_divide_exact(f.poly, trig::esin());
}

/// g = e^{-pi i gamma} cos(pi gamma) * Lambda_2; requires g(1/2) = 0.
inline LaurentPoly factor_cos(const Mask& g) {
    if (!lp_eval_exact(g.poly, EvalPoint::gamma_half).is_zero())
        throw Error(Errc::precondition_violated, "factor_cos needs g(1/2) = 0");
    return lp_divide_exact(g.poly, trig::ecos());
}

struct NecessaryReport {
    struct CondA {
        bool pass = true;
        std::vector<GaussianRational> m_at_0;  // m_l(0), l >= 1
        std::vector<GaussianRational> mt_at_0; // mt_l(0), l >= 1
    } cond_a;
    struct CondB {
        bool pass = false;
        GaussianRational m0_at_half;
        GaussianRational mt0_at_half;
    } cond_b;
    struct CondC {
        bool pass = false;
        std::optional<LaurentPoly> lambda; // 1 - conj(m0) mt0 = sin^2 * lambda
    } cond_c;
    bool setup_ok = false;
    GaussianRational m0_at_0;
    GaussianRational mt0_at_0;

    bool all_pass() const { return setup_ok && cond_a.pass && cond_b.pass && cond_c.pass; }
};

/// Evaluates the setup check and all three necessary conditions without
/// throwing; every condition is reported even after a failure.
inline NecessaryReport evaluate_necessary(const Mask& m0, const Mask& mt0,
                                          std::span<const Mask> gens, std::span<const Mask> tgens) {
    NecessaryReport r;
    r.m0_at_0 = lp_eval_exact(m0.poly, EvalPoint::gamma_0);
    r.mt0_at_0 = lp_eval_exact(mt0.poly, EvalPoint::gamma_0);
    r.setup_ok = check_setup(m0) && check_setup(mt0);

    for (const auto& m : gens) {
        r.cond_a.m_at_0.push_back(lp_eval_exact(m.poly, EvalPoint::gamma_0));
        r.cond_a.pass = r.cond_a.pass && r.cond_a.m_at_0.back().is_zero();
    }
    for (const auto& m : tgens) {
        r.cond_a.mt_at_0.push_back(lp_eval_exact(m.poly, EvalPoint::gamma_0));
        r.cond_a.pass = r.cond_a.pass && r.cond_a.mt_at_0.back().is_zero();
    }

    r.cond_b.m0_at_half = lp_eval_exact(m0.poly, EvalPoint::gamma_half);
    r.cond_b.mt0_at_half = lp_eval_exact(mt0.poly, EvalPoint::gamma_half);
    r.cond_b.pass = r.cond_b.m0_at_half.is_zero() && r.cond_b.mt0_at_half.is_zero();

    const LaurentPoly defect = LaurentPoly(1) - lp_conj(m0.poly) * mt0.poly;
    try {
        r.cond_c.lambda = lp_divide_exact(defect, trig::sin2());
        r.cond_c.pass = true;
    } catch (const Error& e) {
        if (e.code() != Errc::not_divisible)
            throw;
    }
    return r;
}

/// Conditions (a), (b), (c) for the pair (m1, mt1). Throws SetupViolated
/// unless m0(0) = mt0(0) = 1.
inline NecessaryReport necessary_conditions(const Mask& m0, const Mask& mt0, const Mask& m1, const Mask& mt1) {
    NecessaryReport r = evaluate_necessary(m0, mt0, std::span(&m1, 1), std::span(&mt1, 1));
    if (!r.setup_ok)
        throw Error(Errc::setup_violated, "m0(0) = " + r.m0_at_0.to_string() + ", mt0(0) = " +
                                              r.mt0_at_0.to_string() + "; both must be 1");
    return r;
}

/// The defects that added generators must absorb:
///   Ma = 1 - conj(m0) mt0 - conj(m1) mt1
///   Mb = -conj(m0) mt0(. + 1/2) - conj(m1) mt1(. + 1/2)
inline std::pair<Mask, Mask> compute_m_alpha_beta(const Mask& m0, const Mask& mt0, const Mask& m1, const Mask& mt1) {
    const LaurentPoly c0 = lp_conj(m0.poly), c1 = lp_conj(m1.poly);
    Mask ma{LaurentPoly(1) - c0 * mt0.poly - c1 * mt1.poly, "M_alpha"};
    Mask mb{-(c0 * lp_half_shift(mt0.poly)) - c1 * lp_half_shift(mt1.poly), "M_beta"};
    return {std::move(ma), std::move(mb)};
}

/// Ma = sin^2 * Lambda_alpha, Mb = -i sin cos * Lambda_beta.
inline std::pair<LaurentPoly, LaurentPoly> extract_lambdas(const Mask& ma, const Mask& mb) {
    return {lp_divide_exact(ma.poly, trig::sin2()), lp_divide_exact(mb.poly, trig::misc())};
}

} // namespace framekit
