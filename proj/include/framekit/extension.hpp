#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "laurent.hpp"
#include "masks.hpp"

namespace framekit {

/// Rows of the MEP matrices: (m0, m1..mn) and (mt0, mt1..mtn).
struct MaskSystem {
    Mask m0, mt0;
    std::vector<Mask> gens, tgens;

    std::size_t n() const { return gens.size(); }

    void validate() const {
        if (gens.size() != tgens.size())
            throw Error(Errc::invalid_argument, "gens and tgens must have equal length");
        if (gens.empty())
            throw Error(Errc::invalid_argument, "a mask system needs at least one generator pair");
    }
};

enum class Verdict { dual_frames, identity_fails_only, bessel_fails };

constexpr std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::dual_frames: return "DualFrames";
    case Verdict::identity_fails_only: return "IdentityFailsOnly";
    case Verdict::bessel_fails: return "BesselFails";
    }
    return "?";
}

struct VerifyReport {
    struct BesselFlag {
        bool m_ok = false;
        bool mt_ok = false;
    };
    bool setup_ok = false;
    std::vector<BesselFlag> bessel;
    LaurentPoly identity_row1;  // sum conj(m_l) mt_l - 1
    LaurentPoly identity_row2;  // sum conj(m_l) mt_l(. + 1/2)
    LaurentPoly identity_row2b; // sum conj(mt_l) m_l(. + 1/2), the other off-diagonal entry
    Verdict verdict = Verdict::identity_fails_only;

    bool bessel_ok() const {
        for (const auto& b : bessel)
            if (!b.m_ok || !b.mt_ok)
                return false;
        return true;
    }
    bool identity_ok() const { return identity_row1.is_zero() && identity_row2.is_zero() && identity_row2b.is_zero(); }
};

/// Exact check of  M~(gamma)^* M(gamma) = I  plus the Bessel condition
/// m_l(0) = mt_l(0) = 0 for every added generator.
inline VerifyReport mep_verify(const MaskSystem& sys) {
    sys.validate();
    VerifyReport r;
    r.setup_ok = check_setup(sys.m0) && check_setup(sys.mt0);

    auto rows = [&](auto&& visit) {
        visit(sys.m0, sys.mt0);
        for (std::size_t l = 0; l < sys.n(); ++l)
            visit(sys.gens[l], sys.tgens[l]);
    };
    LaurentPoly row1(-1), row2, row2b;
    rows([&](const Mask& m, const Mask& mt) {
        row1 += lp_conj(m.poly) * mt.poly;
        row2 += lp_conj(m.poly) * lp_half_shift(mt.poly);
        row2b += lp_conj(mt.poly) * lp_half_shift(m.poly);
    });
    r.identity_row1 = std::move(row1);
    r.identity_row2 = std::move(row2);
    r.identity_row2b = std::move(row2b);

    for (std::size_t l = 0; l < sys.n(); ++l)
        r.bessel.push_back({is_bessel_mask(sys.gens[l]), is_bessel_mask(sys.tgens[l])});

    if (!r.bessel_ok())
        r.verdict = Verdict::bessel_fails;
    else if (!r.identity_ok())
        r.verdict = Verdict::identity_fails_only;
    else
        r.verdict = Verdict::dual_frames;
    return r;
}

/// Ma(g) Ma(g + 1/2) == Mb(g) Mb(g + 1/2), exactly.
inline bool condition_II_holds(const Mask& ma, const Mask& mb) {
    return ma.poly * lp_half_shift(ma.poly) == mb.poly * lp_half_shift(mb.poly);
}

struct ExtensionArtifacts {
    LaurentPoly lambda_alpha, lambda_beta;
    LaurentPoly gamma, gamma_alpha, gamma_beta;
    bool sign_unit_applied = false;     // Gamma <- z Gamma, Gamma_alpha <- z^-1 Gamma_alpha
    bool degenerate_zero_masks = false; // Lambda_alpha = Lambda_beta = 0
    GaussianRational presentation_unit{1}; // (m2, mt2) both multiplied by unit * z^shift
    int presentation_shift = 0;
};

struct ExtensionOutcome {
    Mask m2, mt2;
    std::optional<Mask> m3, mt3;
    ExtensionArtifacts artifacts;
    MaskSystem system; // the extended n = 2 or n = 3 system
    VerifyReport report;
};

namespace detail {

inline NecessaryReport require_necessary(const Mask& m0, const Mask& mt0, const Mask& m1, const Mask& mt1) {
    NecessaryReport nc = necessary_conditions(m0, mt0, m1, mt1);
    if (!nc.all_pass()) {
        std::string which;
        if (!nc.cond_a.pass)
            which += " (a)";
        if (!nc.cond_b.pass)
            which += " (b)";
        if (!nc.cond_c.pass)
            which += " (c)";
        throw Error(Errc::necessary_conditions_fail, "failed:" + which);
    }
    return nc;
}

// Rotates the lowest coefficient into {re > 0} or {re == 0, im > 0} using
// one of the units 1, i, -1, -i.
inline GaussianRational canonical_phase(const GaussianRational& c) {
    const GaussianRational I = GaussianRational::i();
    for (GaussianRational u : {GaussianRational(1), I, GaussianRational(-1), -I}) {
        GaussianRational v = u * c;
        if (v.re().sign() > 0 || (v.re().is_zero() && v.im().sign() > 0))
            return u;
    }
    return GaussianRational(1);
}

inline MaskSystem extended(const Mask& m0, const Mask& mt0, const Mask& m1, const Mask& mt1,
                           std::vector<Mask> extra, std::vector<Mask> textra) {
    MaskSystem s{m0, mt0, {m1}, {mt1}};
    for (auto& m : extra)
        s.gens.push_back(std::move(m));
    for (auto& m : textra)
        s.tgens.push_back(std::move(m));
    return s;
}

} // namespace detail

/// Adds a single generator pair (m2, mt2) by splitting Lambda_alpha and
/// Lambda_beta through their gcd. Succeeds iff condition (II) holds; the
/// result is always re-verified.
inline ExtensionOutcome extend_one_pair(const Mask& m0, const Mask& mt0, const Mask& m1, const Mask& mt1) {
    detail::require_necessary(m0, mt0, m1, mt1);
    auto [ma, mb] = compute_m_alpha_beta(m0, mt0, m1, mt1);
    if (!condition_II_holds(ma, mb))
        throw Error(Errc::condition_ii_fails, "Ma(g)Ma(g+1/2) != Mb(g)Mb(g+1/2)");

    ExtensionOutcome out;
    auto& art = out.artifacts;
    std::tie(art.lambda_alpha, art.lambda_beta) = extract_lambdas(ma, mb);

    if (art.lambda_alpha.is_zero() && art.lambda_beta.is_zero()) {
        art.degenerate_zero_masks = true;
        out.m2 = {LaurentPoly{}, "m2"};
        out.mt2 = {LaurentPoly{}, "mt2"};
    } else {
        // Condition (II) in an integral domain: one zero Lambda forces the other.
        if (art.lambda_alpha.is_zero() || art.lambda_beta.is_zero())
            throw Error(Errc::internal_shift_mismatch, "exactly one of Lambda_alpha, Lambda_beta vanishes");

        art.gamma = lp_gcd(art.lambda_alpha, art.lambda_beta);
        art.gamma_alpha = lp_divide_exact(art.lambda_alpha, art.gamma);
        art.gamma_beta = lp_divide_exact(art.lambda_beta, art.gamma);

        // Gamma_beta = c * Gamma_alpha(. + 1/2) with c^2 = 1.
        const LaurentPoly shifted = lp_half_shift(art.gamma_alpha);
        if (shifted != art.gamma_beta) {
            if (-shifted != art.gamma_beta)
                throw Error(Errc::internal_shift_mismatch,
                            "Gamma_beta is not +-Gamma_alpha(.+1/2): Gamma_alpha = " + to_text(art.gamma_alpha) +
                                ", Gamma_beta = " + to_text(art.gamma_beta));
            art.gamma = lp_shift(art.gamma, 1);
            art.gamma_alpha = lp_shift(art.gamma_alpha, -1);
            art.gamma_beta = lp_shift(art.gamma_beta, -1);
            art.sign_unit_applied = true;
            if (lp_half_shift(art.gamma_alpha) != art.gamma_beta)
                throw Error(Errc::internal_shift_mismatch, "sign correction did not align Gamma_beta");
        }

        LaurentPoly m2 = trig::esin() * lp_conj(art.gamma);
        LaurentPoly mt2 = trig::esin() * art.gamma_alpha;

        // Multiplying both masks by u z^{2k} with |u| = 1 preserves both identities.
        art.presentation_unit = detail::canonical_phase(m2.lowest_coeff());
        m2 *= art.presentation_unit;
        mt2 *= art.presentation_unit;
        int lo = m2.min_exp();
        art.presentation_shift = -(lo - (((lo % 2) + 2) % 2));
        m2 = lp_shift(m2, art.presentation_shift);
        mt2 = lp_shift(mt2, art.presentation_shift);

        out.m2 = {std::move(m2), "m2"};
        out.mt2 = {std::move(mt2), "mt2"};
    }

    out.system = detail::extended(m0, mt0, m1, mt1, {out.m2}, {out.mt2});
    out.report = mep_verify(out.system);
    if (out.report.verdict != Verdict::dual_frames)
        throw Error(Errc::internal_shift_mismatch, "constructed pair failed exact verification");
    return out;
}

/// Adds two generator pairs with the closed formulas
///   m2 = conj(Ma) + conj(Mb),                 mt2 = sin^2
///   m3 = sin cos conj(La) - i sin^2 conj(Lb), mt3 = sin cos
/// which only need conditions (a), (b), (c).
inline ExtensionOutcome extend_two_pairs(const Mask& m0, const Mask& mt0, const Mask& m1, const Mask& mt1) {
    detail::require_necessary(m0, mt0, m1, mt1);
    auto [ma, mb] = compute_m_alpha_beta(m0, mt0, m1, mt1);

    ExtensionOutcome out;
    auto& art = out.artifacts;
    std::tie(art.lambda_alpha, art.lambda_beta) = extract_lambdas(ma, mb);
    art.degenerate_zero_masks = art.lambda_alpha.is_zero() && art.lambda_beta.is_zero();

    const GaussianRational minus_i = -GaussianRational::i();
    out.m2 = {lp_conj(ma.poly) + lp_conj(mb.poly), "m2"};
    out.mt2 = {trig::sin2(), "mt2"};
    out.m3 = Mask{trig::sincos() * lp_conj(art.lambda_alpha) + minus_i * (trig::sin2() * lp_conj(art.lambda_beta)), "m3"};
    out.mt3 = Mask{trig::sincos(), "mt3"};

    out.system = detail::extended(m0, mt0, m1, mt1, {out.m2, *out.m3}, {out.mt2, *out.mt3});
    out.report = mep_verify(out.system);
    if (out.report.verdict != Verdict::dual_frames)
        throw Error(Errc::internal_shift_mismatch, "two-pair construction failed exact verification");
    return out;
}

/// 3 conj(d0) dt0 + 3 conj(d1) dt1 - conj(d1) dt0 - conj(d0) dt1, and whether it equals 2.
inline std::pair<bool, GaussianRational> b2_three_term_criterion(const GaussianRational& d0, const GaussianRational& d1,
                                                                 const GaussianRational& dt0,
                                                                 const GaussianRational& dt1) {
    const GaussianRational three(3);
    GaussianRational v = three * d0.conj() * dt0 + three * d1.conj() * dt1 - d1.conj() * dt0 - d0.conj() * dt1;
    bool ok = v == GaussianRational(2);
    return {ok, std::move(v)};
}

/// psi(x) = d0 B2(2x) + (d1 - d0) B2(2x-1) - d1 B2(2x-2), as a mask.
inline Mask b2_three_term_mask(const GaussianRational& d0, const GaussianRational& d1, std::string label) {
    TimeCoeffs c;
    c.coeffs = {{0, d0}, {1, d1 - d0}, {2, -d1}};
    for (auto it = c.coeffs.begin(); it != c.coeffs.end();)
        it = it->second.is_zero() ? c.coeffs.erase(it) : std::next(it);
    return mask_from_time_coeffs(c, std::move(label));
}

/// The n = 1 system with phi = phi~ = B2 and the three-term wavelets above.
inline MaskSystem b2_three_term_system(const GaussianRational& d0, const GaussianRational& d1,
                                       const GaussianRational& dt0, const GaussianRational& dt1) {
    return {bspline_mask(2), bspline_mask(2), {b2_three_term_mask(d0, d1, "m1")}, {b2_three_term_mask(dt0, dt1, "mt1")}};
}

/// Whether condition (II) on the induced B2 system agrees with the closed
/// three-term criterion.
inline bool criterion_matches_condition_II(const GaussianRational& d0, const GaussianRational& d1,
                                           const GaussianRational& dt0, const GaussianRational& dt1) {
    const MaskSystem s = b2_three_term_system(d0, d1, dt0, dt1);
    auto [ma, mb] = compute_m_alpha_beta(s.m0, s.mt0, s.gens[0], s.tgens[0]);
    return condition_II_holds(ma, mb) == b2_three_term_criterion(d0, d1, dt0, dt1).first;
}

} // namespace framekit
