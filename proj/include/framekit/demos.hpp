#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "error.hpp"
#include "extension.hpp"
#include "laurent.hpp"
#include "masks.hpp"

namespace framekit {

enum class DemoTag {
    extendable_single,          // one added pair suffices
    not_extendable_single,      // condition (II) fails; two pairs still work
    identity_holds_bessel_fails,
    extendable_two,             // two-pair closed formulas, with known Lambdas
};

constexpr std::string_view to_string(DemoTag t) {
    switch (t) {
    case DemoTag::extendable_single: return "ExtendableSingle";
    case DemoTag::not_extendable_single: return "NotExtendableSingle";
    case DemoTag::identity_holds_bessel_fails: return "IdentityHoldsBesselFails";
    case DemoTag::extendable_two: return "ExtendableTwo";
    }
    return "?";
}

struct Demo {
    std::string name;
    std::string description;
    MaskSystem system;
    DemoTag tag;
    // Closed forms the construction must reproduce, when known.
    std::optional<LaurentPoly> expected_lambda_alpha;
    std::optional<LaurentPoly> expected_lambda_beta;
    std::vector<std::string> notes;
};

inline constexpr std::array<std::string_view, 5> demo_names = {
    "b2-nonbessel", "b2-single-pair", "b2-no-single-pair", "b1-b3-mep", "b2l-two-pairs",
};

namespace detail {

inline GaussianRational q(long n, long d = 1) { return GaussianRational(Rational(n, d)); }

inline Demo demo_b2_nonbessel() {
    // m0 = mt0 = e^{-2 pi i g} cos^2, m1 = mt1 = e^{-2 pi i g} sin^2,
    // m2 = 2 cos^2 sin^2, mt2 = 1.
    const LaurentPoly b2 = bspline_mask(2).poly;
    const LaurentPoly m1 = lp_shift(trig::sin2(), 1);
    Demo d{"b2-nonbessel",
           "B2 system whose matrix identity holds although mt2 = 1 is not a Bessel mask",
           {{b2, "m0"}, {b2, "mt0"}, {{m1, "m1"}, {GaussianRational(2) * (trig::cos2() * trig::sin2()), "m2"}},
            {{m1, "mt1"}, {LaurentPoly(1), "mt2"}}},
           DemoTag::identity_holds_bessel_fails,
           {},
           {},
           {}};
    return d;
}

inline Demo demo_b2_single_pair() {
    Demo d{"b2-single-pair",
           "B2 three-term pair (d0, d1, dt0, dt1) = (1, 0, 1/2, -1/2), extendable by one pair",
           b2_three_term_system(q(1), q(0), q(1, 2), q(-1, 2)),
           DemoTag::extendable_single,
           // (3 + 4z + z^-1)/4 and (-3z - 2 + z^-1)/4, both divisible by 1 + z
           LaurentPoly{{-1, q(1, 4)}, {0, q(1)}, {1, q(3, 4)}},
           LaurentPoly{{-1, q(1, 4)}, {0, q(-1, 2)}, {1, q(-3, 4)}},
           {"psi1 = B2(2x) - B2(2x-1); psit1 = B2(2x)/2 - B2(2x-1) + B2(2x-2)/2"}};
    return d;
}

inline Demo demo_b2_no_single_pair() {
    return {"b2-no-single-pair",
            "B2 pair psi1 = psit1 = B2(2x) - B2(2x-1); three-term criterion gives 3, not 2",
            b2_three_term_system(q(1), q(0), q(1), q(0)),
            DemoTag::not_extendable_single,
            {},
            {},
            {}};
}

inline Demo demo_b1_b3_mep() {
    const GaussianRational I = GaussianRational::i();
    // i e^{pi i g} sin(pi g) = i z^-1 (1 - z)/(2i)
    const LaurentPoly isin_plus = I * lp_shift(trig::esin(), -1);
    Demo d{"b1-b3-mep",
           "phi = B1 against phit = B3(x+1); one added pair m2 = mt2 = i e^{-pi i g} sin(pi g)",
           {{bspline_mask(1).poly, "m0"},
            {lp_shift(bspline_mask(3).poly, -1), "mt0"},
            {{isin_plus * trig::cos2(), "m1"}},
            {{isin_plus, "mt1"}}},
           DemoTag::extendable_single,
           LaurentPoly(1),
           LaurentPoly(1),
           {"psi1 = (B1(2x+2) + B1(2x+1) - B1(2x) - B1(2x-1))/4 is the time form of m1",
            "psit1 = B3(2x+2) - B3(2x+1) is the time form of mt1"}};
    return d;
}

inline Demo demo_b2l_two_pairs(int ell) {
    if (ell < 2)
        throw Error(Errc::invalid_argument, "b2l-two-pairs needs l >= 2");
    const auto l = static_cast<unsigned>(ell);
    const LaurentPoly m0 = lp_pow(trig::cos2(), l);
    const LaurentPoly m1 = lp_pow(trig::sin2(), l);

    // La = sum_{k=0}^{2l-1} cos^{2k} - sin^{4l-2},  Lb = -2i (sin cos)^{2l-1}
    LaurentPoly la;
    for (unsigned k = 0; k < 2 * l; ++k)
        la += lp_pow(trig::cos2(), k);
    la -= lp_pow(trig::sin2(), 2 * l - 1);
    LaurentPoly lb = GaussianRational(Rational(0), Rational(-2)) * lp_pow(trig::sincos(), 2 * l - 1);

    return {"b2l-two-pairs",
            "centered B_{2l}, m0 = mt0 = cos^{2l}, m1 = mt1 = sin^{2l}, extended by two pairs (l = " +
                std::to_string(ell) + ")",
            {{m0, "m0"}, {m0, "mt0"}, {{m1, "m1"}}, {{m1, "mt1"}}},
            DemoTag::extendable_two,
            std::move(la),
            std::move(lb),
            {}};
}

} // namespace detail

/// The named constructions, with their expected outcome tags.
inline Demo demo_registry(std::string_view name, int ell = 2) {
    if (name == "b2-nonbessel")
        return detail::demo_b2_nonbessel();
    if (name == "b2-single-pair")
        return detail::demo_b2_single_pair();
    if (name == "b2-no-single-pair")
        return detail::demo_b2_no_single_pair();
    if (name == "b1-b3-mep")
        return detail::demo_b1_b3_mep();
    if (name == "b2l-two-pairs")
        return detail::demo_b2l_two_pairs(ell);
    throw Error(Errc::unknown_demo, "no demo named '" + std::string(name) + "'");
}

} // namespace framekit
