#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <framekit/demos.hpp>
#include <framekit/io.hpp>

#include "../support/random_poly.hpp"

using namespace framekit;

namespace {

GaussianRational q(long n, long d = 1) { return GaussianRational(Rational(n, d)); }

template <class F>
Errc code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return Errc::invalid_argument;
}

const char* kSystem = R"({
  "m0":  {"label": "B2", "poly": {"0": "1/4", "1": "1/2", "2": "1/4"}},
  "mt0": {"0": "0.25", "1": "0.5", "2": "0.25"},
  "gens":  [{"label": "m1", "poly": {"0": "1/2", "1": "-1/2"}}],
  "tgens": [{"0": "1/4", "1": "-1/2", "2": "1/4"}]
})";

} // namespace

TEST(PolyJson, RoundTrip) {
    std::mt19937_64 rng(testgen::seed());
    for (int c = 0; c < 300; ++c) {
        const LaurentPoly p = testgen::poly(rng);
        ASSERT_EQ(poly_from_json(json::parse(to_json(p).dump())), p);
    }
}

TEST(PolyJson, Format) {
    const LaurentPoly p{{-1, GaussianRational(Rational(1, 2), Rational(-3, 4))}, {2, q(5)}};
    EXPECT_EQ(to_json(p).dump(), R"({"-1":"1/2-3/4*i","2":"5"})");
    EXPECT_EQ(to_json(LaurentPoly()).dump(), "{}");
}

TEST(PolyJson, AcceptsIntegersAndDyadicDecimals) {
    EXPECT_EQ(poly_from_json(json::parse(R"({"0": 1, "1": "0.5", "+2": "-i"})")),
              (LaurentPoly{{0, q(1)}, {1, q(1, 2)}, {2, -GaussianRational::i()}}));
}

TEST(PolyJson, Rejections) {
    EXPECT_EQ(code_of([] { poly_from_json(json::parse(R"({"0": 0.5})")); }), Errc::parse_error);
    EXPECT_EQ(code_of([] { poly_from_json(json::parse(R"({"0": "0.1"})")); }), Errc::parse_error);
    EXPECT_EQ(code_of([] { poly_from_json(json::parse(R"({"x": "1"})")); }), Errc::parse_error);
    EXPECT_EQ(code_of([] { poly_from_json(json::parse(R"({"1.5": "1"})")); }), Errc::parse_error);
    EXPECT_EQ(code_of([] { poly_from_json(json::parse(R"(["1"])")); }), Errc::parse_error);
    EXPECT_EQ(code_of([] { poly_from_json(json::parse(R"({"0": null})")); }), Errc::parse_error);
}

TEST(MaskJson, LabelledAndBare) {
    const Mask a = mask_from_json(json::parse(R"({"label": "m", "poly": {"0": "1"}})"));
    EXPECT_EQ(a.label, "m");
    EXPECT_EQ(a.poly, LaurentPoly(1));
    const Mask b = mask_from_json(json::parse(R"({"0": "1"})"));
    EXPECT_EQ(b.poly, LaurentPoly(1));
    EXPECT_EQ(code_of([] { mask_from_json(json::parse(R"({"label": 3, "poly": {}})")); }), Errc::parse_error);
}

TEST(TimeCoeffsJson, RoundTrip) {
    const TimeCoeffs c{{{-1, q(1)}, {0, q(2)}, {1, q(-3)}}};
    EXPECT_EQ(to_json(c).dump(), R"({"coeffs":{"-1":"1","0":"2","1":"-3"}})");
    EXPECT_EQ(time_coeffs_from_json(to_json(c)), c);
    EXPECT_EQ(code_of([] { time_coeffs_from_json(json::parse(R"({"0": "1"})")); }), Errc::parse_error);
}

TEST(SystemJson, ParsesMixedForms) {
    const MaskSystem s = system_from_json(json::parse(kSystem));
    EXPECT_EQ(s.m0.poly, bspline_mask(2).poly);
    EXPECT_EQ(s.mt0.poly, bspline_mask(2).poly);
    EXPECT_EQ(s.gens[0].label, "m1");
    EXPECT_EQ(s.tgens[0].poly, (LaurentPoly{{0, q(1, 4)}, {1, q(-1, 2)}, {2, q(1, 4)}}));
}

TEST(SystemJson, RoundTripOfDemos) {
    for (auto name : demo_names) {
        const MaskSystem s = demo_registry(name).system;
        const MaskSystem t = system_from_json(json::parse(to_json(s).dump()));
        EXPECT_EQ(t.m0, s.m0);
        EXPECT_EQ(t.mt0, s.mt0);
        EXPECT_EQ(t.gens, s.gens);
        EXPECT_EQ(t.tgens, s.tgens);
        EXPECT_EQ(to_json(t).dump(), to_json(s).dump());
    }
}

TEST(SystemJson, StructuralErrors) {
    EXPECT_EQ(code_of([] { system_from_json(json::parse(R"({"m0": {}, "mt0": {}, "gens": [], "tgens": []})")); }),
              Errc::parse_error);
    EXPECT_EQ(code_of([] { system_from_json(json::parse(R"({"m0": {}, "mt0": {}, "gens": [{}]})")); }),
              Errc::parse_error);
    EXPECT_EQ(code_of([] {
                  system_from_json(json::parse(R"({"m0": {}, "mt0": {}, "gens": [{}], "tgens": [{}, {}]})"));
              }),
              Errc::parse_error);
    EXPECT_EQ(code_of([] { system_from_json(json::parse(R"({"m0": {}, "mt0": {}, "gens": {}, "tgens": []})")); }),
              Errc::parse_error);
    EXPECT_EQ(code_of([] { parse_json_text("{not json"); }), Errc::parse_error);
}

TEST(SystemJson, LoadFromDisk) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "framekit_io_test_system.json";
    {
        std::ofstream os(path);
        os << kSystem;
    }
    EXPECT_EQ(load_system(path.string()).m0.poly, bspline_mask(2).poly);
    std::filesystem::remove(path);
    EXPECT_EQ(code_of([&] { load_system((dir / "framekit_no_such_file.json").string()); }), Errc::io_error);
}

TEST(SystemJson, SamplesDirectoryParses) {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(FRAMEKIT_SAMPLES_DIR)) {
        if (entry.path().extension() != ".json")
            continue;
        EXPECT_NO_THROW(load_system(entry.path().string())) << entry.path();
        ++count;
    }
    EXPECT_GE(count, 5);
}

TEST(ReportJson, VerifyAndExtension) {
    const Demo d = demo_registry("b2-single-pair");
    const MaskSystem& s = d.system;
    const json v = to_json(mep_verify(s));
    EXPECT_EQ(v.at("verdict"), "IdentityFailsOnly");
    EXPECT_FALSE(v.at("identity_row1").empty());

    const json o = to_json(extend_one_pair(s.m0, s.mt0, s.gens[0], s.tgens[0]));
    EXPECT_EQ(o.at("report").at("verdict"), "DualFrames");
    EXPECT_EQ(o.at("report").at("identity_row1"), json::object());
    EXPECT_EQ(o.at("artifacts").at("lambda_alpha"), (json{{"-1", "1/4"}, {"0", "1"}, {"1", "3/4"}}));
    EXPECT_TRUE(o.at("artifacts").at("sign_unit_applied").get<bool>());
    EXPECT_TRUE(o.at("m3").is_null());
    EXPECT_EQ(o.at("time_coeffs").at("m2"), (json{{"coeffs", {{"0", "1"}, {"2", "-1"}}}}));
}

TEST(ReportJson, Necessary) {
    const MaskSystem s = demo_registry("b2-single-pair").system;
    const json n = to_json(evaluate_necessary(s.m0, s.mt0, s.gens, s.tgens));
    EXPECT_TRUE(n.at("all_pass").get<bool>());
    EXPECT_EQ(n.at("cond_b").at("m0_at_half"), "0");
    EXPECT_EQ(n.at("cond_a").at("m_at_0"), (json{"0"}));
}
