#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "demos.hpp"
#include "error.hpp"
#include "extension.hpp"
#include "io.hpp"
#include "render.hpp"

namespace framekit::cli {

// Stable exit-code contract.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_necessary = 2;
inline constexpr int exit_condition_ii = 3;
inline constexpr int exit_internal = 4;
inline constexpr int exit_nonconvergence = 5;
inline constexpr int exit_usage = 64;
inline constexpr int exit_parse = 65;
inline constexpr int exit_io = 66;

inline int exit_code_for(Errc e) {
    switch (e) {
    case Errc::necessary_conditions_fail:
    case Errc::setup_violated: return exit_necessary;
    case Errc::condition_ii_fails: return exit_condition_ii;
    case Errc::internal_shift_mismatch: return exit_internal;
    case Errc::unknown_demo:
    case Errc::invalid_argument: return exit_usage;
    case Errc::parse_error: return exit_parse;
    case Errc::io_error: return exit_io;
    default: return exit_failed;
    }
}

struct CommandReport {
    std::string command;
    json inputs = json::object();
    json outcome = json::object();
    int exit_code = exit_ok;

    json to_json() const {
        return {{"command", command}, {"inputs", inputs}, {"outcome", outcome}, {"exit_code", exit_code}};
    }
};

inline json error_json(const Error& e) {
    return {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
}

/// Where a mask system comes from: a JSON file or a named demo.
struct Source {
    std::optional<std::string> path;
    std::optional<std::string> demo;
    int ell = 2;

    json to_json() const {
        json j = json::object();
        if (path)
            j["input"] = *path;
        if (demo) {
            j["demo"] = *demo;
            if (*demo == "b2l-two-pairs")
                j["l"] = ell;
        }
        return j;
    }

    MaskSystem load() const {
        if (path && demo)
            throw Error(Errc::invalid_argument, "give either --input or --demo, not both");
        if (path)
            return load_system(*path);
        if (demo)
            return demo_registry(*demo, ell).system;
        throw Error(Errc::invalid_argument, "no input: pass --input PATH or --demo NAME");
    }
};

/// Runs body(report); framework errors become an error outcome with the
/// mapped exit code.
template <class F>
CommandReport run_guarded(std::string command, json inputs, F&& body) {
    CommandReport r{std::move(command), std::move(inputs)};
    try {
        body(r);
    } catch (const Error& e) {
        r.outcome = error_json(e);
        r.exit_code = exit_code_for(e.code());
    }
    return r;
}

inline CommandReport cmd_check(const Source& src) {
    return run_guarded("check", src.to_json(), [&](CommandReport& r) {
        const MaskSystem sys = src.load();
        const NecessaryReport nr = evaluate_necessary(sys.m0, sys.mt0, sys.gens, sys.tgens);
        r.outcome = to_json(nr);
        r.exit_code = nr.all_pass() ? exit_ok : exit_failed;
    });
}

inline CommandReport cmd_verify(const Source& src) {
    return run_guarded("verify", src.to_json(), [&](CommandReport& r) {
        const VerifyReport vr = mep_verify(src.load());
        r.outcome = to_json(vr);
        r.exit_code = vr.verdict == Verdict::dual_frames ? exit_ok : exit_failed;
    });
}

enum class ExtendMode { one, two };

inline CommandReport cmd_extend(const Source& src, ExtendMode mode) {
    json inputs = src.to_json();
    inputs["mode"] = mode == ExtendMode::one ? "one" : "two";
    return run_guarded("extend", std::move(inputs), [&](CommandReport& r) {
        const MaskSystem sys = src.load();
        if (sys.n() != 1)
            throw Error(Errc::invalid_argument, "extend expects exactly one generator pair (m1, mt1)");
        const ExtensionOutcome o = mode == ExtendMode::one
                                       ? extend_one_pair(sys.m0, sys.mt0, sys.gens[0], sys.tgens[0])
                                       : extend_two_pairs(sys.m0, sys.mt0, sys.gens[0], sys.tgens[0]);
        r.outcome = to_json(o);
        r.exit_code = o.report.verdict == Verdict::dual_frames ? exit_ok : exit_failed;
    });
}

struct RenderOptions {
    int level = 8;
    int j_min = -6;
    int j_max = 8;
    double tol = 1e-10;
    int max_iter = 40;
    int samples = 1024;
    std::optional<std::string> out_dir;
};

/// Renders phi, phit and every psi_l, psit_l, then reconstructs f = psi_1 from
/// the truncated dual-frame expansion. Non-convergence of either cascade
/// takes precedence over every other non-zero exit.
inline CommandReport cmd_render(const Source& src, const RenderOptions& opt) {
    json inputs = src.to_json();
    inputs["level"] = opt.level;
    inputs["j_min"] = opt.j_min;
    inputs["j_max"] = opt.j_max;
    inputs["tol"] = opt.tol;
    inputs["max_iter"] = opt.max_iter;
    inputs["samples"] = opt.samples;
    if (opt.out_dir)
        inputs["out"] = *opt.out_dir;
    return run_guarded("render", std::move(inputs), [&](CommandReport& r) {
        if (opt.j_min > opt.j_max)
            throw Error(Errc::invalid_argument, "--jmin must not exceed --jmax");
        if (opt.level < 1)
            throw Error(Errc::invalid_argument, "--level must be at least 1");
        const MaskSystem sys = src.load();
        const VerifyReport vr = mep_verify(sys);
        const auto [res1, res2] = mep_residual_float(sys, opt.samples);

        const CascadeResult phi = cascade(sys.m0, opt.level, opt.tol, opt.max_iter);
        const CascadeResult phit = cascade(sys.mt0, opt.level, opt.tol, opt.max_iter);
        auto cascade_json = [](const CascadeResult& c) {
            return json{{"iterations", c.iterations}, {"last_change", c.last_change}, {"converged", c.converged}};
        };

        FrameSpec spec{opt.j_min, opt.j_max, {}};
        for (std::size_t l = 0; l < sys.n(); ++l)
            spec.generators.push_back({wavelet_from_mask(sys.gens[l], phi.phi), wavelet_from_mask(sys.tgens[l], phit.phi)});

        const SampledFunction& f = spec.generators.front().psi;
        const SampledFunction rec = frame_reconstruct(f, spec);
        const double err = relative_l2_error(rec, f);

        if (opt.out_dir) {
            namespace fs = std::filesystem;
            const fs::path dir(*opt.out_dir);
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec)
                throw Error(Errc::io_error, "cannot create " + dir.string() + ": " + ec.message());
            write_csv((dir / "phi.csv").string(), phi.phi);
            write_csv((dir / "phit.csv").string(), phit.phi);
            for (std::size_t l = 0; l < spec.generators.size(); ++l) {
                write_csv((dir / ("psi" + std::to_string(l + 1) + ".csv")).string(), spec.generators[l].psi);
                write_csv((dir / ("psit" + std::to_string(l + 1) + ".csv")).string(), spec.generators[l].psit);
            }
            std::ofstream os(dir / "reconstruction.json");
            if (!os)
                throw Error(Errc::io_error, "cannot write reconstruction.json");
            os << json{{"j_min", opt.j_min}, {"j_max", opt.j_max}, {"level", opt.level}, {"l2_rel_error", err}}.dump(2)
               << '\n';
        }

        r.outcome = {
            {"verdict", std::string(to_string(vr.verdict))},
            {"mep_residual_float", {res1, res2}},
            {"cascade", {{"phi", cascade_json(phi)}, {"phit", cascade_json(phit)}}},
            {"reconstruction", {{"j_min", opt.j_min}, {"j_max", opt.j_max}, {"level", opt.level}, {"l2_rel_error", err}}},
        };
        if (!phi.converged || !phit.converged) {
            r.outcome["note"] = "NonConvergence";
            r.exit_code = exit_nonconvergence;
        } else {
            r.exit_code = vr.verdict == Verdict::dual_frames ? exit_ok : exit_failed;
        }
    });
}

/// Runs a demo end to end and checks it against its expected tag.
inline json run_demo(const Demo& d) {
    json j = {{"name", d.name},
              {"description", d.description},
              {"tag", std::string(to_string(d.tag))},
              {"system", to_json(d.system)}};
    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok)
            failures.push_back(what);
    };
    auto check_lambdas = [&](const ExtensionArtifacts& a) {
        if (d.expected_lambda_alpha)
            expect(a.lambda_alpha == *d.expected_lambda_alpha, "lambda_alpha differs from its closed form");
        if (d.expected_lambda_beta)
            expect(a.lambda_beta == *d.expected_lambda_beta, "lambda_beta differs from its closed form");
    };
    const MaskSystem& s = d.system;

    switch (d.tag) {
    case DemoTag::identity_holds_bessel_fails: {
        const VerifyReport vr = mep_verify(s);
        j["verify"] = to_json(vr);
        expect(vr.identity_ok(), "matrix identity should hold exactly");
        expect(vr.verdict == Verdict::bessel_fails, "verdict should be BesselFails");
        break;
    }
    case DemoTag::extendable_single: {
        const ExtensionOutcome o = extend_one_pair(s.m0, s.mt0, s.gens[0], s.tgens[0]);
        j["extension"] = to_json(o);
        expect(o.report.verdict == Verdict::dual_frames, "extended system should be DualFrames");
        check_lambdas(o.artifacts);
        break;
    }
    case DemoTag::not_extendable_single: {
        try {
            extend_one_pair(s.m0, s.mt0, s.gens[0], s.tgens[0]);
            expect(false, "single-pair extension should fail with ConditionIIFails");
        } catch (const Error& e) {
            j["single_pair_error"] = error_json(e);
            expect(e.code() == Errc::condition_ii_fails, "single-pair extension should fail with ConditionIIFails");
        }
        const ExtensionOutcome o = extend_two_pairs(s.m0, s.mt0, s.gens[0], s.tgens[0]);
        j["two_pair_extension"] = to_json(o);
        expect(o.report.verdict == Verdict::dual_frames, "two-pair extension should be DualFrames");
        break;
    }
    case DemoTag::extendable_two: {
        const ExtensionOutcome o = extend_two_pairs(s.m0, s.mt0, s.gens[0], s.tgens[0]);
        j["extension"] = to_json(o);
        expect(o.report.verdict == Verdict::dual_frames, "two-pair extension should be DualFrames");
        check_lambdas(o.artifacts);
        break;
    }
    }
    j["passed"] = failures.empty();
    j["failures"] = failures;
    return j;
}

inline CommandReport cmd_demo(const std::string& name, int ell = 2) {
    json inputs = {{"name", name}};
    if (name == "b2l-two-pairs")
        inputs["l"] = ell;
    return run_guarded("demo", std::move(inputs), [&](CommandReport& r) {
        if (name == "list") {
            json list = json::array();
            for (auto n : demo_names) {
                const Demo d = demo_registry(n, ell);
                list.push_back({{"name", d.name}, {"tag", std::string(to_string(d.tag))}, {"description", d.description}});
            }
            r.outcome = {{"demos", list}};
            return;
        }
        if (name == "all") {
            json results = json::array();
            bool ok = true;
            for (auto n : demo_names) {
                json one;
                try {
                    one = run_demo(demo_registry(n, ell));
                } catch (const Error& e) {
                    one = {{"name", std::string(n)}, {"passed", false}, {"error", error_json(e)}};
                }
                ok = ok && one.at("passed").get<bool>();
                results.push_back(std::move(one));
            }
            r.outcome = {{"demos", results}, {"passed", ok}};
            r.exit_code = ok ? exit_ok : exit_failed;
            return;
        }
        r.outcome = run_demo(demo_registry(name, ell));
        r.exit_code = r.outcome.at("passed").get<bool>() ? exit_ok : exit_failed;
    });
}

/// Uniform Gaussian rational with numerators in [-bound, bound] and
/// denominators in [1, bound].
inline GaussianRational random_gaussian(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
    const Rational re(num(rng), den(rng));
    const Rational im(num(rng), den(rng));
    return {re, im};
}

inline std::uint64_t seed_from_env(std::uint64_t fallback = 20240601) {
    if (const char* s = std::getenv("FRAMEKIT_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw Error(Errc::invalid_argument, std::string("FRAMEKIT_SEED is not an unsigned integer: ") + s);
        }
    }
    return fallback;
}

/// Randomized check that condition (II) on the three-term B2 system agrees
/// with the closed-form criterion. Half of the cases are solved so that the
/// criterion holds, since uniform draws almost never satisfy it.
inline CommandReport cmd_property(int count, long bound = 16) {
    return run_guarded("property", json::object(), [&](CommandReport& r) {
        const std::uint64_t seed = seed_from_env();
        r.inputs = {{"count", count}, {"bound", bound}, {"seed", seed}};
        if (count < 1)
            throw Error(Errc::invalid_argument, "--count must be positive");
        std::mt19937_64 rng(seed);
        int agree = 0, positives = 0;
        json mismatches = json::array();
        for (int c = 0; c < count; ++c) {
            GaussianRational d0 = random_gaussian(rng, bound), d1 = random_gaussian(rng, bound);
            GaussianRational dt0 = random_gaussian(rng, bound), dt1 = random_gaussian(rng, bound);
            if (c % 2 == 1) {
                // Solve the criterion for dt1 when its coefficient is non-zero.
                const GaussianRational k = GaussianRational(3) * d1.conj() - d0.conj();
                if (!k.is_zero())
                    dt1 = (GaussianRational(2) - GaussianRational(3) * d0.conj() * dt0 + d1.conj() * dt0) / k;
            }
            const bool holds = b2_three_term_criterion(d0, d1, dt0, dt1).first;
            positives += holds ? 1 : 0;
            if (criterion_matches_condition_II(d0, d1, dt0, dt1))
                ++agree;
            else
                mismatches.push_back({d0.to_string(), d1.to_string(), dt0.to_string(), dt1.to_string()});
        }
        r.outcome = {{"cases", count}, {"agree", agree}, {"criterion_true", positives}, {"mismatches", mismatches}};
        r.exit_code = agree == count ? exit_ok : exit_failed;
    });
}

} // namespace framekit::cli
