// framekit command-line front end. Prints one JSON report per invocation.

#include <iostream>

#include <CLI11.hpp>

#include <framekit/cli.hpp>

namespace fc = framekit::cli;

int main(int argc, char** argv) {
    CLI::App app{"Exact construction and verification of dual wavelet frames"};
    app.require_subcommand(1);

    fc::Source src;
    auto add_source = [&](CLI::App* sub) {
        sub->add_option("--input", src.path, "mask system JSON file");
        sub->add_option("--demo", src.demo, "use a named demo system instead of a file");
        sub->add_option("--l", src.ell, "l for b2l-two-pairs")->check(CLI::Range(2, 64));
    };

    auto* check = app.add_subcommand("check", "necessary conditions for single-pair extension");
    add_source(check);

    auto* verify = app.add_subcommand("verify", "exact MEP verification");
    add_source(verify);

    std::string mode = "one";
    auto* extend = app.add_subcommand("extend", "add one or two generator pairs");
    add_source(extend);
    extend->add_option("--mode", mode, "one|two")->check(CLI::IsMember({"one", "two"}));

    fc::RenderOptions ropt;
    auto* render = app.add_subcommand("render", "sample phi, psi and reconstruct psi_1 numerically");
    add_source(render);
    render->add_option("--level", ropt.level, "grid level J (step 2^-J)");
    render->add_option("--jmin", ropt.j_min, "smallest dilation");
    render->add_option("--jmax", ropt.j_max, "largest dilation");
    render->add_option("--tol", ropt.tol, "cascade stopping tolerance");
    render->add_option("--max-iter", ropt.max_iter, "cascade iteration cap");
    render->add_option("--samples", ropt.samples, "samples for the float MEP residual");
    render->add_option("--out", ropt.out_dir, "directory for CSV and reconstruction.json");

    std::string demo_name;
    auto* demo = app.add_subcommand("demo", "run a named demo, or 'list' / 'all'");
    demo->add_option("name", demo_name, "demo name, list or all")->required();
    demo->add_option("--l", src.ell, "l for b2l-two-pairs")->check(CLI::Range(2, 64));

    int count = 200;
    auto* property = app.add_subcommand("property", "randomized three-term criterion check (seed: FRAMEKIT_SEED)");
    property->add_option("--count", count, "number of random cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : fc::exit_usage;
    }

    fc::CommandReport report;
    if (*check)
        report = fc::cmd_check(src);
    else if (*verify)
        report = fc::cmd_verify(src);
    else if (*extend)
        report = fc::cmd_extend(src, mode == "one" ? fc::ExtendMode::one : fc::ExtendMode::two);
    else if (*render)
        report = fc::cmd_render(src, ropt);
    else if (*demo)
        report = fc::cmd_demo(demo_name, src.ell);
    else
        report = fc::cmd_property(count);

    std::cout << report.to_json().dump(2) << '\n';
    return report.exit_code;
}
