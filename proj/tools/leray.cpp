#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "leray/blowdown.hpp"
#include "leray/experiment.hpp"

using namespace leray;

namespace {

void print_rows(const SweepReport& rep) {
    std::printf("%8s %6s %5s %12s %10s %10s %10s %10s %6s\n", "lambda", "R", "iter", "D", "D|lnl|/l^2", "lambda0", "F.e1",
                "osc/eps^2", "pass");
    for (const auto& r : rep.rows) {
        if (!r.converged) {
            std::printf("%8g %6g  FAILED: %s\n", r.lambda, r.r_outer, r.failure.c_str());
            continue;
        }
        std::printf("%8g %6g %5d %12.6g %10.5g %10.5g %10.5g %10.5g %6s\n", r.lambda, r.r_outer, r.newton_iters, r.d_total,
                    r.d_normalized, r.lambda0, r.force.x, r.blowdown.osc_ratio, r.all_pass() ? "yes" : "no");
    }
}

int finish(const SweepReport& rep, const std::string& out) {
    print_rows(rep);
    if (!out.empty()) {
        emit_reports(rep, out);
        std::printf("reports written to %s\n", out.c_str());
    }
    const auto failed = check_report(report_json(rep, false));
    for (const auto& f : failed) std::printf("FAIL %s\n", f.c_str());
    return failed.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invading-domains experiments for steady 2D flow past a disc"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    double lambda = 0.1;
    std::string out;
    bool no_fields = false, no_svg = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--radii", cfg.radii, "outer radii, increasing")->delimiter(',');
        sub->add_option("--ntheta", cfg.grid.n_theta, "angular nodes");
        sub->add_option("--nodes-per-octave", cfg.grid.nodes_per_octave, "radial nodes per doubling of r");
        sub->add_option("--tol", cfg.newton_tol, "relative Newton tolerance");
        sub->add_option("--threads", cfg.threads, "worker threads over lambda (0 = all cores)");
        sub->add_option("--out", out, "output directory");
        sub->add_flag("--no-fields", no_fields, "skip state directories");
        sub->add_flag("--no-svg", no_svg, "skip charts");
    };

    auto* run = app.add_subcommand("run", "invading-domains sequence at one lambda");
    run->add_option("--lambda", lambda, "far-field speed")->required();
    add_common(run);

    auto* sweep = app.add_subcommand("sweep", "sequence for several lambda values");
    sweep->add_option("--lambdas", cfg.lambdas, "far-field speeds")->delimiter(',')->required();
    add_common(sweep);

    std::string state_dir;
    double delta0 = 0.05;
    auto* blow = app.add_subcommand("blowdown", "rescale a saved state to the unit disc");
    blow->add_option("--state", state_dir, "state directory")->required()->check(CLI::ExistingDirectory);
    blow->add_option("--delta0", delta0, "outer margin")->check(CLI::Range(1e-6, 0.5));

    std::string report_path;
    auto* check = app.add_subcommand("check", "re-evaluate every slack of a report");
    check->add_option("--report", report_path, "report.json")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run || *sweep) {
            if (*run) cfg.lambdas = {lambda};
            cfg.write_fields = !no_fields;
            cfg.write_svg = !no_svg;
            return finish(run_lambda_sweep(cfg), out);
        }
        if (*blow) {
            const FlowState s = read_state(state_dir);
            const BlowDownReport b = blowdown(s, recover_pressure(s), delta0);
            std::printf("lambda %g  R %g  delta0 %g\n", b.lambda, b.r_outer, b.delta0);
            std::printf("epsilon^2          %.10g\n", b.epsilon_sq);
            std::printf("pressure osc       %.10g\n", b.pressure_osc);
            std::printf("osc / epsilon^2    %.10g%s\n", b.osc_ratio, b.zero_energy ? "  (zero energy)" : "");
            std::printf("good radius        %.10g\n", b.good_radius);
            std::printf("circle defect      %.10g  (/ epsilon^2 = %.6g)\n", b.good_circle_defect, b.defect_ratio);
            std::printf("near-min fraction  %.4g\n", b.near_min_fraction);
            std::printf("hardy ratio        %.10g\n", b.hardy_ratio);
            return 0;
        }
        if (*check) {
            std::ifstream is(report_path);
            const auto failed = check_report(nlohmann::json::parse(is));
            for (const auto& f : failed) std::printf("FAIL %s\n", f.c_str());
            std::printf("%s\n", failed.empty() ? "all slacks pass" : "some slacks fail");
            return failed.empty() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "leray: %s\n", e.what());
        return 2;
    }
    return 0;
}
