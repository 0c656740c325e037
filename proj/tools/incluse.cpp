#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "incluse/certify.hpp"
#include "incluse/io.hpp"

using namespace incluse;

namespace {

constexpr const char* kVersion = "0.1.0";

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_verdict(const char* name, const Verdict& v) {
    const char* s = v.untested     ? "untested"
                    : v.unresolved ? "UNRESOLVED"
                    : v.pass       ? "pass"
                                   : "FAIL";
    if (v.untested)
        std::printf("  %-12s %s\n", name, s);
    else
        std::printf("  %-12s %-10s value=%.6g tol=%.3g  %s\n", name, s, v.value, v.tol,
                    v.note.c_str());
}

int run_command(const std::string& command, const Scenario& sc, const std::string& out_dir) {
    PipelineStage stage = PipelineStage::certify;
    if (command == "reach") stage = PipelineStage::reach;
    else if (command == "barrier") stage = PipelineStage::barrier;
    else if (command == "smooth") stage = PipelineStage::smooth;

    std::filesystem::create_directories(out_dir);
    auto path = [&](const char* name) { return out_dir + "/" + name; };

    RunManifest man;
    man.scenario_name = sc.name;
    man.scenario_hash = scenario_hash(sc);
    man.seed = sc.num.seed;
    man.tool_version = kVersion;

    auto t0 = std::chrono::steady_clock::now();
    PipelineResult pr = certify_pipeline(sc, stage);
    man.stage_seconds.emplace_back(command, seconds_since(t0));

    t0 = std::chrono::steady_clock::now();
    write_region_csv(path("K_eps_bar.csv"), pr.K_bar);
    write_region_bin(path("K_eps_bar.bin"), pr.K_bar);
    ReachResult rr;
    rr.converged = pr.reach_converged;
    rr.steps_used = pr.reach_steps;
    rr.edge_truncated = pr.reach_edge_truncated;
    write_reach_json(path("reach.json"), rr);
    man.outputs = {"K_eps_bar.csv", "K_eps_bar.bin", "reach.json"};

    if (stage >= PipelineStage::barrier) {
        write_region_csv(path("K_prime.csv"), pr.K_prime);
        write_barrier_csv(path("bhat.csv"), pr.bhat);
        write_barrier_csv(path("BK.csv"), pr.BK);
        man.outputs.insert(man.outputs.end(), {"K_prime.csv", "bhat.csv", "BK.csv"});
    }
    if (stage >= PipelineStage::smooth) {
        write_smooth_csv(path("B_smooth.csv"), pr.B);
        man.outputs.push_back("B_smooth.csv");
    }
    if (stage == PipelineStage::certify) {
        write_report_json(path("report.json"), sc, pr);
        man.outputs.push_back("report.json");
    }
    man.stage_seconds.emplace_back("write", seconds_since(t0));
    write_manifest_json(path("manifest.json"), man);

    const CertificateReport& r = pr.report;
    std::printf("scenario %s  grid %dx%d  seed %llu\n", sc.name.c_str(), sc.window.nx,
                sc.window.ny, static_cast<unsigned long long>(sc.num.seed));
    std::printf("reach: %d cells%s\n", pr.K_bar.cell_count(),
                r.edge_caveat ? "  (edge caveat)" : "");
    if (stage != PipelineStage::certify) return 0;

    print_verdict("candidate", r.candidate.v);
    print_verdict("c2", r.c2.v);
    print_verdict("c3", r.c3);
    print_verdict("invariance", r.invariance);
    print_verdict("separation", r.separation);
    print_verdict("safety", r.safety.v);
    print_verdict("consistency", r.consistency);

    if (r.all_pass()) {
        std::printf("result: PASS\n");
        return 0;
    }
    bool failed = false;
    for (const Verdict* v : {&r.candidate.v, &r.c2.v, &r.c3,
                             r.invariance_applicable ? &r.invariance : nullptr, &r.separation,
                             r.safety_applicable ? &r.safety.v : nullptr, &r.consistency})
        if (v && !v->pass && !v->unresolved && !v->untested) failed = true;
    if (failed) {
        std::printf("result: FAIL\n");
        return 1;
    }
    std::printf("result: UNRESOLVED\n");
    return 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"incluse: reachable sets and barrier certificates for planar "
                 "differential inclusions"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out";
    uint64_t seed = 0;
    int cells = 0;
    std::vector<std::string> checks;
    bool seed_set = false;

    std::vector<CLI::App*> subs;
    for (const char* name : {"reach", "barrier", "smooth", "certify", "all"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--scenario", scenario_path, "scenario TOML file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override the scenario seed")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--cells", cells, "override the grid resolution");
        sub->add_option("--check", checks, "restrict the enabled checks");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad invocation is a configuration error
    }

    std::string command;
    for (CLI::App* sub : subs)
        if (sub->parsed()) command = sub->get_name();
    if (command == "all") command = "certify";

    try {
        ScenarioOverrides ov;
        ov.cells = cells;
        ov.has_seed = seed_set;
        ov.seed = seed;
        ov.checks = checks;
        Scenario sc = parse_scenario(scenario_path, &ov);
        return run_command(command, sc, out_dir);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error in %s: %s\n", command.c_str(), e.what());
        return 2;
    }
}
