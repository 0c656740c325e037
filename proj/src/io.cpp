#include "incluse/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace incluse {

namespace {

using nlohmann::json;

struct File {
    std::FILE* f;
    explicit File(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
        if (!f) throw std::runtime_error("cannot open for writing: " + path);
    }
    ~File() {
        if (f) std::fclose(f);
    }
};

// Fixed shortest-round-trip formatting so re-runs are byte-identical.
void put_num(std::FILE* f, double v) { std::fprintf(f, "%.17g", v); }

void dump_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

json verdict_json(const Verdict& v) {
    return {{"pass", v.pass},
            {"unresolved", v.unresolved},
            {"untested", v.untested},
            {"value", v.value},
            {"tol", v.tol},
            {"note", v.note}};
}

} // namespace

void write_region_csv(const std::string& path, const Region& r) {
    File out(path);
    std::fprintf(out.f, "x,y,occupied,sdist\n");
    const Window& w = r.window();
    const ScalarField& sd = r.sdist_field();
    for (int c = 0; c < w.cell_count(); ++c) {
        Vec2 p = w.center(c);
        put_num(out.f, p.x);
        std::fputc(',', out.f);
        put_num(out.f, p.y);
        std::fprintf(out.f, ",%d,", r.occupied(c) ? 1 : 0);
        put_num(out.f, sd[c]);
        std::fputc('\n', out.f);
    }
}

void write_region_bin(const std::string& path, const Region& r) {
    File out(path);
    const Window& w = r.window();
    double bounds[4] = {w.lo.x, w.lo.y, w.hi.x, w.hi.y};
    uint32_t dims[2] = {static_cast<uint32_t>(w.nx), static_cast<uint32_t>(w.ny)};
    std::fwrite(bounds, sizeof(double), 4, out.f);
    std::fwrite(dims, sizeof(uint32_t), 2, out.f);
    std::fwrite(r.occupancy().data(), 1, r.occupancy().size(), out.f);
}

void write_reach_json(const std::string& path, const ReachResult& rr) {
    dump_json(path, json{{"converged", rr.converged},
                         {"steps_used", rr.steps_used},
                         {"edge_truncated", rr.edge_truncated}});
}

void write_barrier_csv(const std::string& path, const BarrierField& b) {
    File out(path);
    std::fprintf(out.f, "x,y,B,clip\n");
    const Window& w = b.window();
    for (int c = 0; c < w.cell_count(); ++c) {
        Vec2 p = w.center(c);
        put_num(out.f, p.x);
        std::fputc(',', out.f);
        put_num(out.f, p.y);
        std::fputc(',', out.f);
        put_num(out.f, b.values[c]);
        std::fprintf(out.f, ",%d\n", b.clipped(c) ? 1 : 0);
    }
}

void write_smooth_csv(const std::string& path, const SmoothBarrier& b) {
    File out(path);
    std::fprintf(out.f, "x,y,B,dBdx,dBdy\n");
    const Window& w = b.window();
    for (int c = 0; c < w.cell_count(); ++c) {
        Vec2 p = w.center(c);
        put_num(out.f, p.x);
        std::fputc(',', out.f);
        put_num(out.f, p.y);
        std::fputc(',', out.f);
        put_num(out.f, b.field.values[c]);
        std::fputc(',', out.f);
        put_num(out.f, b.gx[c]);
        std::fputc(',', out.f);
        put_num(out.f, b.gy[c]);
        std::fputc('\n', out.f);
    }
}

void write_report_json(const std::string& path, const Scenario& sc, const PipelineResult& pr) {
    const CertificateReport& r = pr.report;
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(r.scenario_hash_value));
    json j{
        {"scenario", sc.name},
        {"scenario_hash", hash},
        {"seed", r.seed},
        {"field", sc.field_name},
        {"grid",
         {{"cells", sc.window.nx}, {"h", sc.window.h}}},
        {"margins",
         {{"eps_bar", sc.eps_bar}, {"eps1", sc.eps1}, {"eps2", sc.eps2}}},
        {"numerics",
         {{"dt", pr.dt}, {"horizon", pr.horizon}, {"band_width", pr.band_width}}},
        {"edge_caveat", r.edge_caveat},
        {"all_pass", r.all_pass()},
        {"any_unresolved", r.any_unresolved()},
        {"checks",
         {{"candidate", verdict_json(r.candidate.v)},
          {"c2", verdict_json(r.c2.v)},
          {"c3", verdict_json(r.c3)},
          {"invariance", verdict_json(r.invariance)},
          {"separation", verdict_json(r.separation)},
          {"safety", verdict_json(r.safety.v)},
          {"consistency", verdict_json(r.consistency)}}},
    };
    j["checks"]["candidate"]["max_B_X0"] = r.candidate.max_B_X0;
    j["checks"]["candidate"]["min_B_Xu"] = r.candidate.min_B_Xu;
    j["checks"]["c2"]["clipped_cells"] = r.c2.clipped_cells;
    j["checks"]["c2"]["starts_used"] = r.c2.starts_used;
    j["checks"]["safety"]["closest_approach"] = r.safety.closest_approach;
    dump_json(path, j);
}

void write_manifest_json(const std::string& path, const RunManifest& m) {
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(m.scenario_hash));
    json stages = json::object();
    for (const auto& [name, sec] : m.stage_seconds)
        stages[name] = sec;
    dump_json(path, json{{"scenario", m.scenario_name},
                         {"scenario_hash", hash},
                         {"seed", m.seed},
                         {"tool_version", m.tool_version},
                         {"stage_seconds", stages},
                         {"outputs", m.outputs}});
}

} // namespace incluse
