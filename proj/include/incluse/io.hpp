#ifndef INCLUSE_IO_HPP
#define INCLUSE_IO_HPP

#include <string>
#include <vector>

#include "incluse/certify.hpp"

namespace incluse {

/// CSV of cell centers: x,y,occupied,sdist.
void write_region_csv(const std::string& path, const Region& r);

/// Compact occupancy dump: little-endian f64 lo/hi bounds, u32 cells per
/// axis, then row-major occupancy bytes.
void write_region_bin(const std::string& path, const Region& r);

/// {converged, steps_used, edge_truncated} sidecar.
void write_reach_json(const std::string& path, const ReachResult& rr);

/// CSV of cell centers: x,y,B,clip.
void write_barrier_csv(const std::string& path, const BarrierField& b);

/// CSV of cell centers: x,y,B,dBdx,dBdy.
void write_smooth_csv(const std::string& path, const SmoothBarrier& b);

/// Full check report plus run metadata.
void write_report_json(const std::string& path, const Scenario& sc, const PipelineResult& pr);

struct RunManifest {
    std::string scenario_name;
    uint64_t scenario_hash = 0;
    uint64_t seed = 0;
    std::string tool_version;
    std::vector<std::pair<std::string, double>> stage_seconds;
    std::vector<std::string> outputs;
};

void write_manifest_json(const std::string& path, const RunManifest& m);

} // namespace incluse

#endif
