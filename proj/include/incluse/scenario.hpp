#ifndef INCLUSE_SCENARIO_HPP
#define INCLUSE_SCENARIO_HPP

#include <string>
#include <vector>

#include "incluse/inclusion.hpp"
#include "incluse/region.hpp"
#include "incluse/toml_lite.hpp"

namespace incluse {

/// Scenario-level misconfiguration (maps to exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Numerics {
    double dt = 0.0;             // 0: auto = h / (2 v_max)
    double impact_horizon = 0.0; // 0: auto heuristic
    int n_random = 8;
    uint64_t seed = 0;
    int band_cells = 8;          // U1 half-width in cells
    int uhat_cells = 4;          // Uhat1 half-width in cells
    int quad_order = 17;
    int delta_cells = 6;         // outer consistency inflation
    double rho_o_cells = 2.0;    // reach-inflation radius in cells
    int directions_m = 16;
    double c3_tol = 0.1;
    double c2_tol = 0.05;
    int c2_starts = 100;
    int boundary_samples = 200;
    int safety_solutions = 200;
    double safety_horizon = 5.0;
};

struct InvarianceSpec {
    bool enabled = false;
    Vec2 normal{0, 1};
    double offset = 0.0;
    int n_samples = 200;
    int m_directions = 1024;
};

struct Scenario {
    Window window;
    std::string field_name;
    SetValuedField field;

    double eps_bar_o = -1.0; // < 0: absent
    double eps_bar = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;

    Region X0;
    Region Xu;

    Numerics num;
    InvarianceSpec invariance;
    std::vector<std::string> checks; // empty: all applicable

    std::string raw_text; // exact file contents, hashed for provenance
    std::string name;

    bool check_enabled(const std::string& c) const;
    void validate() const; // margin ordering etc. -> ConfigError
};

/// Command-line overrides applied on top of the file contents.
struct ScenarioOverrides {
    int cells = 0;                   // 0: keep the file's grid
    bool has_seed = false;
    uint64_t seed = 0;
    std::vector<std::string> checks; // non-empty: replace the enabled checks
};

Scenario parse_scenario(const std::string& path, const ScenarioOverrides* ov = nullptr);
Scenario parse_scenario_text(const std::string& text, const std::string& name,
                             const ScenarioOverrides* ov = nullptr);

/// FNV-1a over the scenario file text.
uint64_t scenario_hash(const Scenario& sc);

} // namespace incluse

#endif
