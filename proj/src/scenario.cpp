#include "incluse/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace incluse {

namespace {

Vec2 get_vec2(const TomlDoc& doc, const std::string& key) {
    auto v = doc.numbers(key);
    if (v.size() != 2)
        throw ConfigError("expected a 2-vector for " + key);
    return {v[0], v[1]};
}

Vec2 table_vec2(const TomlValue& t, const std::string& key, const std::string& ctx) {
    auto it = t.table.find(key);
    if (it == t.table.end() || it->second.kind != TomlValue::Kind::array ||
        it->second.array.size() != 2)
        throw ConfigError("shape " + ctx + ": expected 2-vector '" + key + "'");
    return {it->second.array[0].num, it->second.array[1].num};
}

double table_num(const TomlValue& t, const std::string& key, const std::string& ctx) {
    auto it = t.table.find(key);
    if (it == t.table.end() || it->second.kind != TomlValue::Kind::number)
        throw ConfigError("shape " + ctx + ": expected number '" + key + "'");
    return it->second.num;
}

// One shape primitive -> signed distance function.
std::function<double(const Vec2&)> shape_sdf(const TomlValue& t, const std::string& ctx) {
    if (t.kind != TomlValue::Kind::table)
        throw ConfigError("shape " + ctx + " must be an inline table");
    auto it = t.table.find("shape");
    if (it == t.table.end() || it->second.kind != TomlValue::Kind::string)
        throw ConfigError("shape " + ctx + ": missing 'shape' name");
    const std::string& kind = it->second.str;
    if (kind == "disk") {
        Vec2 c = table_vec2(t, "center", ctx);
        double r = table_num(t, "radius", ctx);
        return [c, r](const Vec2& p) { return (p - c).norm() - r; };
    }
    if (kind == "outside_disk") {
        Vec2 c = table_vec2(t, "center", ctx);
        double r = table_num(t, "radius", ctx);
        return [c, r](const Vec2& p) { return r - (p - c).norm(); };
    }
    if (kind == "halfplane") {
        // {x : <normal, x> >= offset}
        Vec2 n = table_vec2(t, "normal", ctx).normalized();
        double off = table_num(t, "offset", ctx);
        return [n, off](const Vec2& p) { return off - n.dot(p); };
    }
    if (kind == "box") {
        Vec2 lo = table_vec2(t, "lo", ctx);
        Vec2 hi = table_vec2(t, "hi", ctx);
        return [lo, hi](const Vec2& p) {
            double dx = std::max(lo.x - p.x, p.x - hi.x);
            double dy = std::max(lo.y - p.y, p.y - hi.y);
            return std::max(dx, dy);
        };
    }
    throw ConfigError("unknown shape kind '" + kind + "' in " + ctx);
}

Region build_set(const TomlDoc& doc, const std::string& key, const Window& win) {
    if (!doc.has(key))
        throw ConfigError("scenario missing set: " + key);
    const TomlValue& v = doc.at(key);
    std::vector<std::function<double(const Vec2&)>> sdfs;
    if (v.kind == TomlValue::Kind::array) {
        for (size_t i = 0; i < v.array.size(); ++i)
            sdfs.push_back(shape_sdf(v.array[i], key + "[" + std::to_string(i) + "]"));
    } else {
        sdfs.push_back(shape_sdf(v, key));
    }
    if (sdfs.empty())
        throw ConfigError("empty shape list for " + key);
    return Region::from_sdf(win, [sdfs](const Vec2& p) {
        double s = 1e300;
        for (const auto& f : sdfs) s = std::min(s, f(p)); // union
        return s;
    });
}

SetValuedField build_field(const TomlDoc& doc, std::string& name_out) {
    std::string name = doc.string_or("field.name", "");
    if (name.empty())
        throw ConfigError("scenario missing field.name");
    name_out = name;
    if (name == "example1") return field_example1();
    if (name == "linear") return field_linear();
    if (name == "constant") return field_constant(get_vec2(doc, "field.velocity"));
    if (name == "polytope") {
        const TomlValue& v = doc.at("field.vertices");
        if (v.kind != TomlValue::Kind::array || v.array.empty())
            throw ConfigError("field.vertices must be a nonempty array of 2-vectors");
        std::vector<Vec2> verts;
        for (const TomlValue& e : v.array) {
            if (e.kind != TomlValue::Kind::array || e.array.size() != 2)
                throw ConfigError("field.vertices entries must be 2-vectors");
            verts.push_back({e.array[0].num, e.array[1].num});
        }
        return field_polytope(verts);
    }
    throw ConfigError("unknown field name '" + name + "'");
}

} // namespace

bool Scenario::check_enabled(const std::string& c) const {
    if (checks.empty()) return true;
    for (const auto& e : checks)
        if (e == c) return true;
    return false;
}

void Scenario::validate() const {
    if (!(eps2 > 0.0 && eps1 > 0.0 && eps_bar > 0.0))
        throw ConfigError("margins must be positive");
    if (!(eps2 < eps1 && eps1 < eps_bar))
        throw ConfigError("margin ordering violated: need eps2 < eps1 < eps_bar");
    if (eps_bar_o >= 0.0 && !(eps_bar < eps_bar_o))
        throw ConfigError("margin ordering violated: need eps_bar < eps_bar_o");
    if (X0.empty())
        throw ConfigError("initial set X0 is empty on this grid");
    if (Xu.empty())
        throw ConfigError("unsafe set Xu is empty on this grid");
    if (num.quad_order < 5)
        throw ConfigError("quadrature order too small");
    if (num.band_cells < 2 || num.uhat_cells < 2)
        throw ConfigError("band widths must be at least 2 cells");
}

Scenario parse_scenario_text(const std::string& text, const std::string& name,
                             const ScenarioOverrides* ov) {
    TomlDoc doc = TomlDoc::parse_string(text);
    Scenario sc;
    sc.raw_text = text;
    sc.name = name;

    Vec2 lo = get_vec2(doc, "window.lo");
    Vec2 hi = get_vec2(doc, "window.hi");
    int cells = static_cast<int>(doc.number_or("window.cells", 256));
    if (ov && ov->cells > 0) cells = ov->cells;
    try {
        sc.window = Window(lo, hi, cells, cells);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    sc.field = build_field(doc, sc.field_name);

    sc.eps_bar = doc.number("margins.eps_bar");
    sc.eps1 = doc.number("margins.eps1");
    sc.eps2 = doc.number("margins.eps2");
    sc.eps_bar_o = doc.number_or("margins.eps_bar_o", -1.0);

    sc.X0 = build_set(doc, "sets.x0", sc.window);
    sc.Xu = build_set(doc, "sets.xu", sc.window);

    Numerics& n = sc.num;
    n.dt = doc.number_or("numerics.dt", 0.0);
    n.impact_horizon = doc.number_or("numerics.horizon", 0.0);
    n.n_random = static_cast<int>(doc.number_or("numerics.n_random", 8));
    n.seed = static_cast<uint64_t>(doc.number_or("numerics.seed", 0));
    n.band_cells = static_cast<int>(doc.number_or("numerics.band_cells", 8));
    n.uhat_cells = static_cast<int>(doc.number_or("numerics.uhat_cells", 4));
    n.quad_order = static_cast<int>(doc.number_or("numerics.quad_order", 17));
    n.delta_cells = static_cast<int>(doc.number_or("numerics.delta_cells", 6));
    n.rho_o_cells = doc.number_or("numerics.rho_o_cells", 2.0);
    n.directions_m = static_cast<int>(doc.number_or("numerics.directions_m", 16));
    n.c3_tol = doc.number_or("numerics.c3_tol", 0.1);
    n.c2_tol = doc.number_or("numerics.c2_tol", 0.05);
    n.c2_starts = static_cast<int>(doc.number_or("numerics.c2_starts", 100));
    n.boundary_samples = static_cast<int>(doc.number_or("numerics.boundary_samples", 200));
    n.safety_solutions = static_cast<int>(doc.number_or("numerics.safety_solutions", 200));
    n.safety_horizon = doc.number_or("numerics.safety_horizon", 5.0);

    if (doc.has("invariance.normal")) {
        sc.invariance.enabled = true;
        sc.invariance.normal = get_vec2(doc, "invariance.normal").normalized();
        sc.invariance.offset = doc.number_or("invariance.offset", 0.0);
        sc.invariance.n_samples = static_cast<int>(doc.number_or("invariance.n_samples", 200));
        sc.invariance.m_directions = static_cast<int>(doc.number_or("invariance.m_directions", 1024));
    }

    if (doc.has("checks.enabled")) {
        const TomlValue& v = doc.at("checks.enabled");
        if (v.kind != TomlValue::Kind::array)
            throw ConfigError("checks.enabled must be an array of strings");
        for (const TomlValue& e : v.array) {
            if (e.kind != TomlValue::Kind::string)
                throw ConfigError("checks.enabled entries must be strings");
            sc.checks.push_back(e.str);
        }
    }

    if (ov) {
        if (ov->has_seed) sc.num.seed = ov->seed;
        if (!ov->checks.empty()) sc.checks = ov->checks;
    }

    sc.validate();
    return sc;
}

Scenario parse_scenario(const std::string& path, const ScenarioOverrides* ov) {
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string name = path;
    size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    size_t dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return parse_scenario_text(ss.str(), name, ov);
}

uint64_t scenario_hash(const Scenario& sc) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : sc.raw_text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace incluse
