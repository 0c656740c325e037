#ifndef INCLUSE_REGION_HPP
#define INCLUSE_REGION_HPP

#include <functional>
#include <vector>

#include "incluse/grid.hpp"
#include "incluse/vec2.hpp"

namespace incluse {

/// Closed half-space {x : <normal, x> >= offset}.
struct HalfSpace {
    Vec2 normal;   // unit length
    double offset = 0.0;

    HalfSpace(Vec2 n, double c);

    double signed_distance(const Vec2& p) const { return offset - normal.dot(p); }

    /// Tangent-cone membership test at boundary point y. Throws if y is not
    /// on the boundary (within tol).
    std::function<bool(const Vec2&)> tangent_cone(const Vec2& y, double tol) const;
};

/// Grid-backed closed subset of a window: per-cell occupancy plus a signed
/// distance field (negative inside), accurate to about half a cell.
class Region {
public:
    Region() = default;

    /// Build from an exact signed-distance function; the stored sdist keeps
    /// the analytic values, so shape-based regions have sub-cell accuracy.
    static Region from_sdf(const Window& w, const std::function<double(const Vec2&)>& sdf);

    /// Build from an occupancy mask; sdist is recomputed by brute-force
    /// distance to the occupancy interface (face midpoints between occupied
    /// and free cells).
    static Region from_occupancy(const Window& w, std::vector<uint8_t> occ);

    const Window& window() const { return win_; }
    bool occupied(int idx) const { return occ_[static_cast<size_t>(idx)] != 0; }
    bool occupied(int i, int j) const { return occupied(win_.index(i, j)); }
    const std::vector<uint8_t>& occupancy() const { return occ_; }
    const ScalarField& sdist_field() const { return sd_; }
    bool edge_flag() const { return edge_flag_; }
    bool empty() const { return cell_count_ == 0; }
    int cell_count() const { return cell_count_; }

    /// Interpolated signed distance at p; throws if p is outside the window.
    double signed_distance(const Vec2& p) const;

    bool contains(const Vec2& p) const { return occupied(win_.cell_of(p)); }

    /// Interface sites: midpoints of faces between occupied and free cells.
    const std::vector<Vec2>& boundary_points() const { return boundary_pts_; }

    /// All closest boundary points to x, up to tolerance tol (default 1.5h).
    /// Returns {x} when x lies in the region. Throws on empty region.
    std::vector<Vec2> project(const Vec2& x, double tol = -1.0) const;

    /// Exact minimum distance from x to the boundary point set.
    double distance_to_boundary(const Vec2& x) const;

private:
    Window win_;
    std::vector<uint8_t> occ_;
    ScalarField sd_;
    std::vector<Vec2> boundary_pts_;
    bool edge_flag_ = false;
    int cell_count_ = 0;

    void finalize(bool keep_sdist);
};

/// Minkowski inflation of R by a per-cell radius field delta > 0.
Region inflate(const Region& r, const ScalarField& delta);
Region inflate(const Region& r, double delta);

/// Closed band {x : |sdist_R(x)| <= width}; throws if width < 2h or the
/// boundary is empty.
Region boundary_band(const Region& r, double width);

/// Per-cell inflation budget delta(x) = max(h, dist(x, complement of U)/2)
/// on K, guaranteeing inflate(K, delta) stays inside U. Throws when K is not
/// in the interior of U.
ScalarField margin_inside(const Region& k, const Region& u);

/// Cellwise set predicates.
bool subset_of(const Region& a, const Region& b);
int cells_added(const Region& a, const Region& b); // cells in b but not a
Region region_union(const Region& a, const Region& b);

} // namespace incluse

#endif
