#include "incluse/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace incluse {

HalfSpace::HalfSpace(Vec2 n, double c) {
    double len = n.norm();
    if (len <= 0.0)
        throw std::invalid_argument("HalfSpace: normal must be nonzero");
    normal = n / len;
    offset = c / len;
}

std::function<bool(const Vec2&)> HalfSpace::tangent_cone(const Vec2& y, double tol) const {
    if (std::abs(signed_distance(y)) > tol)
        throw std::invalid_argument("tangent_cone: point is not on the boundary");
    Vec2 n = normal;
    return [n](const Vec2& v) { return n.dot(v) >= -1e-12; };
}

Region Region::from_sdf(const Window& w, const std::function<double(const Vec2&)>& sdf) {
    Region r;
    r.win_ = w;
    r.occ_.assign(static_cast<size_t>(w.cell_count()), 0);
    r.sd_ = ScalarField(w);
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            double s = sdf(w.center(i, j));
            r.sd_.at(i, j) = s;
            r.occ_[static_cast<size_t>(w.index(i, j))] = s <= 0.0 ? 1 : 0;
        }
    r.finalize(/*keep_sdist=*/true);
    return r;
}

Region Region::from_occupancy(const Window& w, std::vector<uint8_t> occ) {
    if (static_cast<int>(occ.size()) != w.cell_count())
        throw std::invalid_argument("Region: occupancy size mismatch");
    Region r;
    r.win_ = w;
    r.occ_ = std::move(occ);
    r.finalize(/*keep_sdist=*/false);
    return r;
}

void Region::finalize(bool keep_sdist) {
    const Window& w = win_;
    cell_count_ = 0;
    edge_flag_ = false;
    boundary_pts_.clear();
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            if (!occupied(i, j)) continue;
            ++cell_count_;
            if (i == 0 || i == w.nx - 1 || j == 0 || j == w.ny - 1)
                edge_flag_ = true;
            Vec2 c = w.center(i, j);
            // Face midpoints toward free 4-neighbors are the interface sites.
            if (i + 1 < w.nx && !occupied(i + 1, j))
                boundary_pts_.push_back({c.x + 0.5 * w.h, c.y});
            if (i - 1 >= 0 && !occupied(i - 1, j))
                boundary_pts_.push_back({c.x - 0.5 * w.h, c.y});
            if (j + 1 < w.ny && !occupied(i, j + 1))
                boundary_pts_.push_back({c.x, c.y + 0.5 * w.h});
            if (j - 1 >= 0 && !occupied(i, j - 1))
                boundary_pts_.push_back({c.x, c.y - 0.5 * w.h});
        }
    if (keep_sdist) return;

    sd_ = ScalarField(w);
    double far = (w.hi - w.lo).norm();
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            Vec2 c = w.center(i, j);
            double d2 = std::numeric_limits<double>::infinity();
            for (const Vec2& b : boundary_pts_)
                d2 = std::min(d2, (c - b).norm2());
            double d = boundary_pts_.empty() ? far : std::sqrt(d2);
            sd_.at(i, j) = occupied(i, j) ? -d : d;
        }
}

double Region::signed_distance(const Vec2& p) const {
    if (!win_.contains(p))
        throw std::out_of_range("signed_distance: point outside window");
    return sd_.sample(p);
}

double Region::distance_to_boundary(const Vec2& x) const {
    double d2 = std::numeric_limits<double>::infinity();
    for (const Vec2& b : boundary_pts_)
        d2 = std::min(d2, (x - b).norm2());
    return std::sqrt(d2);
}

std::vector<Vec2> Region::project(const Vec2& x, double tol) const {
    if (empty())
        throw std::invalid_argument("project: empty region");
    if (contains(x)) return {x};
    if (tol < 0.0) tol = 1.5 * win_.h;
    double dmin = distance_to_boundary(x);
    std::vector<Vec2> out;
    for (const Vec2& b : boundary_pts_)
        if ((x - b).norm() <= dmin + tol)
            out.push_back(b);
    return out;
}

Region inflate(const Region& r, const ScalarField& delta) {
    const Window& w = r.window();
    if (!delta.window().same_grid(w))
        throw std::invalid_argument("inflate: delta grid mismatch");
    for (double d : delta.data())
        if (d <= 0.0)
            throw std::invalid_argument("inflate: delta must be positive everywhere");

    std::vector<uint8_t> occ(r.occupancy());
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            if (!r.occupied(i, j)) continue;
            double d = delta.at(i, j);
            int rc = static_cast<int>(std::ceil(d / w.h)) + 1;
            Vec2 c = w.center(i, j);
            for (int dj = -rc; dj <= rc; ++dj)
                for (int di = -rc; di <= rc; ++di) {
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || ii >= w.nx || jj < 0 || jj >= w.ny) continue;
                    if ((w.center(ii, jj) - c).norm() <= d)
                        occ[static_cast<size_t>(w.index(ii, jj))] = 1;
                }
        }
    return Region::from_occupancy(w, std::move(occ));
}

Region inflate(const Region& r, double delta) {
    return inflate(r, ScalarField(r.window(), delta));
}

Region boundary_band(const Region& r, double width) {
    const Window& w = r.window();
    if (width < 2.0 * w.h)
        throw std::invalid_argument("boundary_band: width below grid resolution");
    if (r.boundary_points().empty())
        throw std::invalid_argument("boundary_band: region has no boundary");
    return Region::from_sdf(w, [&](const Vec2& p) {
        return std::abs(r.sdist_field().sample(p)) - width;
    });
}

ScalarField margin_inside(const Region& k, const Region& u) {
    const Window& w = k.window();
    if (!u.window().same_grid(w))
        throw std::invalid_argument("margin_inside: grid mismatch");
    ScalarField delta(w, w.h);
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            if (!k.occupied(i, j)) continue;
            double depth = -u.sdist_field().at(i, j); // distance to complement of U
            if (!u.occupied(i, j) || depth < w.h)
                throw std::invalid_argument("margin_inside: K is not in the interior of U");
            delta.at(i, j) = std::max(w.h, 0.5 * depth);
        }
    return delta;
}

bool subset_of(const Region& a, const Region& b) {
    if (!a.window().same_grid(b.window()))
        throw std::invalid_argument("subset_of: grid mismatch");
    for (int c = 0; c < a.window().cell_count(); ++c)
        if (a.occupied(c) && !b.occupied(c)) return false;
    return true;
}

int cells_added(const Region& a, const Region& b) {
    if (!a.window().same_grid(b.window()))
        throw std::invalid_argument("cells_added: grid mismatch");
    int n = 0;
    for (int c = 0; c < a.window().cell_count(); ++c)
        if (b.occupied(c) && !a.occupied(c)) ++n;
    return n;
}

Region region_union(const Region& a, const Region& b) {
    if (!a.window().same_grid(b.window()))
        throw std::invalid_argument("region_union: grid mismatch");
    std::vector<uint8_t> occ(a.occupancy());
    for (int c = 0; c < a.window().cell_count(); ++c)
        if (b.occupied(c)) occ[static_cast<size_t>(c)] = 1;
    return Region::from_occupancy(a.window(), std::move(occ));
}

} // namespace incluse
