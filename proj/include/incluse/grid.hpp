#ifndef INCLUSE_GRID_HPP
#define INCLUSE_GRID_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "incluse/vec2.hpp"

namespace incluse {

/// Rectangular window discretized into square cells. Samples live at cell
/// centers: center(i,j) = lo + ((i+0.5)h, (j+0.5)h).
struct Window {
    Vec2 lo;
    Vec2 hi;
    int nx = 0;
    int ny = 0;

    Window() = default;
    Window(Vec2 lo_, Vec2 hi_, int nx_, int ny_);

    double h = 0.0; // uniform cell edge length

    int cell_count() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }

    Vec2 center(int i, int j) const {
        return {lo.x + (i + 0.5) * h, lo.y + (j + 0.5) * h};
    }
    Vec2 center(int idx) const { return center(idx % nx, idx / nx); }

    bool contains(const Vec2& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }

    // Cell containing p, clamped to the grid.
    int cell_of(const Vec2& p) const;
    void cell_coords(const Vec2& p, int& i, int& j) const;

    bool same_grid(const Window& o) const {
        return lo == o.lo && hi == o.hi && nx == o.nx && ny == o.ny;
    }
};

/// Scalar samples at cell centers with bilinear interpolation.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(const Window& w, double fill = 0.0)
        : win_(w), data_(static_cast<size_t>(w.cell_count()), fill) {}

    const Window& window() const { return win_; }
    double& at(int i, int j) { return data_[static_cast<size_t>(win_.index(i, j))]; }
    double at(int i, int j) const { return data_[static_cast<size_t>(win_.index(i, j))]; }
    double& operator[](int idx) { return data_[static_cast<size_t>(idx)]; }
    double operator[](int idx) const { return data_[static_cast<size_t>(idx)]; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    /// Bilinear interpolation of cell-center samples; clamps to the window.
    double sample(const Vec2& p) const;

    /// Gradient of the bilinear patch at p (piecewise in each cell patch).
    Vec2 sample_gradient(const Vec2& p) const;

private:
    Window win_;
    std::vector<double> data_;

    void patch(const Vec2& p, int& i0, int& j0, double& fx, double& fy) const;
};

} // namespace incluse

#endif
