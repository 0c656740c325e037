#include "incluse/grid.hpp"

#include <algorithm>
#include <cmath>

namespace incluse {

Window::Window(Vec2 lo_, Vec2 hi_, int nx_, int ny_)
    : lo(lo_), hi(hi_), nx(nx_), ny(ny_) {
    if (!(lo.x < hi.x && lo.y < hi.y))
        throw std::invalid_argument("Window: lo must be componentwise below hi");
    if (nx <= 0 || ny <= 0)
        throw std::invalid_argument("Window: cell counts must be positive");
    double hx = (hi.x - lo.x) / nx;
    double hy = (hi.y - lo.y) / ny;
    if (std::abs(hx - hy) > 1e-9 * std::max(hx, hy))
        throw std::invalid_argument("Window: cell edge length must be uniform across axes");
    h = hx;
}

void Window::cell_coords(const Vec2& p, int& i, int& j) const {
    i = static_cast<int>(std::floor((p.x - lo.x) / h));
    j = static_cast<int>(std::floor((p.y - lo.y) / h));
    i = std::clamp(i, 0, nx - 1);
    j = std::clamp(j, 0, ny - 1);
}

int Window::cell_of(const Vec2& p) const {
    int i, j;
    cell_coords(p, i, j);
    return index(i, j);
}

void ScalarField::patch(const Vec2& p, int& i0, int& j0, double& fx, double& fy) const {
    // Interpolation patch between the four cell centers surrounding p.
    double u = (p.x - win_.lo.x) / win_.h - 0.5;
    double v = (p.y - win_.lo.y) / win_.h - 0.5;
    u = std::clamp(u, 0.0, static_cast<double>(win_.nx - 1));
    v = std::clamp(v, 0.0, static_cast<double>(win_.ny - 1));
    i0 = std::min(static_cast<int>(std::floor(u)), win_.nx - 2);
    j0 = std::min(static_cast<int>(std::floor(v)), win_.ny - 2);
    i0 = std::max(i0, 0);
    j0 = std::max(j0, 0);
    fx = u - i0;
    fy = v - j0;
}

double ScalarField::sample(const Vec2& p) const {
    if (win_.nx == 1 && win_.ny == 1) return data_[0];
    int i0, j0;
    double fx, fy;
    patch(p, i0, j0, fx, fy);
    double v00 = at(i0, j0);
    double v10 = at(std::min(i0 + 1, win_.nx - 1), j0);
    double v01 = at(i0, std::min(j0 + 1, win_.ny - 1));
    double v11 = at(std::min(i0 + 1, win_.nx - 1), std::min(j0 + 1, win_.ny - 1));
    return (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 +
           (1 - fx) * fy * v01 + fx * fy * v11;
}

Vec2 ScalarField::sample_gradient(const Vec2& p) const {
    if (win_.nx < 2 || win_.ny < 2) return {0.0, 0.0};
    int i0, j0;
    double fx, fy;
    patch(p, i0, j0, fx, fy);
    double v00 = at(i0, j0);
    double v10 = at(i0 + 1, j0);
    double v01 = at(i0, j0 + 1);
    double v11 = at(i0 + 1, j0 + 1);
    double gx = ((1 - fy) * (v10 - v00) + fy * (v11 - v01)) / win_.h;
    double gy = ((1 - fx) * (v01 - v00) + fx * (v11 - v10)) / win_.h;
    return {gx, gy};
}

} // namespace incluse
