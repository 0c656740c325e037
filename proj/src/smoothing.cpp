#include "incluse/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace incluse {

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
void gl_rule(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<size_t>(n), 0.0);
    w.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[static_cast<size_t>(i)] = t;
        w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

double bump(const Vec2& v) {
    double r2 = v.norm2();
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

} // namespace

Mollifier Mollifier::gauss_legendre(int n) {
    std::vector<double> x, w;
    gl_rule(n, x, w);
    Mollifier M;
    double z = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec2 v{x[static_cast<size_t>(i)], x[static_cast<size_t>(j)]};
            if (v.norm2() >= 1.0) continue;
            double a = w[static_cast<size_t>(i)] * w[static_cast<size_t>(j)];
            M.nodes.push_back(v);
            M.gl_w.push_back(a);
            z += a * bump(v);
        }
    M.c = 1.0 / z;
    for (size_t q = 0; q < M.nodes.size(); ++q) {
        const Vec2& v = M.nodes[q];
        double r2 = v.norm2();
        double p = M.c * bump(v);
        double d = 1.0 - r2;
        M.psi.push_back(p);
        M.grad_psi.push_back(v * (-2.0 * p / (d * d)));
        M.weights.push_back(M.gl_w[q] * p);
    }
    M.m0 = 0.0;
    M.kappa = 0.0;
    for (size_t q = 0; q < M.nodes.size(); ++q) {
        M.m0 += M.gl_w[q] * (2.0 * M.psi[q] + M.nodes[q].dot(M.grad_psi[q]));
        M.kappa -= M.gl_w[q] * M.nodes[q].x * M.grad_psi[q].x;
    }
    return M;
}

double Mollifier::eval(const Vec2& v) const { return c * bump(v); }

double mollifier_eval(const Mollifier& M, const Vec2& v) { return M.eval(v); }

ScalarField gaussian_smooth(const ScalarField& f, double sigma) {
    const Window& win = f.window();
    if (sigma <= 0.0) return f;
    int r = std::max(1, static_cast<int>(std::ceil(3.0 * sigma / win.h)));
    std::vector<double> k(static_cast<size_t>(2 * r + 1));
    for (int i = -r; i <= r; ++i)
        k[static_cast<size_t>(i + r)] = std::exp(-0.5 * (i * win.h) * (i * win.h) / (sigma * sigma));

    ScalarField tmp(win), out(win);
    for (int j = 0; j < win.ny; ++j)
        for (int i = 0; i < win.nx; ++i) {
            double s = 0.0, wsum = 0.0;
            for (int d = -r; d <= r; ++d) {
                int ii = i + d;
                if (ii < 0 || ii >= win.nx) continue;
                s += k[static_cast<size_t>(d + r)] * f.at(ii, j);
                wsum += k[static_cast<size_t>(d + r)];
            }
            tmp.at(i, j) = s / wsum;
        }
    for (int j = 0; j < win.ny; ++j)
        for (int i = 0; i < win.nx; ++i) {
            double s = 0.0, wsum = 0.0;
            for (int d = -r; d <= r; ++d) {
                int jj = j + d;
                if (jj < 0 || jj >= win.ny) continue;
                s += k[static_cast<size_t>(d + r)] * tmp.at(i, jj);
                wsum += k[static_cast<size_t>(d + r)];
            }
            out.at(i, j) = s / wsum;
        }
    return out;
}

SmoothBarrier smooth_barrier(const BarrierField& BK, const ScalarField& rho2,
                             const Mollifier& M) {
    const Window& win = BK.window();
    if (!rho2.window().same_grid(win))
        throw std::invalid_argument("smooth_barrier: grid mismatch");
    if (M.nodes.empty())
        throw std::runtime_error("smooth_barrier: degenerate quadrature");

    SmoothBarrier out;
    out.field = BarrierField(win, BarrierField::Kind::smoothed);
    out.gx = ScalarField(win);
    out.gy = ScalarField(win);
    out.rho2 = rho2;

    for (int c = 0; c < win.cell_count(); ++c) {
        Vec2 x = win.center(c);
        double rho = rho2[c];
        if (rho <= 0.0)
            throw std::invalid_argument("smooth_barrier: rho2 must be positive");
        Vec2 grho = rho2.sample_gradient(x);

        double val = 0.0;
        Vec2 s1{0, 0};
        double s2 = 0.0;
        bool clip = false;
        for (size_t q = 0; q < M.nodes.size(); ++q) {
            Vec2 p = x + rho * M.nodes[q];
            if (!win.contains(p)) clip = true;
            else if (BK.clipped(win.cell_of(p))) clip = true;
            double b = BK.sample(p);
            val += M.weights[q] * b;
            s1 += (M.gl_w[q] * b) * M.grad_psi[q];
            s2 += M.gl_w[q] * b *
                  (2.0 * M.psi[q] + M.nodes[q].dot(M.grad_psi[q]) - M.m0 * M.psi[q]);
        }
        out.field.values[c] = val;
        out.field.clip[static_cast<size_t>(c)] = clip ? 1 : 0;
        Vec2 g = (s1 / M.kappa + grho * s2) * (-1.0 / rho);
        out.gx[c] = g.x;
        out.gy[c] = g.y;
    }
    return out;
}

SmoothBarrier averaged_shift_barrier(const BarrierField& BK, const ScalarField& rho2,
                                     const Mollifier& M) {
    // B(x) = sum_q w_q B^{v_q}(x): identical lookups to smooth_barrier,
    // organized per shifted copy.
    SmoothBarrier out = smooth_barrier(BK, rho2, M);
    const Window& win = BK.window();
    ScalarField acc(win, 0.0);
    for (size_t q = 0; q < M.nodes.size(); ++q) {
        BarrierField shifted = shifted_barrier(BK, rho2, M.nodes[q]);
        for (int c = 0; c < win.cell_count(); ++c)
            acc[c] += M.weights[q] * shifted.values[c];
    }
    out.field.values = acc;
    return out;
}

} // namespace incluse
