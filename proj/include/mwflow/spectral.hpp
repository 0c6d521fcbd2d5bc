#pragma once

#include <cmath>

#include "mwflow/fft.hpp"
#include "mwflow/grid.hpp"

namespace mwflow {

// ---------------------------------------------------------------------------
// Homogeneous fractional calculus on the torus.
//
// All operators act on the mean-zero part: the k=0 mode is removed on output
// and carries no norm. The mean (total mass / volume) is conserved separately
// by the callers that need it.
// ---------------------------------------------------------------------------

/// (-Laplace)^r by Fourier symbol |xi|^{2r}. The zero mode of the output is 0.
inline ScalarField fractional_laplacian(const ScalarField& f, double r) {
    f.require_finite("fractional_laplacian");
    const TorusGrid& g = f.grid;
    if (!(r > -0.5 * g.dim && r <= 1.0))
        throw config_error("fractional_laplacian: order r must lie in (-d/2, 1]");
    auto spec = fft::spectrum(f);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double xi2 = fft::xi_squared(g, k);
        spec[k] = (xi2 == 0.0) ? fft::cplx(0.0, 0.0) : spec[k] * std::pow(xi2, r);
    }
    return fft::field_from_spectrum(g, std::move(spec));
}

/// Riesz potential (-Laplace)^{-s}; inverse of the fractional Laplacian on the
/// mean-zero subspace.
inline ScalarField riesz_potential(const ScalarField& f, double s) {
    const double dmax = std::min(1.0, 0.5 * f.grid.dim);
    if (!(s > 0.0 && s < dmax))
        throw config_error("riesz_potential: need 0 < s < min(1, d/2)");
    return fractional_laplacian(f, -s);
}

/// Squared homogeneous Sobolev norm: L^{-d} sum_{k!=0} |xi_k|^{2r} |f_hat(k)|^2
/// with f_hat = h^d * DFT, which on the grid equals (h^d / N^d) sum over the
/// unnormalized DFT. The k=0 mode is always excluded.
inline double sobolev_norm_sq(const ScalarField& f, double r) {
    f.require_finite("sobolev_norm_sq");
    if (!(r >= -1.0 && r <= 1.0)) throw config_error("sobolev_norm_sq: r must lie in [-1, 1]");
    const TorusGrid& g = f.grid;
    auto spec = fft::spectrum(f);
    const double scale = g.cell_volume() / static_cast<double>(g.cell_count());
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double xi2 = fft::xi_squared(g, k);
        if (xi2 == 0.0) continue;
        acc += std::pow(xi2, r) * std::norm(spec[k]);
    }
    return acc * scale;
}

/// Homogeneous Sobolev scalar product <f, g>_r (symmetric bilinear form).
inline double sobolev_inner(const ScalarField& f, const ScalarField& g, double r) {
    require_same_grid(f.grid, g.grid, "sobolev_inner");
    f.require_finite("sobolev_inner");
    g.require_finite("sobolev_inner");
    if (!(r >= -1.0 && r <= 1.0)) throw config_error("sobolev_inner: r must lie in [-1, 1]");
    auto sf = fft::spectrum(f);
    auto sg = fft::spectrum(g);
    const TorusGrid& grid = f.grid;
    const double scale = grid.cell_volume() / static_cast<double>(grid.cell_count());
    double acc = 0.0;
    for (std::size_t k = 0; k < sf.size(); ++k) {
        const double xi2 = fft::xi_squared(grid, k);
        if (xi2 == 0.0) continue;
        acc += std::pow(xi2, r) * (sf[k] * std::conj(sg[k])).real();
    }
    return acc * scale;
}

// ---------------------------------------------------------------------------
// Staggered first-order operators. gradient and -divergence are exact
// adjoints under the cell-sum quadrature.
// ---------------------------------------------------------------------------

/// Forward difference onto faces: (grad f)_a at face i+e_a/2 = (f_{i+e_a} - f_i)/h.
inline VectorField gradient(const ScalarField& f) {
    const TorusGrid& g = f.grid;
    VectorField out(g);
    const double inv_h = 1.0 / g.spacing();
    for (int a = 0; a < g.dim; ++a) {
        const std::size_t sa = g.stride(a);
        auto& va = out.component(a);
        for (std::size_t i = 0; i < f.size(); ++i)
            va[i] = (f.values[g.neighbor_up(i, a, sa)] - f.values[i]) * inv_h;
    }
    return out;
}

/// Backward difference of face values into cells: sum_a (v_a,i - v_a,i-e_a)/h.
inline ScalarField divergence(const VectorField& v) {
    const TorusGrid& g = v.grid;
    ScalarField out(g);
    const double inv_h = 1.0 / g.spacing();
    for (int a = 0; a < g.dim; ++a) {
        const std::size_t sa = g.stride(a);
        const auto& va = v.component(a);
        for (std::size_t i = 0; i < out.size(); ++i)
            out.values[i] += (va[i] - va[g.neighbor_down(i, a, sa)]) * inv_h;
    }
    return out;
}

/// Quadrature inner product of two face-centered fields.
inline double l2_inner(const VectorField& u, const VectorField& v) {
    require_same_grid(u.grid, v.grid, "l2_inner");
    double s = 0.0;
    for (int a = 0; a < u.grid.dim; ++a) s += dot(u.component(a), v.component(a));
    return s * u.grid.cell_volume();
}

/// Remove the mean; the complement of the zero mode.
inline ScalarField mean_zero_part(const ScalarField& f) {
    ScalarField out = f;
    const double m = mean(f);
    for (double& v : out.values) v -= m;
    return out;
}

} // namespace mwflow
