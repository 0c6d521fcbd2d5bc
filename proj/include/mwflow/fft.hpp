#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "mwflow/grid.hpp"

namespace mwflow {
namespace fft {

using cplx = std::complex<double>;

namespace detail {

/// One pair of c2c plans for a fixed shape. Plans are created with
/// FFTW_UNALIGNED so they can be executed on any caller-provided buffers via
/// the new-array interface, which keeps execution thread-safe.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    PlanPair(int dim, int n) {
        std::vector<int> dims(static_cast<std::size_t>(dim), n);
        std::size_t total = 1;
        for (int d : dims) total *= static_cast<std::size_t>(d);
        std::vector<cplx> a(total), b(total);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd = fftw_plan_dft(dim, dims.data(), pa, pb, FFTW_FORWARD, flags);
        bwd = fftw_plan_dft(dim, dims.data(), pa, pb, FFTW_BACKWARD, flags);
        if (!fwd || !bwd) throw numerical_error("fft: plan creation failed");
    }
    ~PlanPair() {
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

inline const PlanPair& plans_for(int dim, int n) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(dim, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<PlanPair>(dim, n)).first;
    return *it->second;
}

} // namespace detail

/// Unnormalized forward DFT of in-place complex data (sign convention e^{-ix.xi}).
inline void forward(const TorusGrid& g, std::vector<cplx>& data) {
    const auto& p = detail::plans_for(g.dim, g.n_per_axis);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p.fwd, ptr, ptr);
}

/// Unnormalized inverse DFT (caller divides by cell count).
inline void backward(const TorusGrid& g, std::vector<cplx>& data) {
    const auto& p = detail::plans_for(g.dim, g.n_per_axis);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p.bwd, ptr, ptr);
}

/// Unnormalized DFT coefficients of a real field.
inline std::vector<cplx> spectrum(const ScalarField& f) {
    std::vector<cplx> data(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) data[i] = cplx(f.values[i], 0.0);
    forward(f.grid, data);
    return data;
}

/// Real field from unnormalized DFT coefficients (imaginary roundoff dropped).
inline ScalarField field_from_spectrum(const TorusGrid& g, std::vector<cplx> data) {
    backward(g, data);
    ScalarField out(g);
    const double scale = 1.0 / static_cast<double>(g.cell_count());
    for (std::size_t i = 0; i < data.size(); ++i) out.values[i] = data[i].real() * scale;
    return out;
}

/// Signed integer frequency of mode index j on an n-point axis.
inline int signed_mode(int j, int n) { return (j <= n / 2) ? j : j - n; }

/// |xi|^2 of the spectrum entry with linear index idx, with xi_a = 2*pi*m_a/L.
inline double xi_squared(const TorusGrid& g, std::size_t idx) {
    const double base = 2.0 * M_PI / g.box_length;
    double s = 0.0;
    for (int a = 0; a < g.dim; ++a) {
        const int m = signed_mode(g.coord(idx, a), g.n_per_axis);
        const double xi = base * m;
        s += xi * xi;
    }
    return s;
}

/// Symbol of the staggered -div(grad .) stencil at the spectrum entry idx:
/// sum_a 4 sin^2(pi m_a / n) / h^2. Nonnegative; zero only at the zero mode.
inline double stencil_neg_laplacian_symbol(const TorusGrid& g, std::size_t idx) {
    const double h = g.spacing();
    double s = 0.0;
    for (int a = 0; a < g.dim; ++a) {
        const int j = g.coord(idx, a);
        const double sn = std::sin(M_PI * static_cast<double>(j) / g.n_per_axis);
        s += 4.0 * sn * sn / (h * h);
    }
    return s;
}

} // namespace fft
} // namespace mwflow
