#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "mwflow/errors.hpp"

namespace mwflow {

/// Uniform periodic grid on a d-dimensional torus of side box_length, with
/// n_per_axis cells per axis. Cell centers sit at x_i = (i + 1/2) h per axis.
/// Index layout is row-major: the first axis is slowest, the last fastest.
struct TorusGrid {
    int dim = 1;
    int n_per_axis = 8;
    double box_length = 1.0;

    TorusGrid() = default;

    TorusGrid(int dim_, int n, double length) : dim(dim_), n_per_axis(n), box_length(length) {
        if (dim < 1 || dim > 3)
            throw config_error("TorusGrid: dim must be 1, 2 or 3, got " + std::to_string(dim));
        if (n < 8 || (n & (n - 1)) != 0)
            throw config_error("TorusGrid: n_per_axis must be a power of two >= 8, got " +
                               std::to_string(n));
        if (!(length > 0.0) || !std::isfinite(length))
            throw config_error("TorusGrid: box_length must be positive and finite");
    }

    double spacing() const { return box_length / n_per_axis; }

    std::size_t cell_count() const {
        std::size_t c = 1;
        for (int a = 0; a < dim; ++a) c *= static_cast<std::size_t>(n_per_axis);
        return c;
    }

    double cell_volume() const { return std::pow(spacing(), dim); }
    double volume() const { return std::pow(box_length, dim); }

    /// Stride of axis a in the linear index (axis 0 slowest).
    std::size_t stride(int a) const {
        std::size_t s = 1;
        for (int b = dim - 1; b > a; --b) s *= static_cast<std::size_t>(n_per_axis);
        return s;
    }

    /// Coordinate of cell `idx` along axis a.
    int coord(std::size_t idx, int a) const {
        return static_cast<int>((idx / stride(a)) % static_cast<std::size_t>(n_per_axis));
    }

    /// Linear index of the periodic neighbor one cell up along axis a.
    std::size_t neighbor_up(std::size_t idx, int a, std::size_t stride_a) const {
        const int c = static_cast<int>((idx / stride_a) % static_cast<std::size_t>(n_per_axis));
        return (c == n_per_axis - 1) ? idx - stride_a * (n_per_axis - 1) : idx + stride_a;
    }

    /// Linear index of the periodic neighbor one cell down along axis a.
    std::size_t neighbor_down(std::size_t idx, int a, std::size_t stride_a) const {
        const int c = static_cast<int>((idx / stride_a) % static_cast<std::size_t>(n_per_axis));
        return (c == 0) ? idx + stride_a * (n_per_axis - 1) : idx - stride_a;
    }

    /// Physical center of cell `idx` along axis a.
    double cell_center(std::size_t idx, int a) const { return (coord(idx, a) + 0.5) * spacing(); }

    friend bool operator==(const TorusGrid& l, const TorusGrid& r) {
        return l.dim == r.dim && l.n_per_axis == r.n_per_axis && l.box_length == r.box_length;
    }
    friend bool operator!=(const TorusGrid& l, const TorusGrid& r) { return !(l == r); }
};

/// Cell-centered grid function.
struct ScalarField {
    TorusGrid grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const TorusGrid& g, double fill = 0.0)
        : grid(g), values(g.cell_count(), fill) {}
    ScalarField(const TorusGrid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.cell_count())
            throw domain_error("ScalarField: value count does not match grid");
    }

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    void require_finite(const char* who) const {
        if (!all_finite()) throw domain_error(std::string(who) + ": non-finite input values");
    }
};

/// Face-centered vector field: component a lives on faces x_i + (h/2) e_a,
/// stored under the index of the cell on the lower side of the face.
struct VectorField {
    TorusGrid grid;
    std::array<std::vector<double>, 3> comp;

    VectorField() = default;
    explicit VectorField(const TorusGrid& g, double fill = 0.0) : grid(g) {
        for (int a = 0; a < g.dim; ++a) comp[a].assign(g.cell_count(), fill);
    }

    std::vector<double>& component(int a) { return comp[a]; }
    const std::vector<double>& component(int a) const { return comp[a]; }
};

inline void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* who) {
    if (a != b) throw domain_error(std::string(who) + ": fields live on different grids");
}

/// Cell-sum quadrature: integral = sum of values times h^d.
inline double integrate(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.cell_volume();
}

inline double mean(const ScalarField& f) { return integrate(f) / f.grid.volume(); }

inline double min_value(const ScalarField& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::min(m, v);
    return m;
}

inline double max_value(const ScalarField& f) {
    double m = f.values.empty() ? 0.0 : f.values[0];
    for (double v : f.values) m = std::max(m, v);
    return m;
}

/// Plain (unweighted) discrete L2 inner product of raw arrays.
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Quadrature-weighted L2 inner product of two scalar fields.
inline double l2_inner(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid, g.grid, "l2_inner");
    return dot(f.values, g.values) * f.grid.cell_volume();
}

inline double l2_norm(const ScalarField& f) { return std::sqrt(l2_inner(f, f)); }

// ---------------------------------------------------------------------------
// Field snapshot files: ASCII header line
//   FIELD d=<dim> n=<n_per_axis> L=<box_length>
// followed by little-endian 64-bit floats in row-major order.
// ---------------------------------------------------------------------------

namespace detail {

inline void write_f64_le(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
    os.write(reinterpret_cast<const char*>(buf), 8);
}

inline double read_f64_le(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

} // namespace detail

inline void write_snapshot(const ScalarField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw domain_error("write_snapshot: cannot open " + path);
    char header[128];
    std::snprintf(header, sizeof(header), "FIELD d=%d n=%d L=%.17g\n", f.grid.dim,
                  f.grid.n_per_axis, f.grid.box_length);
    os << header;
    for (double v : f.values) detail::write_f64_le(os, v);
    if (!os) throw domain_error("write_snapshot: write failed for " + path);
}

inline ScalarField read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw domain_error("read_snapshot: cannot open " + path);
    std::string header;
    std::getline(is, header);
    int d = 0, n = 0;
    double L = 0.0;
    if (std::sscanf(header.c_str(), "FIELD d=%d n=%d L=%lg", &d, &n, &L) != 3)
        throw domain_error("read_snapshot: bad header in " + path);
    TorusGrid grid(d, n, L);
    ScalarField f(grid);
    for (double& v : f.values) v = detail::read_f64_le(is);
    if (!is) throw domain_error("read_snapshot: truncated data in " + path);
    return f;
}

} // namespace mwflow
