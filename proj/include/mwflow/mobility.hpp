#pragma once

#include <cmath>
#include <string>

#include "mwflow/errors.hpp"
#include "mwflow/grid.hpp"

namespace mwflow {

enum class MobilityKind { PowerShifted, ExponentShifted };

/// The two mobility families: m(r) = (r + epsilon)^alpha and m(r) = (r+1)^beta.
/// epsilon = 0 is allowed (it makes m(rho) = rho^alpha reductions expressible);
/// solvers that divide by m then floor it at mobility_floor().
struct MobilitySpec {
    MobilityKind kind = MobilityKind::PowerShifted;
    double alpha = 1.0;
    double epsilon = 0.0;
    double beta = 0.5;

    static MobilitySpec power_shifted(double alpha, double epsilon) {
        if (!(alpha >= 0.0)) throw config_error("MobilitySpec: alpha must be >= 0");
        if (!(epsilon >= 0.0)) throw config_error("MobilitySpec: epsilon must be >= 0");
        MobilitySpec s;
        s.kind = MobilityKind::PowerShifted;
        s.alpha = alpha;
        s.epsilon = epsilon;
        return s;
    }

    static MobilitySpec exponent_shifted(double beta) {
        if (!(beta > 0.0 && beta < 1.0))
            throw config_error("MobilitySpec: beta must lie in (0, 1)");
        MobilitySpec s;
        s.kind = MobilityKind::ExponentShifted;
        s.beta = beta;
        return s;
    }

    /// Exponent/shift pair (a, e) such that m(r) = (r + e)^a for both families.
    std::pair<double, double> power_form() const {
        if (kind == MobilityKind::PowerShifted) return {alpha, epsilon};
        return {beta, 1.0};
    }
};

inline double mobility_floor() { return 1e-13; }

struct MobilityDerivs {
    double m = 0.0;
    double m1 = 0.0; // m'
    double m2 = 0.0; // m''
};

inline MobilityDerivs mobility_derivs(const MobilitySpec& spec, double r) {
    if (!(r >= 0.0)) throw domain_error("mobility: argument must be >= 0");
    const auto [a, e] = spec.power_form();
    MobilityDerivs d;
    if (a == 0.0) {
        d.m = 1.0;
        return d;
    }
    const double base = r + e;
    d.m = std::pow(base, a);
    d.m1 = (base > 0.0) ? a * std::pow(base, a - 1.0)
                        : (a == 1.0 ? 1.0 : (a > 1.0 ? 0.0 : HUGE_VAL));
    d.m2 = (base > 0.0) ? a * (a - 1.0) * std::pow(base, a - 2.0)
                        : (a == 2.0 ? 2.0 : (a > 2.0 ? 0.0 : (a == 1.0 ? 0.0 : HUGE_VAL)));
    return d;
}

inline double mobility(const MobilitySpec& spec, double r) { return mobility_derivs(spec, r).m; }

// ---------------------------------------------------------------------------
// Lyapunov potential U with U'' = 1/m, U(0) = U'(0) = 0.
//
// Both families reduce to U''(r) = (r + e)^{-a}; the double antiderivative is
// closed-form, with dedicated log forms at a = 1 and a = 2.
// ---------------------------------------------------------------------------

inline double u_potential(const MobilitySpec& spec, double r) {
    if (!(r >= 0.0)) throw domain_error("u_potential: argument must be >= 0");
    const auto [a, e] = spec.power_form();
    if (r == 0.0) return 0.0;
    if (a == 0.0) return 0.5 * r * r;
    if (e <= 0.0 && a >= 1.0)
        throw domain_error("u_potential: undefined for epsilon = 0 with alpha >= 1");
    if (std::abs(a - 1.0) < 1e-9) {
        // U'' = 1/(r+e):  U = (r+e) ln((r+e)/e) - r
        return (r + e) * std::log((r + e) / e) - r;
    }
    if (std::abs(a - 2.0) < 1e-9) {
        // U'' = (r+e)^{-2}:  U = r/e - ln((r+e)/e)
        return r / e - std::log((r + e) / e);
    }
    const double p2 = 2.0 - a;
    const double p1 = 1.0 - a;
    const double lead = (std::pow(r + e, p2) - std::pow(e, p2)) / (p1 * p2);
    const double slope = (e > 0.0) ? std::pow(e, p1) * r / p1 : 0.0;
    return lead - slope;
}

/// The integral functional U(u) = sum of U(u(x)) over cells times h^d.
inline double u_functional(const MobilitySpec& spec, const ScalarField& u) {
    double acc = 0.0;
    for (double v : u.values) {
        if (v < -1e-12) throw domain_error("u_functional: negative density");
        acc += u_potential(spec, std::max(v, 0.0));
    }
    return acc * u.grid.cell_volume();
}

// ---------------------------------------------------------------------------
// Entropy generators g and their transforms
//   entropy_G(r) = int_0^r sqrt(m(z) g''(z)) dz
//   big_G(r)     = int_0^r m(z) g''(z) dz
// ---------------------------------------------------------------------------

enum class EntropyKind { Power, TruncatedPower };

/// g(z) = z^p or (z - Lambda)_+^p. Power with p in (1,2) has g'' singular at 0
/// and is meant for norm bookkeeping only.
struct EntropyGenerator {
    EntropyKind kind = EntropyKind::Power;
    double p = 2.0;
    double lambda = 0.0;

    static EntropyGenerator power(double p) {
        if (!(p > 1.0)) throw config_error("EntropyGenerator: p must be > 1");
        EntropyGenerator g;
        g.p = p;
        return g;
    }
    static EntropyGenerator truncated_power(double p, double lambda) {
        if (!(p > 1.0)) throw config_error("EntropyGenerator: p must be > 1");
        if (!(lambda >= 0.0)) throw config_error("EntropyGenerator: lambda must be >= 0");
        EntropyGenerator g;
        g.kind = EntropyKind::TruncatedPower;
        g.p = p;
        g.lambda = lambda;
        return g;
    }

    bool norms_only() const { return p < 2.0; }

    double value(double z) const {
        const double t = (kind == EntropyKind::Power) ? z : z - lambda;
        return (t > 0.0) ? std::pow(t, p) : 0.0;
    }
    double second(double z) const {
        const double t = (kind == EntropyKind::Power) ? z : z - lambda;
        if (t <= 0.0) return 0.0;
        return p * (p - 1.0) * std::pow(t, p - 2.0);
    }
    double shift() const { return (kind == EntropyKind::Power) ? 0.0 : lambda; }
};

namespace detail {

template <class F>
double simpson_fixed(F&& f, double a, double b, std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double acc = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + h * i);
    return acc * h / 3.0;
}

/// Composite Simpson with panel doubling to relative tolerance 1e-8.
template <class F>
double simpson_doubling(F&& f, double a, double b, const char* who) {
    if (!(b > a)) return 0.0;
    constexpr double rel_tol = 1e-8;
    constexpr int max_doublings = 20;
    std::size_t panels = 8;
    double prev = simpson_fixed(f, a, b, panels);
    for (int d = 0; d < max_doublings; ++d) {
        panels *= 2;
        const double cur = simpson_fixed(f, a, b, panels);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-30)) return cur;
        prev = cur;
    }
    throw numerical_error(std::string(who) + ": quadrature did not converge after 20 doublings");
}

} // namespace detail

/// entropy_G(r) = int_0^r sqrt(m(z) g''(z)) dz. The power-law factor
/// (z - Lambda)^{(p-2)/2} is absorbed by the substitution z = Lambda + y^{2/p},
/// which removes the endpoint singularity before Simpson is applied.
inline double entropy_G(const MobilitySpec& spec, const EntropyGenerator& gen, double r) {
    if (!(r >= 0.0)) throw domain_error("entropy_G: argument must be >= 0");
    const double lam = gen.shift();
    const double span = r - lam;
    if (span <= 0.0) return 0.0;
    const double p = gen.p;
    const double upper = std::pow(span, 0.5 * p);
    auto integrand = [&](double y) {
        const double z = lam + std::pow(y, 2.0 / p);
        return std::sqrt(mobility(spec, z));
    };
    const double core = detail::simpson_doubling(integrand, 0.0, upper, "entropy_G");
    return std::sqrt(p * (p - 1.0)) * (2.0 / p) * core;
}

/// big_G(r) = int_0^r m(z) g''(z) dz, via the substitution z = Lambda + u^{1/(p-1)}.
inline double big_G(const MobilitySpec& spec, const EntropyGenerator& gen, double r) {
    if (!(r >= 0.0)) throw domain_error("big_G: argument must be >= 0");
    const double lam = gen.shift();
    const double span = r - lam;
    if (span <= 0.0) return 0.0;
    const double p = gen.p;
    const double upper = std::pow(span, p - 1.0);
    auto integrand = [&](double u) {
        const double z = lam + std::pow(u, 1.0 / (p - 1.0));
        return mobility(spec, z);
    };
    return p * detail::simpson_doubling(integrand, 0.0, upper, "big_G");
}

/// Pointwise application of entropy_G to a density (used by the entropy-decay
/// diagnostics, which need the field G(u^k)).
inline ScalarField entropy_G_field(const MobilitySpec& spec, const EntropyGenerator& gen,
                                   const ScalarField& u) {
    ScalarField out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i)
        out.values[i] = entropy_G(spec, gen, std::max(u.values[i], 0.0));
    return out;
}

} // namespace mwflow
