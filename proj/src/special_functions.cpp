#include "siwave/special_functions.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace siwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const std::string& msg) {
    if (!cond) {
        throw std::invalid_argument(msg);
    }
}

struct GlTableDeleter {
    void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};
using GlTablePtr = std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter>;

// Gauss-Legendre tables are immutable once built; cache them per node count.
const gsl_integration_glfixed_table* gl_table(int nodes) {
    static std::mutex mutex;
    static std::map<int, GlTablePtr> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(nodes);
    if (it == cache.end()) {
        GlTablePtr table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(nodes)));
        if (!table) {
            throw std::runtime_error("failed to allocate Gauss-Legendre table");
        }
        it = cache.emplace(nodes, std::move(table)).first;
    }
    return it->second.get();
}

// ∫_a^b f by fixed-order Gauss-Legendre.
template <typename F>
double gl_integrate(F&& f, double a, double b, int nodes) {
    const gsl_integration_glfixed_table* table = gl_table(nodes);
    double sum = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(nodes); ++i) {
        double x = 0.0;
        double w = 0.0;
        gsl_integration_glfixed_point(a, b, i, &x, &w, table);
        sum += w * f(x);
    }
    return sum;
}

// log phi(rho), stable for radii where phi itself would overflow.
double log_phi(const TestFunctionContext& ctx, double rho) {
    if (ctx.n == 1) {
        // log(e^r + e^{-r}) = r + log(1 + e^{-2r})
        return rho + std::log1p(std::exp(-2.0 * rho));
    }
    if (ctx.n == 3) {
        if (rho < 1e-4) {
            return std::log(4.0 * kPi * (1.0 + rho * rho / 6.0 + rho * rho * rho * rho / 120.0));
        }
        // 4 pi sinh(rho)/rho = 2 pi e^rho (1 - e^{-2 rho}) / rho
        return std::log(2.0 * kPi) + rho + std::log1p(-std::exp(-2.0 * rho)) - std::log(rho);
    }
    // Angular quadrature with the exponential factored at its peak:
    // phi = |S^{N-2}| e^rho ∫_0^pi e^{rho(cos th - 1)} sin^{N-2} th dth.
    const int m = ctx.n - 2;
    const double integral = gl_integrate(
        [rho, m](double th) {
            return std::exp(rho * (std::cos(th) - 1.0)) * std::pow(std::sin(th), m);
        },
        0.0, kPi, ctx.quadrature_nodes);
    return std::log(surface_measure(ctx.n - 1)) + rho + std::log(integral);
}

} // namespace

void TestFunctionContext::validate() const {
    require(n >= 1, "test-function dimension n must be >= 1");
    require(quadrature_nodes >= 16, "quadrature_nodes must be >= 16");
}

double surface_measure(int n) {
    require(n >= 1, "surface measure defined for n >= 1");
    return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

double phi(const TestFunctionContext& ctx, double r) {
    ctx.validate();
    require(std::isfinite(r) && r >= 0.0, "phi requires r >= 0");
    if (ctx.n == 1) {
        return std::exp(r) + std::exp(-r);
    }
    if (ctx.n == 3) {
        if (r < 1e-4) {
            // series for sinh(r)/r, avoiding 0/0 cancellation
            return 4.0 * kPi * (1.0 + r * r / 6.0 + r * r * r * r / 120.0);
        }
        return 4.0 * kPi * std::sinh(r) / r;
    }
    return phi_quadrature(ctx, r);
}

double phi_quadrature(const TestFunctionContext& ctx, double r) {
    ctx.validate();
    require(std::isfinite(r) && r >= 0.0, "phi requires r >= 0");
    if (ctx.n == 1) {
        // S^0 = {+1, -1}: the sphere integral is the exact two-point sum.
        return std::exp(r) + std::exp(-r);
    }
    const int m = ctx.n - 2;
    const double integral = gl_integrate(
        [r, m](double th) { return std::exp(r * std::cos(th)) * std::pow(std::sin(th), m); },
        0.0, kPi, ctx.quadrature_nodes);
    return surface_measure(ctx.n - 1) * integral;
}

double psi(const TestFunctionContext& ctx, double r, double t) {
    require(std::isfinite(t) && t >= 0.0, "psi requires t >= 0");
    return std::exp(-t) * phi(ctx, r);
}

double multiplier_value(const Multiplier& m, double t) {
    require(std::isfinite(m.mu) && m.mu >= 0.0, "multiplier requires mu >= 0");
    require(std::isfinite(t) && t >= 0.0, "multiplier requires t >= 0");
    return std::pow(1.0 + t, m.mu);
}

double lemma1_integral(const TestFunctionContext& ctx, double r_exp, double t) {
    ctx.validate();
    require(std::isfinite(r_exp) && r_exp > 1.0, "lemma1_integral requires r_exp > 1");
    require(std::isfinite(t) && t >= 0.0, "lemma1_integral requires t >= 0");

    const double top = t + 1.0;
    // psi^r = exp(r (log phi - t)); evaluated in log space so large t stays
    // in range even though phi^r would overflow.
    auto integrand = [&](double rho) {
        const double lp = log_phi(ctx, rho);
        const double w = (ctx.n == 1) ? 1.0 : std::pow(rho, ctx.n - 1);
        return std::exp(r_exp * (lp - t)) * w;
    };

    auto composite = [&](double a, double b, int cells_per_unit) {
        if (b <= a) {
            return 0.0;
        }
        const int cells = std::max(1, static_cast<int>(std::ceil((b - a) * cells_per_unit)));
        const double w = (b - a) / cells;
        double sum = 0.0;
        for (int c = 0; c < cells; ++c) {
            sum += gl_integrate(integrand, a + c * w, a + (c + 1) * w, 8);
        }
        return sum;
    };

    // 64 cells per unit radius, doubled over the final unit where psi^r peaks.
    const double split = std::max(0.0, top - 1.0);
    const double radial = composite(0.0, split, 64) + composite(split, top, 128);
    return surface_measure(ctx.n) * radial;
}

double lemma1_bound_exponent(int n, double r_exp) {
    require(n >= 1, "lemma1_bound_exponent requires n >= 1");
    require(std::isfinite(r_exp) && r_exp > 1.0, "lemma1_bound_exponent requires r_exp > 1");
    return (2.0 - r_exp) * (n - 1.0) / 2.0;
}

double lemma1_ratio(const TestFunctionContext& ctx, double r_exp, double t) {
    const double integral = lemma1_integral(ctx, r_exp, t);
    const double beta = lemma1_bound_exponent(ctx.n, r_exp);
    return integral / std::pow(1.0 + t, beta);
}

} // namespace siwave
