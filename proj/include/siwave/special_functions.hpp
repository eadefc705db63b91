#ifndef SIWAVE_SPECIAL_FUNCTIONS_HPP
#define SIWAVE_SPECIAL_FUNCTIONS_HPP

/// The positive test functions
///
///     phi(x) = ∫_{S^{N-1}} e^{x·w} dw   (N >= 2),   phi(x) = e^x + e^{-x}   (N = 1)
///     psi(x, t) = e^{-t} phi(x)
///
/// with Δphi = phi, so ∂_t psi = -psi and ∂_tt psi = Δpsi = psi, together
/// with the multiplier m(t) = (1+t)^mu and the light-cone integral
/// ∫_{|x|<=t+1} psi^r dx tracked by the blow-up functionals.
///
/// Closed forms are used for N = 1 and N = 3; the sphere integral is reduced
/// to a 1-D angular quadrature for every N and kept available as a
/// cross-check path.

namespace siwave {

struct TestFunctionContext {
    int n = 1;                 ///< spatial dimension, >= 1
    int quadrature_nodes = 64; ///< Gauss-Legendre nodes for the angular integral, >= 16

    void validate() const;
};

/// m(t) = (1+t)^mu; nondecreasing for mu >= 0 with m(0) = 1, and
/// m'(t)/m(t) = mu/(1+t).
struct Multiplier {
    double mu = 0.0;
};

/// Surface measure |S^{n-1}| of the unit sphere in R^n.
double surface_measure(int n);

/// phi at radius r >= 0. Strictly positive, even in r. Closed form for
/// N in {1, 3}; angular quadrature otherwise.
double phi(const TestFunctionContext& ctx, double r);

/// The quadrature route for phi, available for every N as the cross-check
/// against the closed forms. For N = 1 the sphere is the two-point set and
/// the "quadrature" is the exact sum e^r + e^{-r}.
double phi_quadrature(const TestFunctionContext& ctx, double r);

/// psi(r, t) = e^{-t} phi(r). Requires r >= 0, t >= 0.
double psi(const TestFunctionContext& ctx, double r, double t);

double multiplier_value(const Multiplier& m, double t);

/// ∫_{|x|<=t+1} psi(x,t)^r dx as a radial quadrature
/// |S^{N-1}| ∫_0^{t+1} psi(rho,t)^r rho^{N-1} drho. Requires r_exp > 1.
/// Composite Gauss-Legendre with at least 64 cells per unit radius, doubled
/// over the final unit where the integrand peaks.
double lemma1_integral(const TestFunctionContext& ctx, double r_exp, double t);

/// Exponent of the (1+t) bound on lemma1_integral: (2-r)(N-1)/2.
/// This is the form the blow-up estimates actually consume; substituted into
/// the Hoelder step it yields the (1+t)^{-mu p - (N-1)(p-2)/2} envelope.
double lemma1_bound_exponent(int n, double r_exp);

/// lemma1_integral / (1+t)^{lemma1_bound_exponent}; bounded uniformly in t.
double lemma1_ratio(const TestFunctionContext& ctx, double r_exp, double t);

} // namespace siwave

#endif
