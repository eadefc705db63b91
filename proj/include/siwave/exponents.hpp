#ifndef SIWAVE_EXPONENTS_HPP
#define SIWAVE_EXPONENTS_HPP

/// Critical-exponent algebra and blow-up-region classification for the
/// scale-invariant damped wave equation
///
///     u_tt - Δu + mu/(1+t) u_t = a|u_t|^p + b|u|^q
///
/// All formulas accept a real-valued "generalized dimension" d, since the
/// damping shifts the effective dimension to N+mu (Strauss side) and N+2mu
/// (Glassey and combined sides).

#include <limits>

namespace siwave {

/// The full parameter tuple of one experiment. Single source of truth for a
/// run: (N, mu, p, q, a, b, epsilon).
struct ProblemParams {
    int n = 1;            ///< spatial dimension, >= 1
    double mu = 0.0;      ///< damping strength, >= 0
    double p = 2.0;       ///< power of |u_t|^p, > 1
    double q = 2.0;       ///< power of |u|^q, > 1
    int a = 1;            ///< derivative-nonlinearity switch, 0 or 1
    int b = 1;            ///< state-nonlinearity switch, 0 or 1
    double epsilon = 1.0; ///< initial-data amplitude, >= 0 (0 is the degenerate zero run)

    /// Throws std::invalid_argument when a hard invariant is violated.
    /// The Sobolev-subcritical condition q <= 2N/(N-2) is reported by
    /// sobolev_subcritical() instead of being enforced here: it restricts the
    /// well-posedness theory, not the exponent algebra.
    void validate() const;

    /// q <= 2N/(N-2) when N >= 3; vacuously true for N <= 2.
    bool sobolev_subcritical() const;
};

enum class Verdict {
    NoCriterion = 0,
    BlowUpStrauss = 1,
    BlowUpGlassey = 2,
    BlowUpCombined = 3,
};

const char* verdict_name(Verdict v);

/// Which blow-up criteria apply at a parameter point, with the predicted
/// lifespan exponent where one is defined.
///
/// When several criteria apply, all of them are reported through the
/// *_applies flags. The verdict carries the mechanism with the strongest
/// known lifespan exponent; only the combined mechanism has a computable
/// exponent here, so the precedence combined > Strauss > Glassey is an
/// artifact convention (flagged as such in CLI output).
struct RegionClassification {
    double strauss_q = 0.0;        ///< q_S(N+mu), may be +inf
    double glassey_p = 0.0;        ///< p_G(N+2mu), may be +inf
    double lambda_shifted = 0.0;   ///< lambda(p, q, N+2mu)
    double mu_star = 0.0;          ///< combined-region damping threshold
    double mu_cap = 0.0;           ///< N(q-1)/2
    double strauss_mu_bound = 0.0; ///< (N^2+N+2)/(N+2)
    bool strauss_applies = false;
    bool glassey_applies = false;
    bool combined_applies = false;
    bool sobolev_subcritical = true;
    Verdict verdict = Verdict::NoCriterion;
    /// -2p(q-1)/(4 - lambda(p,q,N+2mu)); NaN when lambda >= 4.
    double lifespan_exponent = std::numeric_limits<double>::quiet_NaN();
};

/// Strauss exponent q_S(d): the positive root of (d-1)q^2 - (d+1)q - 2 = 0.
/// Returns +inf for d = 1, where the quadratic degenerates and has no
/// positive root. Rejects d < 1.
double strauss_exponent(double d);

/// Glassey exponent p_G(d) = 1 + 2/(d-1); +inf for d = 1. Rejects d < 1.
double glassey_exponent(double d);

/// Combined-nonlinearity interaction functional
/// lambda(p, q, d) = (q-1)((d-1)p - 2). Requires p > 1, q > 1.
double lambda(double p, double q, double d);

/// mu_* = (q+1)/(p(q-1)) - (N-1)/2. Satisfies lambda(p, q, N+2 mu_*) = 4
/// identically; may be negative, in which case the combined region is empty
/// for mu >= 0.
double mu_star(double p, double q, int n);

/// Predicted lifespan exponent -2p(q-1)/(4 - lambda(p,q,N+2mu)).
/// Rejects lambda(p,q,N+2mu) >= 4, where the exponent is undefined.
double lifespan_exponent(double p, double q, int n, double mu);

/// Classify a parameter point against the three blow-up criteria.
/// Boundary conventions: q = q_S counts as Strauss blow-up (closed), p = p_G
/// does not count as Glassey blow-up (open), lambda = 4 does not count as
/// combined blow-up (strict).
RegionClassification classify(const ProblemParams& params);

} // namespace siwave

#endif
