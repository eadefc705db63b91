#include "siwave/exponents.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace siwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const std::string& msg) {
    if (!cond) {
        throw std::invalid_argument(msg);
    }
}

void require_dimension(double d) {
    require(std::isfinite(d) && d >= 1.0,
            "generalized dimension must satisfy d >= 1, got " + std::to_string(d));
}

void require_powers(double p, double q) {
    require(std::isfinite(p) && p > 1.0, "p must be > 1, got " + std::to_string(p));
    require(std::isfinite(q) && q > 1.0, "q must be > 1, got " + std::to_string(q));
}

} // namespace

void ProblemParams::validate() const {
    require(n >= 1, "spatial dimension n must be a positive integer");
    require(std::isfinite(mu) && mu >= 0.0, "damping strength mu must be >= 0");
    require_powers(p, q);
    require(a == 0 || a == 1, "nonlinearity switch a must be 0 or 1");
    require(b == 0 || b == 1, "nonlinearity switch b must be 0 or 1");
    require(std::isfinite(epsilon) && epsilon >= 0.0, "epsilon must be >= 0");
}

bool ProblemParams::sobolev_subcritical() const {
    if (n <= 2) {
        return true;
    }
    return q <= 2.0 * n / (n - 2.0);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NoCriterion: return "NoCriterion";
        case Verdict::BlowUpStrauss: return "BlowUpStrauss";
        case Verdict::BlowUpGlassey: return "BlowUpGlassey";
        case Verdict::BlowUpCombined: return "BlowUpCombined";
    }
    return "unknown";
}

double strauss_exponent(double d) {
    require_dimension(d);
    if (d == 1.0) {
        return kInf;
    }
    // Positive root of (d-1)q^2 - (d+1)q - 2 = 0; the discriminant
    // (d+1)^2 + 8(d-1) = d^2 + 10d - 7 is positive for every d >= 1.
    const double disc = d * d + 10.0 * d - 7.0;
    return (d + 1.0 + std::sqrt(disc)) / (2.0 * (d - 1.0));
}

double glassey_exponent(double d) {
    require_dimension(d);
    if (d == 1.0) {
        return kInf;
    }
    return 1.0 + 2.0 / (d - 1.0);
}

double lambda(double p, double q, double d) {
    require_powers(p, q);
    return (q - 1.0) * ((d - 1.0) * p - 2.0);
}

double mu_star(double p, double q, int n) {
    require(n >= 1, "spatial dimension n must be a positive integer");
    require_powers(p, q);
    return (q + 1.0) / (p * (q - 1.0)) - (n - 1.0) / 2.0;
}

double lifespan_exponent(double p, double q, int n, double mu) {
    require(n >= 1, "spatial dimension n must be a positive integer");
    require(std::isfinite(mu) && mu >= 0.0, "mu must be >= 0");
    const double lam = lambda(p, q, n + 2.0 * mu);
    if (lam >= 4.0) {
        throw std::domain_error("lifespan exponent undefined: lambda(p,q,N+2mu) = " +
                                std::to_string(lam) + " >= 4");
    }
    return -2.0 * p * (q - 1.0) / (4.0 - lam);
}

RegionClassification classify(const ProblemParams& params) {
    params.validate();
    const int n = params.n;
    const double mu = params.mu;
    const double p = params.p;
    const double q = params.q;

    RegionClassification rc;
    rc.strauss_q = strauss_exponent(n + mu);
    rc.glassey_p = glassey_exponent(n + 2.0 * mu);
    rc.lambda_shifted = lambda(p, q, n + 2.0 * mu);
    rc.mu_star = mu_star(p, q, n);
    rc.mu_cap = n * (q - 1.0) / 2.0;
    rc.strauss_mu_bound = (static_cast<double>(n) * n + n + 2.0) / (n + 2.0);
    rc.sobolev_subcritical = params.sobolev_subcritical();

    rc.strauss_applies = params.b == 1 && mu < rc.strauss_mu_bound && q <= rc.strauss_q;
    rc.glassey_applies = params.a == 1 && p < rc.glassey_p;
    rc.combined_applies = params.a == 1 && params.b == 1 && rc.lambda_shifted < 4.0 &&
                          mu < rc.mu_star && mu < rc.mu_cap;

    if (rc.lambda_shifted < 4.0) {
        rc.lifespan_exponent = lifespan_exponent(p, q, n, mu);
    }

    if (rc.combined_applies) {
        rc.verdict = Verdict::BlowUpCombined;
    } else if (rc.strauss_applies) {
        rc.verdict = Verdict::BlowUpStrauss;
    } else if (rc.glassey_applies) {
        rc.verdict = Verdict::BlowUpGlassey;
    } else {
        rc.verdict = Verdict::NoCriterion;
    }
    return rc;
}

} // namespace siwave
