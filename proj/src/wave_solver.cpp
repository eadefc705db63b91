#include "siwave/wave_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <stdexcept>

namespace siwave {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) {
        throw std::invalid_argument(msg);
    }
}

// |x|^e with fast paths for the common small integer powers.
inline double pow_abs(double x, double e) {
    const double ax = std::fabs(x);
    if (e == 2.0) {
        return ax * ax;
    }
    if (e == 3.0) {
        return ax * ax * ax;
    }
    return std::pow(ax, e);
}

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

void InitialDataSpec::validate() const {
    if (profile == ProfileKind::PolynomialBump) {
        require(k >= 3, "polynomial bump order k must be >= 3");
    }
    require(std::isfinite(f_amplitude) && f_amplitude >= 0.0, "f_amplitude must be >= 0");
    require(std::isfinite(g_amplitude) && g_amplitude >= 0.0, "g_amplitude must be >= 0");
    require(f_amplitude + g_amplitude > 0.0, "f and g must not both vanish");
}

double InitialDataSpec::value(double r) const {
    const double rr = r * r;
    if (rr >= 1.0) {
        return 0.0;
    }
    if (profile == ProfileKind::PolynomialBump) {
        return std::pow(1.0 - rr, k);
    }
    return std::exp(1.0 - 1.0 / (1.0 - rr));
}

std::size_t RadialGrid::node_count() const {
    return static_cast<std::size_t>(std::llround(r_max / h)) + 1;
}

void RadialGrid::validate() const {
    require(std::isfinite(h) && h > 0.0, "grid spacing h must be > 0");
    require(std::isfinite(r_max) && r_max > h, "grid r_max must exceed h");
    require(node_count() >= 128, "grid must have at least 128 nodes");
}

void StepControls::validate() const {
    require(cfl > 0.0 && cfl < 1.0, "cfl must lie in (0,1)");
    require(t_max > 0.0, "t_max must be > 0");
    require(blowup_threshold > 0.0, "blowup_threshold must be > 0");
    require(dt_min > 0.0, "dt_min must be > 0");
    require(nl_safety > 0.0, "nl_safety must be > 0");
    require(output_every >= 1, "output_every must be >= 1");
}

const char* outcome_name(RunOutcome o) {
    switch (o) {
        case RunOutcome::HorizonReached: return "horizon";
        case RunOutcome::BlewUp: return "blowup";
        case RunOutcome::SolverFailure: return "failure";
    }
    return "unknown";
}

void FunctionalTrace::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open trace output file: " + path);
    }
    out << "t,dt,sup_abs_u,F,F1,F2,F1_lower_bound,F2_lower_bound,support_radius\n";
    for (const TraceRow& row : rows) {
        out << format_g17(row.t) << ',' << format_g17(row.dt) << ',' << format_g17(row.sup_abs_u)
            << ',' << format_g17(row.F) << ',' << format_g17(row.F1) << ',' << format_g17(row.F2)
            << ',' << format_g17(row.F1_lower_bound) << ',' << format_g17(row.F2_lower_bound)
            << ',' << format_g17(row.support_radius) << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed while writing trace CSV: " + path);
    }
}

WaveSolver::WaveSolver(ProblemParams params, InitialDataSpec data, RadialGrid grid,
                       StepControls controls)
    : params_(params), data_(data), grid_(grid), controls_(controls) {
    params_.validate();
    data_.validate();
    grid_.validate();
    controls_.validate();
    require(grid_.r_max >= 1.0 + controls_.t_max + grid_.h,
            "grid too small for the requested horizon: need r_max >= 1 + t_max + h");

    nodes_ = grid_.node_count();
    radii_.resize(nodes_);
    phi_grid_.resize(nodes_);
    quad_weight_.resize(nodes_);

    TestFunctionContext ctx{params_.n, 64};
    const double s_measure = surface_measure(params_.n);
    for (std::size_t i = 0; i < nodes_; ++i) {
        radii_[i] = static_cast<double>(i) * grid_.h;
        phi_grid_[i] = phi(ctx, radii_[i]);
        const double rw = (params_.n == 1) ? 1.0 : std::pow(radii_[i], params_.n - 1);
        quad_weight_[i] = s_measure * rw * grid_.h;
    }
    quad_weight_.front() *= 0.5;
    quad_weight_.back() *= 0.5;

    // ∫ f phi dx and ∫ g phi dx by fine composite Simpson over the unit ball;
    // these feed the F1/F2 lower-bound columns.
    const int cells = 4096;
    const double w = 1.0 / cells;
    double acc = 0.0;
    for (int c = 0; c <= cells; ++c) {
        const double r = c * w;
        const double rw = (params_.n == 1) ? 1.0 : std::pow(r, params_.n - 1);
        const double f = data_.value(r) * phi(ctx, r) * rw;
        const double simpson = (c == 0 || c == cells) ? 1.0 : ((c % 2 == 1) ? 4.0 : 2.0);
        acc += simpson * f;
    }
    acc *= s_measure * w / 3.0;
    int_f_phi_ = data_.f_amplitude * acc;
    int_g_phi_ = data_.g_amplitude * acc;
}

RadialState WaveSolver::initialize() const {
    RadialState s;
    s.t = 0.0;
    s.u.assign(nodes_, 0.0);
    s.v.assign(nodes_, 0.0);
    const double eps = params_.epsilon;
    for (std::size_t i = 0; i < nodes_; ++i) {
        const double shape = data_.value(radii_[i]);
        s.u[i] = eps * data_.f_amplitude * shape;
        s.v[i] = eps * data_.g_amplitude * shape;
    }
    s.dt = choose_dt(s);
    s.support_radius = support_radius(s);
    return s;
}

double WaveSolver::damping_coefficient(double t) const {
    const double b = controls_.damping_b ? controls_.damping_b(t) : 1.0 / (1.0 + t);
    return params_.mu * b;
}

std::size_t WaveSolver::active_top(double t) const {
    if (!controls_.cone_clip) {
        return nodes_ - 2;
    }
    const double r_cone = t + 1.0 + grid_.h;
    const auto idx = static_cast<std::size_t>(std::floor(r_cone / grid_.h + 1e-12));
    return std::min(idx, nodes_ - 2);
}

void WaveSolver::accel(const std::vector<double>& u, const std::vector<double>& v, double t,
                       std::size_t hi, std::vector<double>& out) const {
    const double inv_h2 = 1.0 / (grid_.h * grid_.h);
    const double damp = damping_coefficient(t);
    const double a = params_.a;
    const double b = params_.b;
    const double p = params_.p;
    const double q = params_.q;
    const double dim = params_.n;

    // r = 0: Δu = N u_rr with the even-reflection ghost u_{-1} = u_1.
    out[0] = dim * 2.0 * (u[1] - u[0]) * inv_h2 - damp * v[0] + a * pow_abs(v[0], p) +
             b * pow_abs(u[0], q);
    for (std::size_t i = 1; i <= hi; ++i) {
        const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2 +
                           (dim - 1.0) / radii_[i] * (u[i + 1] - u[i - 1]) * (0.5 / grid_.h);
        out[i] = lap - damp * v[i] + a * pow_abs(v[i], p) + b * pow_abs(u[i], q);
    }
    std::fill(out.begin() + hi + 1, out.end(), 0.0);
}

void WaveSolver::step(RadialState& state, double dt) const {
    if (state.diverged) {
        throw std::logic_error("stepping a diverged state");
    }
    const std::size_t hi = active_top(state.t + dt);
    thread_local std::vector<double> a0, a1, u1, vp;
    a0.assign(nodes_, 0.0);
    a1.assign(nodes_, 0.0);
    u1.assign(nodes_, 0.0);
    vp.assign(nodes_, 0.0);

    accel(state.u, state.v, state.t, hi, a0);
    const double half_dt2 = 0.5 * dt * dt;
    for (std::size_t i = 0; i <= hi; ++i) {
        u1[i] = state.u[i] + dt * state.v[i] + half_dt2 * a0[i];
        vp[i] = state.v[i] + dt * a0[i];
    }
    accel(u1, vp, state.t + dt, hi, a1);
    for (std::size_t i = 0; i <= hi; ++i) {
        state.u[i] = u1[i];
        state.v[i] += 0.5 * dt * (a0[i] + a1[i]);
    }
    state.t += dt;
    state.dt = dt;

    if (controls_.cone_clip) {
        const std::size_t top = active_top(state.t);
        if (top + 1 < nodes_) {
            std::fill(state.u.begin() + top + 1, state.u.end(), 0.0);
            std::fill(state.v.begin() + top + 1, state.v.end(), 0.0);
        }
    }
    state.u[nodes_ - 1] = 0.0;
    state.v[nodes_ - 1] = 0.0;

    bool finite = true;
    for (std::size_t i = 0; i <= hi; ++i) {
        if (!std::isfinite(state.u[i]) || !std::isfinite(state.v[i])) {
            finite = false;
            break;
        }
    }
    double sup = 0.0;
    for (std::size_t i = 0; i <= hi; ++i) {
        sup = std::max(sup, std::fabs(state.u[i]));
    }
    if (!finite || sup >= controls_.blowup_threshold) {
        state.diverged = true;
    }
    state.support_radius = support_radius(state);
}

void WaveSolver::step(RadialState& state) const {
    step(state, choose_dt(state));
}

double WaveSolver::choose_dt(const RadialState& state) const {
    double sup_u = 0.0;
    double sup_v = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i) {
        sup_u = std::max(sup_u, std::fabs(state.u[i]));
        sup_v = std::max(sup_v, std::fabs(state.v[i]));
    }
    const double rate = params_.a * params_.p * pow_abs(sup_v, params_.p - 1.0) +
                        params_.b * params_.q * pow_abs(sup_u, params_.q - 1.0) +
                        damping_coefficient(state.t);
    double dt = controls_.cfl * grid_.h;
    if (rate > 0.0) {
        dt = std::min(dt, controls_.nl_safety / rate);
    }
    return dt;
}

double WaveSolver::support_radius(const RadialState& state) const {
    double sup_u = 0.0;
    for (double x : state.u) {
        if (std::isfinite(x)) {
            sup_u = std::max(sup_u, std::fabs(x));
        }
    }
    const double threshold = 1e-14 * sup_u;
    for (std::size_t i = nodes_; i-- > 0;) {
        if (std::fabs(state.u[i]) > threshold || std::fabs(state.v[i]) > threshold) {
            return radii_[i];
        }
    }
    return 0.0;
}

Functionals WaveSolver::functionals(const RadialState& state) const {
    Functionals f;
    const double decay = std::exp(-state.t);
    for (std::size_t i = 0; i < nodes_; ++i) {
        const double w = quad_weight_[i];
        const double psi_i = decay * phi_grid_[i];
        f.F += w * state.u[i];
        f.F1 += w * state.u[i] * psi_i;
        f.F2 += w * state.v[i] * psi_i;
    }
    return f;
}

TraceRow WaveSolver::make_row(const RadialState& state) const {
    TraceRow row;
    row.t = state.t;
    row.dt = state.dt;
    double sup = 0.0;
    for (double x : state.u) {
        if (std::isfinite(x)) {
            sup = std::max(sup, std::fabs(x));
        }
    }
    row.sup_abs_u = sup;
    const Functionals f = functionals(state);
    row.F = f.F;
    row.F1 = f.F1;
    row.F2 = f.F2;
    const double m = std::pow(1.0 + state.t, params_.mu);
    row.F1_lower_bound = params_.epsilon / (2.0 * m) * int_f_phi_;
    row.F2_lower_bound = params_.epsilon / (2.0 * m) * int_g_phi_;
    row.support_radius = state.support_radius;
    return row;
}

FunctionalTrace WaveSolver::run() const {
    FunctionalTrace trace;
    trace.params = params_;
    trace.grid_h = grid_.h;
    trace.int_f_phi = int_f_phi_;
    trace.int_g_phi = int_g_phi_;

    RadialState state = initialize();
    trace.rows.push_back(make_row(state));

    // Growth trend over recent steps; separates genuine blow-up from a
    // numerical instability when the step collapses or a NaN appears.
    std::deque<double> history;
    auto growing = [&history]() {
        if (history.size() < 7) {
            return false;
        }
        const std::size_t k = history.size();
        return history[k - 1] > history[k - 4] && history[k - 4] > history[k - 7];
    };
    auto sup_uv = [&state]() {
        double s = 0.0;
        for (double x : state.u) {
            if (std::isfinite(x)) {
                s = std::max(s, std::fabs(x));
            }
        }
        for (double x : state.v) {
            if (std::isfinite(x)) {
                s = std::max(s, std::fabs(x));
            }
        }
        return s;
    };

    long steps = 0;
    while (true) {
        if (state.t >= controls_.t_max * (1.0 - 1e-14)) {
            trace.outcome = RunOutcome::HorizonReached;
            break;
        }
        double dt = choose_dt(state);
        dt = std::min(dt, controls_.t_max - state.t);
        if (dt < controls_.dt_min) {
            if (growing()) {
                trace.outcome = RunOutcome::BlewUp;
                trace.t_num = state.t;
            } else {
                trace.outcome = RunOutcome::SolverFailure;
                trace.failure_reason = "step collapsed without a growth trend";
            }
            break;
        }
        const double t_before = state.t;
        step(state, dt);
        ++steps;
        history.push_back(sup_uv());
        if (history.size() > 16) {
            history.pop_front();
        }

        if (state.diverged) {
            bool finite = true;
            for (double x : state.u) {
                if (!std::isfinite(x)) {
                    finite = false;
                    break;
                }
            }
            if (finite) {
                // threshold crossing
                trace.outcome = RunOutcome::BlewUp;
                trace.t_num = state.t;
                trace.rows.push_back(make_row(state));
            } else if (growing()) {
                trace.outcome = RunOutcome::BlewUp;
                trace.t_num = t_before;
            } else {
                trace.outcome = RunOutcome::SolverFailure;
                trace.failure_reason = "non-finite state without a growth trend";
            }
            break;
        }
        if (steps % controls_.output_every == 0) {
            trace.rows.push_back(make_row(state));
        }
    }

    if (!state.diverged && (trace.rows.empty() || trace.rows.back().t < state.t)) {
        trace.rows.push_back(make_row(state));
    }
    return trace;
}

Functionals compute_functionals(const RadialState& state, const TestFunctionContext& ctx,
                                const RadialGrid& grid) {
    grid.validate();
    require(state.u.size() == grid.node_count() && state.v.size() == grid.node_count(),
            "state does not match the grid");
    Functionals f;
    const double s_measure = surface_measure(ctx.n);
    const std::size_t n = state.u.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double r = static_cast<double>(i) * grid.h;
        const double rw = (ctx.n == 1) ? 1.0 : std::pow(r, ctx.n - 1);
        double w = s_measure * rw * grid.h;
        if (i == 0 || i + 1 == n) {
            w *= 0.5;
        }
        const double psi_i = psi(ctx, r, state.t);
        f.F += w * state.u[i];
        f.F1 += w * state.u[i] * psi_i;
        f.F2 += w * state.v[i] * psi_i;
    }
    return f;
}

BoundsReport verify_lower_bounds(const FunctionalTrace& trace, double slack) {
    require(trace.params.a == 1 && trace.params.b == 1,
            "lower-bound verification requires an a = b = 1 run");
    require(slack > 0.0 && slack <= 1.0, "slack must lie in (0,1]");

    BoundsReport report;
    report.bounds_pass = true;
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        const TraceRow& row = trace.rows[i];
        if (row.F1 < slack * row.F1_lower_bound) {
            report.bounds_pass = false;
            report.first_violation_row = i;
            report.violated_functional = 1;
            report.violation_lhs = row.F1;
            report.violation_rhs = slack * row.F1_lower_bound;
            break;
        }
        if (row.F2 < slack * row.F2_lower_bound) {
            report.bounds_pass = false;
            report.first_violation_row = i;
            report.violated_functional = 2;
            report.violation_lhs = row.F2;
            report.violation_rhs = slack * row.F2_lower_bound;
            break;
        }
    }

    // Envelope F(t) >= C eps^p (1+t)^{-mu p - p(N-1)/2} t^{N+1}: fit the best
    // constant over t >= 1 and report positivity; C itself is unspecified.
    const ProblemParams& prm = trace.params;
    const double alpha = prm.mu * prm.p + prm.p * (prm.n - 1.0) / 2.0;
    double c_fit = std::numeric_limits<double>::infinity();
    bool positive = true;
    std::size_t used = 0;
    for (const TraceRow& row : trace.rows) {
        if (row.t < 1.0) {
            continue;
        }
        ++used;
        if (!(row.F > 0.0)) {
            positive = false;
            continue;
        }
        const double envelope = std::pow(prm.epsilon, prm.p) * std::pow(1.0 + row.t, -alpha) *
                                std::pow(row.t, prm.n + 1.0);
        c_fit = std::min(c_fit, row.F / envelope);
    }
    report.envelope_rows = used;
    report.envelope_positive = used > 0 && positive;
    if (used > 0 && positive) {
        report.envelope_c_fit = c_fit;
    }
    return report;
}

} // namespace siwave
