#include "fracwave/solver.hpp"

#include "fracwave/criticality.hpp"
#include "fracwave/fit.hpp"
#include "fracwave/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracwave {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Decayed: return "decayed";
        case Outcome::MaxTimeReached: return "max_time_reached";
        default: return "blowup";
    }
}

void SimConfig::validate() const {
    if (n != 1 && n != 2) throw ConfigError("sim config: n must be 1 or 2");
    if (!(delta.s > 0.0) || delta.s > 0.5) throw ConfigError("sim config: delta must be in (0, 1/2]");
    if (!(n > 2.0 * delta.s)) throw HypothesisViolated("sim config: requires n > 2 delta");
    if (!(p > 1.0)) throw ConfigError("sim config: p must be > 1");
    if (grid.dim != n) throw ConfigError("sim config: grid dimension must equal n");
    if (!(dt > 0.0)) throw ConfigError("sim config: dt must be positive");
    if (!(t_max > 0.0)) throw ConfigError("sim config: t_max must be positive");
    if (!(blowup_threshold > 0.0)) throw ConfigError("sim config: blowup threshold must be positive");
    if (epsilon < 0.0) throw ConfigError("sim config: epsilon must be >= 0");
    if (record_every < 1) throw ConfigError("sim config: record_every must be >= 1");
    if (!(nonlinear_safety > 0.0) || nonlinear_safety > 1.0)
        throw ConfigError("sim config: nonlinear_safety must be in (0, 1]");
}

namespace {

double radial_distance(const Point& x, const Point& c, int dim) {
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += (x[d] - c[d]) * (x[d] - c[d]);
    return std::sqrt(r2);
}

RealField sample_component(const FieldSpec& spec, const Grid& grid, double epsilon) {
    switch (spec.kind) {
        case DataKind::Zero: return zero_field(grid);
        case DataKind::Gaussian: {
            const double w2 = spec.width * spec.width;
            return sample(grid, [&](const Point& x) {
                const double r = radial_distance(x, spec.center, grid.dim);
                return epsilon * std::exp(-r * r / w2);
            });
        }
        case DataKind::Bump: {
            const CutoffProfile prof{};
            return sample(grid, [&](const Point& x) {
                const double r = radial_distance(x, spec.center, grid.dim);
                return epsilon * eval_phi(r / spec.radius, prof);
            });
        }
    }
    return zero_field(grid);
}

void check_support(const RealField& f, const char* name) {
    const Grid& g = f.grid;
    const double half = 0.5 * g.half_width;
    const std::size_t total = g.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (std::abs(f.values[idx]) <= 1e-12) continue;
        auto ijk = g.unravel(idx);
        for (int d = 0; d < g.dim; ++d) {
            if (std::abs(g.coordinate(ijk[d])) > half)
                throw SupportTooLarge(std::string(name) +
                                      ": initial data exceeds 1e-12 outside the half box");
        }
    }
}

} // namespace

std::pair<RealField, RealField> initial_data(const DataSpec& spec, const Grid& grid, double epsilon) {
    RealField u0 = sample_component(spec.u0, grid, epsilon);
    RealField u1 = sample_component(spec.u1, grid, epsilon);
    check_support(u0, "u0");
    check_support(u1, "u1");
    return {std::move(u0), std::move(u1)};
}

double data_sign_integral(const RealField& u0, const RealField& u1, FracOrder delta) {
    require_same_grid(u0.grid, u1.grid, "data_sign_integral");
    RealField op = frac_laplacian_spectral(u0, delta);
    for (std::size_t i = 0; i < op.values.size(); ++i) op.values[i] += u1.values[i];
    return integrate(op);
}

double localized_data_term(const RealField& u0, const RealField& u1, FracOrder delta,
                           const ScaledTestFunction& weight) {
    require_same_grid(u0.grid, u1.grid, "localized_data_term");
    RealField op = frac_laplacian_spectral(u0, delta);
    const Grid& g = u0.grid;
    const std::size_t total = g.size();
    double acc = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto ijk = g.unravel(idx);
        Point x{0.0, 0.0, 0.0};
        for (int d = 0; d < g.dim; ++d) x[d] = g.coordinate(ijk[d]);
        const double r = radial_distance(x, Point{0.0, 0.0, 0.0}, g.dim);
        acc += (op.values[idx] + u1.values[idx]) * weight.space_weight(r);
    }
    return acc * std::pow(g.spacing(), g.dim);
}

Propagator2x2 linear_propagator(double xi_abs, FracOrder delta, double dt) {
    if (!(dt > 0.0)) throw ConfigError("linear_propagator: dt must be positive");
    const double k = xi_abs;
    if (k == 0.0) return {1.0, dt, 0.0, 1.0};

    const double k2 = k * k;
    const double mu = std::pow(k, 2.0 * delta.s);
    const double lam_avg = -0.5 * mu;
    const double disc = 0.25 * mu * mu - k2; // d^2

    const double d_abs = std::sqrt(std::abs(disc));
    if (d_abs * dt < 1e-6) {
        // nearly repeated roots: series in w = d^2 dt^2 avoids cancellation
        const double w = disc * dt * dt;
        const double C = 1.0 + w / 2.0 * (1.0 + w / 12.0 * (1.0 + w / 30.0));
        const double S = 1.0 + w / 6.0 * (1.0 + w / 20.0 * (1.0 + w / 42.0));
        const double e = std::exp(lam_avg * dt);
        const double f1 = e * (C - lam_avg * dt * S);
        const double f2 = e * dt * S;
        const double f2p = e * (C + lam_avg * dt * S);
        return {f1, f2, -k2 * f2, f2p};
    }

    if (disc > 0.0) {
        // overdamped: lam_plus computed cancellation-free
        const double lam_plus = -k2 / (0.5 * mu + d_abs);
        const double lam_minus = -mu - lam_plus;
        const double ep = std::exp(lam_plus * dt), em = std::exp(lam_minus * dt);
        const double span = lam_plus - lam_minus;
        const double f1 = (lam_plus * em - lam_minus * ep) / span;
        const double f2 = (ep - em) / span;
        const double f2p = (lam_plus * ep - lam_minus * em) / span;
        return {f1, f2, -k2 * f2, f2p};
    }

    // oscillatory branch
    const double nu = d_abs;
    const double e = std::exp(lam_avg * dt);
    const double sc = std::sin(nu * dt) / nu;
    const double c = std::cos(nu * dt);
    const double f1 = e * (c - lam_avg * sc);
    const double f2 = e * sc;
    const double f2p = e * (c + lam_avg * sc);
    return {f1, f2, -k2 * f2, f2p};
}

Stepper::Stepper(const SimConfig& config) : config_(config) {
    config_.validate();
    const Grid& g = config_.grid;
    const int N = g.points_per_axis;
    const std::size_t total = g.size();
    xi_abs_.resize(total);
    masked_.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto ijk = g.unravel(idx);
        double k2 = 0.0;
        bool masked = false;
        for (int d = 0; d < g.dim; ++d) {
            const double xi = g.frequency(ijk[d]);
            k2 += xi * xi;
            if (std::abs(g.alias(ijk[d])) > N / 3) masked = true;
        }
        xi_abs_[idx] = std::sqrt(k2);
        masked_[idx] = masked;
    }
}

void Stepper::dealias(SpectralField& F) const {
    for (std::size_t i = 0; i < F.coeffs.size(); ++i)
        if (masked_[i]) F.coeffs[i] = 0.0;
}

void Stepper::apply_linear(State& state, double dt) {
    if (dt != props_dt_) {
        props_.resize(xi_abs_.size());
        for (std::size_t i = 0; i < xi_abs_.size(); ++i)
            props_[i] = linear_propagator(xi_abs_[i], config_.delta, dt);
        props_dt_ = dt;
    }
    for (std::size_t i = 0; i < xi_abs_.size(); ++i) {
        const Propagator2x2& P = props_[i];
        const std::complex<double> u = state.u_hat.coeffs[i];
        const std::complex<double> v = state.v_hat.coeffs[i];
        state.u_hat.coeffs[i] = P.a11 * u + P.a12 * v;
        state.v_hat.coeffs[i] = P.a21 * u + P.a22 * v;
    }
}

void Stepper::apply_nonlinear(State& state, double dt) {
    RealField u = inverse_transform(state.u_hat);

    double sup = 0.0;
    for (double v : u.values) {
        const double a = std::abs(v);
        if (!(a <= std::numeric_limits<double>::max())) {
            sup = std::numeric_limits<double>::infinity();
            break;
        }
        sup = std::max(sup, a);
    }
    last_sup_ = sup;

    // spectral-tail monitor over the resolved band
    const int N = config_.grid.points_per_axis;
    double total_e = 0.0, top_e = 0.0;
    for (std::size_t i = 0; i < state.u_hat.coeffs.size(); ++i) {
        if (masked_[i]) continue;
        const double e = std::norm(state.u_hat.coeffs[i]);
        total_e += e;
        auto ijk = config_.grid.unravel(i);
        int max_alias = 0;
        for (int d = 0; d < config_.grid.dim; ++d)
            max_alias = std::max(max_alias, std::abs(config_.grid.alias(ijk[d])));
        if (max_alias >= N / 6) top_e += e;
    }
    last_top_fraction_ = total_e > 0.0 ? top_e / total_e : 0.0;

    if (!config_.nonlinearity || !std::isfinite(sup)) return;

    RealField w{u.grid, std::vector<double>(u.values.size())};
    const double p = config_.p;
    if (p == 2.0) {
        for (std::size_t i = 0; i < u.values.size(); ++i) w.values[i] = u.values[i] * u.values[i];
    } else if (p == 3.0) {
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            const double a = std::abs(u.values[i]);
            w.values[i] = a * a * a;
        }
    } else {
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            const double a = std::abs(u.values[i]);
            w.values[i] = a < 1e-300 ? 0.0 : std::pow(a, p);
        }
    }
    SpectralField w_hat = forward_transform(w);
    dealias(w_hat);
    for (std::size_t i = 0; i < w_hat.coeffs.size(); ++i) state.v_hat.coeffs[i] += dt * w_hat.coeffs[i];
}

void Stepper::advance(State& state, double dt) {
    apply_linear(state, 0.5 * dt);
    apply_nonlinear(state, dt);
    apply_linear(state, 0.5 * dt);
    state.t += dt;
    if (!std::isfinite(last_sup_) || last_sup_ >= config_.blowup_threshold)
        throw BlowupDetected(state.t, last_sup_);
}

State initial_state(const SimConfig& config) {
    auto [u0, u1] = initial_data(config.data, config.grid, config.epsilon);
    State s{0.0, forward_transform(u0), forward_transform(u1)};
    Stepper masker(config);
    masker.dealias(s.u_hat);
    masker.dealias(s.v_hat);
    return s;
}

namespace {

// Norms computed tolerantly (a blown-up final sample may hold huge values).
NormSample make_sample(const State& state, const SimConfig& config) {
    NormSample s{};
    s.t = state.t;
    RealField u = inverse_transform(state.u_hat);
    const Grid& g = config.grid;
    const double hn = std::pow(g.spacing(), g.dim);
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
    for (double v : u.values) {
        const double a = std::abs(v);
        l1 += a;
        l2 += v * v;
        linf = std::max(linf, a);
    }
    s.l1 = l1 * hn;
    s.l2 = std::sqrt(l2 * hn);
    s.linf = linf;
    s.grad_l2 = spectral_grad_l2(state.u_hat);
    s.h1 = std::sqrt(s.l2 * s.l2 + s.grad_l2 * s.grad_l2);
    s.ut_l2 = spectral_l2(state.v_hat);
    const double volume = std::pow(2.0 * g.half_width, g.dim);
    s.mean_u = state.u_hat.coeffs[0].real() / volume;
    s.mean_ut = state.v_hat.coeffs[0].real() / volume;
    return s;
}

void check_truncation(const RealField& u, double linf) {
    if (linf <= 0.0 || !std::isfinite(linf)) return;
    const Grid& g = u.grid;
    const double band = 2.0 * g.spacing();
    const std::size_t total = g.size();
    double worst = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto ijk = g.unravel(idx);
        bool near_boundary = false;
        for (int d = 0; d < g.dim; ++d) {
            const double x = g.coordinate(ijk[d]);
            if (g.half_width - std::abs(x) <= band) near_boundary = true;
        }
        if (near_boundary) worst = std::max(worst, std::abs(u.values[idx]));
    }
    if (worst > 1e-8 * linf)
        throw TruncationContaminated("run: field exceeds 1e-8 of its sup within 2h of the box boundary");
}

} // namespace

double norm_value(const NormSample& s, NormSelector which, double box_volume) {
    switch (which) {
        case NormSelector::L1: return s.l1;
        case NormSelector::L2: return s.l2;
        case NormSelector::Linf: return s.linf;
        case NormSelector::H1: return s.h1;
        case NormSelector::UtL2: return s.ut_l2;
        case NormSelector::GradL2: return s.grad_l2;
        case NormSelector::L2MeanFree: {
            const double v = s.l2 * s.l2 - box_volume * s.mean_u * s.mean_u;
            return std::sqrt(std::max(v, 0.0));
        }
        case NormSelector::H1MeanFree: {
            const double v = s.l2 * s.l2 - box_volume * s.mean_u * s.mean_u;
            return std::sqrt(std::max(v, 0.0) + s.grad_l2 * s.grad_l2);
        }
        case NormSelector::UtL2MeanFree: {
            const double v = s.ut_l2 * s.ut_l2 - box_volume * s.mean_ut * s.mean_ut;
            return std::sqrt(std::max(v, 0.0));
        }
    }
    return 0.0;
}

Trajectory run(const SimConfig& config) {
    config.validate();
    Trajectory traj;
    traj.config = config;
    auto [u0, u1] = initial_data(config.data, config.grid, config.epsilon);
    traj.u0 = u0;
    traj.u1 = u1;

    Stepper stepper(config);
    State state{0.0, forward_transform(u0), forward_transform(u1)};
    stepper.dealias(state.u_hat);
    stepper.dealias(state.v_hat);

    auto record = [&](const State& st) {
        NormSample s = make_sample(st, config);
        if (std::isfinite(s.linf)) {
            RealField u = inverse_transform(st.u_hat);
            check_truncation(u, s.linf);
            if (config.record_snapshots) {
                traj.snapshot_times.push_back(st.t);
                traj.snapshots.push_back(std::move(u));
            }
        }
        traj.samples.push_back(s);
    };

    record(state);

    const double tiny = 1e-12 * config.t_max;
    long step_index = 0;
    double sup = norm(u0, NormKind::Linf);

    while (state.t < config.t_max - tiny) {
        double dt = std::min(config.dt, config.t_max - state.t);
        if (config.nonlinearity && sup > 0.0) {
            const double scale = std::pow(sup, config.p - 1.0);
            if (scale > 0.0) dt = std::min(dt, config.nonlinear_safety / scale);
        }

        State before = state;
        try {
            stepper.advance(state, dt);
        } catch (const BlowupDetected& bd) {
            // refine the detection time over the final stretch
            double t_est = bd.time;
            int level = 0;
            for (int k = 1; k <= 12; ++k) {
                const double sub_dt = dt / std::pow(2.0, k);
                State probe = before;
                double t_detect = std::numeric_limits<double>::quiet_NaN();
                for (long i = 0; i < 200000; ++i) {
                    try {
                        stepper.advance(probe, sub_dt);
                    } catch (const BlowupDetected& sub) {
                        t_detect = sub.time;
                        break;
                    }
                    if (probe.t > bd.time + 4.0 * dt) break;
                }
                if (!std::isfinite(t_detect)) break; // smaller steps no longer reach the threshold here
                level = k;
                if (std::abs(t_detect - t_est) < 0.005 * std::abs(t_detect)) {
                    t_est = t_detect;
                    break;
                }
                t_est = t_detect;
            }
            (void)level;
            traj.outcome = Outcome::Blowup;
            traj.blowup_time = t_est;
            record(state); // final sample carries the super-threshold sup
            if (stepper.last_top_octave_fraction() > 1e-6) traj.resolution_warning = true;
            return traj;
        }

        sup = stepper.last_sup();
        if (stepper.last_top_octave_fraction() > 1e-6) traj.resolution_warning = true;
        ++step_index;
        if (step_index % config.record_every == 0) record(state);
    }

    if (traj.samples.back().t < state.t) record(state);

    const double volume = std::pow(2.0 * config.grid.half_width, config.grid.dim);
    const double h1_start = norm_value(traj.samples.front(), NormSelector::H1MeanFree, volume);
    const double h1_end = norm_value(traj.samples.back(), NormSelector::H1MeanFree, volume);
    traj.outcome = (h1_start == 0.0 || h1_end < 0.1 * h1_start) ? Outcome::Decayed : Outcome::MaxTimeReached;
    return traj;
}

LifespanEstimate estimate_lifespan(const SimConfig& config) {
    if (classify_exponent(config.p, config.n, config.delta) != Criticality::Subcritical)
        throw HypothesisViolated("estimate_lifespan: exponent is not subcritical");

    auto blowup_time = [](SimConfig cfg) {
        cfg.record_snapshots = false;
        Trajectory t = run(cfg);
        if (t.outcome != Outcome::Blowup)
            throw NoBlowupObserved("estimate_lifespan: no blow-up before t_max; raise epsilon or t_max");
        return t.blowup_time;
    };

    LifespanEstimate est;
    SimConfig cfg = config;
    double t_prev = blowup_time(cfg);
    for (int k = 1; k <= 6; ++k) {
        cfg.dt *= 0.5;
        cfg.nonlinear_safety *= 0.5;
        const double t_next = blowup_time(cfg);
        est.refinement_levels = k;
        const bool converged = std::abs(t_next - t_prev) < 0.01 * std::abs(t_next);
        t_prev = t_next;
        if (converged) break;
    }
    est.t_blowup = t_prev;

    SimConfig low = cfg;
    low.blowup_threshold = config.blowup_threshold / 100.0;
    const double t_low = blowup_time(low);
    est.threshold_shift = std::abs(t_prev - t_low) / std::abs(t_prev);
    est.threshold_ok = est.threshold_shift < 0.02;
    return est;
}

double fit_decay_rate(const Trajectory& traj, NormSelector which, double t_min) {
    const double volume = std::pow(2.0 * traj.config.grid.half_width, traj.config.grid.dim);
    std::vector<double> xs, ys;
    for (const NormSample& s : traj.samples) {
        if (s.t < t_min) continue;
        const double v = norm_value(s, which, volume);
        if (!(v > 1e-300)) throw DegenerateFit("fit_decay_rate: norm vanishes inside the fit window");
        xs.push_back(std::log(1.0 + s.t));
        ys.push_back(std::log(v));
    }
    if (xs.size() < 10) throw WindowTooShort("fit_decay_rate: fewer than 10 samples past the transient");
    return linear_fit(xs, ys).slope;
}

} // namespace fracwave
