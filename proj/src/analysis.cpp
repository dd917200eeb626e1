#include "fracwave/analysis.hpp"

#include "fracwave/fit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

namespace fracwave {

namespace {

std::vector<double> trapezoid_weights(std::span<const double> t) {
    std::vector<double> w(t.size(), 0.0);
    if (t.size() < 2) return w;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        const double half = 0.5 * (t[i + 1] - t[i]);
        w[i] += half;
        w[i + 1] += half;
    }
    return w;
}

} // namespace

FunctionalReport compute_functionals(const Trajectory& traj, const CutoffBundle& bundle,
                                     const QuadratureScheme& scheme) {
    const SimConfig& cfg = traj.config;
    const double R = bundle.R;
    if (!(R > 0.0)) throw ConfigError("compute_functionals: R must be positive");
    if (R > 0.5 * cfg.grid.half_width)
        throw ConfigError("compute_functionals: R must not exceed half of the box half-width");
    if (bundle.n != cfg.n) throw ConfigError("compute_functionals: bundle dimension mismatch");

    const double horizon = std::pow(R, bundle.alpha_exp);
    if (traj.snapshots.empty())
        throw CoverageError("compute_functionals: trajectory has no snapshots");
    std::vector<double> times;
    for (double t : traj.snapshot_times)
        if (t <= horizon * (1.0 + 1e-12)) times.push_back(t);
    if (times.size() < 64)
        throw CoverageError("compute_functionals: fewer than 64 snapshots inside [0, R^alpha]");
    if (traj.snapshot_times.back() < horizon * (1.0 - 1e-12))
        throw CoverageError("compute_functionals: trajectory ends before R^alpha; shrink R");

    ScaledTestFunction weight(bundle, scheme);

    // spatial weight vectors, shared across snapshots
    const Grid& g = cfg.grid;
    const std::size_t total = g.size();
    std::vector<double> sw(total), lap_w(total), frac_w(total);
    std::vector<bool> in_ring(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto ijk = g.unravel(idx);
        double r2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double x = g.coordinate(ijk[d]);
            r2 += x * x;
        }
        const double r = std::sqrt(r2);
        sw[idx] = weight.space_weight(r);
        lap_w[idx] = weight.space_weight_lap(r);
        frac_w[idx] = weight.space_weight_fraclap(r);
        in_ring[idx] = r > 0.5 * R && r <= R;
    }

    const double hn = std::pow(g.spacing(), g.dim);
    const double p = bundle.p;
    const std::size_t n_times = times.size();
    std::vector<double> s_pow(n_times), s_pow_ring(n_times), s_u_sw(n_times), s_u_lap(n_times),
        s_u_frac(n_times);
    for (std::size_t i = 0; i < n_times; ++i) {
        const RealField& u = traj.snapshots[i];
        double a_pow = 0.0, a_ring = 0.0, a_sw = 0.0, a_lap = 0.0, a_frac = 0.0;
        for (std::size_t idx = 0; idx < total; ++idx) {
            const double uv = u.values[idx];
            const double upow = std::pow(std::abs(uv), p) * sw[idx];
            a_pow += upow;
            if (in_ring[idx]) a_ring += upow;
            a_sw += uv * sw[idx];
            a_lap += uv * lap_w[idx];
            a_frac += uv * frac_w[idx];
        }
        s_pow[i] = a_pow * hn;
        s_pow_ring[i] = a_ring * hn;
        s_u_sw[i] = a_sw * hn;
        s_u_lap[i] = a_lap * hn;
        s_u_frac[i] = a_frac * hn;
    }

    const std::vector<double> w_t = trapezoid_weights(times);
    FunctionalReport rep;
    rep.R = R;
    for (std::size_t i = 0; i < n_times; ++i) {
        const double t = times[i];
        const double psi = weight.time_weight(t);
        const double psi_t = weight.time_weight_dt(t);
        const double psi_tt = weight.time_weight_dtt(t);
        rep.I_R += w_t[i] * psi * s_pow[i];
        rep.I_Rx += w_t[i] * psi * s_pow_ring[i];
        rep.J1 += w_t[i] * psi_tt * s_u_sw[i];
        rep.J2 += w_t[i] * psi * s_u_lap[i];
        rep.J3 += w_t[i] * psi_t * s_u_frac[i];
    }

    // late-time window with its own trapezoid weights
    std::vector<double> late_times;
    std::vector<std::size_t> late_idx;
    for (std::size_t i = 0; i < n_times; ++i) {
        if (times[i] >= 0.5 * horizon) {
            late_times.push_back(times[i]);
            late_idx.push_back(i);
        }
    }
    const std::vector<double> w_late = trapezoid_weights(late_times);
    for (std::size_t j = 0; j < late_times.size(); ++j)
        rep.I_Rt += w_late[j] * weight.time_weight(late_times[j]) * s_pow[late_idx[j]];

    rep.data_term = localized_data_term(traj.u0, traj.u1, bundle.delta, weight);
    const double rhs = -rep.data_term + rep.J1 - rep.J2 - rep.J3;
    rep.identity_residual =
        std::abs(rep.I_R - rhs) / std::max({std::abs(rep.I_R), std::abs(rep.data_term), 1e-300});
    return rep;
}

double j1_bound_exponent(const CutoffBundle& b) {
    return -2.0 * b.alpha_exp + (b.n + b.alpha_exp) / b.p_conj;
}
double j2_bound_exponent(const CutoffBundle& b) { return -2.0 + (b.n + b.alpha_exp) / b.p_conj; }
double j3_bound_exponent(const CutoffBundle& b) {
    return -b.alpha_exp - 2.0 * b.delta.s + (b.n + b.alpha_exp) / b.p_conj;
}

ScalingProbeReport probe_scaling_estimates(const SimConfig& config, const CutoffProfile& profile,
                                           std::span<const double> R_list,
                                           const QuadratureScheme& scheme) {
    if (R_list.size() < 4) throw ConfigError("probe_scaling_estimates: need >= 4 values of R");
    std::vector<double> rs(R_list.begin(), R_list.end());
    std::sort(rs.begin(), rs.end());

    SimConfig cfg = config;
    cfg.record_snapshots = true;
    const double alpha = 2.0 - 2.0 * cfg.delta.s;
    const double horizon = std::pow(rs.back(), alpha);
    if (cfg.t_max < horizon)
        throw CoverageError("probe_scaling_estimates: t_max is below max(R)^alpha");
    Trajectory traj = run(cfg);
    if (traj.outcome == Outcome::Blowup && traj.blowup_time <= horizon)
        throw CoverageError("probe_scaling_estimates: trajectory blows up inside the window");

    ScalingProbeReport rep;
    {
        const CutoffBundle first = make_bundle(profile, cfg.p, cfg.n, cfg.delta.s, rs.front());
        rep.bound_j1 = j1_bound_exponent(first);
        rep.bound_j2 = j2_bound_exponent(first);
        rep.bound_j3 = j3_bound_exponent(first);
    }
    std::vector<double> lr, y1, y2, y3;
    for (double R : rs) {
        CutoffBundle bundle = make_bundle(profile, cfg.p, cfg.n, cfg.delta.s, R);
        FunctionalReport f = compute_functionals(traj, bundle, scheme);
        rep.per_R.push_back(f);
        const double p = cfg.p;
        if (std::abs(f.J1) < 1e-300 || std::abs(f.J2) < 1e-300 || std::abs(f.J3) < 1e-300 ||
            f.I_Rt < 1e-300 || f.I_Rx < 1e-300)
            throw DegenerateFit("probe_scaling_estimates: a weak-form term underflowed");
        lr.push_back(std::log(R));
        y1.push_back(std::log(std::abs(f.J1) / std::pow(f.I_Rt, 1.0 / p)));
        y2.push_back(std::log(std::abs(f.J2) / std::pow(f.I_Rx, 1.0 / p)));
        y3.push_back(std::log(std::abs(f.J3) / std::pow(f.I_Rt, 1.0 / p)));
    }
    rep.slope_j1 = linear_fit(lr, y1).slope;
    rep.slope_j2 = linear_fit(lr, y2).slope;
    rep.slope_j3 = linear_fit(lr, y3).slope;
    rep.passed = rep.slope_j1 <= rep.bound_j1 + 0.3 && rep.slope_j2 <= rep.bound_j2 + 0.3 &&
                 rep.slope_j3 <= rep.bound_j3 + 0.3;
    return rep;
}

double young_bound_violation(double A, double gamma, std::span<const double> y_samples) {
    if (!(A > 0.0) || !(gamma > 0.0) || !(gamma < 1.0))
        throw ConfigError("young_bound_violation: need A > 0 and gamma in (0,1)");
    const double bound = std::pow(A, 1.0 / (1.0 - gamma));
    double worst = -std::numeric_limits<double>::infinity();
    for (double y : y_samples) {
        if (y < 0.0) throw ConfigError("young_bound_violation: samples must be >= 0");
        worst = std::max(worst, A * std::pow(y, gamma) - y - bound);
    }
    return worst;
}

namespace {

// Period of the dominant linear oscillation for the data's length scale;
// used to drop not-yet-asymptotic lifespans from the fit.
double linear_period(const SimConfig& cfg) {
    double width = 1.0;
    if (cfg.data.u1.kind == DataKind::Gaussian) width = cfg.data.u1.width;
    else if (cfg.data.u1.kind == DataKind::Bump) width = cfg.data.u1.radius;
    else if (cfg.data.u0.kind == DataKind::Gaussian) width = cfg.data.u0.width;
    else if (cfg.data.u0.kind == DataKind::Bump) width = cfg.data.u0.radius;
    const double k = 1.0 / width;
    const double disc = k * k - 0.25 * std::pow(k, 4.0 * cfg.delta.s);
    const double omega = disc > 0.0 ? std::sqrt(disc) : k;
    return 2.0 * std::numbers::pi / omega;
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> futures;
    std::atomic<std::size_t> next{0};
    const int workers = std::min<std::size_t>(threads, count);
    for (int w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        }));
    }
    for (auto& f : futures) f.get();
}

} // namespace

LifespanRecord lifespan_sweep(const SimConfig& base, std::span<const double> epsilons, int threads) {
    if (epsilons.size() < 4) throw ConfigError("lifespan_sweep: need >= 4 epsilon values");
    std::vector<double> eps(epsilons.begin(), epsilons.end());
    std::sort(eps.begin(), eps.end(), std::greater<>());

    LifespanRecord rec;
    rec.epsilons = eps;
    rec.lifespans.assign(eps.size(), std::numeric_limits<double>::quiet_NaN());
    rec.errors.assign(eps.size(), "");
    rec.in_fit.assign(eps.size(), false);
    const double d = base.delta.s;
    rec.paper_exponent =
        -2.0 * (1.0 - d) * (base.p - 1.0) / (2.0 - (base.n - 2.0 * d) * (base.p - 1.0));

    parallel_for(eps.size(), threads, [&](std::size_t i) {
        SimConfig cfg = base;
        cfg.epsilon = eps[i];
        try {
            rec.lifespans[i] = estimate_lifespan(cfg).t_blowup;
        } catch (const Error& e) {
            rec.errors[i] = e.what();
        }
    });

    const double t_min_fit = 3.0 * linear_period(base);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!std::isfinite(rec.lifespans[i])) continue;
        if (i == 0 && rec.lifespans[i] < t_min_fit) continue; // largest epsilon, pre-asymptotic
        rec.in_fit[i] = true;
        lx.push_back(std::log(eps[i]));
        ly.push_back(std::log(rec.lifespans[i]));
    }
    if (lx.size() < 2) throw DegenerateFit("lifespan_sweep: not enough successful estimates to fit");
    rec.fitted_slope = linear_fit(lx, ly).slope;

    rec.monotone = true;
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        if (!std::isfinite(rec.lifespans[i]) || !std::isfinite(rec.lifespans[i + 1])) continue;
        if (!(rec.lifespans[i + 1] > rec.lifespans[i])) rec.monotone = false;
    }
    return rec;
}

std::vector<CriticalityRow> criticality_scan(const SimConfig& base, std::span<const double> p_list,
                                             int threads) {
    std::vector<CriticalityRow> rows(p_list.size());
    parallel_for(p_list.size(), threads, [&](std::size_t i) {
        CriticalityRow& row = rows[i];
        row.p = p_list[i];
        row.t_blowup = std::numeric_limits<double>::quiet_NaN();
        row.h1_slope = std::numeric_limits<double>::quiet_NaN();
        try {
            row.classification = classify_exponent(row.p, base.n, base.delta);
            SimConfig cfg = base;
            cfg.p = row.p;
            Trajectory traj = run(cfg);
            row.outcome = to_string(traj.outcome);
            if (traj.outcome == Outcome::Blowup) {
                row.t_blowup = traj.blowup_time;
            } else {
                try {
                    row.h1_slope = fit_decay_rate(traj, NormSelector::H1MeanFree);
                } catch (const Error&) {
                    // slope stays NaN when the window is too short
                }
            }
        } catch (const Error& e) {
            row.outcome = "error";
            row.error = e.what();
        }
    });
    return rows;
}

} // namespace fracwave
