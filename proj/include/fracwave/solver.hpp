#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracwave/field_ops.hpp"
#include "fracwave/fractional.hpp"
#include "fracwave/grid.hpp"
#include "fracwave/scaled_cutoff.hpp"

namespace fracwave {

enum class DataKind { Zero, Gaussian, Bump };

/// One component of the initial data: zero, a Gaussian exp(-|x-c|^2/w^2), or
/// a compactly supported bump built from the cutoff profile at the given
/// radius.
struct FieldSpec {
    DataKind kind = DataKind::Zero;
    double width = 1.0;  // Gaussian width
    double radius = 4.0; // bump support radius
    Point center{0.0, 0.0, 0.0};
};

struct DataSpec {
    FieldSpec u0;
    FieldSpec u1;
};

struct SimConfig {
    int n = 1;
    FracOrder delta{0.25};
    double p = 2.0;
    Grid grid{1, 1024, 40.0};
    double dt = 0.01;
    double t_max = 10.0;
    double blowup_threshold = 1e8;
    double epsilon = 0.1;
    DataSpec data;
    int record_every = 1;
    bool nonlinearity = true;
    bool record_snapshots = false;
    // the nonlinear substep keeps dt * |u|_inf^{p-1} below this factor,
    // shrinking steps as the solution grows
    double nonlinear_safety = 0.1;

    void validate() const;
};

struct State {
    double t = 0.0;
    SpectralField u_hat;
    SpectralField v_hat; // v = u_t
};

struct NormSample {
    double t;
    double l1, l2, linf, h1;
    double ut_l2, grad_l2;
    double mean_u, mean_ut; // box averages; the zero mode has no whole-space
                            // counterpart and is reported separately
};

enum class Outcome { Decayed, MaxTimeReached, Blowup };

struct Trajectory {
    SimConfig config;
    std::vector<NormSample> samples;
    std::vector<double> snapshot_times;
    std::vector<RealField> snapshots;
    RealField u0;
    RealField u1;
    Outcome outcome = Outcome::MaxTimeReached;
    double blowup_time = 0.0; // valid when outcome == Blowup
    bool resolution_warning = false;
};

const char* to_string(Outcome o);

/// Builds the epsilon-scaled data pair on the grid. Throws SupportTooLarge
/// when either field exceeds 1e-12 outside the half-box |x| <= L/2.
std::pair<RealField, RealField> initial_data(const DataSpec& spec, const Grid& grid, double epsilon);

/// integral of u1 + (-Lap)^delta u0 over the box (spectral operator).
double data_sign_integral(const RealField& u0, const RealField& u1, FracOrder delta);

/// Localized form: integral of (u1 + (-Lap)^delta u0) * phi_R^{p'+1}.
double localized_data_term(const RealField& u0, const RealField& u1, FracOrder delta,
                           const ScaledTestFunction& weight);

/// Exact flow over time dt of the damped mode equation
/// w'' + |xi|^{2 delta} w' + |xi|^2 w = 0 as a 2x2 matrix acting on (w, w').
struct Propagator2x2 {
    double a11, a12, a21, a22;
};
Propagator2x2 linear_propagator(double xi_abs, FracOrder delta, double dt);

/// Strang step: half linear, nonlinear kick v += dt |u|^p (dealiased by the
/// two-thirds rule), half linear. Throws BlowupDetected past the threshold.
class Stepper {
  public:
    explicit Stepper(const SimConfig& config);

    void advance(State& state, double dt);

    double last_sup() const { return last_sup_; }
    double last_top_octave_fraction() const { return last_top_fraction_; }

    /// Applies the two-thirds mask in place (state band-limitation).
    void dealias(SpectralField& F) const;

    const std::vector<double>& mode_magnitudes() const { return xi_abs_; }

  private:
    void apply_linear(State& state, double dt);
    void apply_nonlinear(State& state, double dt);

    SimConfig config_;
    std::vector<double> xi_abs_;
    std::vector<bool> masked_;
    std::vector<Propagator2x2> props_;
    double props_dt_ = -1.0;
    double last_sup_ = 0.0;
    double last_top_fraction_ = 0.0;
};

State initial_state(const SimConfig& config);

/// Integrates to t_max or blow-up, recording norms every record_every steps.
/// On blow-up the detection time is refined by re-running the final stretch
/// with halved steps until the estimate moves by less than 0.5%.
Trajectory run(const SimConfig& config);

struct LifespanEstimate {
    double t_blowup = 0.0;
    int refinement_levels = 0;
    double threshold_shift = 0.0; // relative shift when threshold drops 1e8 -> 1e6
    bool threshold_ok = true;
};

/// Blow-up time with step-halving until two successive estimates agree to 1%,
/// plus a threshold-sensitivity check. Throws NoBlowupObserved if t_max is
/// reached and HypothesisViolated outside the subcritical range.
LifespanEstimate estimate_lifespan(const SimConfig& config);

enum class NormSelector {
    L1,
    L2,
    Linf,
    H1,
    UtL2,
    GradL2,
    L2MeanFree,
    H1MeanFree,
    UtL2MeanFree,
};

double norm_value(const NormSample& s, NormSelector which, double box_volume);

/// Least-squares slope of log(norm) against log(1+t) on samples with
/// t >= t_min. Throws WindowTooShort (< 10 samples) or DegenerateFit (norms
/// vanish).
double fit_decay_rate(const Trajectory& traj, NormSelector which, double t_min = 5.0);

} // namespace fracwave
