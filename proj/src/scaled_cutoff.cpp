#include "fracwave/scaled_cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace fracwave {

CutoffBundle make_bundle(const CutoffProfile& profile, double p, int n, double delta, double R) {
    if (!(p > 1.0)) throw ConfigError("make_bundle: p must be > 1");
    if (n < 1 || n > 3) throw ConfigError("make_bundle: n must be 1, 2 or 3");
    if (!(R > 0.0)) throw ConfigError("make_bundle: R must be positive");
    const FracOrder d = frac_order(delta);
    CutoffBundle b{profile, p, conjugate_exponent(p), n, d, R, 2.0 - 2.0 * delta};
    return b;
}

AmbientFunction ambient_cutoff(const CutoffProfile& profile, double exponent) {
    auto prof = [profile, exponent](double r) {
        const double v = eval_phi(r, profile);
        return exponent == 1.0 ? v : std::pow(v, exponent);
    };
    return ambient_radial(prof, {0.5, 1.0});
}

RadialOperatorTable::RadialOperatorTable(const AmbientFunction& psi, FracOrder s, int n,
                                         const QuadratureScheme& scheme, std::size_t backbone_nodes) {
    if (backbone_nodes < 64) throw ConfigError("RadialOperatorTable: too few nodes");
    if (!psi.radial_profile) throw ConfigError("RadialOperatorTable: profile must be radial");

    const double r_min = 1e-3, r_max = 64.0;
    std::vector<double> nodes;
    nodes.reserve(backbone_nodes + 512);
    for (std::size_t i = 0; i < backbone_nodes; ++i)
        nodes.push_back(r_min * std::pow(r_max / r_min, static_cast<double>(i) / (backbone_nodes - 1)));
    // cluster around breakpoints: the operator has an integrable power
    // singularity at a sharp support edge
    for (double bk : psi.radial_breakpoints) {
        const int per_decade = 48;
        for (int i = 0; i <= 3 * per_decade; ++i) {
            const double d = bk * std::pow(10.0, -4.0 + 3.0 * static_cast<double>(i) / (3 * per_decade));
            if (bk + d < r_max) nodes.push_back(bk + d);
            if (bk - d > r_min) nodes.push_back(bk - d);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-12 * a; }),
                nodes.end());

    radii_.push_back(0.0);
    values_.push_back(frac_laplacian_quadrature_at(psi, s, n, Point{0.0, 0.0, 0.0}, scheme));
    for (double r : nodes) {
        radii_.push_back(r);
        values_.push_back(frac_laplacian_quadrature_at(psi, s, n, Point{r, 0.0, 0.0}, scheme));
    }
    log_r_.assign(radii_.size(), 0.0);
    for (std::size_t i = 1; i < radii_.size(); ++i) log_r_[i] = std::log(radii_[i]);
    tail_exponent_ = n + 2.0 * s.s;
}

double RadialOperatorTable::operator()(double r) const {
    if (r < 0.0) throw ConfigError("RadialOperatorTable: negative radius");
    if (r <= radii_[1]) {
        const double w = radii_[1] > 0.0 ? r / radii_[1] : 0.0;
        return values_[0] * (1.0 - w) + values_[1] * w;
    }
    const double r_last = radii_.back();
    if (r >= r_last) return values_.back() * std::pow(r_last / r, tail_exponent_);

    // cubic Hermite in log r with finite-difference slopes (non-uniform nodes)
    const double t = std::log(r);
    const std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(log_r_.begin() + 1, log_r_.end(), t) - log_r_.begin());
    const std::size_t i1 = hi - 1, i2 = hi;
    const double t1 = log_r_[i1], t2 = log_r_[i2];
    const double h = t2 - t1;
    const double y1 = values_[i1], y2 = values_[i2];
    auto slope = [&](std::size_t a, std::size_t b) { return (values_[b] - values_[a]) / (log_r_[b] - log_r_[a]); };
    const double m1 = i1 > 1 ? slope(i1 - 1, i2) : slope(i1, i2);
    const double m2 = i2 + 1 < radii_.size() ? slope(i1, i2 + 1) : slope(i1, i2);
    const double u = (t - t1) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2.0 * u3 - 3.0 * u2 + 1.0) * y1 + (u3 - 2.0 * u2 + u) * h * m1 +
           (-2.0 * u3 + 3.0 * u2) * y2 + (u3 - u2) * h * m2;
}

namespace {

struct TableKey {
    int n;
    double s;
    double alpha;
    double beta;
    double exponent;
    auto operator<=>(const TableKey&) const = default;
};

std::shared_ptr<const RadialOperatorTable> cached_table(const CutoffProfile& profile, double exponent,
                                                        FracOrder s, int n,
                                                        const QuadratureScheme& scheme) {
    static std::mutex mtx;
    static std::map<TableKey, std::shared_ptr<const RadialOperatorTable>> cache;
    const TableKey key{n, s.s, profile.alpha, profile.beta, exponent};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const RadialOperatorTable>(ambient_cutoff(profile, exponent), s, n, scheme);
    std::lock_guard<std::mutex> lock(mtx);
    auto [it, inserted] = cache.emplace(key, std::move(table));
    return it->second;
}

} // namespace

ScaledTestFunction::ScaledTestFunction(const CutoffBundle& bundle, const QuadratureScheme& scheme)
    : bundle_(bundle),
      pow_table_(cached_table(bundle.profile, bundle.p_conj + 1.0, bundle.delta, bundle.n, scheme)),
      base_table_(cached_table(bundle.profile, 1.0, bundle.delta, bundle.n, scheme)) {}

double ScaledTestFunction::time_weight(double t) const {
    const double ts = t * std::pow(bundle_.R, -bundle_.alpha_exp);
    return eval_phi_pow_derivs(ts, bundle_.p_conj + 1.0, bundle_.profile).value;
}

double ScaledTestFunction::time_weight_dt(double t) const {
    const double scale = std::pow(bundle_.R, -bundle_.alpha_exp);
    return scale * eval_phi_pow_derivs(t * scale, bundle_.p_conj + 1.0, bundle_.profile).d1;
}

double ScaledTestFunction::time_weight_dtt(double t) const {
    const double scale = std::pow(bundle_.R, -bundle_.alpha_exp);
    return scale * scale * eval_phi_pow_derivs(t * scale, bundle_.p_conj + 1.0, bundle_.profile).d2;
}

double ScaledTestFunction::space_weight(double r_abs) const {
    return eval_phi_pow_derivs(r_abs / bundle_.R, bundle_.p_conj + 1.0, bundle_.profile).value;
}

double ScaledTestFunction::space_weight_lap(double r_abs) const {
    const double rs = r_abs / bundle_.R;
    if (rs <= 0.5 || rs >= 1.0) return 0.0; // plateau and outside the support
    const CutoffDerivs d = eval_phi_pow_derivs(rs, bundle_.p_conj + 1.0, bundle_.profile);
    return (d.d2 + (bundle_.n - 1) * d.d1 / rs) / (bundle_.R * bundle_.R);
}

double ScaledTestFunction::space_weight_fraclap(double r_abs) const {
    return std::pow(bundle_.R, -2.0 * bundle_.delta.s) * (*pow_table_)(r_abs / bundle_.R);
}

double ScaledTestFunction::base_fraclap(double r_abs) const {
    return std::pow(bundle_.R, -2.0 * bundle_.delta.s) * (*base_table_)(r_abs / bundle_.R);
}

} // namespace fracwave
