#include "fracwave/singular_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracwave {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return 2.0 * kPi;
        default: return 4.0 * kPi;
    }
}

// Composite Simpson over [a, b] with an odd node count >= 3.
template <typename F>
double simpson(F&& f, double a, double b, int nodes) {
    if (nodes < 3) nodes = 3;
    if (nodes % 2 == 0) ++nodes;
    const double h = (b - a) / (nodes - 1);
    double acc = f(a) + f(b);
    for (int i = 1; i < nodes - 1; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

int odd_at_least(int v, int floor_nodes) {
    v = std::max(v, floor_nodes);
    return v % 2 == 0 ? v + 1 : v;
}

// Segment boundaries never sit exactly on a breakpoint: a relative gap keeps
// the thin transition layer of steep cutoffs out of every segment.
constexpr double kEdgeGap = 1e-8;

struct Segmenter {
    std::vector<double> cuts; // ascending, interior cut radii

    void add(double r, double lo, double hi) {
        if (r > lo * (1.0 + 1e-12) && r < hi * (1.0 - 1e-12)) cuts.push_back(r);
    }
    std::vector<std::pair<double, double>> segments(double lo, double hi) {
        std::sort(cuts.begin(), cuts.end());
        std::vector<std::pair<double, double>> out;
        double left = lo;
        for (double c : cuts) {
            if (c - left > left * 1e-12) {
                out.emplace_back(left, c * (1.0 - kEdgeGap));
                left = c * (1.0 + kEdgeGap);
            }
        }
        if (hi > left) out.emplace_back(left, hi);
        return out;
    }
};

// Angular average of psi over the sphere of radius r centered at distance a
// from the origin, for radial psi. Integrand is segmented at the angles where
// the sphere crosses a breakpoint radius.
class RadialMean {
  public:
    RadialMean(const AmbientFunction& psi, int n, double a, int angular_nodes)
        : psi_(psi), n_(n), a_(a), nodes_(angular_nodes) {}

    // (1/sigma_n) * int_{S^{n-1}} psi(|x + r w|) dsigma(w)
    double operator()(double r) const {
        const auto& f = psi_.radial_profile;
        if (n_ == 1) return 0.5 * (f(a_ + r) + f(std::abs(a_ - r)));

        // rho(c) = sqrt(a^2 + r^2 + 2 a r c), c = cos(angle to x)
        const double a2r2 = a_ * a_ + r * r;
        const double two_ar = 2.0 * a_ * r;
        if (two_ar == 0.0) return f(std::sqrt(a2r2));

        std::vector<double> ccuts;
        for (double bk : psi_.radial_breakpoints) {
            const double c = (bk * bk - a2r2) / two_ar;
            if (c > -1.0 + 1e-14 && c < 1.0 - 1e-14) ccuts.push_back(c);
        }
        std::sort(ccuts.begin(), ccuts.end());

        if (n_ == 2) {
            // theta-integral over [0, pi]; cuts at theta = acos(c)
            std::vector<double> tcuts;
            for (double c : ccuts) tcuts.push_back(std::acos(c));
            std::sort(tcuts.begin(), tcuts.end());
            double lo = 0.0, acc = 0.0;
            tcuts.push_back(kPi);
            for (double hi : tcuts) {
                if (hi - lo < 1e-14) {
                    lo = hi;
                    continue;
                }
                const int m = odd_at_least(static_cast<int>(nodes_ * (hi - lo) / kPi), 9);
                acc += simpson(
                    [&](double th) { return f(std::sqrt(std::max(0.0, a2r2 + two_ar * std::cos(th)))); }, lo,
                    hi, m);
                lo = hi;
            }
            return acc / kPi;
        }

        // n == 3: integral in c over [-1, 1]
        double lo = -1.0, acc = 0.0;
        ccuts.push_back(1.0);
        for (double hi : ccuts) {
            if (hi - lo < 1e-14) {
                lo = hi;
                continue;
            }
            const int m = odd_at_least(static_cast<int>(nodes_ * (hi - lo) / 2.0), 9);
            acc += simpson([&](double c) { return f(std::sqrt(std::max(0.0, a2r2 + two_ar * c))); }, lo, hi,
                           m);
            lo = hi;
        }
        return 0.5 * acc;
    }

  private:
    const AmbientFunction& psi_;
    int n_;
    double a_;
    int nodes_;
};

// Laplacian of psi at x by central differences; the step stays clear of
// breakpoint radii. Throws NonSmoothInput on non-finite probes.
double laplacian_fd(const AmbientFunction& psi, int n, const Point& x, double a) {
    double guard = std::numeric_limits<double>::infinity();
    for (double bk : psi.radial_breakpoints) guard = std::min(guard, std::abs(a - bk));
    const double h = std::max(std::min(1e-4 * std::max(1.0, a), guard / 8.0), 1e-9);

    double acc = 0.0;
    if (psi.radial_profile) {
        const auto& f = psi.radial_profile;
        const double f0 = f(a);
        const double fp = f(a + h), fm = f(std::abs(a - h));
        const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
        double d1 = 0.0;
        if (a > h) d1 = (fp - fm) / (2.0 * h);
        if (!std::isfinite(d2) || !std::isfinite(d1))
            throw NonSmoothInput("frac_laplacian_quadrature: non-finite second-derivative probe");
        acc = (a > h) ? d2 + (n - 1) * d1 / a : n * d2;
    } else {
        const double f0 = psi.value(x);
        for (int d = 0; d < n; ++d) {
            Point xp = x, xm = x;
            xp[d] += h;
            xm[d] -= h;
            const double v = (psi.value(xp) - 2.0 * f0 + psi.value(xm)) / (h * h);
            if (!std::isfinite(v))
                throw NonSmoothInput("frac_laplacian_quadrature: non-finite second-derivative probe");
            acc += v;
        }
    }
    return acc;
}

// Per-ray radial cut radii where |x + r w| crosses a breakpoint sphere.
void ray_cuts(double proj, double a2, double bk, double lo, double hi, Segmenter& seg) {
    const double disc = proj * proj + bk * bk - a2;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    seg.add(-proj + sq, lo, hi);
    seg.add(-proj - sq, lo, hi);
}

} // namespace

AmbientFunction ambient_gaussian(double width) {
    if (!(width > 0.0)) throw ConfigError("ambient_gaussian: width must be positive");
    const double w2 = width * width;
    AmbientFunction out;
    out.value = [w2](const Point& p) {
        const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        return std::exp(-r2 / w2);
    };
    out.radial_profile = [w2](double r) { return std::exp(-r * r / w2); };
    out.tail_sup = [w2](double r) { return r <= 0.0 ? 1.0 : std::exp(-r * r / w2); };
    return out;
}

AmbientFunction ambient_radial(std::function<double(double)> profile, std::vector<double> breakpoints,
                               std::function<double(double)> tail_sup, double limit_at_infinity) {
    AmbientFunction out;
    auto prof = std::move(profile);
    out.value = [prof](const Point& p) {
        return prof(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
    };
    out.radial_profile = prof;
    out.radial_breakpoints = std::move(breakpoints);
    std::sort(out.radial_breakpoints.begin(), out.radial_breakpoints.end());
    if (tail_sup) {
        out.tail_sup = std::move(tail_sup);
    } else if (!out.radial_breakpoints.empty()) {
        // compactly supported: zero beyond the outermost breakpoint
        const double support = out.radial_breakpoints.back();
        double sup_inside = 0.0;
        for (int i = 0; i <= 256; ++i)
            sup_inside = std::max(sup_inside, std::abs(prof(support * i / 256.0)));
        out.tail_sup = [support, sup_inside](double r) { return r >= support ? 0.0 : sup_inside; };
    } else {
        throw ConfigError("ambient_radial: need either a tail bound or a support breakpoint");
    }
    out.limit_at_infinity = limit_at_infinity;
    return out;
}

AmbientFunction ambient_power(const AmbientFunction& base, double q) {
    if (!(q >= 1.0)) throw ConfigError("ambient_power: exponent must be >= 1");
    AmbientFunction out;
    auto val = base.value;
    out.value = [val, q](const Point& p) { return std::pow(val(p), q); };
    if (base.radial_profile) {
        auto prof = base.radial_profile;
        out.radial_profile = [prof, q](double r) { return std::pow(prof(r), q); };
    }
    out.radial_breakpoints = base.radial_breakpoints;
    if (base.tail_sup) {
        auto tail = base.tail_sup;
        out.tail_sup = [tail, q](double r) { return std::pow(tail(r), q); };
    }
    out.limit_at_infinity = std::pow(base.limit_at_infinity, q);
    return out;
}

AmbientFunction ambient_dilated(const AmbientFunction& base, double R) {
    if (!(R > 0.0)) throw ConfigError("ambient_dilated: scale must be positive");
    AmbientFunction out;
    auto val = base.value;
    out.value = [val, R](const Point& p) { return val({p[0] / R, p[1] / R, p[2] / R}); };
    if (base.radial_profile) {
        auto prof = base.radial_profile;
        out.radial_profile = [prof, R](double r) { return prof(r / R); };
    }
    for (double bk : base.radial_breakpoints) out.radial_breakpoints.push_back(bk * R);
    if (base.tail_sup) {
        auto tail = base.tail_sup;
        out.tail_sup = [tail, R](double r) { return tail(r / R); };
    }
    out.limit_at_infinity = base.limit_at_infinity;
    return out;
}

double frac_laplacian_quadrature_at(const AmbientFunction& psi, FracOrder s, int n, const Point& x,
                                    const QuadratureScheme& scheme) {
    if (n < 1 || n > 3) throw ConfigError("frac_laplacian_quadrature: n must be 1, 2 or 3");
    if (!psi.value && !psi.radial_profile)
        throw ConfigError("frac_laplacian_quadrature: function has no evaluator");
    if (n == 3 && !psi.radial_profile)
        throw ConfigError("frac_laplacian_quadrature: n = 3 supports radial functions only");
    if (scheme.nodes_per_decade < 32) throw ConfigError("quadrature scheme: nodes_per_decade must be >= 32");
    if (!(scheme.inner_radius > 0.0) || !(scheme.outer_radius > scheme.inner_radius))
        throw ConfigError("quadrature scheme: need 0 < inner_radius < outer_radius");

    const double ss = s.s;
    const double sigma = sphere_area(n);
    const double a = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double r0 = scheme.inner_radius;

    // near field: second differences behave like r^2 * (direction-averaged
    // Hessian); the angular average of w^T H w is tr(H)/n
    const double lap = laplacian_fd(psi, n, x, a);
    const double near = lap / n * sigma * std::pow(r0, 2.0 - 2.0 * ss) / (2.0 - 2.0 * ss);

    const double psi_x = psi.radial_profile ? psi.radial_profile(a) : psi.value(x);
    if (!std::isfinite(psi_x)) throw NonSmoothInput("frac_laplacian_quadrature: non-finite value at x");

    // mid field, integrated segment-by-segment in log r; extended outward
    // until the far tail fits the budget
    double mid = 0.0;
    double r_far = scheme.outer_radius;
    double segment_lo = r0;
    const int npd = scheme.nodes_per_decade;

    auto integrate_mid = [&](double lo, double hi) {
        Segmenter seg;
        if (psi.radial_profile) {
            for (double bk : psi.radial_breakpoints) {
                seg.add(std::abs(a - bk), lo, hi);
                seg.add(a + bk, lo, hi);
            }
            RadialMean mean(psi, n, a, scheme.angular_nodes);
            double acc = 0.0;
            for (auto [A, B] : seg.segments(lo, hi)) {
                const int m = odd_at_least(static_cast<int>(npd * std::log10(B / A)), 9);
                acc += simpson(
                    [&](double t) {
                        const double r = std::exp(t);
                        const double ang = sigma * (2.0 * mean(r) - 2.0 * psi_x);
                        return std::exp(-2.0 * ss * t) * ang;
                    },
                    std::log(A), std::log(B), m);
            }
            return acc;
        }

        // general path: one ray for n = 1, a midpoint sweep of half the
        // circle for n = 2 (the second difference is even in y)
        const int K = n == 1 ? 1 : std::max(scheme.angular_nodes, 16);
        const double wK = n == 1 ? 2.0 : 2.0 * kPi / K;
        double acc = 0.0;
        for (int j = 0; j < K; ++j) {
            Point w{1.0, 0.0, 0.0};
            if (n == 2) {
                const double th = kPi * (j + 0.5) / K;
                w = {std::cos(th), std::sin(th), 0.0};
            }
            Segmenter seg;
            const double proj = x[0] * w[0] + x[1] * w[1] + x[2] * w[2];
            for (double bk : psi.radial_breakpoints) {
                ray_cuts(proj, a * a, bk, lo, hi, seg);
                ray_cuts(-proj, a * a, bk, lo, hi, seg);
            }
            double ray = 0.0;
            for (auto [A, B] : seg.segments(lo, hi)) {
                const int m = odd_at_least(static_cast<int>(npd * std::log10(B / A)), 9);
                ray += simpson(
                    [&](double t) {
                        const double r = std::exp(t);
                        const Point yp{x[0] + r * w[0], x[1] + r * w[1], x[2] + r * w[2]};
                        const Point ym{x[0] - r * w[0], x[1] - r * w[1], x[2] - r * w[2]};
                        const double d2 = psi.value(yp) + psi.value(ym) - 2.0 * psi_x;
                        return std::exp(-2.0 * ss * t) * d2;
                    },
                    std::log(A), std::log(B), m);
            }
            acc += wK * ray;
        }
        return acc;
    };

    double far = 0.0;
    for (int attempt = 0;; ++attempt) {
        mid += integrate_mid(segment_lo, r_far);
        const double kernel_tail = sigma * std::pow(r_far, -2.0 * ss) / (2.0 * ss);
        far = -2.0 * (psi_x - psi.limit_at_infinity) * kernel_tail;
        const double tail_bound =
            psi.tail_sup ? 2.0 * psi.tail_sup(std::max(r_far - a, 0.0)) * kernel_tail : 0.0;
        const double magnitude = std::max({std::abs(near + mid + far), std::abs(mid), 1e-300});
        if (tail_bound <= scheme.tail_rel_budget * magnitude) break;
        if (attempt >= 12 || r_far > 1e8)
            throw TailBoundExceeded("frac_laplacian_quadrature: far-field bound exceeds budget at R_far=" +
                                    std::to_string(r_far));
        segment_lo = r_far;
        r_far *= 4.0;
    }

    const double c_ns = normalization_constant(n, s);
    return -0.5 * c_ns * (near + mid + far);
}

std::vector<double> frac_laplacian_quadrature(const AmbientFunction& psi, FracOrder s, int n,
                                              std::span<const Point> points,
                                              const QuadratureScheme& scheme) {
    std::vector<double> out;
    out.reserve(points.size());
    for (const Point& x : points) out.push_back(frac_laplacian_quadrature_at(psi, s, n, x, scheme));
    return out;
}

} // namespace fracwave
