#include "fracwave/criticality.hpp"

#include <cmath>

namespace fracwave {

double critical_exponent(int n, FracOrder delta) {
    if (!(n > 2.0 * delta.s))
        throw HypothesisViolated("critical_exponent: requires n > 2 delta");
    return 1.0 + 2.0 / (n - 2.0 * delta.s);
}

Criticality classify_exponent(double p, int n, FracOrder delta) {
    if (!(p > 1.0)) throw ConfigError("classify_exponent: p must be > 1");
    const double pc = critical_exponent(n, delta);
    if (std::abs(p - pc) <= 1e-12) return Criticality::Critical;
    return p < pc ? Criticality::Subcritical : Criticality::Supercritical;
}

const char* to_string(Criticality c) {
    switch (c) {
        case Criticality::Subcritical: return "subcritical";
        case Criticality::Critical: return "critical";
        default: return "supercritical";
    }
}

} // namespace fracwave
