#include "fracwave/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace fracwave {

namespace {

// FFTW plan creation is not thread-safe; execution on per-thread buffers is.
// Each thread keeps its own plans and aligned buffers, keyed by shape and
// direction, with plan creation serialized by a global mutex.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanEntry {
    fftw_plan plan = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::size_t size = 0;

    ~PlanEntry() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan) fftw_destroy_plan(plan);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

using PlanKey = std::array<int, 5>; // dim, N, N, N, sign

PlanEntry& thread_plan(const Grid& grid, int sign) {
    thread_local std::map<PlanKey, PlanEntry> cache;
    PlanKey key{grid.dim, grid.points_per_axis, grid.dim > 1 ? grid.points_per_axis : 1,
                grid.dim > 2 ? grid.points_per_axis : 1, sign};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    PlanEntry& entry = cache[key]; // constructed in place, owned by the cache
    entry.size = grid.size();
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        entry.in = fftw_alloc_complex(entry.size);
        entry.out = fftw_alloc_complex(entry.size);
        int dims[3] = {grid.points_per_axis, grid.points_per_axis, grid.points_per_axis};
        entry.plan = fftw_plan_dft(grid.dim, dims, entry.in, entry.out, sign, FFTW_ESTIMATE);
    }
    return entry;
}

} // namespace

SpectralField forward_transform(const RealField& f) {
    require_finite(f, "forward_transform");
    PlanEntry& pe = thread_plan(f.grid, FFTW_FORWARD);
    const std::size_t total = f.grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        pe.in[i][0] = f.values[i];
        pe.in[i][1] = 0.0;
    }
    fftw_execute(pe.plan);
    const double hn = std::pow(f.grid.spacing(), f.grid.dim);
    SpectralField out{f.grid, std::vector<std::complex<double>>(total)};
    for (std::size_t i = 0; i < total; ++i)
        out.coeffs[i] = std::complex<double>(pe.out[i][0] * hn, pe.out[i][1] * hn);
    return out;
}

RealField inverse_transform(const SpectralField& F, double* max_imag_rel) {
    if (F.coeffs.size() != F.grid.size())
        throw GridMismatch("inverse_transform: coefficient count does not match grid");
    PlanEntry& pe = thread_plan(F.grid, FFTW_BACKWARD);
    const std::size_t total = F.grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        pe.in[i][0] = F.coeffs[i].real();
        pe.in[i][1] = F.coeffs[i].imag();
    }
    fftw_execute(pe.plan);
    const double scale = std::pow(2.0 * F.grid.half_width, -F.grid.dim);
    RealField out{F.grid, std::vector<double>(total)};
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        const double re = pe.out[i][0] * scale;
        const double im = pe.out[i][1] * scale;
        out.values[i] = re;
        max_re = std::max(max_re, std::abs(re));
        max_im = std::max(max_im, std::abs(im));
    }
    if (max_imag_rel) *max_imag_rel = max_im / std::max(max_re, 1.0);
    return out;
}

double conjugate_symmetry_defect(const SpectralField& F) {
    const Grid& g = F.grid;
    const int N = g.points_per_axis;
    double max_abs = 0.0;
    for (const auto& c : F.coeffs) max_abs = std::max(max_abs, std::abs(c));
    if (max_abs == 0.0) return 0.0;

    double worst = 0.0;
    const std::size_t total = g.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto ijk = g.unravel(idx);
        std::size_t mirror = 0;
        for (int d = 0; d < g.dim; ++d) {
            int m = (N - ijk[d]) % N;
            mirror = mirror * static_cast<std::size_t>(N) + static_cast<std::size_t>(m);
        }
        worst = std::max(worst, std::abs(F.coeffs[mirror] - std::conj(F.coeffs[idx])));
    }
    return worst / max_abs;
}

} // namespace fracwave
