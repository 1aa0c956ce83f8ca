#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace akweak::fft {

namespace {

// The FFTW planner is not thread-safe; executing a plan on caller buffers is.
std::mutex g_planner_mutex;

struct PlanCache {
    std::map<std::pair<int, int>, fftw_plan> plans;
    ~PlanCache() {
        for (auto& [key, p] : plans) fftw_destroy_plan(p);
    }
};

// Plans are cached per (n, sign) and executed on caller buffers; planned
// FFTW_UNALIGNED so std::vector storage is always acceptable.
fftw_plan plan_for(int n, int sign) {
    static PlanCache cache;
    const std::lock_guard<std::mutex> lock(g_planner_mutex);
    const auto key = std::make_pair(n, sign);
    auto it = cache.plans.find(key);
    if (it != cache.plans.end()) return it->second;
    std::vector<cplx> scratch(static_cast<size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    cache.plans.emplace(key, p);
    return p;
}

}  // namespace

void dft_1d(cplx* data, int n, int sign) {
    fftw_plan p = plan_for(n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
}

void dft_strided(cplx* base, int n, int howmany, int stride, int dist, int sign) {
    int nn[1] = {n};
    fftw_plan p;
    {
        const std::lock_guard<std::mutex> lock(g_planner_mutex);
        p = fftw_plan_many_dft(
            1, nn, howmany, reinterpret_cast<fftw_complex*>(base), nullptr, stride, dist,
            reinterpret_cast<fftw_complex*>(base), nullptr, stride, dist,
            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw plan creation failed");
    }
    fftw_execute(p);
    const std::lock_guard<std::mutex> lock(g_planner_mutex);
    fftw_destroy_plan(p);
}

double fft_momentum(int j, int n, double dx) {
    const int jj = j < n / 2 ? j : j - n;
    return 2.0 * M_PI * jj / (n * dx);
}

void spectral_shift(std::vector<cplx>& amp, double dx, double s) {
    if (s == 0.0) return;
    const int n = static_cast<int>(amp.size());
    dft_1d(amp.data(), n, -1);
    for (int j = 0; j < n; ++j) {
        const double p = fft_momentum(j, n, dx);
        // forward bin j carries e^{+ipx}; translation by s multiplies it by
        // e^{-ips}
        amp[j] *= std::polar(1.0 / n, -p * s);
    }
    dft_1d(amp.data(), n, +1);
}

}  // namespace akweak::fft
