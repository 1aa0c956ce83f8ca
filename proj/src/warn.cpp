#include "warn.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace akweak {

namespace {
thread_local std::vector<std::string> g_warnings;
}

void warn(const std::string& message) { g_warnings.push_back(message); }

std::vector<std::string> drain_warnings() {
    std::vector<std::string> out;
    out.swap(g_warnings);
    return out;
}

bool has_warnings() { return !g_warnings.empty(); }

void check_edge_decay(const std::complex<double>* amp, int n, double frac,
                      const std::string& op_name) {
    double peak = 0.0;
    for (int i = 0; i < n; ++i) peak = std::max(peak, std::abs(amp[i]));
    if (peak == 0.0) return;
    const double edge = std::max(std::abs(amp[0]), std::abs(amp[n - 1]));
    if (edge > frac * peak) {
        std::ostringstream os;
        os << op_name << ": edge amplitude " << edge / peak
           << " of peak exceeds " << frac << "; window truncates the state";
        warn(os.str());
    }
}

}  // namespace akweak
