#include "akweak/grid.hpp"

#include <cmath>

namespace akweak {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

PositionGrid make_grid(double x_min, double x_max, int n) {
    if (!(x_max > x_min)) throw std::invalid_argument("make_grid: x_max must exceed x_min");
    if (n < 8 || !is_power_of_two(n))
        throw std::invalid_argument("make_grid: n must be a power of two >= 8");
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw std::invalid_argument("make_grid: bounds must be finite");
    return PositionGrid{x_min, x_max, n};
}

PositionGrid conjugate_grid(const PositionGrid& g, double kappa) {
    const double dp = 2.0 * M_PI / (kappa * g.n * g.dx());
    const double p_min = -0.5 * g.n * dp;
    return PositionGrid{p_min, p_min + g.n * dp, g.n};
}

PhaseGrid make_phase_grid(double a1_min, double a1_max, int n1,
                          double a2_min, double a2_max, int n2) {
    if (!(a1_max > a1_min) || !(a2_max > a2_min))
        throw std::invalid_argument("make_phase_grid: degenerate interval");
    if (n1 < 16 || n2 < 16)
        throw std::invalid_argument("make_phase_grid: n1, n2 must be >= 16");
    return PhaseGrid{a1_min, a1_max, n1, a2_min, a2_max, n2};
}

}  // namespace akweak
