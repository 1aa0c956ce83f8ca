#pragma once

#include <cmath>
#include <stdexcept>

namespace akweak {

// Unit conventions used throughout:
//
//   Dimensioned ("barred") variables: hbar = 1, Fourier kernel e^{-i p x},
//   momentum spacing dp = 2*pi/(n*dx).  Used by the two-detector protocol.
//
//   Dimensionless variables: x_bar = sqrt(2b) x, p_bar = sqrt(2/b) p, so
//   x_bar*p_bar = 2*x*p and the kernel is e^{-2 i p x} with dp = pi/(n*dx).
//   Used by the coherent-state / Gabor / Kraus machinery.
//
// The factor kappa (1 or 2) in the kernel e^{-i kappa p x} lives here and
// nowhere else.
enum class Units { Dimensioned, Dimensionless };

struct UnitSystem {
    Units kind = Units::Dimensionless;
    double b = std::nan("");  // squeezing scale [length^2]; may be unset

    static UnitSystem dimensionless() { return {Units::Dimensionless, std::nan("")}; }
    static UnitSystem dimensioned(double b_val) {
        if (!(b_val > 0.0)) throw std::invalid_argument("UnitSystem: b must be > 0");
        return {Units::Dimensioned, b_val};
    }
    static UnitSystem dimensioned() { return {Units::Dimensioned, std::nan("")}; }

    bool has_b() const { return std::isfinite(b); }
    double fourier_factor() const { return kind == Units::Dimensionless ? 2.0 : 1.0; }
    bool same_kind(const UnitSystem& o) const { return kind == o.kind; }
};

// Uniform grid x_j = x_min + j*dx, j = 0..n-1.  n must be a power of two >= 8.
struct PositionGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;

    double dx() const { return (x_max - x_min) / n; }
    double x(int j) const { return x_min + j * dx(); }
    double length() const { return x_max - x_min; }

    bool operator==(const PositionGrid& o) const {
        return x_min == o.x_min && x_max == o.x_max && n == o.n;
    }
};

PositionGrid make_grid(double x_min, double x_max, int n);

// Momentum grid conjugate to g under kernel e^{-i kappa p x}:
// dp = 2*pi/(kappa*n*dx), centered on zero.
PositionGrid conjugate_grid(const PositionGrid& g, double kappa);

bool is_power_of_two(int n);

// A measurement outcome alpha = (x_m, p_m).
struct PhasePoint {
    double a1 = 0.0;
    double a2 = 0.0;
};

// Uniform 2D outcome grid; nodes are cell centers and every quadrature uses
// the cell weight da1*da2 (the 1/pi of the coherent-state measure is applied
// by the Gabor routines, not stored here).
struct PhaseGrid {
    double a1_min = 0.0, a1_max = 0.0;
    int n1 = 0;
    double a2_min = 0.0, a2_max = 0.0;
    int n2 = 0;

    double da1() const { return (a1_max - a1_min) / n1; }
    double da2() const { return (a2_max - a2_min) / n2; }
    double a1(int i) const { return a1_min + (i + 0.5) * da1(); }
    double a2(int j) const { return a2_min + (j + 0.5) * da2(); }
    double cell_area() const { return da1() * da2(); }
    long cells() const { return static_cast<long>(n1) * n2; }

    bool operator==(const PhaseGrid& o) const {
        return a1_min == o.a1_min && a1_max == o.a1_max && n1 == o.n1 &&
               a2_min == o.a2_min && a2_max == o.a2_max && n2 == o.n2;
    }
};

PhaseGrid make_phase_grid(double a1_min, double a1_max, int n1,
                          double a2_min, double a2_max, int n2);

}  // namespace akweak
