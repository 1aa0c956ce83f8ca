#pragma once

#include <complex>
#include <string>
#include <vector>

#include "akweak/grid.hpp"

namespace akweak {

using cplx = std::complex<double>;

enum class Rep { Position, Momentum };
enum class Observable { X, P };

struct WaveFunction {
    PositionGrid grid;
    UnitSystem units;
    Rep rep = Rep::Position;
    std::vector<cplx> amp;

    double dx() const { return grid.dx(); }
    int n() const { return grid.n; }
};

// Detector widths b1 = (lambda+2)/lambda * b, b2 = lambda/(lambda+2) * b,
// so b1*b2 = b^2 and b1 >= b >= b2.
struct WeaknessConfig {
    double b = 1.0;
    double lambda = 1.0;

    WeaknessConfig(double b_, double lambda_);
    double b1() const { return (lambda + 2.0) / lambda * b; }
    double b2() const { return lambda / (lambda + 2.0) * b; }
};

double lambda_from_b1(double b1, double b);
double lambda_from_b2(double b2, double b);

// --- construction ---------------------------------------------------------

// Coherent state <x|a> = (2/pi)^{1/4} e^{2 i a2 (x - a1/2)} e^{-(x-a1)^2}.
// The phase offset a1/2 is the one convention that makes the closed-form
// overlap below exact; it is used everywhere.
WaveFunction coherent_state(PhasePoint a, const PositionGrid& g);

// Closed-form overlap <a'|a''> = exp(-(|a'|^2+|a''|^2)/2 + conj(a')*a'')
// with a = a1 + i*a2.
cplx coherent_overlap(PhasePoint a1, PhasePoint a2);

// Detector 1, position representation: (2/(pi*b1))^{1/4} e^{-x^2/b1}.
WaveFunction detector_d1(double b1, const PositionGrid& g);

// Detector 2, momentum representation: (2*b2/pi)^{1/4} e^{-b2*p^2},
// returned on the conjugate grid of g.
WaveFunction detector_d2_momentum(double b2, const PositionGrid& g);

// Detector 2, position representation: (1/(2*pi*b2))^{1/4} e^{-x^2/(4*b2)}.
WaveFunction detector_d2_position(double b2, const PositionGrid& g);

enum class TestStateKind { Gaussian, TwoPeak, Hermite1 };

struct TestStateSpec {
    TestStateKind kind = TestStateKind::Gaussian;
    double center = 0.0;  // Gaussian
    double width = 1.0;   // Gaussian: psi ~ e^{-((x-c)/w)^2}
    double sep = 4.0;     // TwoPeak: peaks at +/- sep/2
};

WaveFunction make_test_state(const TestStateSpec& spec, const PositionGrid& g,
                             const UnitSystem& units);

// Normalized strong-measurement post state
// (1/(pi*b))^{1/4} e^{i p_m x} e^{-(x-x_m)^2/(2b)}   (dimensioned).
WaveFunction strong_post_reference(double x_m, double p_m, double b,
                                   const PositionGrid& g);

// --- transforms -----------------------------------------------------------

// Unitary transform to the momentum representation under the state's kernel
// e^{-i kappa p x}; norm preserved to rounding.
WaveFunction to_momentum(const WaveFunction& psi);
WaveFunction to_position(const WaveFunction& psi);  // centered target window
WaveFunction to_position(const WaveFunction& psi, const PositionGrid& target);

// Rescaling x_bar = sqrt(2b) x, p_bar = sqrt(2/b) p with amplitudes scaled so
// the norm is invariant.  Same-system input is returned unchanged.
WaveFunction convert_units(const WaveFunction& psi, const UnitSystem& target);

// --- functionals ----------------------------------------------------------

cplx inner_product(const WaveFunction& phi, const WaveFunction& psi);
double norm(const WaveFunction& psi);
WaveFunction normalized(const WaveFunction& psi);

// |<phi|psi>| / (||phi|| ||psi||); insensitive to global phase.
double fidelity(const WaveFunction& phi, const WaveFunction& psi);

// <x^k> or <p^k> (k = 1, 2) of a normalized state; momentum moments go
// through the momentum representation.
double moment(const WaveFunction& psi, Observable obs, int order);

double variance(const WaveFunction& psi, Observable obs);

}  // namespace akweak
