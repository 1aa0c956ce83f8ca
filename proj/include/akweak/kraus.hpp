#pragma once

#include <cstdint>

#include "akweak/state.hpp"

namespace akweak {

// --- single-observable Gaussian Kraus operator -----------------------------

struct SingleKrausConfig {
    double lambda_s = 1.0;  // weakness
    Observable obs = Observable::X;
    double a = 0.0;  // measurement result
};

struct KrausResult {
    WaveFunction post;
    double prob_density = 0.0;  // ||K psi||^2 in the outcome measure
};

// K_a = (2 lambda/pi)^{1/4} exp[-lambda (a - A)^2]; post is returned
// unnormalized, prob_density = ||post||^2.
KrausResult single_kraus_apply(const WaveFunction& psi, const SingleKrausConfig& cfg);

// --- simultaneous position/momentum measurement ----------------------------

// Strongest simultaneous measurement K = (1/sqrt(pi)) |a_m><a_m|:
// post = |a_m> exactly, prob_density = |<a_m|psi>|^2 / pi per d(x_m)d(p_m).
KrausResult strong_kraus_apply(const WaveFunction& psi, PhasePoint a_m);

// Weak simultaneous measurement, closed single-integral form
//   psi_A(x) = (sqrt(2)/pi) int dw e^{-2l/(l+2) (x_m - x + w/2)^2}
//              e^{-(l+2)/(2l) w^2} e^{2 i p_m w} psi(x - w).
// prob_density = ||psi_A||^2 per d(x_m)d(p_m); post is returned normalized.
KrausResult weak_kraus_apply(const WaveFunction& psi, PhasePoint a_m, double lambda);

// N(lambda) = sqrt(lambda (lambda+2) / pi^3).
double weak_kraus_normalization(double lambda);

// --- POVM completeness ------------------------------------------------------

struct PovmReport {
    double max_identity_deviation = 0.0;  // max |(sum_cells w K^dag K)_ij dx - delta_ij|, interior
    double kraus_integral_constant = 0.0; // c in sum_cells w K = c * I (interior diagonal mean)
    double expected_constant = 0.0;       // pi^2 N / lambda
};

// Discrete completeness check on the given outcome grid.  The a2 axis of
// pgrid must cover the conjugate momentum band of grid (see
// povm_outcome_grid); the quadrature is the plain cell sum.
PovmReport povm_check(double lambda, const PositionGrid& grid, const PhaseGrid& pgrid);

// Outcome grid for povm_check: a1 spans the position window padded on both
// sides, a2 spans the conjugate Nyquist band [-pi/(2 dx), pi/(2 dx)) with one
// cell per position-grid point, which makes the discrete momentum-outcome sum
// exact on grid functions.
PhaseGrid povm_outcome_grid(const PositionGrid& grid, double pad = 6.0,
                            double da1_target = 0.25);

// --- outcome distributions ---------------------------------------------------

struct MeasurementMode {
    enum class Kind { Strong, Weak } kind = Kind::Strong;
    double b = 1.0;
    double lambda = 1.0;  // Weak only

    static MeasurementMode strong(double b) { return {Kind::Strong, b, 0.0}; }
    static MeasurementMode weak(double b, double lambda) { return {Kind::Weak, b, lambda}; }
};

// Joint density over outcomes, unit total mass up to window truncation.
//
// Measure convention: dimensionless densities are ||K psi||^2 per
// d(x_m) d(p_m) and integrate to one by the POVM closure.  Dimensioned
// outcome cells are larger by the Jacobian d(xm_bar) d(pm_bar) =
// 2 d(x_m) d(p_m), so the dimensioned density is half the dimensionless one
// at the mapped point; the dimensioned closed forms used below already carry
// that factor in their prefactors, so no rescaling happens anywhere.
struct JointDistribution {
    PhaseGrid pgrid;
    UnitSystem units;
    std::vector<double> density;  // row-major, a1 outer

    double& at(int i, int j) { return density[static_cast<size_t>(i) * pgrid.n2 + j]; }
    double at(int i, int j) const { return density[static_cast<size_t>(i) * pgrid.n2 + j]; }
    double total_mass() const;
};

// psi may be in either unit system; a dimensionless input is converted with
// mode.b first.  Strong mode evaluates the Gaussian-windowed Fourier modulus
// formula; Weak mode integrates |psi_A|^2 over x for every outcome cell.
JointDistribution joint_distribution(const WaveFunction& psi, const MeasurementMode& mode,
                                     const PhaseGrid& pgrid);

// Outcome window sized from the variance laws (mean +- nsig sigma per axis).
PhaseGrid suggest_outcome_grid(const WaveFunction& psi, const MeasurementMode& mode,
                               int n1 = 96, int n2 = 96, double nsig = 6.0);

struct DistMoments {
    double mean_x = 0.0, mean_p = 0.0;
    double var_x = 0.0, var_p = 0.0;
};

DistMoments distribution_moments(const JointDistribution& dist);

// i.i.d. draws by inverse CDF over the flattened cell-mass table with
// uniform in-cell jitter; identical seeds give identical sequences.
std::vector<PhasePoint> sample_outcomes(const JointDistribution& dist, long count,
                                        std::uint64_t seed);

}  // namespace akweak
