#pragma once

#include "akweak/kraus.hpp"
#include "akweak/state.hpp"

namespace akweak {

// Two-detector protocol: H_int = K (p1 x + x2 p), interaction on for a time
// t with tau = K t (tau = 1 reads the system's own position and momentum).
// Detector 1's position and detector 2's momentum are read projectively.
// Everything here is in dimensioned (barred) variables.
//
// Sign convention: the detector-2 momentum amplitude is taken with kernel
// e^{+i p2 x2}.  With it the tau = 1, b1 = b2 = b readout reproduces the
// Gaussian-convolution closed form and <p_m> = +<p>_B; the opposite sign
// flips the measured momentum.

struct TriGrids {
    PositionGrid x;   // system
    PositionGrid x1;  // detector 1 (position read)
    PositionGrid x2;  // detector 2 (momentum read)
};

// Entangled system+detectors amplitude phi(x, x1, x2) on a 3D grid,
// flattened with x outermost and x2 contiguous.
struct TriState {
    TriGrids grids;
    UnitSystem units;
    Rep rep_x = Rep::Position;   // axis 0
    Rep rep_x1 = Rep::Position;  // axis 1
    Rep rep_x2 = Rep::Position;  // axis 2
    std::vector<cplx> amp;

    // product factors captured at construction; evolve_shift's closed form
    // is only valid while these describe the state
    WaveFunction factor_psi;
    double factor_b1 = 0.0;
    double factor_b2 = 0.0;
    bool is_product = false;

    size_t idx(int ix, int i1, int i2) const {
        return (static_cast<size_t>(ix) * grids.x1.n + i1) * grids.x2.n + i2;
    }
    double cell_volume() const { return grids.x.dx() * grids.x1.dx() * grids.x2.dx(); }
};

double tri_norm(const TriState& phi);
cplx tri_dot(const TriState& a, const TriState& b);
double tri_fidelity(const TriState& a, const TriState& b);

// Product state psi_B(x) D1(x1) D2(x2); psi_B is resampled onto grids.x if
// needed (it must already live on grids.x).
TriState initial_tri_state(const WaveFunction& psi_b, double b1, double b2,
                           const TriGrids& grids);

// Exact disentangled evolution
//   phi_t(x,x1,x2) = psi_B(x - x2 tau) D1(x1 - x tau + x2 tau^2/2) D2(x2).
// Detector Gaussians are evaluated analytically at the shifted arguments;
// the psi_B shift uses spectral (FFT phase-ramp) translation.
TriState evolve_shift(const TriState& phi0, double tau);

// Direct propagation of exp(-i t H_int) by symmetric (Strang) splitting of
// the p1*x and x2*p terms, unitary at every step.  Serves as the independent
// oracle for evolve_shift.  Because the two terms' commutator commutes with
// both of them, the composition reproduces exp(-i t H_int) at every step
// count; the residual against evolve_shift is the discretization floor.
// The scale factors switch the individual terms on or off for diagnostics.
TriState trotter_evolve(const TriState& phi0, double tau, int steps,
                        double scale_p1x = 1.0, double scale_x2p = 1.0);

// phi with detector 2 transformed to its momentum representation
// (e^{+i p2 x2} kernel); detector axes then index the outcome values.
TriState to_readout_rep(const TriState& phi);

struct AkReadout {
    WaveFunction post;     // unnormalized slice phi(x, x_m, p_m)
    double density = 0.0;  // int dx |slice|^2, per d(x_m) d(p_m)
};

// Slice at (x1 = x_m, p2 = p_m), bilinear between detector nodes.
AkReadout read_out(const TriState& phi_readout, double x_m, double p_m);

// Readout density at every detector node pair (no interpolation).
JointDistribution readout_distribution(const TriState& phi_readout);

// Generalized-detector closed form (1D quadrature)
//   psi_A(x) = 1/(pi sqrt(2b)) int dw e^{-(x_m - x + w/2)^2/b1}
//              e^{-w^2/(4 b2)} e^{i p_m w} psi_B(x - w),
// equal to the tau = 1 protocol readout with detectors of widths b1, b2.
// Returned unnormalized; ||.||^2 is the outcome density per d(x_m)d(p_m).
WaveFunction post_state_closed_form(const WaveFunction& psi_b, double x_m, double p_m,
                                    double b1, double b2, double b);

// Short-interaction limit: detector filters applied at shifted arguments
//   psi_A(x) ~ e^{-(x_m - x tau)^2/b} F^{-1}[ e^{-b (p_m - p tau)^2} psi_tilde ](x),
// valid for tau << 1 (warns above 0.2).  Returned normalized.
WaveFunction short_time_state(const WaveFunction& psi_b, double x_m, double p_m,
                              double tau, double b);

// Detector grids sized so every Gaussian factor decays below ~1e-8 at the box
// edges, with headroom for the tau-shifts; the system axis is psi_b's grid.
TriGrids suggest_tri_grids(const WaveFunction& psi_b, double b1, double b2, double tau,
                           int n1, int n2);

// Thrown when a requested 3D run exceeds the memory budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One full protocol run: build the product state, evolve, read out over the
// detector grids, and compare against the closed forms where they apply.
struct AkRunConfig {
    double b = 1.0;
    double b1 = -1.0;      // <= 0: derive from lambda, or fall back to b
    double b2 = -1.0;
    double lambda = -1.0;  // > 0: detector widths from the weakness mapping
    double tau = 1.0;
    int n1 = 64, n2 = 64;  // detector grid sizes
    int oracle_steps = 0;  // > 0: add a split-step comparison
    bool short_time = false;
    bool have_outcome = false;
    double xm = 0.0, pm = 0.0;
    double mem_budget_mb = 2048.0;
};

struct AkRunReport {
    double tau = 1.0, b = 1.0, b1 = 1.0, b2 = 1.0, lambda = -1.0;
    double total_mass = 0.0;
    DistMoments moments;
    // variance-law predictions, filled for tau = 1
    double expected_var_x = std::nan("");
    double expected_var_p = std::nan("");
    // shift-law predictions tau*<x>, tau*<p>
    double mean_x_expected = 0.0;
    double mean_p_expected = 0.0;
    double readout_density = -1.0;       // at (xm, pm) when requested
    double closed_form_fidelity = -1.0;  // readout vs closed form (tau = 1)
    double short_time_fidelity = -1.0;   // readout vs short-time formula
    double oracle_fidelity = -1.0;       // shift evolution vs split-step
};

struct AkRunOutput {
    JointDistribution dist;
    bool have_post = false;
    WaveFunction post;  // normalized readout slice when an outcome was given
    AkRunReport report;
};

AkRunOutput ak_run(const WaveFunction& psi_b, const AkRunConfig& cfg);

}  // namespace akweak
