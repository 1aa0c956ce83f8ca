#pragma once

#include "akweak/state.hpp"

namespace akweak {

// Complex field F(a1, a2) on a phase grid; the image of a state under the
// Gabor transform F(a) = <a|psi>.  All norms and dots carry the coherent
// state measure (1/pi) d^2 a.
struct GaborField {
    PhaseGrid grid;
    std::vector<cplx> values;  // row-major, a1 outer, a2 inner

    cplx& at(int i, int j) { return values[static_cast<size_t>(i) * grid.n2 + j]; }
    const cplx& at(int i, int j) const { return values[static_cast<size_t>(i) * grid.n2 + j]; }
};

// F(a) = <a|psi> evaluated at every cell center by position-grid quadrature.
GaborField gabor_forward(const WaveFunction& psi, const PhaseGrid& pg);

// Reconstruction through the resolution of identity,
// psi(x) = (1/pi) int d^2a <x|a> F(a).
WaveFunction gabor_inverse(const GaborField& f, const PositionGrid& g);

// Orthogonal projection onto the image space:
// (P F)(a') = (1/pi) int d^2a'' <a'|a''> F(a'') using the closed-form overlap.
GaborField project_gabor(const GaborField& f);

double gabor_norm(const GaborField& f);
cplx gabor_dot(const GaborField& f, const GaborField& g);

// Diagnostic only: reconstruction with a flat (unwindowed) kernel
// (pi^5/2)^{1/4} int da2 e^{2 i a2 x} int da1 F(a1,a2).  Lacks the Gaussian
// reconstruction window and does not invert the transform; retained so its
// round-trip error can be measured.
WaveFunction gabor_inverse_unweighted(const GaborField& f, const PositionGrid& g);

}  // namespace akweak
