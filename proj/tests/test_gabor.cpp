#include <doctest.h>

#include <cmath>

#include "akweak/gabor.hpp"
#include "oracles.hpp"

using namespace akweak;

namespace {
const PositionGrid kGrid = make_grid(-8.0, 8.0, 512);
const PhaseGrid kPhase = make_phase_grid(-6.0, 6.0, 96, -6.0, 6.0, 96);

WaveFunction test_state(TestStateKind kind) {
    TestStateSpec spec;
    spec.kind = kind;
    return make_test_state(spec, kGrid, UnitSystem::dimensionless());
}
}  // namespace

TEST_CASE("forward transform of a coherent state is the overlap Gaussian") {
    const PhasePoint beta{kPhase.a1(52), kPhase.a2(40)};  // on cell centers
    const GaborField f = gabor_forward(coherent_state(beta, kGrid), kPhase);

    double max_err = 0.0;
    for (int i = 0; i < kPhase.n1; ++i)
        for (int k = 0; k < kPhase.n2; ++k) {
            const double d1 = kPhase.a1(i) - beta.a1;
            const double d2 = kPhase.a2(k) - beta.a2;
            max_err = std::max(max_err,
                               std::abs(std::norm(f.at(i, k)) - std::exp(-(d1 * d1 + d2 * d2))));
        }
    CHECK(max_err < 1e-8);
    CHECK(std::norm(f.at(52, 40)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("forward transform is an isometry") {
    for (const auto kind :
         {TestStateKind::Gaussian, TestStateKind::TwoPeak, TestStateKind::Hermite1}) {
        const WaveFunction psi = test_state(kind);
        const GaborField f = gabor_forward(psi, kPhase);
        CHECK(std::abs(gabor_norm(f) - norm(psi)) < 1e-6);
    }

    WaveFunction zero = test_state(TestStateKind::Gaussian);
    for (auto& a : zero.amp) a = 0.0;
    const GaborField f0 = gabor_forward(zero, kPhase);
    for (const auto& v : f0.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("identity-resolution inverse round-trips every test state") {
    for (const auto kind :
         {TestStateKind::Gaussian, TestStateKind::TwoPeak, TestStateKind::Hermite1}) {
        const WaveFunction psi = test_state(kind);
        const WaveFunction back = gabor_inverse(gabor_forward(psi, kPhase), kGrid);
        CHECK(fidelity(psi, back) >= 1.0 - 1e-8);
    }
}

TEST_CASE("inverse maps a coherent image back to the state pointwise") {
    const PhasePoint beta{0.5, -0.75};
    const WaveFunction psi = coherent_state(beta, kGrid);
    const WaveFunction back = gabor_inverse(gabor_forward(psi, kPhase), kGrid);
    double max_err = 0.0;
    for (int j = 0; j < kGrid.n; ++j)
        max_err = std::max(max_err, std::abs(back.amp[j] - psi.amp[j]));
    CHECK(max_err < 1e-7);
}

TEST_CASE("scalar products agree between position and phase space") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        const PhasePoint a{oracles::uniform(rng, -1.5, 1.5), oracles::uniform(rng, -1.5, 1.5)};
        const PhasePoint b{oracles::uniform(rng, -1.5, 1.5), oracles::uniform(rng, -1.5, 1.5)};
        const WaveFunction f = coherent_state(a, kGrid);
        const WaveFunction g = coherent_state(b, kGrid);
        const cplx pos = inner_product(f, g);
        const cplx pha = gabor_dot(gabor_forward(f, kPhase), gabor_forward(g, kPhase));
        CHECK(std::abs(pos - pha) < 1e-6);
    }
    const GaborField f = gabor_forward(test_state(TestStateKind::TwoPeak), kPhase);
    const cplx self = gabor_dot(f, f);
    CHECK(self.real() >= 0.0);
    CHECK(std::abs(self.imag()) < 1e-12);
}

TEST_CASE("projection is the identity on image fields") {
    // the window must clear the image's support by ~5 kernel widths; TwoPeak
    // puts its peaks at a1 = +-2, so pad beyond the default
    const PhaseGrid wide = make_phase_grid(-7.5, 7.5, 120, -7.5, 7.5, 120);
    const GaborField f = gabor_forward(test_state(TestStateKind::TwoPeak), wide);
    const GaborField pf = project_gabor(f);
    double err2 = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) err2 += std::norm(pf.values[i] - f.values[i]);
    CHECK(std::sqrt(err2 * wide.cell_area() / M_PI) < 1e-6);
}

TEST_CASE("projection collapses a point mass to a coherent image") {
    GaborField spike;
    spike.grid = kPhase;
    spike.values.assign(static_cast<size_t>(kPhase.cells()), cplx{0.0, 0.0});
    const int i0 = 44, k0 = 50;
    spike.at(i0, k0) = 1.0 / kPhase.cell_area();  // unit mass in one cell

    const GaborField projected = project_gabor(spike);
    const PhasePoint a0{kPhase.a1(i0), kPhase.a2(k0)};
    double max_err = 0.0;
    for (int i = 0; i < kPhase.n1; ++i)
        for (int k = 0; k < kPhase.n2; ++k) {
            const cplx expected =
                coherent_overlap({kPhase.a1(i), kPhase.a2(k)}, a0) / M_PI;
            max_err = std::max(max_err, std::abs(projected.at(i, k) - expected));
        }
    CHECK(max_err < 1e-12);

    GaborField zero = spike;
    zero.at(i0, k0) = 0.0;
    const GaborField pz = project_gabor(zero);
    for (const auto& v : pz.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("projection is idempotent on fields outside the image space") {
    GaborField box;
    box.grid = kPhase;
    box.values.assign(static_cast<size_t>(kPhase.cells()), cplx{0.0, 0.0});
    for (int i = 0; i < kPhase.n1; ++i)
        for (int k = 0; k < kPhase.n2; ++k)
            if (std::abs(kPhase.a1(i)) < 0.75 && std::abs(kPhase.a2(k)) < 0.75)
                box.at(i, k) = 1.0;

    const GaborField p1 = project_gabor(box);
    const GaborField p2 = project_gabor(p1);
    double err2 = 0.0, norm2 = 0.0;
    for (size_t i = 0; i < box.values.size(); ++i) {
        err2 += std::norm(p2.values[i] - p1.values[i]);
        norm2 += std::norm(p1.values[i]);
    }
    CHECK(std::sqrt(err2 / norm2) < 1e-6);
}

TEST_CASE("projection lands on the closest image field") {
    GaborField box;
    box.grid = kPhase;
    box.values.assign(static_cast<size_t>(kPhase.cells()), cplx{0.0, 0.0});
    for (int i = 0; i < kPhase.n1; ++i)
        for (int k = 0; k < kPhase.n2; ++k)
            if (std::abs(kPhase.a1(i) - 0.4) < 1.0 && std::abs(kPhase.a2(k) + 0.2) < 1.0)
                box.at(i, k) = 1.0;

    const GaborField pbox = project_gabor(box);
    GaborField residual = box;
    for (size_t i = 0; i < box.values.size(); ++i) residual.values[i] -= pbox.values[i];
    const double best = gabor_norm(residual);

    std::mt19937_64 rng(512);
    for (int trial = 0; trial < 20; ++trial) {
        TestStateSpec spec;
        spec.center = oracles::uniform(rng, -1.5, 1.5);
        spec.width = oracles::uniform(rng, 0.6, 1.8);
        const GaborField cand =
            gabor_forward(make_test_state(spec, kGrid, UnitSystem::dimensionless()), kPhase);
        GaborField diff = box;
        for (size_t i = 0; i < box.values.size(); ++i) diff.values[i] -= cand.values[i];
        CHECK(gabor_norm(diff) >= best - 1e-9);
    }
}

TEST_CASE("the unwindowed reconstruction formula does not invert the transform") {
    const WaveFunction psi = test_state(TestStateKind::Gaussian);
    const GaborField f = gabor_forward(psi, kPhase);
    const WaveFunction naive = gabor_inverse_unweighted(f, kGrid);
    const WaveFunction proper = gabor_inverse(f, kGrid);
    CHECK(fidelity(psi, proper) >= 1.0 - 1e-8);
    // the flat-kernel formula misses the Gaussian window and lands far away
    double err_naive = 0.0;
    const WaveFunction nn = normalized(naive);
    for (int j = 0; j < kGrid.n; ++j) err_naive += std::norm(nn.amp[j] - psi.amp[j]);
    CHECK(std::sqrt(err_naive * kGrid.dx()) > 0.1);
}
