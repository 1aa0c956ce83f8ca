#include "akweak/state.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "warn.hpp"

namespace akweak {

namespace {

const double kQuarterRoot2OverPi = std::pow(2.0 / M_PI, 0.25);

void require_same_layout(const WaveFunction& a, const WaveFunction& b, const char* op) {
    if (!(a.grid == b.grid)) throw std::invalid_argument(std::string(op) + ": grid mismatch");
    if (!a.units.same_kind(b.units))
        throw std::invalid_argument(std::string(op) + ": unit-system mismatch");
    if (a.rep != b.rep) throw std::invalid_argument(std::string(op) + ": representation mismatch");
}

WaveFunction blank_like(const PositionGrid& g, const UnitSystem& u, Rep rep) {
    WaveFunction psi;
    psi.grid = g;
    psi.units = u;
    psi.rep = rep;
    psi.amp.assign(static_cast<size_t>(g.n), cplx{0.0, 0.0});
    return psi;
}

}  // namespace

WeaknessConfig::WeaknessConfig(double b_, double lambda_) : b(b_), lambda(lambda_) {
    if (!(b > 0.0)) throw std::invalid_argument("WeaknessConfig: b must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("WeaknessConfig: lambda must be > 0");
}

double lambda_from_b1(double b1, double b) {
    if (!(b1 > b)) throw std::invalid_argument("lambda_from_b1: requires b1 > b");
    return 2.0 * b / (b1 - b);
}

double lambda_from_b2(double b2, double b) {
    if (!(b2 > 0.0 && b2 < b)) throw std::invalid_argument("lambda_from_b2: requires 0 < b2 < b");
    return 2.0 * b2 / (b - b2);
}

WaveFunction coherent_state(PhasePoint a, const PositionGrid& g) {
    if (!(a.a1 - g.x_min > 4.0 && g.x_max - a.a1 > 4.0))
        throw std::invalid_argument("coherent_state: center too close to the grid edge");
    if (std::abs(2.0 * a.a2) >= M_PI / g.dx())
        throw std::invalid_argument("coherent_state: momentum exceeds the grid Nyquist band");
    WaveFunction psi = blank_like(g, UnitSystem::dimensionless(), Rep::Position);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        const double d = x - a.a1;
        psi.amp[j] = kQuarterRoot2OverPi * std::exp(-d * d) *
                     std::polar(1.0, 2.0 * a.a2 * (x - 0.5 * a.a1));
    }
    return psi;
}

cplx coherent_overlap(PhasePoint a, PhasePoint b) {
    const cplx za{a.a1, a.a2};
    const cplx zb{b.a1, b.a2};
    return std::exp(-0.5 * (std::norm(za) + std::norm(zb)) + std::conj(za) * zb);
}

WaveFunction detector_d1(double b1, const PositionGrid& g) {
    if (!(b1 > 0.0)) throw std::invalid_argument("detector_d1: b1 must be > 0");
    WaveFunction psi = blank_like(g, UnitSystem::dimensioned(), Rep::Position);
    const double c = std::pow(2.0 / (M_PI * b1), 0.25);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        psi.amp[j] = c * std::exp(-x * x / b1);
    }
    check_edge_decay(psi.amp.data(), g.n, 1e-8, "detector_d1");
    return psi;
}

WaveFunction detector_d2_momentum(double b2, const PositionGrid& g) {
    if (!(b2 > 0.0)) throw std::invalid_argument("detector_d2_momentum: b2 must be > 0");
    const PositionGrid pg = conjugate_grid(g, 1.0);
    WaveFunction psi = blank_like(pg, UnitSystem::dimensioned(), Rep::Momentum);
    const double c = std::pow(2.0 * b2 / M_PI, 0.25);
    for (int j = 0; j < pg.n; ++j) {
        const double p = pg.x(j);
        psi.amp[j] = c * std::exp(-b2 * p * p);
    }
    check_edge_decay(psi.amp.data(), pg.n, 1e-8, "detector_d2_momentum");
    return psi;
}

WaveFunction detector_d2_position(double b2, const PositionGrid& g) {
    if (!(b2 > 0.0)) throw std::invalid_argument("detector_d2_position: b2 must be > 0");
    WaveFunction psi = blank_like(g, UnitSystem::dimensioned(), Rep::Position);
    const double c = std::pow(1.0 / (2.0 * M_PI * b2), 0.25);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        psi.amp[j] = c * std::exp(-x * x / (4.0 * b2));
    }
    check_edge_decay(psi.amp.data(), g.n, 1e-8, "detector_d2_position");
    return psi;
}

WaveFunction make_test_state(const TestStateSpec& spec, const PositionGrid& g,
                             const UnitSystem& units) {
    WaveFunction psi = blank_like(g, units, Rep::Position);
    switch (spec.kind) {
        case TestStateKind::Gaussian: {
            if (!(spec.width > 0.0))
                throw std::invalid_argument("make_test_state: width must be > 0");
            for (int j = 0; j < g.n; ++j) {
                const double u = (g.x(j) - spec.center) / spec.width;
                psi.amp[j] = std::exp(-u * u);
            }
            break;
        }
        case TestStateKind::TwoPeak: {
            const double h = 0.5 * spec.sep;
            for (int j = 0; j < g.n; ++j) {
                const double x = g.x(j);
                psi.amp[j] = std::exp(-(x - h) * (x - h)) + std::exp(-(x + h) * (x + h));
            }
            break;
        }
        case TestStateKind::Hermite1: {
            for (int j = 0; j < g.n; ++j) {
                const double x = g.x(j);
                psi.amp[j] = x * std::exp(-x * x);
            }
            break;
        }
    }
    double peak = 0.0;
    for (const auto& a : psi.amp) peak = std::max(peak, std::abs(a));
    const double edge = std::max(std::abs(psi.amp.front()), std::abs(psi.amp.back()));
    if (edge > 1e-6 * peak)
        throw std::invalid_argument("make_test_state: support truncated by the grid");
    if (edge > 1e-8 * peak) warn("make_test_state: edge amplitude above 1e-8 of peak");
    return normalized(psi);
}

WaveFunction strong_post_reference(double x_m, double p_m, double b, const PositionGrid& g) {
    if (!(b > 0.0)) throw std::invalid_argument("strong_post_reference: b must be > 0");
    WaveFunction psi = blank_like(g, UnitSystem::dimensioned(b), Rep::Position);
    const double c = std::pow(1.0 / (M_PI * b), 0.25);
    for (int j = 0; j < g.n; ++j) {
        const double x = g.x(j);
        psi.amp[j] = c * std::exp(-(x - x_m) * (x - x_m) / (2.0 * b)) * std::polar(1.0, p_m * x);
    }
    return psi;
}

namespace {

// Unitary transform between conjugate axes u and v,
//   out(u_j) = sqrt(kappa/2pi) d_in sum_k e^{sign * i kappa u_j v_k} in(v_k).
// With kappa*du*dv = 2pi/n the double index term is a plain DFT and the two
// grid offsets become pre/post phase twists.
WaveFunction continuum_transform(const WaveFunction& in, const PositionGrid& out_grid,
                                 double kappa, int sign, Rep out_rep) {
    const int n = in.n();
    const double c = std::sqrt(kappa / (2.0 * M_PI)) * in.grid.dx();
    WaveFunction out = in;
    out.grid = out_grid;
    out.rep = out_rep;
    for (int k = 0; k < n; ++k)
        out.amp[k] = in.amp[k] * std::polar(1.0, sign * kappa * out_grid.x_min * in.grid.x(k));
    fft::dft_1d(out.amp.data(), n, sign);
    for (int j = 0; j < n; ++j)
        out.amp[j] *= c * std::polar(1.0, sign * kappa * (out_grid.x(j) - out_grid.x_min) *
                                              in.grid.x_min);
    return out;
}

}  // namespace

WaveFunction to_momentum(const WaveFunction& psi) {
    if (psi.rep == Rep::Momentum) return psi;
    check_edge_decay(psi.amp.data(), psi.n(), 1e-8, "to_momentum");
    const double kappa = psi.units.fourier_factor();
    return continuum_transform(psi, conjugate_grid(psi.grid, kappa), kappa, -1, Rep::Momentum);
}

WaveFunction to_position(const WaveFunction& psi, const PositionGrid& target) {
    if (psi.rep == Rep::Position) return psi;
    const double kappa = psi.units.fourier_factor();
    const PositionGrid check = conjugate_grid(target, kappa);
    if (check.n != psi.grid.n ||
        std::abs(check.dx() - psi.grid.dx()) > 1e-12 * std::abs(psi.grid.dx()))
        throw std::invalid_argument("to_position: target grid is not conjugate to the input");
    return continuum_transform(psi, target, kappa, +1, Rep::Position);
}

WaveFunction to_position(const WaveFunction& psi) {
    if (psi.rep == Rep::Position) return psi;
    const double kappa = psi.units.fourier_factor();
    return to_position(psi, conjugate_grid(psi.grid, kappa));
}

WaveFunction convert_units(const WaveFunction& psi, const UnitSystem& target) {
    if (psi.units.kind == target.kind) return psi;
    double b = std::nan("");
    if (psi.units.has_b()) b = psi.units.b;
    if (target.has_b()) {
        if (std::isfinite(b) && std::abs(b - target.b) > 1e-12 * b)
            throw std::invalid_argument("convert_units: conflicting b values");
        b = target.b;
    }
    if (!std::isfinite(b) || !(b > 0.0))
        throw std::invalid_argument("convert_units: b is required for the rescaling");

    WaveFunction out = psi;
    out.units = target.kind == Units::Dimensioned ? UnitSystem::dimensioned(b)
                                                  : UnitSystem{Units::Dimensionless, b};
    // position axis scales by sqrt(2b), momentum axis by sqrt(2/b)
    const bool to_dimensionless = target.kind == Units::Dimensionless;
    const double axis = psi.rep == Rep::Position ? std::sqrt(2.0 * b) : std::sqrt(2.0 / b);
    const double coord_scale = to_dimensionless ? 1.0 / axis : axis;
    const double amp_scale = std::pow(coord_scale, -0.5);
    out.grid.x_min = psi.grid.x_min * coord_scale;
    out.grid.x_max = psi.grid.x_max * coord_scale;
    for (auto& a : out.amp) a *= amp_scale;
    return out;
}

cplx inner_product(const WaveFunction& phi, const WaveFunction& psi) {
    require_same_layout(phi, psi, "inner_product");
    check_edge_decay(phi.amp.data(), phi.n(), 1e-8, "inner_product");
    check_edge_decay(psi.amp.data(), psi.n(), 1e-8, "inner_product");
    cplx acc{0.0, 0.0};
    for (int j = 0; j < phi.n(); ++j) acc += std::conj(phi.amp[j]) * psi.amp[j];
    return acc * phi.dx();
}

double norm(const WaveFunction& psi) {
    double acc = 0.0;
    for (const auto& a : psi.amp) acc += std::norm(a);
    return std::sqrt(acc * psi.dx());
}

WaveFunction normalized(const WaveFunction& psi) {
    const double nrm = norm(psi);
    if (nrm <= 0.0) throw std::invalid_argument("normalized: zero-norm state");
    WaveFunction out = psi;
    for (auto& a : out.amp) a /= nrm;
    return out;
}

double fidelity(const WaveFunction& phi, const WaveFunction& psi) {
    const double np = norm(phi);
    const double nq = norm(psi);
    if (np <= 0.0 || nq <= 0.0) throw std::invalid_argument("fidelity: zero-norm state");
    return std::min(1.0, std::abs(inner_product(phi, psi)) / (np * nq));
}

double moment(const WaveFunction& psi, Observable obs, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("moment: order must be 1 or 2");
    const double nrm = norm(psi);
    if (std::abs(nrm - 1.0) > 1e-6)
        throw std::invalid_argument("moment: state is not normalized");
    const bool want_momentum = obs == Observable::P;
    const bool have_momentum = psi.rep == Rep::Momentum;
    if (want_momentum != have_momentum) {
        const WaveFunction t = want_momentum ? to_momentum(psi) : to_position(psi);
        return moment(t, obs, order);
    }
    double acc = 0.0;
    for (int j = 0; j < psi.n(); ++j) {
        const double u = psi.grid.x(j);
        acc += (order == 1 ? u : u * u) * std::norm(psi.amp[j]);
    }
    return acc * psi.dx();
}

double variance(const WaveFunction& psi, Observable obs) {
    const double m1 = moment(psi, obs, 1);
    return moment(psi, obs, 2) - m1 * m1;
}

}  // namespace akweak
