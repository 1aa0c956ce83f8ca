#include "akweak/ak.hpp"

#include <cmath>

#include "fft.hpp"
#include "warn.hpp"

namespace akweak {

namespace {

void require_dimensioned_position(const WaveFunction& psi, const char* op) {
    if (psi.units.kind != Units::Dimensioned)
        throw std::invalid_argument(std::string(op) + ": dimensioned state required");
    if (psi.rep != Rep::Position)
        throw std::invalid_argument(std::string(op) + ": position representation required");
}

void dft_axis(std::vector<cplx>& a, int n0, int n1, int n2, int axis, int sign) {
    if (axis == 0) {
        fft::dft_strided(a.data(), n0, n1 * n2, n1 * n2, 1, sign);
    } else if (axis == 1) {
        for (int i0 = 0; i0 < n0; ++i0)
            fft::dft_strided(a.data() + static_cast<size_t>(i0) * n1 * n2, n1, n2, n2, 1, sign);
    } else {
        fft::dft_strided(a.data(), n2, n0 * n1, 1, n2, sign);
    }
}

}  // namespace

double tri_norm(const TriState& phi) {
    double acc = 0.0;
    for (const auto& a : phi.amp) acc += std::norm(a);
    return std::sqrt(acc * phi.cell_volume());
}

cplx tri_dot(const TriState& a, const TriState& b) {
    if (a.amp.size() != b.amp.size())
        throw std::invalid_argument("tri_dot: size mismatch");
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < a.amp.size(); ++i) acc += std::conj(a.amp[i]) * b.amp[i];
    return acc * a.cell_volume();
}

double tri_fidelity(const TriState& a, const TriState& b) {
    const double na = tri_norm(a), nb = tri_norm(b);
    if (na <= 0.0 || nb <= 0.0) throw std::invalid_argument("tri_fidelity: zero-norm state");
    return std::min(1.0, std::abs(tri_dot(a, b)) / (na * nb));
}

TriState initial_tri_state(const WaveFunction& psi_b, double b1, double b2,
                           const TriGrids& grids) {
    require_dimensioned_position(psi_b, "initial_tri_state");
    if (!(psi_b.grid == grids.x))
        throw std::invalid_argument("initial_tri_state: psi_b must live on grids.x");
    if (!(b1 > 0.0 && b2 > 0.0))
        throw std::invalid_argument("initial_tri_state: detector widths must be > 0");
    // spectral representation keeps Gaussians accurate down to ~2 points per
    // standard deviation; below that the factors are unrepresentable
    const double sig1 = 0.5 * std::sqrt(b1);
    const double sig2 = std::sqrt(b2);
    if (grids.x1.dx() > sig1 || grids.x2.dx() > sig2)
        throw std::invalid_argument("initial_tri_state: detector grids cannot resolve the Gaussians");
    if (grids.x1.dx() > sig1 / 6.0 || grids.x2.dx() > sig2 / 6.0)
        warn("initial_tri_state: fewer than 6 points per detector standard deviation");

    const WaveFunction d1 = detector_d1(b1, grids.x1);
    const WaveFunction d2 = detector_d2_position(b2, grids.x2);

    TriState phi;
    phi.grids = grids;
    phi.units = psi_b.units;
    phi.amp.resize(static_cast<size_t>(grids.x.n) * grids.x1.n * grids.x2.n);
    for (int ix = 0; ix < grids.x.n; ++ix)
        for (int i1 = 0; i1 < grids.x1.n; ++i1) {
            const cplx c = psi_b.amp[ix] * d1.amp[i1];
            cplx* row = &phi.amp[phi.idx(ix, i1, 0)];
            for (int i2 = 0; i2 < grids.x2.n; ++i2) row[i2] = c * d2.amp[i2];
        }
    phi.factor_psi = psi_b;
    phi.factor_b1 = b1;
    phi.factor_b2 = b2;
    phi.is_product = true;
    return phi;
}

TriState evolve_shift(const TriState& phi0, double tau) {
    if (!phi0.is_product)
        throw std::invalid_argument("evolve_shift: requires the product-form initial state");
    const TriGrids& g = phi0.grids;
    const int nx = g.x.n, n1 = g.x1.n, n2 = g.x2.n;

    TriState phi = phi0;
    phi.is_product = tau == 0.0;

    const double c1 = std::pow(2.0 / (M_PI * phi0.factor_b1), 0.25);
    const double inv_b1 = 1.0 / phi0.factor_b1;
    const double c2 = std::pow(1.0 / (2.0 * M_PI * phi0.factor_b2), 0.25);
    const double inv_4b2 = 0.25 / phi0.factor_b2;

    double psi_peak = 0.0;
    for (const auto& a : phi0.factor_psi.amp) psi_peak = std::max(psi_peak, std::abs(a));
    double worst_wrap = 0.0;

    std::vector<cplx> shifted(static_cast<size_t>(nx));
    for (int i2 = 0; i2 < n2; ++i2) {
        const double x2 = g.x2.x(i2);
        const double d2v = c2 * std::exp(-x2 * x2 * inv_4b2);
        // psi_B(x - x2*tau) by spectral translation
        shifted.assign(phi0.factor_psi.amp.begin(), phi0.factor_psi.amp.end());
        fft::spectral_shift(shifted, g.x.dx(), x2 * tau);
        // mass shifted against the box edge wraps around; weight by the
        // detector amplitude that multiplies this slice
        const double edge = std::max(std::abs(shifted[0]), std::abs(shifted[nx - 1]));
        worst_wrap = std::max(worst_wrap, edge * d2v);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = g.x.x(ix);
            const cplx base = shifted[ix] * d2v;
            const double arg0 = -x * tau + 0.5 * x2 * tau * tau;
            cplx* row = &phi.amp[phi.idx(ix, 0, i2)];
            for (int i1 = 0; i1 < n1; ++i1) {
                const double u = g.x1.x(i1) + arg0;
                row[static_cast<size_t>(i1) * n2] = base * (c1 * std::exp(-u * u * inv_b1));
            }
        }
    }
    const double d2_peak = c2;
    if (worst_wrap > 1e-6 * psi_peak * d2_peak)
        warn("evolve_shift: shifted system state wraps around the box; enlarge the x window");
    return phi;
}

TriState trotter_evolve(const TriState& phi0, double tau, int steps, double scale_p1x,
                        double scale_x2p) {
    if (steps < 1) throw std::invalid_argument("trotter_evolve: steps must be >= 1");
    const TriGrids& g = phi0.grids;
    const int nx = g.x.n, n1 = g.x1.n, n2 = g.x2.n;
    const double dtau = tau / steps;

    TriState phi = phi0;
    phi.is_product = false;

    // e^{-i dtau x p1}: diagonal after the axis-1 transform
    auto half_shift_x1 = [&](double step_tau) {
        dft_axis(phi.amp, nx, n1, n2, 1, -1);
        for (int ix = 0; ix < nx; ++ix) {
            const double x = g.x.x(ix);
            for (int j = 0; j < n1; ++j) {
                const double p1 = fft::fft_momentum(j, n1, g.x1.dx());
                const cplx f = std::polar(1.0 / n1, -step_tau * scale_p1x * x * p1);
                cplx* row = &phi.amp[phi.idx(ix, j, 0)];
                for (int i2 = 0; i2 < n2; ++i2) row[i2] *= f;
            }
        }
        dft_axis(phi.amp, nx, n1, n2, 1, +1);
    };
    // e^{-i dtau x2 p}: diagonal after the axis-0 transform
    auto shift_x = [&](double step_tau) {
        dft_axis(phi.amp, nx, n1, n2, 0, -1);
        for (int j = 0; j < nx; ++j) {
            const double p = fft::fft_momentum(j, nx, g.x.dx());
            for (int i1 = 0; i1 < n1; ++i1) {
                cplx* row = &phi.amp[phi.idx(j, i1, 0)];
                for (int i2 = 0; i2 < n2; ++i2)
                    row[i2] *= std::polar(1.0 / nx, -step_tau * scale_x2p * g.x2.x(i2) * p);
            }
        }
        dft_axis(phi.amp, nx, n1, n2, 0, +1);
    };

    half_shift_x1(0.5 * dtau);
    for (int s = 0; s < steps; ++s) {
        shift_x(dtau);
        half_shift_x1(s + 1 < steps ? dtau : 0.5 * dtau);
    }
    return phi;
}

TriState to_readout_rep(const TriState& phi) {
    if (phi.rep_x2 == Rep::Momentum) return phi;
    const TriGrids& g = phi.grids;
    const int nx = g.x.n, n1 = g.x1.n, n2 = g.x2.n;
    const PositionGrid pgrid = conjugate_grid(g.x2, 1.0);

    TriState out = phi;
    out.is_product = false;
    // detector-2 momentum amplitude with kernel e^{+i p2 x2}
    for (int i2 = 0; i2 < n2; ++i2) {
        const cplx pre = std::polar(1.0, pgrid.x_min * g.x2.x(i2));
        for (int ix = 0; ix < nx; ++ix)
            for (int i1 = 0; i1 < n1; ++i1) out.amp[out.idx(ix, i1, i2)] *= pre;
    }
    dft_axis(out.amp, nx, n1, n2, 2, +1);
    const double c = std::sqrt(1.0 / (2.0 * M_PI)) * g.x2.dx();
    for (int j = 0; j < n2; ++j) {
        const cplx post = c * std::polar(1.0, (pgrid.x(j) - pgrid.x_min) * g.x2.x_min);
        for (int ix = 0; ix < nx; ++ix)
            for (int i1 = 0; i1 < n1; ++i1) out.amp[out.idx(ix, i1, j)] *= post;
    }
    out.grids.x2 = pgrid;
    out.rep_x2 = Rep::Momentum;
    return out;
}

AkReadout read_out(const TriState& phi_readout, double x_m, double p_m) {
    if (phi_readout.rep_x2 != Rep::Momentum || phi_readout.rep_x1 != Rep::Position)
        throw std::invalid_argument("read_out: state must be in the detector readout representation");
    const TriGrids& g = phi_readout.grids;
    const double u = (x_m - g.x1.x_min) / g.x1.dx();
    const double v = (p_m - g.x2.x_min) / g.x2.dx();
    if (u < 0.0 || u > g.x1.n - 1 || v < 0.0 || v > g.x2.n - 1)
        throw std::invalid_argument("read_out: outcome lies outside the detector grids");
    const int i1 = std::min(static_cast<int>(u), g.x1.n - 2);
    const int i2 = std::min(static_cast<int>(v), g.x2.n - 2);
    const double fu = u - i1;
    const double fv = v - i2;

    WaveFunction slice;
    slice.grid = g.x;
    slice.units = phi_readout.units;
    slice.rep = Rep::Position;
    slice.amp.assign(static_cast<size_t>(g.x.n), cplx{0.0, 0.0});
    for (int ix = 0; ix < g.x.n; ++ix) {
        const cplx a00 = phi_readout.amp[phi_readout.idx(ix, i1, i2)];
        const cplx a01 = phi_readout.amp[phi_readout.idx(ix, i1, i2 + 1)];
        const cplx a10 = phi_readout.amp[phi_readout.idx(ix, i1 + 1, i2)];
        const cplx a11 = phi_readout.amp[phi_readout.idx(ix, i1 + 1, i2 + 1)];
        slice.amp[ix] = (1.0 - fu) * ((1.0 - fv) * a00 + fv * a01) +
                        fu * ((1.0 - fv) * a10 + fv * a11);
    }
    const double nrm = norm(slice);
    return AkReadout{std::move(slice), nrm * nrm};
}

JointDistribution readout_distribution(const TriState& phi_readout) {
    if (phi_readout.rep_x2 != Rep::Momentum || phi_readout.rep_x1 != Rep::Position)
        throw std::invalid_argument(
            "readout_distribution: state must be in the detector readout representation");
    const TriGrids& g = phi_readout.grids;

    JointDistribution dist;
    // cells centered on the detector nodes
    dist.pgrid = PhaseGrid{g.x1.x_min - 0.5 * g.x1.dx(), g.x1.x_max - 0.5 * g.x1.dx(), g.x1.n,
                           g.x2.x_min - 0.5 * g.x2.dx(), g.x2.x_max - 0.5 * g.x2.dx(), g.x2.n};
    dist.units = phi_readout.units;
    dist.density.assign(static_cast<size_t>(g.x1.n) * g.x2.n, 0.0);
    const double dx = g.x.dx();
    for (int ix = 0; ix < g.x.n; ++ix)
        for (int i1 = 0; i1 < g.x1.n; ++i1) {
            const cplx* row = &phi_readout.amp[phi_readout.idx(ix, i1, 0)];
            for (int i2 = 0; i2 < g.x2.n; ++i2)
                dist.density[static_cast<size_t>(i1) * g.x2.n + i2] += std::norm(row[i2]) * dx;
        }
    return dist;
}

WaveFunction post_state_closed_form(const WaveFunction& psi_b, double x_m, double p_m,
                                    double b1, double b2, double b) {
    require_dimensioned_position(psi_b, "post_state_closed_form");
    if (!(b1 > 0.0 && b2 > 0.0 && b > 0.0))
        throw std::invalid_argument("post_state_closed_form: widths must be > 0");
    check_edge_decay(psi_b.amp.data(), psi_b.n(), 1e-8, "post_state_closed_form");

    const int n = psi_b.n();
    const PositionGrid& g = psi_b.grid;
    const double dz = g.dx();

    std::vector<cplx> diff(2 * n - 1);
    for (int d = -(n - 1); d <= n - 1; ++d) {
        const double w = d * dz;
        diff[d + n - 1] = std::exp(-w * w / (4.0 * b2)) * std::polar(1.0, p_m * w);
    }
    std::vector<double> sum(2 * n - 1);
    for (int s = 0; s <= 2 * (n - 1); ++s) {
        const double mid = g.x_min + 0.5 * s * dz;
        sum[s] = std::exp(-(x_m - mid) * (x_m - mid) / b1);
    }

    WaveFunction post = psi_b;
    post.units = UnitSystem::dimensioned(b);
    const double scale = dz / (M_PI * std::sqrt(2.0 * b));
    for (int i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += diff[i - j + n - 1] * sum[i + j] * psi_b.amp[j];
        post.amp[i] = scale * acc;
    }
    return post;
}

WaveFunction short_time_state(const WaveFunction& psi_b, double x_m, double p_m, double tau,
                              double b) {
    require_dimensioned_position(psi_b, "short_time_state");
    if (!(tau > 0.0)) throw std::invalid_argument("short_time_state: tau must be > 0");
    if (!(b > 0.0)) throw std::invalid_argument("short_time_state: b must be > 0");
    if (tau > 0.2) warn("short_time_state: tau above 0.2 is outside the short-time regime");

    WaveFunction tilde = to_momentum(psi_b);
    for (int j = 0; j < tilde.n(); ++j) {
        const double p = tilde.grid.x(j);
        tilde.amp[j] *= std::exp(-b * (p_m - p * tau) * (p_m - p * tau));
    }
    WaveFunction out = to_position(tilde, psi_b.grid);
    for (int j = 0; j < out.n(); ++j) {
        const double x = out.grid.x(j);
        out.amp[j] *= std::exp(-(x_m - x * tau) * (x_m - x * tau) / b);
    }
    return normalized(out);
}

AkRunOutput ak_run(const WaveFunction& psi_b, const AkRunConfig& cfg) {
    require_dimensioned_position(psi_b, "ak_run");
    if (!(cfg.b > 0.0)) throw std::invalid_argument("ak_run: b must be > 0");
    if (!(cfg.tau > 0.0)) throw std::invalid_argument("ak_run: tau must be > 0");

    double b1 = cfg.b1, b2 = cfg.b2, lambda = cfg.lambda;
    if (lambda > 0.0) {
        const WeaknessConfig wc(cfg.b, lambda);
        b1 = wc.b1();
        b2 = wc.b2();
    } else if (!(b1 > 0.0) || !(b2 > 0.0)) {
        b1 = b2 = cfg.b;  // strongest measurement
    } else if (b1 > cfg.b && b2 < cfg.b) {
        lambda = lambda_from_b1(b1, cfg.b);
    }

    const double need_mb = 16.0 * psi_b.n() * cfg.n1 * cfg.n2 * 4.0 / 1.0e6;
    const double budget = cfg.mem_budget_mb > 0.0 ? cfg.mem_budget_mb : 2048.0;
    if (need_mb > budget)
        throw ResourceError("ak_run: grids need about " + std::to_string(need_mb) +
                            " MB, over the budget of " + std::to_string(budget) + " MB");

    const TriGrids grids = suggest_tri_grids(psi_b, b1, b2, cfg.tau, cfg.n1, cfg.n2);
    const TriState phi0 = initial_tri_state(psi_b, b1, b2, grids);
    const TriState phi_t = evolve_shift(phi0, cfg.tau);
    const TriState rd = to_readout_rep(phi_t);

    AkRunOutput out;
    out.dist = readout_distribution(rd);

    AkRunReport& rep = out.report;
    rep.tau = cfg.tau;
    rep.b = cfg.b;
    rep.b1 = b1;
    rep.b2 = b2;
    rep.lambda = lambda;
    rep.total_mass = out.dist.total_mass();
    rep.moments = distribution_moments(out.dist);
    rep.mean_x_expected = cfg.tau * moment(psi_b, Observable::X, 1);
    rep.mean_p_expected = cfg.tau * moment(psi_b, Observable::P, 1);
    if (std::abs(cfg.tau - 1.0) < 1e-12) {
        rep.expected_var_x = variance(psi_b, Observable::X) + 0.25 * (b1 + b2);
        rep.expected_var_p = variance(psi_b, Observable::P) + 0.25 / b1 + 0.25 / b2;
    }

    if (cfg.have_outcome) {
        const AkReadout r = read_out(rd, cfg.xm, cfg.pm);
        rep.readout_density = r.density;
        out.post = normalized(r.post);
        out.have_post = true;
        if (std::abs(cfg.tau - 1.0) < 1e-12) {
            const WaveFunction closed =
                post_state_closed_form(psi_b, cfg.xm, cfg.pm, b1, b2, cfg.b);
            rep.closed_form_fidelity = fidelity(out.post, closed);
        }
        if (cfg.short_time)
            rep.short_time_fidelity =
                fidelity(out.post, short_time_state(psi_b, cfg.xm, cfg.pm, cfg.tau, cfg.b));
    }

    if (cfg.oracle_steps > 0) {
        const TriState oracle = trotter_evolve(phi0, cfg.tau, cfg.oracle_steps);
        rep.oracle_fidelity = tri_fidelity(oracle, phi_t);
    }
    return out;
}

TriGrids suggest_tri_grids(const WaveFunction& psi_b, double b1, double b2, double tau,
                           int n1, int n2) {
    require_dimensioned_position(psi_b, "suggest_tri_grids");
    const double mx = moment(psi_b, Observable::X, 1);
    const double sx = std::sqrt(variance(psi_b, Observable::X));

    // decay targets; when the point budget cannot afford them, the boxes are
    // clamped to the resolution limit and the truncation is reported
    double half2 = 9.0 * std::sqrt(b2);
    const double shift1 = std::abs(tau) * (std::abs(mx) + 5.0 * sx) +
                          0.5 * tau * tau * 4.0 * std::sqrt(b2);
    double half1 = 4.3 * std::sqrt(b1) + shift1 + 0.5;

    const double cap1 = 0.5 * n1 * (0.5 * std::sqrt(b1)) * 0.999;
    const double cap2 = 0.5 * n2 * std::sqrt(b2) * 0.999;
    if (half1 > cap1) {
        warn("suggest_tri_grids: detector-1 box clamped from " + std::to_string(half1) +
             " to " + std::to_string(cap1) + "; raise n1 to avoid truncation");
        half1 = cap1;
    }
    if (half2 > cap2) {
        warn("suggest_tri_grids: detector-2 box clamped from " + std::to_string(half2) +
             " to " + std::to_string(cap2) + "; raise n2 to avoid truncation");
        half2 = cap2;
    }

    TriGrids g;
    g.x = psi_b.grid;
    g.x1 = make_grid(-half1, half1, n1);
    g.x2 = make_grid(-half2, half2, n2);
    return g;
}

}  // namespace akweak
