#include "akweak/kraus.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "warn.hpp"

namespace akweak {

namespace {

void require_dimensionless_position(const WaveFunction& psi, const char* op) {
    if (psi.units.kind != Units::Dimensionless)
        throw std::invalid_argument(std::string(op) + ": dimensionless state required");
    if (psi.rep != Rep::Position)
        throw std::invalid_argument(std::string(op) + ": position representation required");
}

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

KrausResult single_kraus_apply(const WaveFunction& psi, const SingleKrausConfig& cfg) {
    if (!(cfg.lambda_s > 0.0))
        throw std::invalid_argument("single_kraus_apply: lambda must be > 0");
    const double c = std::pow(2.0 * cfg.lambda_s / M_PI, 0.25);

    const bool on_momentum = cfg.obs == Observable::P;
    WaveFunction work = on_momentum ? to_momentum(psi) : to_position(psi);
    for (int j = 0; j < work.n(); ++j) {
        const double u = work.grid.x(j);
        work.amp[j] *= c * std::exp(-cfg.lambda_s * (cfg.a - u) * (cfg.a - u));
    }
    WaveFunction post = work;
    if (post.rep != psi.rep)
        post = psi.rep == Rep::Position ? to_position(work, psi.grid) : to_momentum(work);

    KrausResult r{std::move(post), 0.0};
    const double nrm = norm(r.post);
    r.prob_density = nrm * nrm;
    return r;
}

KrausResult strong_kraus_apply(const WaveFunction& psi, PhasePoint a_m) {
    require_dimensionless_position(psi, "strong_kraus_apply");
    WaveFunction post = coherent_state(a_m, psi.grid);
    const cplx overlap = inner_product(post, psi);
    return KrausResult{std::move(post), std::norm(overlap) / M_PI};
}

KrausResult weak_kraus_apply(const WaveFunction& psi, PhasePoint a_m, double lambda) {
    require_dimensionless_position(psi, "weak_kraus_apply");
    if (!(lambda > 0.0)) throw std::invalid_argument("weak_kraus_apply: lambda must be > 0");
    check_edge_decay(psi.amp.data(), psi.n(), 1e-8, "weak_kraus_apply");

    const int n = psi.n();
    const PositionGrid& g = psi.grid;
    const double dz = g.dx();
    const double ca = 2.0 * lambda / (lambda + 2.0);        // outcome-pull width
    const double cc = (lambda + 2.0) / (2.0 * lambda);      // smoothing width

    // kernel K(x,z) = e^{-ca (x_m-(x+z)/2)^2} e^{-cc (x-z)^2} e^{2 i p_m (x-z)},
    // tabulated over the difference and sum indices
    std::vector<cplx> diff(2 * n - 1);
    for (int d = -(n - 1); d <= n - 1; ++d) {
        const double w = d * dz;
        diff[d + n - 1] = std::exp(-cc * w * w) * std::polar(1.0, 2.0 * a_m.a2 * w);
    }
    std::vector<double> sum(2 * n - 1);
    for (int s = 0; s <= 2 * (n - 1); ++s) {
        const double mid = g.x_min + 0.5 * s * dz;
        sum[s] = std::exp(-ca * (a_m.a1 - mid) * (a_m.a1 - mid));
    }

    WaveFunction post = psi;
    const double scale = M_SQRT2 / M_PI * dz;
    for (int i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += diff[i - j + n - 1] * sum[i + j] * psi.amp[j];
        post.amp[i] = scale * acc;
    }

    const double nrm = norm(post);
    KrausResult r{std::move(post), nrm * nrm};
    if (nrm > 0.0)
        for (auto& a : r.post.amp) a /= nrm;
    return r;
}

double weak_kraus_normalization(double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("weak_kraus_normalization: lambda must be > 0");
    return std::sqrt(lambda * (lambda + 2.0) / (M_PI * M_PI * M_PI));
}

PhaseGrid povm_outcome_grid(const PositionGrid& grid, double pad, double da1_target) {
    const double band = M_PI / grid.dx();  // conjugate Nyquist band length
    const int n1 = std::max(16, static_cast<int>(std::ceil((grid.length() + 2.0 * pad) / da1_target)));
    return make_phase_grid(grid.x_min - pad, grid.x_max + pad, n1, -0.5 * band, 0.5 * band,
                           grid.n);
}

PovmReport povm_check(double lambda, const PositionGrid& grid, const PhaseGrid& pgrid) {
    if (!(lambda > 0.0)) throw std::invalid_argument("povm_check: lambda must be > 0");
    const int n = grid.n;
    const double dx = grid.dx();
    const double ca = 2.0 * lambda / (lambda + 2.0);
    const double cc = (lambda + 2.0) / (2.0 * lambda);

    // momentum-outcome factor: the kernel phase is e^{2 i p_m (x - y)}, so the
    // cell sum depends only on the index difference
    std::vector<cplx> dsum(2 * n - 1, cplx{0.0, 0.0});
    for (int d = -(n - 1); d <= n - 1; ++d) {
        const double w = d * dx;
        cplx acc{0.0, 0.0};
        for (int k = 0; k < pgrid.n2; ++k) acc += std::polar(1.0, 2.0 * pgrid.a2(k) * w);
        dsum[d + n - 1] = acc * pgrid.da2();
    }

    // position-outcome factor for K^dag K: S = sum over x_m cells of the
    // z-quadrature (G G) dx with G_uv the Gaussian part of the kernel
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd G(n, n);
    std::vector<double> gd(2 * n - 1), gs(2 * n - 1);
    for (int d = -(n - 1); d <= n - 1; ++d) {
        const double w = d * dx;
        gd[d + n - 1] = std::exp(-cc * w * w);
    }
    for (int ic = 0; ic < pgrid.n1; ++ic) {
        const double xm = pgrid.a1(ic);
        for (int s = 0; s <= 2 * (n - 1); ++s) {
            const double mid = grid.x_min + 0.5 * s * dx;
            gs[s] = std::exp(-ca * (xm - mid) * (xm - mid));
        }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) G(u, v) = gd[u - v + n - 1] * gs[u + v];
        S.noalias() += (pgrid.da1() * dx) * (G * G);
    }

    // interior 80% of the position grid
    const int lo = n / 10;
    const int hi = n - n / 10;
    const double kk = 2.0 / (M_PI * M_PI);
    double max_dev = 0.0;
    for (int i = lo; i < hi; ++i) {
        for (int j = lo; j < hi; ++j) {
            const cplx m = kk * S(i, j) * dsum[i - j + n - 1] * dx;
            const double target = i == j ? 1.0 : 0.0;
            max_dev = std::max(max_dev, std::abs(m - cplx{target, 0.0}));
        }
    }

    // scalar of the plain Kraus integral, sum_cells w K = c I
    std::vector<double> s1(2 * n - 1, 0.0);
    for (int s = 0; s <= 2 * (n - 1); ++s) {
        const double mid = grid.x_min + 0.5 * s * dx;
        double acc = 0.0;
        for (int ic = 0; ic < pgrid.n1; ++ic) {
            const double xm = pgrid.a1(ic);
            acc += std::exp(-ca * (xm - mid) * (xm - mid));
        }
        s1[s] = acc * pgrid.da1();
    }
    double cdiag = 0.0;
    for (int i = lo; i < hi; ++i)
        cdiag += (M_SQRT2 / M_PI) * s1[2 * i] * std::real(dsum[n - 1]) * dx;
    cdiag /= (hi - lo);

    PovmReport rep;
    rep.max_identity_deviation = max_dev;
    rep.kraus_integral_constant = cdiag;
    rep.expected_constant = M_PI * M_PI * weak_kraus_normalization(lambda) / lambda;
    return rep;
}

double JointDistribution::total_mass() const {
    double acc = 0.0;
    for (double d : density) acc += d;
    return acc * pgrid.cell_area();
}

namespace {

JointDistribution strong_distribution(const WaveFunction& psi, double b, const PhaseGrid& pg) {
    const int n = psi.n();
    const PositionGrid& g = psi.grid;
    const double dz = g.dx();
    const double pref = 1.0 / (2.0 * std::sqrt(M_PI * M_PI * M_PI * b));

    std::vector<cplx> phases(static_cast<size_t>(pg.n2) * n);
    for (int k = 0; k < pg.n2; ++k)
        for (int j = 0; j < n; ++j)
            phases[static_cast<size_t>(k) * n + j] = std::polar(1.0, -g.x(j) * pg.a2(k));

    JointDistribution dist;
    dist.pgrid = pg;
    dist.units = UnitSystem::dimensioned(b);
    dist.density.assign(pg.cells(), 0.0);

    std::vector<cplx> wz(static_cast<size_t>(n));
    for (int i = 0; i < pg.n1; ++i) {
        const double xm = pg.a1(i);
        for (int j = 0; j < n; ++j) {
            const double d = g.x(j) - xm;
            wz[j] = psi.amp[j] * std::exp(-d * d / (2.0 * b)) * dz;
        }
        for (int k = 0; k < pg.n2; ++k) {
            const cplx* row = &phases[static_cast<size_t>(k) * n];
            cplx acc{0.0, 0.0};
            for (int j = 0; j < n; ++j) acc += row[j] * wz[j];
            dist.at(i, k) = pref * std::norm(acc);
        }
    }
    return dist;
}

JointDistribution weak_distribution(const WaveFunction& psi, double b, double lambda,
                                    const PhaseGrid& pg) {
    const WeaknessConfig cfg(b, lambda);
    const double b1 = cfg.b1(), b2 = cfg.b2();
    const int n = psi.n();
    const PositionGrid& g = psi.grid;
    const double dz = g.dx();

    // |psi_A(x)|^2 integrated over x for every outcome cell, with
    // psi_A(x) = 1/(pi sqrt(2b)) sum_z B(x_m;x,z) A(x,z) e^{-i p_m z} psi(z) dz
    std::vector<double> ad(2 * n - 1);
    for (int d = -(n - 1); d <= n - 1; ++d) {
        const double w = d * dz;
        ad[d + n - 1] = std::exp(-w * w / (4.0 * b2));
    }

    Eigen::MatrixXcd V(n, pg.n2);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < pg.n2; ++k)
            V(j, k) = psi.amp[j] * std::polar(dz, -g.x(j) * pg.a2(k));

    JointDistribution dist;
    dist.pgrid = pg;
    dist.units = UnitSystem::dimensioned(b);
    dist.density.assign(pg.cells(), 0.0);

    const double pref = 1.0 / (2.0 * b * M_PI * M_PI);
    Eigen::MatrixXd M(n, n);
    std::vector<double> bs(2 * n - 1);
    for (int i = 0; i < pg.n1; ++i) {
        const double xm = pg.a1(i);
        for (int s = 0; s <= 2 * (n - 1); ++s) {
            const double mid = g.x_min + 0.5 * s * dz;
            bs[s] = std::exp(-(xm - mid) * (xm - mid) / b1);
        }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) M(u, v) = ad[u - v + n - 1] * bs[u + v];
        const Eigen::MatrixXcd W = M * V;
        for (int k = 0; k < pg.n2; ++k) {
            double acc = 0.0;
            for (int u = 0; u < n; ++u) acc += std::norm(W(u, k));
            dist.at(i, k) = pref * acc * dz;
        }
    }
    return dist;
}

}  // namespace

JointDistribution joint_distribution(const WaveFunction& psi, const MeasurementMode& mode,
                                     const PhaseGrid& pgrid) {
    WaveFunction work = convert_units(psi, UnitSystem::dimensioned(mode.b));
    work = to_position(work);
    const double nrm = norm(work);
    if (std::abs(nrm - 1.0) > 1e-6)
        throw std::invalid_argument("joint_distribution: state is not normalized");

    JointDistribution dist = mode.kind == MeasurementMode::Kind::Strong
                                 ? strong_distribution(work, mode.b, pgrid)
                                 : weak_distribution(work, mode.b, mode.lambda, pgrid);

    const double mass = dist.total_mass();
    if (std::abs(mass - 1.0) > 1e-3) {
        warn("joint_distribution: total mass " + std::to_string(mass) +
             " deviates from 1 by more than 1e-3; enlarge the outcome window");
    }
    return dist;
}

PhaseGrid suggest_outcome_grid(const WaveFunction& psi, const MeasurementMode& mode, int n1,
                               int n2, double nsig) {
    WaveFunction work = convert_units(psi, UnitSystem::dimensioned(mode.b));
    work = to_position(work);
    const double mx = moment(work, Observable::X, 1);
    const double vx = variance(work, Observable::X);
    const double mp = moment(work, Observable::P, 1);
    const double vp = variance(work, Observable::P);

    double ex, ep;  // excess variances added by the measurement
    if (mode.kind == MeasurementMode::Kind::Strong) {
        ex = 0.5 * mode.b;
        ep = 0.5 / mode.b;
    } else {
        const WeaknessConfig cfg(mode.b, mode.lambda);
        ex = 0.25 * (cfg.b1() + cfg.b2());
        ep = 0.25 / cfg.b1() + 0.25 / cfg.b2();
    }
    const double hx = nsig * std::sqrt(vx + ex);
    const double hp = nsig * std::sqrt(vp + ep);
    return make_phase_grid(mx - hx, mx + hx, n1, mp - hp, mp + hp, n2);
}

DistMoments distribution_moments(const JointDistribution& dist) {
    const PhaseGrid& pg = dist.pgrid;
    double mass = 0.0, sx = 0.0, sp = 0.0, sxx = 0.0, spp = 0.0;
    for (int i = 0; i < pg.n1; ++i) {
        const double x = pg.a1(i);
        for (int k = 0; k < pg.n2; ++k) {
            const double p = pg.a2(k);
            const double d = dist.at(i, k);
            mass += d;
            sx += d * x;
            sp += d * p;
            sxx += d * x * x;
            spp += d * p * p;
        }
    }
    if (mass <= 0.0) throw std::invalid_argument("distribution_moments: empty distribution");
    DistMoments m;
    m.mean_x = sx / mass;
    m.mean_p = sp / mass;
    m.var_x = sxx / mass - m.mean_x * m.mean_x;
    m.var_p = spp / mass - m.mean_p * m.mean_p;
    return m;
}

std::vector<PhasePoint> sample_outcomes(const JointDistribution& dist, long count,
                                        std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_outcomes: count must be >= 1");
    const PhaseGrid& pg = dist.pgrid;
    std::vector<double> cumulative(dist.density.size());
    double acc = 0.0;
    for (size_t i = 0; i < dist.density.size(); ++i) {
        acc += std::max(0.0, dist.density[i]);
        cumulative[i] = acc;
    }
    if (acc <= 0.0) throw std::invalid_argument("sample_outcomes: distribution has no mass");

    std::mt19937_64 rng(seed);
    std::vector<PhasePoint> out;
    out.reserve(static_cast<size_t>(count));
    for (long c = 0; c < count; ++c) {
        const double u = uniform_unit(rng) * acc;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const size_t cell = std::min(static_cast<size_t>(it - cumulative.begin()),
                                     cumulative.size() - 1);
        const int i = static_cast<int>(cell) / pg.n2;
        const int k = static_cast<int>(cell) % pg.n2;
        const double j1 = uniform_unit(rng);
        const double j2 = uniform_unit(rng);
        out.push_back(PhasePoint{pg.a1_min + (i + j1) * pg.da1(), pg.a2_min + (k + j2) * pg.da2()});
    }
    return out;
}

}  // namespace akweak
