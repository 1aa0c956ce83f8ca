#include "akweak/gabor.hpp"

#include <cmath>

#include "warn.hpp"

namespace akweak {

namespace {

const double kQuarterRoot2OverPi = std::pow(2.0 / M_PI, 0.25);

void require_dimensionless_position(const WaveFunction& psi, const char* op) {
    if (psi.units.kind != Units::Dimensionless)
        throw std::invalid_argument(std::string(op) + ": dimensionless state required");
    if (psi.rep != Rep::Position)
        throw std::invalid_argument(std::string(op) + ": position representation required");
}

void require_same_grid(const GaborField& f, const GaborField& g, const char* op) {
    if (!(f.grid == g.grid)) throw std::invalid_argument(std::string(op) + ": grid mismatch");
}

// e^{-2 i a2 x} table, a2 rows, x columns
std::vector<cplx> analysis_phase_table(const PhaseGrid& pg, const PositionGrid& g) {
    std::vector<cplx> t(static_cast<size_t>(pg.n2) * g.n);
    for (int k = 0; k < pg.n2; ++k)
        for (int j = 0; j < g.n; ++j)
            t[static_cast<size_t>(k) * g.n + j] = std::polar(1.0, -2.0 * pg.a2(k) * g.x(j));
    return t;
}

}  // namespace

GaborField gabor_forward(const WaveFunction& psi, const PhaseGrid& pg) {
    require_dimensionless_position(psi, "gabor_forward");
    const PositionGrid& g = psi.grid;
    const auto phases = analysis_phase_table(pg, g);

    GaborField f;
    f.grid = pg;
    f.values.assign(static_cast<size_t>(pg.n1) * pg.n2, cplx{0.0, 0.0});

    std::vector<cplx> windowed(static_cast<size_t>(g.n));
    const double scale = kQuarterRoot2OverPi * g.dx();
    for (int i = 0; i < pg.n1; ++i) {
        const double a1 = pg.a1(i);
        for (int j = 0; j < g.n; ++j) {
            const double d = g.x(j) - a1;
            windowed[j] = scale * std::exp(-d * d) * psi.amp[j];
        }
        for (int k = 0; k < pg.n2; ++k) {
            cplx acc{0.0, 0.0};
            const cplx* row = &phases[static_cast<size_t>(k) * g.n];
            for (int j = 0; j < g.n; ++j) acc += row[j] * windowed[j];
            // +a2*a1 phase carries the half-center offset of <x|a>
            f.at(i, k) = acc * std::polar(1.0, pg.a2(k) * a1);
        }
    }

    // the phase window must contain the state's image
    double peak = 0.0, edge = 0.0;
    for (int i = 0; i < pg.n1; ++i)
        for (int k = 0; k < pg.n2; ++k) {
            const double v = std::abs(f.at(i, k));
            peak = std::max(peak, v);
            if (i == 0 || k == 0 || i == pg.n1 - 1 || k == pg.n2 - 1) edge = std::max(edge, v);
        }
    if (peak > 0.0 && edge > 1e-10 * peak)
        warn("gabor_forward: field edge above 1e-10 of peak; phase window truncates");
    return f;
}

WaveFunction gabor_inverse(const GaborField& f, const PositionGrid& g) {
    const PhaseGrid& pg = f.grid;
    const auto phases = analysis_phase_table(pg, g);

    WaveFunction psi;
    psi.grid = g;
    psi.units = UnitSystem::dimensionless();
    psi.rep = Rep::Position;
    psi.amp.assign(static_cast<size_t>(g.n), cplx{0.0, 0.0});

    const double weight = kQuarterRoot2OverPi * pg.cell_area() / M_PI;
    std::vector<cplx> column(static_cast<size_t>(pg.n2));
    for (int i = 0; i < pg.n1; ++i) {
        const double a1 = pg.a1(i);
        for (int k = 0; k < pg.n2; ++k)
            column[k] = f.at(i, k) * std::polar(1.0, -pg.a2(k) * a1);
        for (int j = 0; j < g.n; ++j) {
            const double d = g.x(j) - a1;
            const double env = std::exp(-d * d);
            if (env < 1e-16) continue;
            cplx acc{0.0, 0.0};
            for (int k = 0; k < pg.n2; ++k)
                acc += std::conj(phases[static_cast<size_t>(k) * g.n + j]) * column[k];
            psi.amp[j] += env * acc;
        }
    }
    for (auto& a : psi.amp) a *= weight;
    return psi;
}

GaborField project_gabor(const GaborField& f) {
    const PhaseGrid& pg = f.grid;
    const int n1 = pg.n1, n2 = pg.n2;

    // overlap kernel split into four small tables:
    // <a'|a''> = e^{-|a'|^2/2} e^{-|a''|^2/2}
    //            e^{a1' a1''} e^{a2' a2''} e^{i a1' a2''} e^{-i a2' a1''}
    std::vector<double> e11(static_cast<size_t>(n1) * n1), e22(static_cast<size_t>(n2) * n2);
    std::vector<cplx> p12(static_cast<size_t>(n1) * n2), p21(static_cast<size_t>(n2) * n1);
    for (int i = 0; i < n1; ++i)
        for (int u = 0; u < n1; ++u) e11[static_cast<size_t>(i) * n1 + u] = std::exp(pg.a1(i) * pg.a1(u));
    for (int k = 0; k < n2; ++k)
        for (int v = 0; v < n2; ++v) e22[static_cast<size_t>(k) * n2 + v] = std::exp(pg.a2(k) * pg.a2(v));
    for (int i = 0; i < n1; ++i)
        for (int v = 0; v < n2; ++v) p12[static_cast<size_t>(i) * n2 + v] = std::polar(1.0, pg.a1(i) * pg.a2(v));
    for (int k = 0; k < n2; ++k)
        for (int u = 0; u < n1; ++u) p21[static_cast<size_t>(k) * n1 + u] = std::polar(1.0, -pg.a2(k) * pg.a1(u));

    // source weighted by its own Gaussian and the measure
    std::vector<cplx> src(f.values.size());
    const double w = pg.cell_area() / M_PI;
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v) {
            const double a1 = pg.a1(u), a2 = pg.a2(v);
            src[static_cast<size_t>(u) * n2 + v] =
                f.at(u, v) * (w * std::exp(-0.5 * (a1 * a1 + a2 * a2)));
        }

    GaborField out;
    out.grid = pg;
    out.values.assign(f.values.size(), cplx{0.0, 0.0});
    for (int i = 0; i < n1; ++i) {
        for (int k = 0; k < n2; ++k) {
            const double a1 = pg.a1(i), a2 = pg.a2(k);
            cplx acc{0.0, 0.0};
            for (int u = 0; u < n1; ++u) {
                const double g1 = e11[static_cast<size_t>(i) * n1 + u];
                const cplx g2 = p21[static_cast<size_t>(k) * n1 + u];
                if (g1 < 1e-300) continue;
                cplx inner{0.0, 0.0};
                const cplx* p12row = &p12[static_cast<size_t>(i) * n2];
                const double* e22row = &e22[static_cast<size_t>(k) * n2];
                const cplx* srow = &src[static_cast<size_t>(u) * n2];
                for (int v = 0; v < n2; ++v) inner += e22row[v] * p12row[v] * srow[v];
                acc += g1 * g2 * inner;
            }
            out.at(i, k) = acc * std::exp(-0.5 * (a1 * a1 + a2 * a2));
        }
    }
    return out;
}

double gabor_norm(const GaborField& f) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    return std::sqrt(acc * f.grid.cell_area() / M_PI);
}

cplx gabor_dot(const GaborField& f, const GaborField& g) {
    require_same_grid(f, g, "gabor_dot");
    cplx acc{0.0, 0.0};
    for (size_t i = 0; i < f.values.size(); ++i) acc += std::conj(f.values[i]) * g.values[i];
    return acc * (f.grid.cell_area() / M_PI);
}

WaveFunction gabor_inverse_unweighted(const GaborField& f, const PositionGrid& g) {
    const PhaseGrid& pg = f.grid;
    WaveFunction psi;
    psi.grid = g;
    psi.units = UnitSystem::dimensionless();
    psi.rep = Rep::Position;
    psi.amp.assign(static_cast<size_t>(g.n), cplx{0.0, 0.0});

    std::vector<cplx> a1_integral(static_cast<size_t>(pg.n2), cplx{0.0, 0.0});
    for (int k = 0; k < pg.n2; ++k) {
        cplx acc{0.0, 0.0};
        for (int i = 0; i < pg.n1; ++i) acc += f.at(i, k);
        a1_integral[k] = acc * pg.da1();
    }
    const double c = std::pow(std::pow(M_PI, 5) / 2.0, 0.25) * pg.da2();
    for (int j = 0; j < g.n; ++j) {
        cplx acc{0.0, 0.0};
        for (int k = 0; k < pg.n2; ++k)
            acc += std::polar(1.0, 2.0 * pg.a2(k) * g.x(j)) * a1_integral[k];
        psi.amp[j] = c * acc;
    }
    return psi;
}

}  // namespace akweak
