#include "akweak/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace akweak {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

json read_json(const std::string& path) {
    auto in = open_in(path);
    json j;
    in >> j;
    return j;
}

double parse_double(const std::string& cell, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0')
        throw std::runtime_error("malformed number '" + cell + "' in " + path);
    return v;
}

std::vector<std::vector<double>> read_csv(const std::string& path, size_t columns,
                                          const std::string& expected_header) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    if (line != expected_header)
        throw std::runtime_error("unexpected CSV header in " + path + ": " + line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell, path));
        if (row.size() != columns)
            throw std::runtime_error("malformed CSV row in " + path + ": " + line);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string sidecar_path(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of('/');
    const auto dot = csv_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return csv_path + ".json";
    return csv_path.substr(0, dot) + ".json";
}

void save_state(const WaveFunction& psi, const std::string& csv_path) {
    auto out = open_out(csv_path);
    out << "x,re,im\n";
    for (int j = 0; j < psi.n(); ++j)
        out << format_double(psi.grid.x(j)) << ',' << format_double(psi.amp[j].real()) << ','
            << format_double(psi.amp[j].imag()) << '\n';

    json side;
    side["units"] = psi.units.kind == Units::Dimensioned ? "dimensioned" : "dimensionless";
    if (psi.units.has_b()) side["b"] = psi.units.b;
    side["n"] = psi.grid.n;
    side["x_min"] = psi.grid.x_min;
    side["x_max"] = psi.grid.x_max;
    side["rep"] = psi.rep == Rep::Position ? "position" : "momentum";
    open_out(sidecar_path(csv_path)) << side.dump(2) << '\n';
}

WaveFunction load_state(const std::string& csv_path) {
    const json side = read_json(sidecar_path(csv_path));
    WaveFunction psi;
    psi.grid = make_grid(side.at("x_min").get<double>(), side.at("x_max").get<double>(),
                         side.at("n").get<int>());
    const std::string units = side.at("units").get<std::string>();
    if (units == "dimensioned") {
        psi.units = side.contains("b") ? UnitSystem::dimensioned(side["b"].get<double>())
                                       : UnitSystem::dimensioned();
    } else if (units == "dimensionless") {
        psi.units = UnitSystem::dimensionless();
        if (side.contains("b")) psi.units.b = side["b"].get<double>();
    } else {
        throw std::runtime_error("unknown unit system in sidecar: " + units);
    }
    psi.rep = side.value("rep", "position") == "momentum" ? Rep::Momentum : Rep::Position;

    const auto rows = read_csv(csv_path, 3, "x,re,im");
    if (static_cast<int>(rows.size()) != psi.grid.n)
        throw std::runtime_error("CSV row count disagrees with sidecar n");
    psi.amp.resize(rows.size());
    for (size_t j = 0; j < rows.size(); ++j) psi.amp[j] = cplx{rows[j][1], rows[j][2]};
    return psi;
}

void save_field(const GaborField& f, const std::string& csv_path, bool as_density) {
    auto out = open_out(csv_path);
    out << (as_density ? "a1,a2,density\n" : "a1,a2,re,im\n");
    for (int i = 0; i < f.grid.n1; ++i)
        for (int k = 0; k < f.grid.n2; ++k) {
            out << format_double(f.grid.a1(i)) << ',' << format_double(f.grid.a2(k));
            if (as_density)
                out << ',' << format_double(std::norm(f.at(i, k)));
            else
                out << ',' << format_double(f.at(i, k).real()) << ','
                    << format_double(f.at(i, k).imag());
            out << '\n';
        }

    json side;
    side["a1_min"] = f.grid.a1_min;
    side["a1_max"] = f.grid.a1_max;
    side["n1"] = f.grid.n1;
    side["a2_min"] = f.grid.a2_min;
    side["a2_max"] = f.grid.a2_max;
    side["n2"] = f.grid.n2;
    side["content"] = as_density ? "density" : "amplitude";
    open_out(sidecar_path(csv_path)) << side.dump(2) << '\n';
}

GaborField load_field(const std::string& csv_path) {
    const json side = read_json(sidecar_path(csv_path));
    if (side.value("content", "amplitude") != "amplitude")
        throw std::runtime_error("cannot load a density-only field export");
    GaborField f;
    f.grid = make_phase_grid(side.at("a1_min").get<double>(), side.at("a1_max").get<double>(),
                             side.at("n1").get<int>(), side.at("a2_min").get<double>(),
                             side.at("a2_max").get<double>(), side.at("n2").get<int>());
    const auto rows = read_csv(csv_path, 4, "a1,a2,re,im");
    if (rows.size() != static_cast<size_t>(f.grid.cells()))
        throw std::runtime_error("CSV row count disagrees with sidecar grid");
    f.values.resize(rows.size());
    for (size_t j = 0; j < rows.size(); ++j) f.values[j] = cplx{rows[j][2], rows[j][3]};
    return f;
}

void save_distribution(const JointDistribution& dist, const std::string& csv_path) {
    auto out = open_out(csv_path);
    out << "xm,pm,density\n";
    for (int i = 0; i < dist.pgrid.n1; ++i)
        for (int k = 0; k < dist.pgrid.n2; ++k)
            out << format_double(dist.pgrid.a1(i)) << ',' << format_double(dist.pgrid.a2(k))
                << ',' << format_double(dist.at(i, k)) << '\n';

    json side;
    side["a1_min"] = dist.pgrid.a1_min;
    side["a1_max"] = dist.pgrid.a1_max;
    side["n1"] = dist.pgrid.n1;
    side["a2_min"] = dist.pgrid.a2_min;
    side["a2_max"] = dist.pgrid.a2_max;
    side["n2"] = dist.pgrid.n2;
    side["units"] = dist.units.kind == Units::Dimensioned ? "dimensioned" : "dimensionless";
    if (dist.units.has_b()) side["b"] = dist.units.b;
    side["total_mass"] = dist.total_mass();
    open_out(sidecar_path(csv_path)) << side.dump(2) << '\n';
}

void save_samples(const std::vector<PhasePoint>& samples, const std::string& csv_path) {
    auto out = open_out(csv_path);
    out << "xm,pm\n";
    for (const auto& s : samples)
        out << format_double(s.a1) << ',' << format_double(s.a2) << '\n';
}

}  // namespace akweak
