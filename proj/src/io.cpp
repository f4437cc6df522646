#include "whitham/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace whitham {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

} // namespace

void write_profile_csv(const std::string& path, const SpectralField& f) {
    auto out = open_out(path);
    const Grid& grid = f.grid();
    out << "# whitham profile csv v" << kSchemaVersion << "\n";
    out << "# L=" << fmt(grid.half_length()) << " N=" << grid.size() << "\n";
    out << "x,value\n";
    for (int j = 0; j < grid.size(); ++j)
        out << fmt(grid.point(j)) << "," << fmt(f.values()[j]) << "\n";
}

SpectralField read_profile_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    double L = 0.0;
    int N = 0;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (std::sscanf(line.c_str(), "# L=%lf N=%d", &L, &N) == 2)
                values.reserve(N);
            continue;
        }
        if (line.rfind("x,", 0) == 0)
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed profile row: " + line);
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (N == 0 || L <= 0.0)
        throw std::runtime_error("profile csv missing grid header: " + path);
    if (static_cast<int>(values.size()) != N)
        throw std::runtime_error("profile csv row count mismatch: " + path);
    ArrayXd v(N);
    for (int j = 0; j < N; ++j)
        v[j] = values[j];
    return SpectralField(Grid(L, N), std::move(v));
}

void write_kernel_csv(const std::string& path, const KernelTable& table) {
    auto out = open_out(path);
    const Grid& grid = table.grid();
    out << "# whitham kernel csv v" << kSchemaVersion << "\n";
    out << "# L=" << fmt(grid.half_length()) << " N=" << grid.size()
        << " a=" << fmt(table.singular_coefficient())
        << " tail_rate=" << fmt(table.fitted_tail_rate()) << "\n";
    out << "x,value,regular_part,singular_part\n";
    for (int j = 0; j < grid.size(); ++j) {
        const double x = grid.point(j);
        const double reg = table.regular_part()[j];
        const double sing = x == 0.0 ? 0.0 : table.singular_value(x);
        const double total = x == 0.0 ? reg : reg + sing;
        out << fmt(x) << "," << fmt(total) << "," << fmt(reg) << ","
            << fmt(sing) << "\n";
    }
}

void write_trajectory_csv(const std::string& path,
                          const std::vector<Snapshot>& snapshots) {
    auto out = open_out(path);
    out << "# whitham trajectory csv v" << kSchemaVersion << "\n";
    out << "t,x,u\n";
    for (const auto& snap : snapshots) {
        const Grid& grid = snap.u.grid();
        for (int j = 0; j < grid.size(); ++j)
            out << fmt(snap.t) << "," << fmt(grid.point(j)) << ","
                << fmt(snap.u.values()[j]) << "\n";
    }
}

void write_wave(const std::string& base, const SolitaryWave& wave) {
    write_profile_csv(base + ".csv", wave.phi);
    json j{{"schema_version", kSchemaVersion},
           {"c", wave.c},
           {"residual_physical", wave.residual_physical},
           {"residual_convolution", wave.residual_convolution},
           {"iterations", wave.iterations},
           {"converged", wave.converged},
           {"stabilizer", wave.stabilizer}};
    write_json(base + ".json", j);
}

SolitaryWave read_wave(const std::string& base) {
    SpectralField phi = read_profile_csv(base + ".csv");
    auto in = open_in(base + ".json");
    json j = json::parse(in);
    return {std::move(phi),
            j.at("c").get<double>(),
            j.at("residual_physical").get<double>(),
            j.at("residual_convolution").get<double>(),
            j.at("iterations").get<int>(),
            j.at("converged").get<bool>(),
            j.at("stabilizer").get<double>()};
}

json to_json(const SymmetryReport& report) {
    return {{"schema_version", kSchemaVersion},
            {"crest_location", report.crest_location},
            {"reflection_error", report.reflection_error},
            {"crest_count", report.crest_count},
            {"monotone_tail", report.monotone_tail},
            {"moving_plane_sup", report.moving_plane_sup},
            {"degenerate", report.degenerate},
            {"tolerance", report.tolerance},
            {"pass", report.pass()}};
}

json to_json(const DecayReport& report) {
    json norms = json::array();
    for (const auto& [key, value] : report.weighted_norms)
        norms.push_back({{"l", key.first}, {"q", key.second}, {"norm", value}});
    return {{"schema_version", kSchemaVersion},
            {"fitted_rate", report.fitted_rate},
            {"reference_rate", report.reference_rate},
            {"window", {report.window_lo, report.window_hi}},
            {"weighted_norms", norms},
            {"pass", report.pass()}};
}

json to_json(const ShapeReport& report) {
    return {{"schema_version", kSchemaVersion},
            {"positive", report.positive},
            {"decreasing", report.decreasing},
            {"first_violation_x", report.first_violation_x},
            {"pass", report.pass()}};
}

json to_json(const CompleteMonotonicityReport& report) {
    return {{"schema_version", kSchemaVersion},
            {"pass", report.pass},
            {"first_failed_order", report.first_failed_order},
            {"first_failed_point", report.first_failed_point},
            {"reduced_order", report.reduced_order}};
}

json to_json(const EvolutionReport& report) {
    return {{"schema_version", kSchemaVersion},
            {"traveling_error", report.traveling_error},
            {"axis_speed_fit", report.axis.speed_fit},
            {"axis_t", report.axis.t},
            {"axis_lambda", report.axis.lambda},
            {"symmetry_error", report.axis.symmetry_error},
            {"mass_drift", report.mass_drift},
            {"momentum_drift", report.momentum_drift}};
}

void write_json(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

} // namespace whitham
