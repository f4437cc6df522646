// Deterministic CSV/JSON serialization of profiles, kernel tables,
// and report types.
#pragma once

#include "whitham/analysis.hpp"
#include "whitham/evolution.hpp"
#include "whitham/kernels.hpp"
#include "whitham/steady.hpp"

#include <json.hpp>

#include <string>

namespace whitham {

inline constexpr int kSchemaVersion = 1;

// Two-column profile CSV (x, value) with a '#' header carrying the
// schema version and the grid; values printed with %.17g so identical
// runs are byte-identical.
void write_profile_csv(const std::string& path, const SpectralField& f);
SpectralField read_profile_csv(const std::string& path);

// Kernel CSV with columns x, value, regular_part, singular_part.
void write_kernel_csv(const std::string& path, const KernelTable& table);

// Long-format trajectory CSV (t, x, u).
void write_trajectory_csv(const std::string& path,
                          const std::vector<Snapshot>& snapshots);

// Wave = profile CSV at <base>.csv plus JSON sidecar at <base>.json
// (speed, residuals, iterations, solver diagnostics).
void write_wave(const std::string& base, const SolitaryWave& wave);
SolitaryWave read_wave(const std::string& base);

nlohmann::json to_json(const SymmetryReport& report);
nlohmann::json to_json(const DecayReport& report);
nlohmann::json to_json(const ShapeReport& report);
nlohmann::json to_json(const CompleteMonotonicityReport& report);
nlohmann::json to_json(const EvolutionReport& report);

void write_json(const std::string& path, const nlohmann::json& j);

} // namespace whitham
