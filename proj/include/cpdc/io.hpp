#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpdc/dispersion.hpp"
#include "cpdc/fock.hpp"
#include "cpdc/jsa.hpp"
#include "cpdc/lattice.hpp"
#include "cpdc/schmidt.hpp"
#include "cpdc/types.hpp"
#include "cpdc/walkoff.hpp"

namespace cpdc {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Fixed "%.17g" double formatting: round-trip exact and byte-stable across
/// reruns, which the determinism contract of the CLI relies on.
std::string format_double(double v);

/// Deterministic CSV emitter.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
  ~CsvWriter();
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

 private:
  FILE* file_ = nullptr;
};

json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// Field access helpers that raise ConfigError with a JSON-pointer-ish path
/// so schema violations surface as exit code 2 with the offending field.
double require_number(const json& j, const std::string& key, const std::string& where);
double number_or(const json& j, const std::string& key, double fallback);
long require_integer(const json& j, const std::string& key, const std::string& where);
long integer_or(const json& j, const std::string& key, long fallback);
std::string string_or(const json& j, const std::string& key, const std::string& fallback);

DispersionModel dispersion_from_json(const json& j, const std::string& where);
DispersionTable dispersion_table_from_json(const json& j, const std::string& where);
SuperlatticeSpec lattice_from_json(const json& j, const std::string& where);
WalkoffSet walkoffs_from_json(const json& j, const std::string& where);
PumpPulse pump_from_json(const json& j, const std::string& where);

json schmidt_to_json(const SchmidtReport& report);
json state_to_json(const ModeRegister& reg, const VectorXc& psi);

/// All runs emit out/manifest.json echoing the fully resolved configuration.
void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const json& resolved_config);

/// Amplitude grid emission: CSV rows (nu1, nu2, nu3, re, im) or a JSON tensor
/// envelope {axes, shape, re[], im[]}.
void write_grid_csv(const std::filesystem::path& path, const JointAmplitudeGrid& grid);
json grid_to_json(const JointAmplitudeGrid& grid);

}  // namespace cpdc
