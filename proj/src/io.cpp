#include "cpdc/io.hpp"

#include <cstdio>
#include <fstream>

namespace cpdc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns) {
  file_ = std::fopen(path.string().c_str(), "wb");
  if (!file_) throw ConfigError("cannot open output file " + path.string());
  std::string header;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) header += ',';
    header += columns[i];
  }
  header += '\n';
  std::fwrite(header.data(), 1, header.size(), file_);
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(file_);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_double(values[i]);
  }
  line += '\n';
  std::fwrite(line.data(), 1, line.size(), file_);
}

void CsvWriter::raw_row(const std::string& line) {
  std::fwrite(line.data(), 1, line.size(), file_);
  std::fwrite("\n", 1, 1, file_);
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << j.dump(2) << '\n';
}

namespace {
const json& require_field(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError("missing field " + where + "." + key);
  return *it;
}
}  // namespace

double require_number(const json& j, const std::string& key, const std::string& where) {
  const json& f = require_field(j, key, where);
  if (!f.is_number()) throw ConfigError("field " + where + "." + key + " must be a number");
  return f.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<double>();
}

long require_integer(const json& j, const std::string& key, const std::string& where) {
  const json& f = require_field(j, key, where);
  if (!f.is_number_integer()) throw ConfigError("field " + where + "." + key + " must be an integer");
  return f.get<long>();
}

long integer_or(const json& j, const std::string& key, long fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<long>();
}

std::string string_or(const json& j, const std::string& key, const std::string& fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<std::string>();
}

DispersionModel dispersion_from_json(const json& j, const std::string& where) {
  DispersionModel m;
  m.carrier_frequency = require_number(j, "carrier_frequency", where);
  m.k0 = require_number(j, "k0", where);
  m.inv_group_velocity = require_number(j, "inv_group_velocity", where);
  m.polarization = polarization_from_string(string_or(j, "polarization", "o"));
  if (j.contains("higher_terms")) {
    for (const auto& term : j["higher_terms"]) {
      if (!term.is_array() || term.size() != 2)
        throw ConfigError("field " + where + ".higher_terms must hold [order, coefficient] pairs");
      m.higher_terms.emplace_back(term[0].get<int>(), term[1].get<double>());
    }
  }
  m.validate();
  return m;
}

DispersionTable dispersion_table_from_json(const json& j, const std::string& where) {
  DispersionTable table;
  if (!j.is_array()) throw ConfigError("field " + where + " must be an array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string entry = where + "[" + std::to_string(i) + "]";
    const json& d = j[i];
    auto it = d.find("id");
    if (it == d.end()) throw ConfigError("missing field " + entry + ".id");
    table.add(it->get<std::string>(), dispersion_from_json(d, entry));
  }
  return table;
}

SuperlatticeSpec lattice_from_json(const json& j, const std::string& where) {
  SuperlatticeSpec spec;
  if (j.contains("layers")) {
    const json& layers = j["layers"];
    if (!layers.is_array()) throw ConfigError("field " + where + ".layers must be an array");
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const std::string entry = where + ".layers[" + std::to_string(i) + "]";
      LayerSpec l;
      l.length = require_number(layers[i], "length", entry);
      l.chi = require_number(layers[i], "chi", entry);
      l.material_id = string_or(layers[i], "material_id", "default");
      l.validate();
      spec.layers.push_back(l);
    }
  }
  if (j.contains("dual_grid")) {
    const json& g = j["dual_grid"];
    DualGridParams p;
    p.m_domains = require_integer(g, "m_domains", where + ".dual_grid");
    p.l1 = require_number(g, "l1", where + ".dual_grid");
    p.n_domains = integer_or(g, "n_domains", 0);
    p.l2 = number_or(g, "l2", p.l1);
    p.chi = number_or(g, "chi", 1.0);
    p.validate();
    spec.dual_grid = p;
  }
  if (j.contains("spacer_grid")) {
    const json& g = j["spacer_grid"];
    SpacerGridParams p;
    p.n_domains = require_integer(g, "n_domains", where + ".spacer_grid");
    p.l2 = require_number(g, "l2", where + ".spacer_grid");
    p.l3 = require_number(g, "l3", where + ".spacer_grid");
    p.chi = number_or(g, "chi", 1.0);
    p.validate();
    spec.spacer_grid = p;
  }
  if (spec.layers.empty() && !spec.dual_grid && !spec.spacer_grid)
    throw ConfigError("field " + where + " holds no layers, dual_grid or spacer_grid block");
  return spec;
}

WalkoffSet walkoffs_from_json(const json& j, const std::string& where) {
  WalkoffSet w;
  w.T = {require_number(j, "T_o", where), require_number(j, "T_e", where)};
  w.t = {number_or(j, "t_o", 0.0), number_or(j, "t_e", 0.0)};
  w.rho = {number_or(j, "rho_o", 0.0), number_or(j, "rho_e", 0.0)};
  w.m_domains = require_integer(j, "m_domains", where);
  w.n_domains = integer_or(j, "n_domains", 0);
  w.tau_p = require_number(j, "tau_p", where);
  return w;
}

PumpPulse pump_from_json(const json& j, const std::string& where) {
  PumpPulse p;
  p.amplitude = Complex{number_or(j, "amplitude", 1.0), 0.0};
  p.tau_p = require_number(j, "tau_p", where);
  p.omega0 = number_or(j, "omega0", 0.0);
  p.phase = number_or(j, "phase", 0.0);
  p.validate();
  return p;
}

json schmidt_to_json(const SchmidtReport& report) {
  json sigma = json::array();
  for (double s : report.singular_values) sigma.push_back(s);
  return json{{"schmidt_number", report.schmidt_number},
              {"purity", report.purity},
              {"sigma", sigma}};
}

json state_to_json(const ModeRegister& reg, const VectorXc& psi) {
  json labels = json::array(), re = json::array(), im = json::array();
  for (long i = 0; i < psi.size(); ++i) {
    labels.push_back(basis_label(reg, i));
    re.push_back(psi(i).real());
    im.push_back(psi(i).imag());
  }
  return json{{"basis_labels", labels}, {"re", re}, {"im", im}};
}

void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const json& resolved_config) {
  json manifest = {{"schema_version", kSchemaVersion},
                   {"command", command},
                   {"config", resolved_config}};
  write_json_file(out_dir / "manifest.json", manifest);
}

void write_grid_csv(const std::filesystem::path& path, const JointAmplitudeGrid& grid) {
  CsvWriter csv(path, {"nu1", "nu2", "nu3", "re", "im"});
  for (std::size_t i = 0; i < grid.nu1.size(); ++i)
    for (std::size_t j = 0; j < grid.nu2.size(); ++j)
      for (std::size_t k = 0; k < grid.nu3.size(); ++k) {
        const Complex v = grid.at(i, j, k);
        csv.row({grid.nu1[i], grid.nu2[j], grid.nu3[k], v.real(), v.imag()});
      }
}

json grid_to_json(const JointAmplitudeGrid& grid) {
  json re = json::array(), im = json::array();
  for (const Complex& v : grid.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return json{{"schema_version", kSchemaVersion},
              {"axes", {{"nu1", grid.nu1}, {"nu2", grid.nu2}, {"nu3", grid.nu3}}},
              {"shape", {grid.nu1.size(), grid.nu2.size(), grid.nu3.size()}},
              {"route", grid.route},
              {"re", re},
              {"im", im}};
}

}  // namespace cpdc
