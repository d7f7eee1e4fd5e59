// problem_io.hpp - file ingestion for the CLI: CSV problem files with named
// columns, a JSON sidecar for verification configs, and JSON report output.
// All floating-point output is printed with 17 significant digits so files
// round-trip exactly.

#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "infogeo/measure.hpp"
#include "infogeo/verify.hpp"

namespace infogeo {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double parse_double(const std::string& cell, const std::string& where) {
  if (cell.empty()) throw InputError("empty cell in " + where);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &consumed);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + cell + "' in " + where);
  }
  if (consumed != cell.size()) {
    throw InputError("trailing characters in '" + cell + "' in " + where);
  }
  if (!std::isfinite(value)) {
    throw InputError("non-finite value '" + cell + "' in " + where);
  }
  return value;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

// A parsed problem file: one row per atom, columns drawn from the fixed
// vocabulary weight,p,q,u,v,q1,q2.
struct ProblemFile {
  std::optional<Vec> weight, p, q, u, v, q1, q2;

  static ProblemFile parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw InputError("empty input file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = detail::split_csv(line);

    ProblemFile pf;
    std::vector<Vec*> slots;
    for (const std::string& name : header) {
      std::optional<Vec>* slot = pf.slot(name);
      if (slot == nullptr) throw InputError("unknown column '" + name + "'");
      if (slot->has_value()) throw InputError("duplicate column '" + name + "'");
      slot->emplace();
      slots.push_back(&slot->value());
    }
    if (slots.empty()) throw InputError("no columns in " + path);

    std::size_t row = 1;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (detail::trim(line).empty()) continue;
      ++row;
      const std::vector<std::string> cells = detail::split_csv(line);
      if (cells.size() != slots.size()) {
        throw InputError("row " + std::to_string(row) + " has " +
                         std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(slots.size()));
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        slots[i]->push_back(detail::parse_double(
            cells[i], "row " + std::to_string(row) + " column '" +
                          header[i] + "'"));
      }
    }
    if (slots.front()->empty()) throw InputError("no data rows in " + path);
    return pf;
  }

  std::optional<Vec>* slot(const std::string& name) {
    if (name == "weight") return &weight;
    if (name == "p") return &p;
    if (name == "q") return &q;
    if (name == "u") return &u;
    if (name == "v") return &v;
    if (name == "q1") return &q1;
    if (name == "q2") return &q2;
    return nullptr;
  }

  const Vec& require(const std::string& name) const {
    const std::optional<Vec>* slot = const_cast<ProblemFile*>(this)->slot(name);
    if (slot == nullptr || !slot->has_value()) {
      throw InputError("missing required column '" + name + "'");
    }
    return slot->value();
  }

  MeasureSpace space() const {
    try {
      return MeasureSpace(require("weight"));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }

  Density density(const std::string& col) const {
    try {
      return Density(space(), require(col));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("column '") + col + "': " + e.what());
    }
  }

  TangentVector tangent(const Density& base, const std::string& col) const {
    try {
      return TangentVector(base, require(col));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("column '") + col + "': " + e.what());
    }
  }
};

// Verification config sidecar. Flat keys, unknown keys rejected.
inline VerifyConfig parse_verify_config(const nlohmann::json& j) {
  VerifyConfig cfg;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "trials") {
        const long t = value.get<long>();
        if (t < 0) throw InputError("trials must be >= 0");
        cfg.trials_override = t;
      } else if (key == "tol") {
        const double tol = value.get<double>();
        if (!(tol > 0.0)) throw InputError("tol must be > 0");
        cfg.tol_override = tol;
      } else if (key == "atoms_min") {
        cfg.atoms_min = value.get<int>();
      } else if (key == "atoms_max") {
        cfg.atoms_max = value.get<int>();
      } else {
        throw InputError("unknown config key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw InputError("config key '" + key + "': " + e.what());
    }
  }
  if (cfg.atoms_min < 2 || cfg.atoms_max < cfg.atoms_min) {
    throw InputError("need 2 <= atoms_min <= atoms_max");
  }
  return cfg;
}

inline VerifyConfig load_verify_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  return parse_verify_config(j);
}

inline std::string report_to_json(const VerificationReport& report) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"seed\": " << report.seed << ",\n";
  out << "  \"overall_pass\": " << (report.overall_pass ? "true" : "false")
      << ",\n";
  out << "  \"no_trials\": " << (report.no_trials ? "true" : "false") << ",\n";
  out << "  \"wall_clock_ms\": " << format17(report.wall_clock_ms) << ",\n";
  out << "  \"properties\": [";
  for (std::size_t i = 0; i < report.properties.size(); ++i) {
    const PropertyRecord& rec = report.properties[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"name\": \"" << detail::json_escape(rec.name)
        << "\", \"anchor\": \"" << detail::json_escape(rec.anchor)
        << "\", \"trials\": " << rec.trials
        << ", \"max_error\": " << format17(rec.max_error)
        << ", \"tolerance\": " << format17(rec.tolerance)
        << ", \"pass\": " << (rec.pass ? "true" : "false") << "}";
  }
  out << (report.properties.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

}  // namespace infogeo
