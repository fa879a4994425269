#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "facet/cell.hpp"
#include "facet/effective.hpp"
#include "facet/hamiltonian.hpp"
#include "facet/homog.hpp"

namespace facet {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EffhamConfig {
  LatticeSpec lattice;
  GridSpec grid{1, 256};
  LadderOptions ladder;
  int jobs = 1;
};

struct OnedimConfig {
  std::vector<double> p_values{0.0, 0.25, 0.5};
  double tol = 1e-8;
  int corrector_samples = 4096;
  std::optional<double> corrector_p;
};

struct HomogenizeConfig {
  InitialDatum u0{InitialDatum::Kind::sine, 0.03};
  double T = 0.5;
  std::vector<double> eps{0.25, 0.125, 0.0625, 0.03125};
  SweepOptions sweep;
};

struct NonhomogConfig {
  InitialDatum u0{InitialDatum::Kind::sine, 0.1};
  double T = 1.2;
  std::vector<double> eps{0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  ProbeWindow window;
  int cells_per_period = 32;
  int min_cells = 1024;
  double cfl = 0.9;
};

struct VerifyConfig {
  GridSpec grid{1, 256};
  LadderOptions ladder;
  std::vector<double> p_values{0.15, 0.3, 0.45, 0.6};
  double rel_tol = 2e-2;
};

struct Config {
  int version = 1;
  Hamiltonian problem;
  int dim = 1;
  EffhamConfig effham;
  OnedimConfig onedim;
  HomogenizeConfig homogenize;
  NonhomogConfig nonhomog;
  VerifyConfig verify;
};

/// Parses and validates a config document. Unknown keys are rejected with a
/// JSON-pointer path; parse errors carry line:column positions.
Config parse_config(const std::string& text);
Config load_config(const std::filesystem::path& path);

nlohmann::json echo_problem(const Config& c);

} // namespace facet
