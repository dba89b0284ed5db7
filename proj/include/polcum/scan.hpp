#pragma once

#include <string>
#include <vector>

#include "polcum/lattice_models.hpp"

namespace polcum {

enum class ScanCommand {
  FermiObc,
  FermiPbc,
  Ssh,
  AaVariance,
  AaFidelity,
  Zeckendorf,
  Berry,
};

const char* scan_command_name(ScanCommand c);

/// Parameter grids and output wiring for one batch scan. Only the fields a
/// subcommand uses are consulted; grids it sweeps must be non-empty.
struct ScanConfig {
  ScanCommand command = ScanCommand::FermiPbc;

  std::vector<int> sites_list;
  std::vector<int> particles_list;
  std::vector<int> mu_list = {1};
  std::vector<double> w_list;   // potential strengths (grids come expanded)
  std::vector<double> dj_list;  // hopping alternation values
  double j_mean = 1.0;
  int fib_index = 15;
  double delta = 0.01;
  double log_threshold = 1e-12;
  std::string scheme = "both";  // fdd | fdld | both
  OccupationMode mode = OccupationMode::Numeric;
  std::string berry_scenario = "encircling";  // encircling | trivial | degenerate
  std::vector<int> m_list = {200};

  int threads = 1;
  bool deterministic = true;  // no seeded randomness anywhere in a scan
  std::string out_csv;
  std::string out_manifest;   // empty: derived from out_csv
  std::string out_plot;       // empty: no plot script

  void validate() const;
};

/// Scan output: a fixed-order table of pre-formatted cells. Failed grid
/// points carry the NA sentinel plus an error status; they never abort the
/// scan. Cell formatting uses 17 significant digits, so the table is
/// byte-stable for a given config regardless of thread count.
struct ScanResult {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string manifest_json;
};

ScanResult run_scan(const ScanConfig& cfg);

std::string to_csv(const ScanResult& result);

/// Writes the CSV, the JSON manifest and (when requested) a plot script
/// rendering the CSV.
void write_outputs(const ScanConfig& cfg, const ScanResult& result);

}  // namespace polcum
