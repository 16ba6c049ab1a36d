// Run configuration and the CSV / JSON files written by the krotor tool.
//
// CSV files are UTF-8, start with '#'-prefixed lines recording the full
// configuration, then one header row and the data rows. JSON files carry the
// same configuration under "config".
#pragma once

#include "kickrotor/dynamics.hpp"
#include "kickrotor/edge.hpp"
#include "kickrotor/floquet.hpp"
#include "kickrotor/spectral.hpp"
#include "kickrotor/tightbinding.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kr {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string subcommand;
  RotorParams rotor;
  BuildMode mode = BuildMode::exact;
  int kgrid = 200;
  int kicks = 100;
  std::string init = "delta:0";
  std::string out = "-";
  OutputFormat format = OutputFormat::csv;

  /// Throws ConfigError.
  void validate() const;

  /// Ordered (key, value) pairs written into every output header.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

OutputFormat parse_output_format(const std::string& text);

struct SpectrumRow {
  Eigen::Index index = 0;
  Complex eigenvalue;
  Real omega = 0.0;
  std::optional<Real> k_est;
  Real centroid = 0.0;
  Real weight_low = 0.0;
  Real residual = 0.0;
};

std::vector<SpectrumRow> spectrum_rows(const Spectrum& s);

struct BandRow {
  Real k = 0.0;
  BandEnergies bands;
};

/// kgrid points evenly spaced on [0, pi/3] (k = 0 alone when kgrid == 1).
std::vector<BandRow> band_rows(Real kick, int kgrid);

/// Initial state from "delta:L", "gaussian:center,width" or "edge". The edge
/// state needs the spectrum; throws ConfigError on an unknown spec and
/// NumericalError when no edge state is found.
WaveState parse_initial_state(const std::string& spec, const FloquetMatrix& t);

struct EdgeReport {
  EdgeSolution analytic;
  std::optional<EdgeDetection> numeric;
  CVector numeric_state;  // empty when detection failed
};

EdgeReport edge_report(const RunConfig& config);

/// Numeric formatting used by every CSV writer (shortest round-trip form).
std::string format_number(Real x);

void write_spectrum(std::ostream& os, const RunConfig& config, const std::vector<SpectrumRow>& rows);
void write_bands(std::ostream& os, const RunConfig& config, const std::vector<BandRow>& rows);
void write_edge_report(std::ostream& os, const RunConfig& config, const EdgeReport& report);
void write_trajectory(std::ostream& os, const RunConfig& config, const Trajectory& traj);

}  // namespace kr
