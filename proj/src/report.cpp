#include "kickrotor/report.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace kr {

using nlohmann::ordered_json;

void RunConfig::validate() const {
  rotor.validate();
  if (rotor.l_max > 1999) throw ConfigError("l_max must be <= 1999 (dense eigensolver budget)");
  if (kgrid < 1) throw ConfigError("kgrid must be >= 1");
  if (kicks < 1) throw ConfigError("kicks must be >= 1");
}

std::vector<std::pair<std::string, std::string>> RunConfig::describe() const {
  return {
      {"subcommand", subcommand},
      {"P", format_number(rotor.kick)},
      {"tau_frac", rotor.tau_frac.str()},
      {"l_max", std::to_string(rotor.l_max)},
      {"mode", to_string(mode)},
      {"quad_order", std::to_string(rotor.effective_quad_order())},
      {"kgrid", std::to_string(kgrid)},
      {"kicks", std::to_string(kicks)},
      {"init", init},
      {"format", format == OutputFormat::csv ? "csv" : "json"},
  };
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("unknown format '" + text + "' (expected csv|json)");
}

std::string format_number(Real x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::vector<SpectrumRow> spectrum_rows(const Spectrum& s) {
  std::vector<SpectrumRow> rows;
  rows.reserve(s.size());
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    SpectrumRow r;
    r.index = j;
    r.eigenvalue = s.eigenvalues(j);
    r.omega = s.phases(j);
    const CVector v = s.state(j);
    if (v.size() >= 30) r.k_est = assign_wavenumber(v);
    r.centroid = centroid(v);
    r.weight_low = low_weight(v, 2);
    r.residual = s.residuals(j);
    rows.push_back(r);
  }
  return rows;
}

std::vector<BandRow> band_rows(Real kick, int kgrid) {
  std::vector<BandRow> rows;
  rows.reserve(kgrid);
  for (int i = 0; i < kgrid; ++i) {
    const Real k = kgrid == 1 ? 0.0 : (kPi / 3.0) * Real(i) / Real(kgrid - 1);
    rows.push_back({k, band_energies(k, kick)});
  }
  return rows;
}

WaveState parse_initial_state(const std::string& spec, const FloquetMatrix& t) {
  const int dim = int(t.dim());
  auto bad = [&] { return ConfigError("unknown init spec '" + spec + "' (delta:L | gaussian:center,width | edge)"); };
  if (spec == "edge") {
    const Spectrum s = eigendecompose(t);
    const auto edge = detect_edge_state(s);
    if (!edge) throw NumericalError("init=edge: no edge state detected");
    WaveState w;
    w.amplitudes = s.state(edge->index);
    return w;
  }
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw bad();
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  try {
    if (kind == "delta") {
      std::size_t used = 0;
      const int l = std::stoi(args, &used);
      if (used != args.size() || l < 0 || l >= dim) throw bad();
      return WaveState::delta(dim, l);
    }
    if (kind == "gaussian") {
      const auto comma = args.find(',');
      if (comma == std::string::npos) throw bad();
      std::size_t u1 = 0, u2 = 0;
      const std::string a = args.substr(0, comma), b = args.substr(comma + 1);
      const Real center = std::stod(a, &u1);
      const Real width = std::stod(b, &u2);
      if (u1 != a.size() || u2 != b.size() || !(width > 0.0)) throw bad();
      return WaveState::gaussian(dim, center, width);
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  throw bad();
}

EdgeReport edge_report(const RunConfig& config) {
  EdgeReport r;
  r.analytic = solve_edge(config.rotor.kick);
  const FloquetMatrix t = build_floquet(config.rotor, config.mode);
  const Spectrum s = eigendecompose(t);
  r.numeric = detect_edge_state(s);
  if (r.numeric) r.numeric_state = s.state(r.numeric->index);
  return r;
}

namespace {

void write_csv_header(std::ostream& os, const RunConfig& config) {
  os << "# krotor " << config.subcommand << "\n";
  for (const auto& [key, value] : config.describe()) os << "# " << key << "=" << value << "\n";
}

ordered_json config_json(const RunConfig& config) {
  ordered_json j;
  for (const auto& [key, value] : config.describe()) j[key] = value;
  return j;
}

ordered_json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json number_or_null(Real x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

}  // namespace

void write_spectrum(std::ostream& os, const RunConfig& config, const std::vector<SpectrumRow>& rows) {
  if (config.format == OutputFormat::json) {
    ordered_json doc;
    doc["config"] = config_json(config);
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"index", r.index},
                     {"re_E", r.eigenvalue.real()},
                     {"im_E", r.eigenvalue.imag()},
                     {"omega", r.omega},
                     {"k_est", r.k_est ? ordered_json(*r.k_est) : ordered_json(nullptr)},
                     {"centroid_l", r.centroid},
                     {"weight_l_le_2", r.weight_low},
                     {"residual", r.residual}});
    }
    doc["rows"] = std::move(arr);
    os << doc.dump(2) << "\n";
    return;
  }
  write_csv_header(os, config);
  os << "index,re_E,im_E,omega,k_est,centroid_l,weight_l_le_2,residual\n";
  for (const auto& r : rows) {
    os << r.index << ',' << format_number(r.eigenvalue.real()) << ',' << format_number(r.eigenvalue.imag()) << ','
       << format_number(r.omega) << ',' << (r.k_est ? format_number(*r.k_est) : std::string()) << ','
       << format_number(r.centroid) << ',' << format_number(r.weight_low) << ',' << format_number(r.residual)
       << "\n";
  }
}

void write_bands(std::ostream& os, const RunConfig& config, const std::vector<BandRow>& rows) {
  if (config.format == OutputFormat::json) {
    ordered_json doc;
    doc["config"] = config_json(config);
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"k", r.k},
                     {"re_E1_plus", r.bands.E1_plus.real()},
                     {"im_E1_plus", r.bands.E1_plus.imag()},
                     {"re_E1_minus", r.bands.E1_minus.real()},
                     {"im_E1_minus", r.bands.E1_minus.imag()},
                     {"re_E20", r.bands.E20.real()},
                     {"im_E20", r.bands.E20.imag()}});
    }
    doc["rows"] = std::move(arr);
    os << doc.dump(2) << "\n";
    return;
  }
  write_csv_header(os, config);
  os << "k,re_E1_plus,im_E1_plus,re_E1_minus,im_E1_minus,re_E20,im_E20\n";
  for (const auto& r : rows) {
    os << format_number(r.k) << ',' << format_number(r.bands.E1_plus.real()) << ','
       << format_number(r.bands.E1_plus.imag()) << ',' << format_number(r.bands.E1_minus.real()) << ','
       << format_number(r.bands.E1_minus.imag()) << ',' << format_number(r.bands.E20.real()) << ','
       << format_number(r.bands.E20.imag()) << "\n";
  }
}

void write_edge_report(std::ostream& os, const RunConfig& config, const EdgeReport& report) {
  const EdgeSolution& a = report.analytic;
  ordered_json doc;
  doc["config"] = config_json(config);
  doc["status"] = report.numeric ? "ok" : "no edge state";
  doc["outside_perturbative_validity"] = !a.perturbative;
  doc["analytic"] = {{"E_edge", complex_json(a.energy)},
                     {"gamma_edge", complex_json(a.gamma)},
                     {"k_edge", complex_json(a.wavenumber)},
                     {"decay_rate", a.decay_rate},
                     {"t00", complex_json(a.t00)},
                     {"t01", complex_json(a.t01)},
                     {"t10", complex_json(a.t10)},
                     {"t11", complex_json(a.t11)}};
  if (report.numeric) {
    const EdgeDetection& n = *report.numeric;
    doc["numeric"] = {{"index", n.index},
                      {"eigenvalue", complex_json(n.eigenvalue)},
                      {"weight_low", n.weight_low},
                      {"fitted_slope", number_or_null(n.fitted_slope)}};
    doc["deltas"] = {{"energy_abs", std::abs(n.eigenvalue - a.energy)},
                     {"slope_rel", number_or_null(std::abs(n.fitted_slope + a.decay_rate) / a.decay_rate)}};
    const int l_max = int(report.numeric_state.size()) - 1;
    const RVector model = edge_profile(l_max, a.wavenumber);
    ordered_json ls = ordered_json::array(), num = ordered_json::array(), mod = ordered_json::array();
    for (int l = 0; l <= l_max; ++l) {
      ls.push_back(l);
      num.push_back(std::abs(report.numeric_state(l)));
      mod.push_back(model(l));
    }
    doc["profile"] = {{"l", ls}, {"numeric_abs", num}, {"model", mod}};
  } else {
    doc["numeric"] = nullptr;
    doc["deltas"] = nullptr;
  }
  os << doc.dump(2) << "\n";
}

void write_trajectory(std::ostream& os, const RunConfig& config, const Trajectory& traj) {
  std::optional<Real> exponent;
  if (!traj.records.empty() && traj.records.back().kick >= 40) {
    try {
      exponent = growth_exponent(traj, 5, 40);
    } catch (const std::invalid_argument&) {
    }
  }
  if (config.format == OutputFormat::json) {
    ordered_json doc;
    doc["config"] = config_json(config);
    ordered_json arr = ordered_json::array();
    for (const auto& r : traj.records)
      arr.push_back({{"n", r.kick}, {"energy", r.energy}, {"norm", r.norm}, {"p_l0", r.p_l0}, {"centroid", r.centroid}});
    doc["rows"] = std::move(arr);
    doc["growth_exponent_5_40"] = exponent ? ordered_json(*exponent) : ordered_json(nullptr);
    doc["truncation_warning_kick"] =
        traj.truncation_warning ? ordered_json(*traj.truncation_warning) : ordered_json(nullptr);
    os << doc.dump(2) << "\n";
    return;
  }
  write_csv_header(os, config);
  os << "n,energy,norm,p_l0,centroid\n";
  for (const auto& r : traj.records)
    os << r.kick << ',' << format_number(r.energy) << ',' << format_number(r.norm) << ','
       << format_number(r.p_l0) << ',' << format_number(r.centroid) << "\n";
  if (exponent) os << "# growth_exponent_5_40=" << format_number(*exponent) << "\n";
  if (traj.truncation_warning)
    os << "# warning=centroid exceeded l_max-20 at kick " << *traj.truncation_warning << "\n";
}

}  // namespace kr
