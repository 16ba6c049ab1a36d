// krotor: Floquet spectra, bands, edge states and kick dynamics of the
// three-dimensional kicked rotor at fractional resonance.
#include "kickrotor/report.hpp"
#include "kickrotor/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Options {
  kr::Real kick = 0.3;
  std::string tau_frac = "1/3";
  int l_max = 150;
  std::string mode = "exact";
  int quad_order = 0;
  int kgrid = 200;
  int kicks = 100;
  std::string init = "delta:0";
  std::string out = "-";
  std::string format = "csv";
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.kick, "kick strength P")->capture_default_str();
  sub->add_option("--tau-frac", o.tau_frac, "tau = 4 pi * a/b, given as a/b")->capture_default_str();
  sub->add_option("--lmax", o.l_max, "basis truncation l_max")->capture_default_str();
  sub->add_option("--mode", o.mode, "exact | perturbative")->capture_default_str();
  sub->add_option("--quad-order", o.quad_order, "Gauss-Legendre order (0 = max(64, l_max+16))")->capture_default_str();
  sub->add_option("--out", o.out, "output path, - for stdout")->capture_default_str();
  sub->add_option("--format", o.format, "csv | json")->capture_default_str();
}

kr::RunConfig to_config(const std::string& name, const Options& o) {
  kr::RunConfig c;
  c.subcommand = name;
  c.rotor.kick = o.kick;
  c.rotor.tau_frac = kr::Rational::parse(o.tau_frac);
  c.rotor.l_max = o.l_max;
  c.rotor.quad_order = o.quad_order;
  c.mode = kr::parse_build_mode(o.mode);
  c.kgrid = o.kgrid;
  c.kicks = o.kicks;
  c.init = o.init;
  c.out = o.out;
  c.format = kr::parse_output_format(o.format);
  c.validate();
  return c;
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw kr::ConfigError("cannot open output file '" + path + "'");
  fn(file);
}

int run(const std::string& name, const Options& o) {
  const kr::RunConfig config = to_config(name, o);

  if (name == "spectrum") {
    const auto rows = kr::spectrum_rows(kr::eigendecompose(kr::build_floquet(config.rotor, config.mode)));
    with_output(config.out, [&](std::ostream& os) { kr::write_spectrum(os, config, rows); });
    return 0;
  }
  if (name == "bands") {
    if (!(config.rotor.kick > 0.0)) throw kr::ConfigError("bands requires P > 0");
    const auto rows = kr::band_rows(config.rotor.kick, config.kgrid);
    with_output(config.out, [&](std::ostream& os) { kr::write_bands(os, config, rows); });
    return 0;
  }
  if (name == "edge") {
    if (!(config.rotor.kick > 0.0)) throw kr::ConfigError("edge requires P > 0");
    const kr::EdgeReport report = kr::edge_report(config);
    with_output(config.out, [&](std::ostream& os) { kr::write_edge_report(os, config, report); });
    return 0;
  }
  if (name == "propagate") {
    const kr::FloquetMatrix t = kr::build_floquet(config.rotor, config.mode);
    const kr::WaveState start = kr::parse_initial_state(config.init, t);
    const kr::Trajectory traj = kr::propagate(start, t, config.kicks);
    if (traj.truncation_warning)
      std::cerr << "krotor: warning: centroid passed l_max-20 at kick " << *traj.truncation_warning
                << "; results beyond it feel the truncation\n";
    with_output(config.out, [&](std::ostream& os) { kr::write_trajectory(os, config, traj); });
    return 0;
  }
  // verify: the user's build settings must be usable before anything runs
  kr::build_floquet(config.rotor, config.mode);
  const kr::VerifyOptions opts{config.rotor.l_max, config.rotor.quad_order};
  auto results = kr::property_checks(opts);
  auto acceptance = kr::acceptance_checks(opts);
  results.insert(results.end(), acceptance.begin(), acceptance.end());
  with_output(config.out, [&](std::ostream& os) { kr::print_results(os, results); });
  return kr::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet transfer-matrix simulator for the 3D kicked rotor"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "eigenstates of the truncated Floquet matrix");
  auto* bands = app.add_subcommand("bands", "perturbative band energies on a k grid");
  auto* edge = app.add_subcommand("edge", "analytic vs numeric edge state (JSON)");
  auto* prop = app.add_subcommand("propagate", "repeated kicks from an initial state");
  auto* verify = app.add_subcommand("verify", "run the invariant and acceptance suite");
  for (auto* sub : {spectrum, bands, edge, prop, verify}) add_common(sub, o);
  bands->add_option("--kgrid", o.kgrid, "number of k points on [0, pi/3]")->capture_default_str();
  prop->add_option("--kicks", o.kicks, "number of kicks")->capture_default_str();
  prop->add_option("--init", o.init, "delta:L | gaussian:center,width | edge")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const kr::ConfigError& e) {
    std::cerr << "krotor: config error: " << e.what() << "\n";
    return 2;
  } catch (const kr::NumericalError& e) {
    std::cerr << "krotor: numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "krotor: error: " << e.what() << "\n";
    return 3;
  }
}
