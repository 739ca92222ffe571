// Command-line front end: time sweeps of the squeezing parameters (CSV),
// closed-form moment evaluation, and the built-in verification suite.
//
// Exit codes: 0 success, 1 configuration error, 2 verification failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "spinsqueeze/spinsqueeze.hpp"

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int run_moments_command(int two_j, const std::string& eta_text, const std::string& f_expr,
                        double t, int k) {
  using spinsqueeze::format_eta;
  using spinsqueeze::format_float;

  const spinsqueeze::Complex eta = spinsqueeze::parse_eta(eta_text);
  const spinsqueeze::NonlinearFunction F = spinsqueeze::NonlinearFunction::parse(f_expr);
  if (two_j < 0) throw ConfigError("--two-j must be nonnegative");
  if (k < 0) throw ConfigError("--k must be nonnegative");

  const spinsqueeze::MomentSet moments = spinsqueeze::scs_number_moments(two_j, eta);
  const Eigen::Vector3d means = spinsqueeze::scs_spin_means(two_j, eta);
  const auto [var_x, var_y] = spinsqueeze::scs_variances_xy(two_j, eta);

  std::cout << "two_j = " << two_j << "\n"
            << "eta = " << format_eta(eta) << "\n"
            << "f = " << F.source() << "\n"
            << "t = " << format_float(t) << "\n"
            << "k = " << k << "\n"
            << "mean_n = " << format_float(moments.mean_n) << "\n"
            << "mean_n2 = " << format_float(moments.mean_n2) << "\n"
            << "var_n = " << format_float(moments.var_n) << "\n"
            << "factorial_moment = " << format_float(spinsqueeze::factorial_moment(two_j, eta, k))
            << "\n"
            << "jminus_k_scs = " << format_eta(spinsqueeze::scs_jminus_k(two_j, eta, k)) << "\n"
            << "jminus_k_nlscs = "
            << format_eta(spinsqueeze::nlscs_jminus_k(two_j, eta, F, t, k)) << "\n"
            << "mean_jx = " << format_float(means.x()) << "\n"
            << "mean_jy = " << format_float(means.y()) << "\n"
            << "mean_jz = " << format_float(means.z()) << "\n"
            << "var_jx = " << format_float(var_x) << "\n"
            << "var_jy = " << format_float(var_y) << "\n";
  try {
    std::cout << "xi2_z_nlscs = " << format_float(spinsqueeze::nlscs_xi_z(two_j, eta, F, t))
              << "\n";
  } catch (const spinsqueeze::undefined_direction_error&) {
    std::cout << "xi2_z_nlscs = undef\n";
  }
  return 0;
}

int run_verify_command() {
  const spinsqueeze::VerificationReport report = spinsqueeze::run_verification();
  std::cout << spinsqueeze::format_report(report);
  return report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin coherent state squeezing toolkit"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand(
      "sweep", "time sweep of xi^2 over [t-min, t-max]; emits CSV (t,xi2_x,xi2_y,xi2_z)");
  std::string config_path, eta_text, f_expr, axes_text, out_path = "-";
  int two_j = 10, steps = 601;
  double t_min = 0.0, t_max = 3.0;
  sweep->add_option("--config", config_path, "key = value config file; flags override it");
  auto* opt_two_j = sweep->add_option("--two-j", two_j, "2j (default 10, i.e. j = 5)");
  auto* opt_eta =
      sweep->add_option("--eta", eta_text, "coherent parameter, RE or RE+IMi / RE-IMi");
  auto* opt_f = sweep->add_option("--f", f_expr, "Hamiltonian F(N), e.g. 'N^2' or 'sin(2*N)'");
  auto* opt_t_min = sweep->add_option("--t-min", t_min, "sweep start (default 0)");
  auto* opt_t_max = sweep->add_option("--t-max", t_max, "sweep end (default 3)");
  auto* opt_steps = sweep->add_option("--steps", steps, "grid points (default 601)");
  auto* opt_axes = sweep->add_option("--axes", axes_text, "axes subset, e.g. xy (default xyz)");
  auto* opt_out = sweep->add_option("--out", out_path, "output path, '-' for stdout");

  auto* moments = app.add_subcommand("moments", "closed-form moments for one (j, eta, F, t, k)");
  int m_two_j = 10, m_k = 1;
  std::string m_eta = "0.1", m_f = "N^2";
  double m_t = 0.0;
  moments->add_option("--two-j", m_two_j, "2j");
  moments->add_option("--eta", m_eta, "coherent parameter");
  moments->add_option("--f", m_f, "Hamiltonian F(N)");
  moments->add_option("--t", m_t, "evolution time");
  moments->add_option("--k", m_k, "ladder power k");

  auto* verify = app.add_subcommand("verify", "run the built-in acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sweep->parsed()) {
      spinsqueeze::SweepConfig config;
      if (!config_path.empty()) {
        std::ifstream file(config_path);
        if (!file) throw ConfigError("cannot open config file '" + config_path + "'");
        const spinsqueeze::SweepOverrides overrides = spinsqueeze::read_sweep_config(file);
        spinsqueeze::apply_overrides(config, overrides);
        if (overrides.out && opt_out->count() == 0) out_path = *overrides.out;
      }
      if (opt_two_j->count() != 0) config.two_j = two_j;
      if (opt_eta->count() != 0) config.eta = spinsqueeze::parse_eta(eta_text);
      if (opt_f->count() != 0) config.f_expr = f_expr;
      if (opt_t_min->count() != 0) config.t_min = t_min;
      if (opt_t_max->count() != 0) config.t_max = t_max;
      if (opt_steps->count() != 0) config.steps = steps;
      if (opt_axes->count() != 0) config.axes = spinsqueeze::parse_axes(axes_text);

      const std::vector<spinsqueeze::SweepRow> rows = spinsqueeze::run_sweep(config);
      if (out_path == "-") {
        spinsqueeze::write_sweep_csv(std::cout, config.axes, rows);
      } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
        spinsqueeze::write_sweep_csv(out, config.axes, rows);
      }
      return 0;
    }
    if (moments->parsed()) return run_moments_command(m_two_j, m_eta, m_f, m_t, m_k);
    if (verify->parsed()) return run_verify_command();
  } catch (const spinsqueeze::evaluation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {  // parse_error and relatives
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
