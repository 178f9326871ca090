// Experiment CLI: each subcommand runs one of the library's computations,
// writes a machine-readable table, and encodes its internal consistency
// checks in the exit status (0 = checks passed, 1 = a check failed,
// 2 = usage or I/O error). Output is deterministic: identical configuration
// gives byte-identical output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "g2d/designs.hpp"
#include "g2d/fock.hpp"
#include "g2d/gaussian.hpp"
#include "g2d/symplectic.hpp"

namespace {

using json = nlohmann::json;
using Cell = std::variant<double, long long, std::string>;

constexpr int kDimGuardrail = 512;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cell_to_csv(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
  if (std::holds_alternative<long long>(cell)) return std::to_string(std::get<long long>(cell));
  return std::get<std::string>(cell);
}

json cell_to_json(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) {
    const double x = std::get<double>(cell);
    if (std::isnan(x)) return nullptr;  // JSON has no NaN
    return x;
  }
  if (std::holds_alternative<long long>(cell)) return std::get<long long>(cell);
  return std::get<std::string>(cell);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CheckList {
  std::vector<std::pair<std::string, bool>> entries;

  void add(const std::string& name, bool passed) { entries.emplace_back(name, passed); }
  bool all_passed() const {
    for (const auto& [name, ok] : entries)
      if (!ok) return false;
    return true;
  }
};

void write_output(const std::string& command, const json& params, const Table& table,
                  const CheckList& checks, const std::string& out_path,
                  const std::string& format) {
  std::ostringstream body;
  if (format == "csv") {
    for (size_t c = 0; c < table.columns.size(); ++c)
      body << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
    body << "\n";
    for (const auto& row : table.rows) {
      for (size_t c = 0; c < row.size(); ++c)
        body << cell_to_csv(row[c]) << (c + 1 < row.size() ? "," : "");
      body << "\n";
    }
  } else {
    json doc;
    doc["command"] = command;
    doc["params"] = params;
    doc["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) {
      json jrow = json::array();
      for (const auto& cell : row) jrow.push_back(cell_to_json(cell));
      rows.push_back(std::move(jrow));
    }
    doc["rows"] = std::move(rows);
    json jchecks;
    for (const auto& [name, ok] : checks.entries) jchecks[name] = ok;
    doc["checks"] = std::move(jchecks);
    body << doc.dump(2) << "\n";
  }

  if (out_path == "-") {
    std::cout << body.str();
    if (!std::cout) throw std::runtime_error("failed writing to stdout");
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output path: " + out_path);
    file << body.str();
    if (!file) throw std::runtime_error("failed writing output path: " + out_path);
  }
}

void report_checks(const std::string& command, const CheckList& checks) {
  for (const auto& [name, ok] : checks.entries)
    std::cerr << command << " check [" << (ok ? "ok" : "FAILED") << "] " << name << "\n";
}

// ---------------------------------------------------------------------------

int cmd_overlaps(int kmax, const std::vector<double>& svals, const std::string& out,
                 const std::string& format) {
  Table table;
  table.columns = {"k", "s", "energy", "p_closed", "p_quadrature", "abs_diff"};
  double worst = 0.0;
  for (double s : svals) {
    const double energy = g2d::symplectic::energy_from_s(s);
    for (int k = 0; k <= kmax; ++k) {
      const double closed = g2d::gaussian::fock_overlap_closed(k, energy);
      const double quad = g2d::gaussian::fock_overlap_quadrature(k, s);
      const double diff = std::abs(closed - quad);
      worst = std::max(worst, diff);
      table.rows.push_back({static_cast<long long>(k), s, energy, closed, quad, diff});
    }
  }
  CheckList checks;
  checks.add("closed and quadrature routes agree to 1e-9", worst <= 1e-9);
  write_output("overlaps", {{"kmax", kmax}, {"svals", svals}}, table, checks, out, format);
  report_checks("overlaps", checks);
  std::cerr << "overlaps: max |closed - quadrature| = " << format_double(worst) << "\n";
  return checks.all_passed() ? 0 : 1;
}

int cmd_measure(double smin, double smax, double step, const std::string& out,
                const std::string& format) {
  // The (s, theta) chart is degenerate at s = 1 (density and Jacobian both
  // vanish); that row is emitted with nan check columns and excluded from
  // the constant-density assertions, which apply for |s-1| >= 1e-3.
  std::vector<double> grid;
  for (double s = smin; s <= smax + 1e-12; s += step) grid.push_back(s);
  if (smin < 1.0 && smax > 1.0) {
    bool has_one = false;
    for (double& s : grid)
      if (std::abs(s - 1.0) < 1e-12) {
        s = 1.0;
        has_one = true;
      }
    if (!has_one) {
      grid.push_back(1.0);
      std::sort(grid.begin(), grid.end());
    }
  }

  Table table;
  table.columns = {"s",          "density_s",     "energy",
                   "denergy_ds", "denergy_ds_fd", "density_energy_check",
                   "density_energy_check_fd"};
  bool analytic_ok = true, fd_ok = true, fd_jacobian_ok = true;
  for (double s : grid) {
    const double density = g2d::symplectic::invariant_density_s_theta(s);
    const double energy = g2d::symplectic::energy_from_s(s);
    const double jac = g2d::symplectic::denergy_ds(s);
    const double h = 1e-5 * std::max(1.0, s);
    const double jac_fd =
        (g2d::symplectic::energy_from_s(s + h) - g2d::symplectic::energy_from_s(s - h)) /
        (2.0 * h);
    const bool degenerate = std::abs(s - 1.0) < 1e-3;
    const double check = degenerate ? std::nan("") : density / std::abs(jac);
    const double check_fd = degenerate ? std::nan("") : density / std::abs(jac_fd);
    if (!degenerate) {
      analytic_ok = analytic_ok && std::abs(check - 4.0) <= 1e-9;
      fd_ok = fd_ok && std::abs(check_fd - 4.0) <= 1e-7;
      fd_jacobian_ok =
          fd_jacobian_ok && std::abs(jac_fd - jac) <= 1e-7 * std::max(1.0, std::abs(jac));
    }
    table.rows.push_back({s, density, energy, jac, jac_fd, check, check_fd});
  }
  CheckList checks;
  checks.add("density in (E,theta) coordinates is 4 to 1e-9 (analytic Jacobian)", analytic_ok);
  checks.add("density in (E,theta) coordinates is 4 to 1e-7 (finite differences)", fd_ok);
  checks.add("finite-difference Jacobian matches analytic to 1e-7", fd_jacobian_ok);
  write_output("measure", {{"smin", smin}, {"smax", smax}, {"grid_step", step}}, table, checks,
               out, format);
  report_checks("measure", checks);
  return checks.all_passed() ? 0 : 1;
}

int cmd_twirl(int dim, double radius, int fock_level, const std::string& dump_op,
              const std::string& out, const std::string& format) {
  std::vector<double> radii;
  for (double r = 1.0; r <= radius + 1e-12; r *= 2.0) radii.push_back(r);
  if (radii.empty() || radii.back() < radius - 1e-12) radii.push_back(radius);

  Table table;
  table.columns = {"radius", "mean_diagonal", "diag_spread", "offdiag_max"};
  const g2d::fock::FockVector fiducial = g2d::fock::basis_state(dim, fock_level);
  g2d::designs::TruncatedOperator last;
  bool monotone = true;
  double previous_spread = std::numeric_limits<double>::infinity();
  double final_offdiag = 0.0;
  for (double r : radii) {
    last = g2d::designs::hw_partial_twirl(fiducial, r, dim);
    const auto metrics = g2d::designs::twirl_metrics(last, dim - 1);
    monotone = monotone && metrics.diagonal_spread <= previous_spread * (1.0 + 1e-12);
    previous_spread = metrics.diagonal_spread;
    final_offdiag = metrics.offdiagonal_max;
    table.rows.push_back(
        {r, metrics.mean_diagonal, metrics.diagonal_spread, metrics.offdiagonal_max});
  }
  CheckList checks;
  checks.add("diagonal spread nonincreasing along the radius schedule", monotone);
  checks.add("final off-diagonal maximum below 1e-6", final_offdiag < 1e-6);
  write_output("twirl", {{"dim", dim}, {"radius", radius}, {"fock", fock_level}}, table, checks,
               out, format);
  if (!dump_op.empty()) {
    Table op_table;
    op_table.columns = {"row", "col", "re", "im"};
    for (int i = 0; i < last.rows(); ++i)
      for (int j = 0; j < last.cols(); ++j)
        op_table.rows.push_back({static_cast<long long>(i), static_cast<long long>(j),
                                 last(i, j).real(), last(i, j).imag()});
    write_output("twirl.operator", {{"dim", dim}, {"radius", radius}}, op_table, CheckList{},
                 dump_op, "csv");
  }
  report_checks("twirl", checks);
  return checks.all_passed() ? 0 : 1;
}

int cmd_spectrum(double emax, double step, int kmax, bool heterodyne, const std::string& out,
                 const std::string& format) {
  Table table;
  table.columns = {"k", "a", "ratio", "w", "gamma_coeff", "sqrtop_bound", "heterodyne_profile"};
  CheckList checks;
  const Eigen::VectorXd profile = g2d::designs::heterodyne_limit_spectrum(kmax);
  json params{{"kmax", kmax}, {"heterodyne", heterodyne}};

  if (heterodyne) {
    for (int k = 0; k <= kmax; ++k) {
      table.rows.push_back({static_cast<long long>(k), profile[k], profile[k], 1.0,
                            g2d::designs::gamma_coeff(k), 1.0 / std::sqrt(k + 0.25), profile[k]});
    }
    g2d::designs::SpectrumReport limit;
    limit.kmax = kmax;
    limit.diagonal = profile;
    const double deviation = g2d::designs::two_design_deviation(limit);
    checks.add("spectrum is not flat (no 2-design)", deviation > 0.0);
    write_output("spectrum", params, table, checks, out, format);
    report_checks("spectrum", checks);
    std::cerr << "spectrum: two-design deviation = " << format_double(deviation) << "\n";
    return checks.all_passed() ? 0 : 1;
  }

  params["emax"] = emax;
  params["grid_step"] = step;
  const int points = std::max(2, static_cast<int>(std::lround((emax - 0.5) / step)) + 1);
  const auto spec = g2d::designs::EnsembleSpec::uniform(0.5, emax, points);
  const auto report = g2d::designs::ensemble_average_spectrum(spec, kmax);
  const auto finer = g2d::designs::ensemble_average_spectrum(
      g2d::designs::EnsembleSpec::uniform(0.5, emax, 2 * points - 1), kmax);

  bool bound_ok = true;
  double grid_shift = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    const double ratio = report.diagonal[k] / report.diagonal[0];
    bound_ok = bound_ok && ratio <= profile[k] + 1e-12;
    grid_shift = std::max(grid_shift, std::abs(report.diagonal[k] - finer.diagonal[k]));
    table.rows.push_back({static_cast<long long>(k), report.diagonal[k], ratio,
                          report.weight_factors[k], report.gamma_coeffs[k],
                          1.0 / std::sqrt(k + 0.25), profile[k]});
  }
  const double deviation = g2d::designs::two_design_deviation(report);
  checks.add("spectrum bounded by the infinite-squeezing profile", bound_ok);
  checks.add("spectrum is not flat (no 2-design)", deviation > 0.0);
  checks.add("halving the grid step changes a_k by less than 1e-6", grid_shift < 1e-6);
  write_output("spectrum", params, table, checks, out, format);
  report_checks("spectrum", checks);
  std::cerr << "spectrum: two-design deviation = " << format_double(deviation)
            << ", flatness ratio = " << format_double(report.flatness_ratio) << "\n";
  return checks.all_passed() ? 0 : 1;
}

int cmd_schmidt(int dim, double squeeze_s, double coh_x, double coh_p, const std::string& out,
                const std::string& format) {
  Table table;
  table.columns = {"fiducial", "index", "coefficient"};
  CheckList checks;

  const auto add_rows = [&](const std::string& tag, const std::vector<double>& sv) {
    for (size_t i = 0; i < sv.size(); ++i)
      table.rows.push_back({tag, static_cast<long long>(i), sv[i]});
    return sv;
  };

  const auto vac = add_rows("vacuum", g2d::designs::two_copy_schmidt(g2d::fock::vacuum(dim), dim));
  checks.add("vacuum two-copy state has a single Schmidt coefficient",
             vac[0] > 1.0 - 1e-8 && vac[1] < 1e-8);

  const auto squeezed = add_rows(
      "squeezed",
      g2d::designs::two_copy_schmidt(g2d::fock::squeeze_unitary(squeeze_s, 0.0, dim).col(0), dim));
  checks.add("squeezed fiducial stays a product state (rank 1 to 1e-6)", squeezed[1] < 1e-6);

  const auto coherent = add_rows(
      "coherent", g2d::designs::two_copy_schmidt(g2d::fock::coherent_state(coh_x, coh_p, dim), dim));
  checks.add("coherent fiducial stays a product state (rank 1 to 1e-6)", coherent[1] < 1e-6);

  const auto fock1 =
      add_rows("fock1", g2d::designs::two_copy_schmidt(g2d::fock::basis_state(dim, 1), dim));
  checks.add("|1> fiducial is entangled across the split (second coefficient > 0.1)",
             fock1[1] > 0.1);

  write_output("schmidt",
               {{"dim", dim}, {"squeeze", squeeze_s}, {"coh_x", coh_x}, {"coh_p", coh_p}}, table,
               checks, out, format);
  report_checks("schmidt", checks);
  return checks.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-state design diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config");

  std::string out = "-";
  std::string format = "csv";
  app.add_option("--out", out, "Output path, or - for stdout")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* overlaps = app.add_subcommand("overlaps", "Fock overlaps: closed form vs quadrature");
  int kmax = 40;
  std::vector<double> svals{0.5, 1.0, 2.0, 5.0};
  overlaps->add_option("--kmax", kmax, "Largest photon number")->capture_default_str();
  overlaps->add_option("--svals", svals, "Squeeze factors")->delimiter(',')->capture_default_str();

  auto* measure = app.add_subcommand("measure", "Invariant measure across coordinate systems");
  double smin = 0.2, smax = 5.0, grid_step = 0.05;
  measure->add_option("--smin", smin, "Smallest squeeze factor")->capture_default_str();
  measure->add_option("--smax", smax, "Largest squeeze factor")->capture_default_str();
  measure->add_option("--grid-step", grid_step, "Grid step in s")->capture_default_str();

  auto* twirl = app.add_subcommand("twirl", "Partial Heisenberg-Weyl twirl convergence");
  int dim = 8;
  double radius = 16.0;
  int fock_level = 0;
  std::string dump_op;
  twirl->add_option("--dim", dim, "Truncation dimension")->capture_default_str();
  twirl->add_option("--radius", radius, "Largest disk radius")->capture_default_str();
  twirl->add_option("--fock", fock_level, "Fock level of the fiducial")->capture_default_str();
  twirl->add_option("--dump-op", dump_op, "Write the final operator to this CSV path");

  auto* spectrum = app.add_subcommand("spectrum", "Ensemble-average spectrum and design bound");
  double emax = 1000.0, spectrum_step = 0.05;
  int spectrum_kmax = 10;
  bool heterodyne = false;
  spectrum->add_option("--emax", emax, "Largest ensemble energy")->capture_default_str();
  spectrum->add_option("--grid-step", spectrum_step, "Energy grid step")->capture_default_str();
  spectrum->add_option("--kmax", spectrum_kmax, "Largest spectral index")->capture_default_str();
  spectrum->add_flag("--heterodyne", heterodyne, "Emit the infinite-squeezing limit profile");

  auto* schmidt = app.add_subcommand("schmidt", "Two-copy Schmidt structure of fiducials");
  int schmidt_dim = 60;
  double schmidt_s = 2.0, coh_x = 1.0, coh_p = 0.0;
  schmidt->add_option("--dim", schmidt_dim, "Truncation dimension")->capture_default_str();
  schmidt->add_option("--squeeze", schmidt_s, "Squeeze factor of the squeezed row")
      ->capture_default_str();
  schmidt->add_option("--coh-x", coh_x, "Coherent-row x displacement")->capture_default_str();
  schmidt->add_option("--coh-p", coh_p, "Coherent-row p displacement")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(overlaps)) {
      if (kmax < 0 || kmax > 200) throw std::domain_error("kmax must be in [0, 200]");
      for (double s : svals)
        if (!(s > 0.0)) throw std::domain_error("svals must be positive");
      return cmd_overlaps(kmax, svals, out, format);
    }
    if (app.got_subcommand(measure)) {
      if (!(smin > 0.0) || !(smax > smin) || !(grid_step > 0.0))
        throw std::domain_error("need 0 < smin < smax and grid-step > 0");
      return cmd_measure(smin, smax, grid_step, out, format);
    }
    if (app.got_subcommand(twirl)) {
      if (dim < 1 || dim > kDimGuardrail) throw std::domain_error("dim must be in [1, 512]");
      if (!(radius > 0.0)) throw std::domain_error("radius must be positive");
      if (fock_level < 0 || fock_level >= dim) throw std::domain_error("fock level out of range");
      return cmd_twirl(dim, radius, fock_level, dump_op, out, format);
    }
    if (app.got_subcommand(spectrum)) {
      if (spectrum_kmax < 0) throw std::domain_error("kmax must be nonnegative");
      if (!heterodyne && (!(emax > 0.5) || !(spectrum_step > 0.0)))
        throw std::domain_error("need emax > 0.5 and grid-step > 0");
      return cmd_spectrum(emax, spectrum_step, spectrum_kmax, heterodyne, out, format);
    }
    if (app.got_subcommand(schmidt)) {
      if (schmidt_dim < 4 || schmidt_dim > kDimGuardrail)
        throw std::domain_error("dim must be in [4, 512]");
      if (!(schmidt_s > 0.0)) throw std::domain_error("squeeze must be positive");
      return cmd_schmidt(schmidt_dim, schmidt_s, coh_x, coh_p, out, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
