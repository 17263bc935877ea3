// dissoc: command-line driver for the solvers.
//
// Exit codes: 0 success, 1 solver failure, 2 input or domain error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dissoc/dissoc.hpp"
#include "dissoc/report.hpp"

namespace {

using namespace dissoc;

enum Exit { ok = 0, solver_failure = 1, input_error = 2 };

struct CommonOptions {
  unsigned jobs = 1;
  std::string out;
  std::string plot;
  double energy_tol = 1e-12;
  double grad_tol = 1e-7;
  int max_iter = 4000;

  SolverConfig solver() const {
    SolverConfig cfg;
    cfg.energy_tol = energy_tol;
    cfg.grad_tol = grad_tol;
    cfg.max_iter = max_iter;
    cfg.validate();
    return cfg;
  }
};

void add_solver_options(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--energy-tol", o.energy_tol, "Stop when the energy change per step is below this")->capture_default_str();
  sub->add_option("--grad-tol", o.grad_tol, "Projected-gradient tolerance")->capture_default_str();
  sub->add_option("--max-iter", o.max_iter, "Iteration limit per solve")->capture_default_str();
}

void add_output_options(CLI::App* sub, CommonOptions& o, bool with_plot) {
  sub->add_option("--out", o.out, "CSV output path (stdout when omitted)");
  if (with_plot) sub->add_option("--plot", o.plot, "Write an SVG line plot to this path");
  sub->add_option("--jobs", o.jobs, "Worker threads for independent solves")->capture_default_str()->check(CLI::Range(1u, 1024u));
}

/// Writes `text` to `path` through a temporary file so that a failure never
/// leaves a partial file behind.
void write_file(const std::string& path, const std::string& text) {
  const std::string part = path + ".part";
  {
    std::ofstream os(part, std::ios::binary);
    if (!os) throw DomainError("cannot open output file " + path);
    os << text;
    os.close();
    if (!os) {
      std::filesystem::remove(part);
      throw DomainError("cannot write output file " + path);
    }
  }
  std::filesystem::rename(part, path);
}

std::string csv_text(const report::CsvTable& t) {
  std::ostringstream os;
  report::write_csv(os, t);
  return os.str();
}

/// CSV to --out (summary on stdout) or to stdout (summary on stderr).
std::ostream& emit_csv(const CommonOptions& o, const report::CsvTable& t) {
  if (o.out.empty()) {
    std::cout << csv_text(t);
    return std::cerr;
  }
  write_file(o.out, csv_text(t));
  return std::cout;
}

void check_output_path(const std::string& path) {
  if (path.empty()) return;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent))
    throw DomainError("output directory does not exist: " + parent.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissociation limits in single-density DFT models"};
  app.set_config("--config", "", "key=value file with option defaults; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  // analytic
  double a_alpha = 1.0, a_cxc = 1.0;
  auto* analytic_cmd = app.add_subcommand("analytic", "Closed-form 1D atom: sech profile, energy, splitting sum");
  analytic_cmd->add_option("--alpha", a_alpha, "Electron mass")->capture_default_str();
  analytic_cmd->add_option("--cxc", a_cxc, "Exchange strength (closed form needs >= 1/2)")->capture_default_str();

  // scan
  CommonOptions scan_opt;
  std::string s_model = "3d";
  double s_n = 1.0, s_cxc = ueg_exchange_strength(), s_step = 0.05, s_spacing = LineGridSpec{}.spacing,
         s_margin = LineGridSpec{}.margin;
  std::size_t s_points = 600;
  auto* scan_cmd = app.add_subcommand("scan", "Splitting scan alpha -> I_alpha + I_{2N-alpha}");
  scan_cmd->add_option("--model", s_model, "1d (contact model) or 3d (radial Dirac model)")
      ->capture_default_str()
      ->check(CLI::IsMember({"1d", "3d"}));
  scan_cmd->add_option("--n", s_n, "Electrons per atom; total mass is 2N")->capture_default_str();
  scan_cmd->add_option("--cxc", s_cxc, "Exchange strength")->capture_default_str();
  scan_cmd->add_option("--step", s_step, "Mass step; must divide N")->capture_default_str();
  scan_cmd->add_option("--points", s_points, "Radial grid points (3d)")->capture_default_str();
  scan_cmd->add_option("--spacing", s_spacing, "Line grid spacing (1d)")->capture_default_str();
  scan_cmd->add_option("--margin", s_margin, "Line grid half-width (1d)")->capture_default_str();
  add_output_options(scan_cmd, scan_opt, true);
  add_solver_options(scan_cmd, scan_opt);

  // dissociate
  CommonOptions dis_opt;
  double d_lambda = 2.0, d_cxc = 1.0, d_rmax = 30.0, d_rstep = 2.0, d_spacing = LineGridSpec{}.spacing,
         d_margin = LineGridSpec{}.margin;
  auto* dis_cmd = app.add_subcommand("dissociate", "1D molecule energy against internuclear distance");
  dis_cmd->add_option("--lambda", d_lambda, "Total electron mass in (0, 2]")->capture_default_str();
  dis_cmd->add_option("--cxc", d_cxc, "Exchange strength")->capture_default_str();
  dis_cmd->add_option("--r-max", d_rmax, "Largest distance")->capture_default_str();
  dis_cmd->add_option("--r-step", d_rstep, "Distance step from R = 0")->capture_default_str();
  dis_cmd->add_option("--spacing", d_spacing, "Line grid spacing")->capture_default_str();
  dis_cmd->add_option("--margin", d_margin, "Grid extent beyond the wells")->capture_default_str();
  add_output_options(dis_cmd, dis_opt, true);
  add_solver_options(dis_cmd, dis_opt);

  // threshold
  CommonOptions thr_opt;
  double t_n = 1.0, t_lo = ueg_exchange_strength(), t_hi = 5.0, t_tol = 0.1, t_step = 0.05;
  std::size_t t_points = 600;
  bool t_bound_only = false;
  auto* thr_cmd = app.add_subcommand("threshold", "Bisect the exchange strength at which symmetric splitting breaks");
  thr_cmd->add_option("--n", t_n, "Electrons per atom")->capture_default_str();
  thr_cmd->add_option("--c-lo", t_lo, "Lower end (symmetric scan)")->capture_default_str();
  thr_cmd->add_option("--c-hi", t_hi, "Upper end (asymmetric scan)")->capture_default_str();
  thr_cmd->add_option("--tol", t_tol, "Final bracket width")->capture_default_str();
  thr_cmd->add_option("--step", t_step, "Mass step of each scan")->capture_default_str();
  thr_cmd->add_option("--points", t_points, "Radial grid points")->capture_default_str();
  thr_cmd->add_flag("--bound-only", t_bound_only, "Print only the analytic HLS sufficient bound");
  add_output_options(thr_cmd, thr_opt, false);
  add_solver_options(thr_cmd, thr_opt);

  // twobody
  double w_r = 30.0, w_spacing = 1.0 / 6.0, w_margin = 10.0, w_tol = 1e-10;
  auto* two_cmd = app.add_subcommand("twobody", "Two-electron contact model on a tensor grid");
  two_cmd->add_option("--r", w_r, "Internuclear distance")->capture_default_str();
  two_cmd->add_option("--spacing", w_spacing, "Grid spacing")->capture_default_str();
  two_cmd->add_option("--margin", w_margin, "Grid extent beyond the wells")->capture_default_str();
  two_cmd->add_option("--tol", w_tol, "Relative eigenvalue tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    if (analytic_cmd->parsed()) {
      const double energy = analytic::atom_energy_exact(a_alpha, a_cxc);
      std::printf("alpha=%s c_xc=%s\n", report::format_double(a_alpha).c_str(), report::format_double(a_cxc).c_str());
      try {
        const auto s = analytic::sech_params(a_alpha, a_cxc);
        std::printf("b=%.10g a=%.10g x0=%.10g\n", s.b, s.a, s.x0);
      } catch (const DegenerateLimitError&) {
        std::printf("profile degenerate (b=1)\n");
      }
      std::printf("energy=%.10g\n", energy);
      if (a_alpha <= 2.0)
        std::printf("splitting_sum=%.10g\n", analytic::splitting_sum_exact(a_alpha, a_cxc));
      return ok;
    }

    if (scan_cmd->parsed()) {
      check_output_path(scan_opt.out);
      const auto cfg = scan_opt.solver();
      const auto scan = s_model == "3d"
                            ? splitting_scan_3d(s_n, s_cxc, s_step, cfg, RadialGrid::for_charge(s_n, s_points), scan_opt.jobs)
                            : splitting_scan_1d(s_n, s_cxc, s_step, cfg, LineGridSpec{s_spacing, s_margin}, scan_opt.jobs);
      auto& info = emit_csv(scan_opt, report::scan_table(scan));
      double min_sum = scan.samples.front().sum;
      for (const auto& s : scan.samples) min_sum = std::min(min_sum, s.sum);
      info << "argmin_alpha=" << report::format_double(scan.argmin_alpha) << " min_sum=" << report::format_double(min_sum)
           << " symmetric=" << (scan.symmetric ? "true" : "false") << '\n';
      if (!scan_opt.plot.empty()) {
        std::vector<double> xs, ys;
        for (const auto& s : scan.samples) {
          xs.push_back(s.alpha);
          ys.push_back(s.sum);
        }
        write_file(scan_opt.plot, report::svg_line_plot(xs, ys, s_model + " splitting, c_xc=" + report::format_double(s_cxc),
                                                        "alpha", "I_alpha + I_(2N-alpha)"));
      }
      return ok;
    }

    if (dis_cmd->parsed()) {
      check_output_path(dis_opt.out);
      if (!(d_rmax >= 0.0)) throw DomainError("--r-max must be nonnegative");
      if (d_rmax > 0.0 && !(d_rstep > 0.0)) throw DomainError("--r-step must be positive");
      std::vector<double> distances{0.0};
      for (int k = 1; d_rmax > 0.0 && k * d_rstep <= d_rmax * (1.0 + 1e-12); ++k) distances.push_back(k * d_rstep);
      const auto cfg = dis_opt.solver();
      const LineGridSpec spec{d_spacing, d_margin};
      const auto curve = dissociation_curve_1d(d_lambda, d_cxc, distances, cfg, spec, dis_opt.jobs);
      const double asymptote = dissociation_asymptote_1d(d_lambda, d_cxc, cfg, spec);
      auto& info = emit_csv(dis_opt, report::dissociation_table(curve, asymptote));
      info << "asymptote=" << report::format_double(asymptote)
           << " final_gap=" << report::format_double(curve.back().energy - asymptote) << '\n';
      if (!dis_opt.plot.empty()) {
        std::vector<double> xs, ys;
        for (const auto& p : curve) {
          xs.push_back(p.distance);
          ys.push_back(p.energy);
        }
        write_file(dis_opt.plot, report::svg_line_plot(xs, ys, "dissociation, c_xc=" + report::format_double(d_cxc), "R",
                                                       "energy"));
      }
      return ok;
    }

    if (thr_cmd->parsed()) {
      if (t_bound_only) {
        std::printf("hls_bound=%.4f\n", hls_threshold_bound(t_n));
        return ok;
      }
      check_output_path(thr_opt.out);
      const auto bracket = symmetry_threshold(t_n, t_lo, t_hi, t_tol, t_step, thr_opt.solver(),
                                              RadialGrid::for_charge(t_n, t_points), thr_opt.jobs);
      auto& info = emit_csv(thr_opt, report::probe_table(bracket));
      info << "c_low=" << report::format_double(bracket.c_low) << " c_high=" << report::format_double(bracket.c_high)
           << " hls_bound=" << report::format_double(hls_threshold_bound(t_n)) << '\n';
      return ok;
    }

    if (two_cmd->parsed()) {
      TwoParticleOptions opt;
      opt.tol = w_tol;
      const auto r = two_particle_ground(w_r, two_particle_axis(w_r, w_spacing, w_margin), opt);
      std::printf("R=%s energy=%.12g discretization_error=%.3g extrapolated=%.12g iterations=%d axis_points=%zu\n",
                  report::format_double(w_r).c_str(), r.energy, r.discretization_error, r.extrapolated, r.iterations,
                  r.axis_points);
      return ok;
    }
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return solver_failure;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input_error;
  }
  return input_error;
}
