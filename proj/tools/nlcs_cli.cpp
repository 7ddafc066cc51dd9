// Command-line front end: figure sweeps, the residual suite and state dumps.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nlcs/errors.hpp"
#include "nlcs/sweep.hpp"

namespace {

int emit_sweep(const nlcs::SweepConfig& cfg, bool figure1) {
  std::ostringstream csv;
  const nlcs::SweepOutcome out = figure1 ? nlcs::run_figure1(cfg, csv) : nlcs::run_figure2(cfg, csv);
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open " << cfg.output_path << " for writing\n";
      return 2;
    }
    file << csv.str();
  }
  for (const auto& note : out.notes) std::cerr << "note: " << note << '\n';
  for (const auto& f : out.failures) std::cerr << "FAIL: " << f << '\n';
  std::cerr << (figure1 ? "figure1" : "figure2") << ": " << out.rows.size() << " rows, "
            << (out.exit_code() == 0 ? "all checks passed" : "checks failed") << '\n';
  return out.exit_code();
}

void add_sweep_options(CLI::App* cmd, nlcs::SweepConfig& cfg) {
  cmd->add_option("--eta-min", cfg.eta_min, "Lower end of the eta grid");
  cmd->add_option("--eta-max", cfg.eta_max, "Upper end of the eta grid");
  cmd->add_option("--eta-steps", cfg.eta_steps, "Number of eta points (>= 2)");
  cmd->add_option("--m", cfg.m_list, "Added-photon numbers, e.g. --m 1,2,3,5")->delimiter(',');
  cmd->add_option("--dim", cfg.dim, "Fock-space truncation dimension");
  cmd->add_option("--tail-tol", cfg.tail_tol, "Allowed tail mass above the safe band");
  cmd->add_option("--out", cfg.output_path, "CSV output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear coherent state numerics"};
  app.require_subcommand(1);

  nlcs::SweepConfig fig1;
  nlcs::SweepConfig fig2;
  fig1.dim = fig2.dim = nlcs::default_dim();
  auto* c1 = app.add_subcommand("figure1", "Mandel Q of negative-m geometric states versus eta");
  add_sweep_options(c1, fig1);
  auto* c2 = app.add_subcommand("figure2", "Quadrature variances of negative-m geometric states versus eta");
  add_sweep_options(c2, fig2);

  std::size_t res_dim = nlcs::default_dim();
  double res_tol = 1e-10;
  auto* cr = app.add_subcommand("residuals", "Eigen-equation, commutator and equivalence residual suite");
  cr->add_option("--dim", res_dim, "Fock-space truncation dimension");
  cr->add_option("--tol", res_tol, "Pass threshold for every residual");

  nlcs::StateRequest req;
  req.dim = nlcs::default_dim();
  double alpha_im = 0.0;
  double alpha_re = 0.0;
  auto* cs = app.add_subcommand("state", "Dump the amplitudes of one state as CSV");
  cs->add_option("family", req.family,
                 "nlcs, panlcs, neg-panlcs, geometric, pags, neg-pags, two-photon, pa-two-photon")
      ->required();
  cs->add_option("--eta", req.eta, "Geometric-family parameter in (0,1)");
  cs->add_option("--m", req.m, "Added-photon number");
  cs->add_option("--alpha", alpha_re, "Eigenvalue, real part");
  cs->add_option("--alpha-im", alpha_im, "Eigenvalue, imaginary part");
  cs->add_option("--f", req.f, "Nonlinear function: one, linear, inverse-sqrt, reciprocal");
  cs->add_option("--seed", req.seed, "Two-photon parity seed: even, odd");
  cs->add_option("--dim", req.dim, "Fock-space truncation dimension");
  cs->add_option("--tail-tol", req.tail_tol, "Allowed tail mass above the safe band");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c1) {
      fig1.validate();
      return emit_sweep(fig1, true);
    }
    if (*c2) {
      fig2.validate();
      return emit_sweep(fig2, false);
    }
    if (*cr) {
      const nlcs::ResidualReport report = nlcs::run_residuals(res_dim, res_tol);
      std::cout << "dim = " << res_dim << ", tol = " << nlcs::format_number(res_tol) << '\n';
      for (const auto& e : report.entries) {
        std::cout << (e.max_value < res_tol ? "PASS " : "FAIL ") << e.label << ": max "
                  << nlcs::format_number(e.max_value) << " over " << e.checks << " checks\n";
      }
      for (const auto& f : report.failures) std::cout << "  failure: " << f << '\n';
      return report.exit_code();
    }
    if (*cs) {
      req.alpha = {alpha_re, alpha_im};
      nlcs::write_state_csv(nlcs::build_requested_state(req), std::cout);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
