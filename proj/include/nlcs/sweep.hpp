#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlcs/fock.hpp"
#include "nlcs/statistics.hpp"

namespace nlcs {

struct SweepConfig {
  double eta_min = 0.05;
  double eta_max = 0.99;
  int eta_steps = 48;
  std::vector<int> m_list = {1, 2, 3, 5};
  std::size_t dim = 512;
  double tail_tol = 1e-12;
  std::string output_path;  // empty or "-" writes to the report stream

  /// Throws std::invalid_argument on an empty m list, m < 1,
  /// eta_min >= eta_max, eta outside (0,1) or eta_steps < 2.
  void validate() const;
  TruncationConfig truncation() const;
};

/// eta_min + i (eta_max - eta_min)/(eta_steps - 1); the last point is eta_max.
std::vector<double> eta_grid(const SweepConfig& cfg);

struct SweepOutcome {
  std::vector<StatsRecord> rows;     // grid order: m outer, eta inner
  std::vector<std::string> failures;  // rows or checks that failed
  std::vector<std::string> notes;     // threshold checks that do not gate the exit code
  int exit_code() const { return failures.empty() ? 0 : 1; }
};

/// Negative-m geometric statistics over the sweep grid, grid order.
SweepOutcome sweep_negative_m_geometric(const SweepConfig& cfg);

/// CSV `eta,m,mean_n,q,tail`; fails unless every row has Q > 0 and tail below tolerance.
SweepOutcome run_figure1(const SweepConfig& cfg, std::ostream& csv);

/// CSV `eta,m,var_x,var_y,uncertainty_product,tail`; fails unless the
/// uncertainty bound holds on every row and every m has some var_y < 0.25.
SweepOutcome run_figure2(const SweepConfig& cfg, std::ostream& csv);

struct ResidualEntry {
  std::string label;
  double max_value = 0.0;
  std::size_t checks = 0;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;
  std::vector<std::string> failures;
  int exit_code() const { return failures.empty() ? 0 : 1; }
};

/// The full residual and cross-route equivalence grid.
ResidualReport run_residuals(std::size_t dim, double tol);

struct StateRequest {
  std::string family = "nlcs";
  double eta = 0.5;
  int m = 1;
  std::complex<double> alpha = 0.0;
  std::string f = "one";
  std::string seed = "even";
  std::size_t dim = 512;
  double tail_tol = 1e-12;
};

/// The normalized, phase-fixed state named by the request. Throws
/// std::invalid_argument on an unknown family or function name.
FockVector build_requested_state(const StateRequest& req);

/// CSV `n,re,im,p` of the requested state.
void write_state_csv(const FockVector& s, std::ostream& out);

NonlinearFn function_by_name(const std::string& name);

/// %.12g
std::string format_number(double x);

/// Dimension default: NLCS_DEFAULT_DIM when set and positive, else 512.
std::size_t default_dim();

}  // namespace nlcs
