#pragma once

#include <vector>

#include "nlcs/fock.hpp"
#include "nlcs/state_builders.hpp"

namespace nlcs {

/// P(n) = |c_n|^2
std::vector<double> photon_distribution(const FockVector& s);

/// sum_n n^k P(n)
double mean_Nk(const FockVector& s, int k);

/// (<N^2> - <N>^2 - <N>) / <N>. Throws std::domain_error when <N> < 1e-14.
double mandel_q(const FockVector& s);

/// Q from precomputed moments, with the same vacuum guard.
double mandel_q_from_moments(double mean_n, double mean_n2);

/// X = (a + a^dag)/2, Y = (a - a^dag)/2i
struct QuadratureStats {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
};

/// From <a>, <a^2> and <a^dag a>; valid for complex moments.
QuadratureStats quadrature_from_moments(Complex e1, Complex e2, double mean_n);

QuadratureStats quadrature_stats(const FockVector& s);

struct StatsRecord {
  double eta = 0.0;
  int m = 0;
  Sign sign = Sign::plus;
  double mean_n = 0.0;
  double mean_n2 = 0.0;
  double q = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double uncertainty_product = 0.0;
  double tail = 0.0;
};

/// All observables of a normalized state; tail is measured above
/// cfg.tail_start().
StatsRecord make_stats_record(const FockVector& s, double eta, int m, Sign sign, const TruncationConfig& cfg);

}  // namespace nlcs
