#include "nlcs/statistics.hpp"

#include <cmath>
#include <stdexcept>

namespace nlcs {

std::vector<double> photon_distribution(const FockVector& s) {
  std::vector<double> p(s.dim());
  for (std::size_t n = 0; n < s.dim(); ++n) p[n] = std::norm(s[n]);
  return p;
}

double mean_Nk(const FockVector& s, int k) {
  if (k < 1) throw std::invalid_argument("moment order must be positive");
  double sum = 0.0;
  for (std::size_t n = 1; n < s.dim(); ++n) sum += std::pow(static_cast<double>(n), k) * std::norm(s[n]);
  return sum;
}

double mandel_q_from_moments(double mean_n, double mean_n2) {
  if (mean_n < 1e-14) throw std::domain_error("Mandel Q is undefined for <N> = 0");
  return (mean_n2 - mean_n * mean_n - mean_n) / mean_n;
}

double mandel_q(const FockVector& s) { return mandel_q_from_moments(mean_Nk(s, 1), mean_Nk(s, 2)); }

QuadratureStats quadrature_from_moments(Complex e1, Complex e2, double mean_n) {
  QuadratureStats q;
  q.mean_x = e1.real();
  q.mean_y = e1.imag();
  q.var_x = 0.25 + 0.5 * (mean_n + e2.real()) - e1.real() * e1.real();
  q.var_y = 0.25 + 0.5 * (mean_n - e2.real()) - e1.imag() * e1.imag();
  return q;
}

QuadratureStats quadrature_stats(const FockVector& s) {
  const Complex e1 = inner_product(s, apply_lower(s, 1));
  const Complex e2 = inner_product(s, apply_lower(s, 2));
  return quadrature_from_moments(e1, e2, mean_Nk(s, 1));
}

StatsRecord make_stats_record(const FockVector& s, double eta, int m, Sign sign, const TruncationConfig& cfg) {
  StatsRecord r;
  r.eta = eta;
  r.m = m;
  r.sign = sign;
  r.mean_n = mean_Nk(s, 1);
  r.mean_n2 = mean_Nk(s, 2);
  r.q = mandel_q_from_moments(r.mean_n, r.mean_n2);
  const QuadratureStats qs = quadrature_stats(s);
  r.var_x = qs.var_x;
  r.var_y = qs.var_y;
  r.uncertainty_product = qs.var_x * qs.var_y;
  r.tail = tail_mass(s, cfg.tail_start());
  return r;
}

}  // namespace nlcs
