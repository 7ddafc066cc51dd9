#pragma once

#include <cstddef>

#include "nlcs/fock.hpp"
#include "nlcs/state_builders.hpp"

namespace nlcs {

/// Geometric state family, 0 < eta < 1. m = 0 is the plain geometric state;
/// sign picks the photon-added (+) or negative-m (-) member.
struct GeometricSpec {
  double eta = 0.5;
  int m = 0;
  Sign sign = Sign::plus;
  TruncationConfig cfg;

  void validate() const;
  /// sqrt(1 - eta), the eigenvalue shared by the whole family.
  double alpha() const;
};

/// c_n = eta^{1/2} (1 - eta)^{n/2}. Requires spec.m == 0.
FockVector build_geometric(const GeometricSpec& spec);

/// a^dag^m applied to the geometric state, in closed form: the amplitude at
/// n + m is sqrt(C(m+n, n) eta^{m+1} (1-eta)^n). Requires sign + and m >= 1.
FockVector build_photon_added_geometric(const GeometricSpec& spec);

/// c_n = sqrt(m! / 2F1(1,1;m+1;1-eta)) (1-eta)^{n/2} sqrt(n!/(n+m)!), not
/// renormalized. Requires sign - and m >= 1.
FockVector build_negative_m_geometric(const GeometricSpec& spec);

/// Dispatches on (m, sign).
FockVector build_geometric_family(const GeometricSpec& spec);

/// 1/sqrt(N+1)
NonlinearFn geometric_function();
/// sqrt(N-m+1)/(N+1), zero for N < m.
NonlinearFn photon_added_geometric_function(int m);
/// sqrt(N+m+1)/(N+1)
NonlinearFn negative_m_geometric_function(int m);

/// Terms summed until one falls below this fraction of the partial sum.
inline constexpr double kSeriesRelTol = 1e-16;
inline constexpr std::size_t kSeriesTermCap = 100'000'000;

/// 2F1(1,1;m+1;z) = sum_n n! m! z^n / (n+m)!, 0 <= z < 1, m >= 1.
/// Throws ConvergenceError when the term cap is reached.
double hyp2f1_11(int m, double z);

/// <N^k> of the negative-m geometric state from its number-state series.
double moment_Nk_series(const GeometricSpec& spec, int k);

/// <a^k> of the negative-m geometric state from its number-state series.
double lowering_moment_series(const GeometricSpec& spec, int k);

}  // namespace nlcs
