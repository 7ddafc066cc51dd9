#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "nlcs/fock.hpp"
#include "nlcs/nonlinear_fn.hpp"

namespace nlcs {

/// Eigenvalue problem f(N) a |psi> = alpha |psi>.
struct NlcsSpec {
  NonlinearFn f;
  Complex alpha;
  TruncationConfig cfg;
};

/// Plus: the photon-added family a^dag^m |alpha, f>.
/// Minus: the family obtained by continuing m to negative values.
enum class Sign { plus, minus };

struct AddedPhotonIndex {
  int m = 0;
  Sign sign = Sign::plus;

  /// m >= 0; m == 0 only with Sign::plus.
  void validate() const;
};

/// A = g(N) a^p as a composite diagonal-after-lowering action.
struct LoweringAction {
  NonlinearFn g;
  std::size_t power = 1;

  FockVector apply(const FockVector& s) const;
  /// A^dag = (a^dag)^p g*(N)
  FockVector apply_adjoint(const FockVector& s) const;
};

/// A = f(N -+ m) [1 -+ m/(N+1)] a.
///
/// With Sign::plus the operator annihilates |0> and |m>; with Sign::minus it
/// annihilates only |0>. The diagonal is taken as exactly zero where the
/// rational factor vanishes, so f is never evaluated there.
class DeformedLoweringOp {
 public:
  DeformedLoweringOp(NonlinearFn f, int m, Sign sign);

  Complex diagonal(std::int64_t n) const;
  NonlinearFn diagonal_fn() const;
  LoweringAction lowering() const;

  FockVector apply(const FockVector& s) const { return lowering().apply(s); }
  FockVector apply_adjoint(const FockVector& s) const { return lowering().apply_adjoint(s); }

  int m() const { return m_; }
  Sign sign() const { return sign_; }

 private:
  NonlinearFn f_;
  int m_;
  Sign sign_;
};

/// G_j^dag = (1/p) A^dag (A A^dag)^{-1} (a^dag a + p - j), acting on the
/// sector {|j>, |j+p>, |j+2p>, ...}.
///
/// Applying it to a vector with weight outside the sector throws
/// std::domain_error; a vanishing A A^dag on a sector state throws
/// EvaluationError.
class SectorRaising {
 public:
  SectorRaising(LoweringAction a, std::size_t sector_start);

  FockVector operator()(const FockVector& s) const;

  std::size_t sector_start() const { return start_; }
  std::size_t power() const { return a_.power; }

 private:
  LoweringAction a_;
  std::size_t start_;
};

SectorRaising make_g_dagger(const LoweringAction& a, std::size_t sector_start);
SectorRaising make_g_dagger(const DeformedLoweringOp& a, std::size_t sector_start);

using OperatorAction = std::function<FockVector(const FockVector&)>;

/// max over sector states |n>, n in [sector_start, n_max], of
/// ||(A G - G A - 1)|n>||.
double commutator_residual(const LoweringAction& a, const OperatorAction& g, std::size_t sector_start,
                           std::size_t n_max, std::size_t dim);

/// ||g(N) a^p psi - alpha psi|| on indices 0..D-1-margin, divided by ||psi||
/// on the same band. Throws std::invalid_argument if margin < lower_power.
double eigen_residual(const FockVector& state, std::size_t lower_power, const NonlinearFn& g,
                      Complex alpha, std::size_t margin);

/// f(N) a |psi> = alpha |psi>, by the number-state recurrence.
FockVector build_nlcs(const NlcsSpec& spec);

/// normalize(a^dag^m |alpha, f>); m == 0 returns build_nlcs.
FockVector build_panlcs_apply(const NlcsSpec& spec, int m);

/// normalize(exp(alpha G^dag) |m>) with G^dag = a^dag / f(N - m).
FockVector build_panlcs_deformed(const NlcsSpec& spec, int m);

/// Negative-m state from its number-state recurrence
/// c_{n+1} = alpha sqrt(n+1) c_n / (f(n+m) (n+m+1)).
FockVector build_negative_panlcs_series(const NlcsSpec& spec, int m);

/// normalize(exp(alpha G^dag) |0>) with G^dag = a^dag (N+1) / (f(N+m)(N+m+1)).
FockVector build_negative_panlcs_deformed(const NlcsSpec& spec, int m);

/// normalize(a^dag^{-m} a^{-m} |alpha, f(N+m)>).
FockVector build_negative_panlcs_inverse(const NlcsSpec& spec, int m);

/// The nonlinear function of the photon-added state as an NLCS:
/// f(N-m)(1 - m/(N+1)) for Sign::plus, f(N+m)(1 + m/(N+1)) for Sign::minus.
NonlinearFn added_photon_function(const NonlinearFn& f, int m, Sign sign);

}  // namespace nlcs
