#pragma once

#include "nlcs/fock.hpp"
#include "nlcs/nonlinear_fn.hpp"
#include "nlcs/state_builders.hpp"

namespace nlcs {

/// F(N) a^2 has a two-dimensional eigenspace for each alpha; the seed picks
/// (c_0, c_1): (1, 0) even, (0, 1) odd, (1, ratio) mixed.
struct TwoPhotonSeed {
  enum class Kind { even, odd, mixed };
  Kind kind = Kind::even;
  Complex ratio = 0.0;

  static TwoPhotonSeed even() { return {Kind::even, 0.0}; }
  static TwoPhotonSeed odd() { return {Kind::odd, 0.0}; }
  static TwoPhotonSeed mixed(Complex r) { return {Kind::mixed, r}; }
};

struct TwoPhotonSpec {
  NonlinearFn F;
  Complex alpha;
  TwoPhotonSeed seed;
  TruncationConfig cfg;
};

/// F(N) a^2 |psi> = alpha |psi>, via c_{n+2} = alpha c_n / (F(n) sqrt((n+1)(n+2))).
FockVector build_two_photon_nlcs(const TwoPhotonSpec& spec);

/// normalize(a^dag^m |alpha, F>). Sign::minus throws NotImplemented.
FockVector build_photon_added_two_photon(const TwoPhotonSpec& spec, int m, Sign sign = Sign::plus);

/// F(N-m)(1 - m/(N+2))(1 - m/(N+1)), zero where either factor vanishes.
NonlinearFn two_photon_added_function(const NonlinearFn& F, int m);

/// max over |n>, n <= n_max, of
/// ||(a^2 a^dag^m a^2 - (N+s-m)(N+s-1-m) a^2 a^dag^{m-2})|n>||,
/// with s = shift (4 for the exact identity). Requires m >= 2.
double operator_identity_residual(int m, std::size_t n_max, const TruncationConfig& cfg = {}, int shift = 4);

/// eigen_residual of the photon-added state with p = 2 and
/// g = two_photon_added_function(F, m), on indices 0..D-1-m-2-margin.
double two_photon_added_residual(const TwoPhotonSpec& spec, int m);

}  // namespace nlcs
