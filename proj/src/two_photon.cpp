#include "nlcs/two_photon.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlcs/errors.hpp"
#include "recurrence.hpp"

namespace nlcs {

namespace {

std::vector<detail::Chain> two_photon_chains(const TwoPhotonSpec& spec, const std::vector<Complex>& fv) {
  const auto ratio = [&spec, &fv](std::size_t n) {
    const Complex fn = n < fv.size() ? fv[n] : spec.F.checked_nonzero(static_cast<std::int64_t>(n));
    return spec.alpha / (fn * std::sqrt(static_cast<double>((n + 1) * (n + 2))));
  };
  Complex c0 = 1.0;
  Complex c1 = 0.0;
  switch (spec.seed.kind) {
    case TwoPhotonSeed::Kind::even: break;
    case TwoPhotonSeed::Kind::odd: c0 = 0.0; c1 = 1.0; break;
    case TwoPhotonSeed::Kind::mixed: c1 = spec.seed.ratio; break;
  }
  std::vector<detail::Chain> chains;
  if (c0 != Complex(0.0)) chains.push_back({0, 2, c0, ratio});
  if (c1 != Complex(0.0)) chains.push_back({1, 2, c1, ratio});
  return chains;
}

}  // namespace

FockVector build_two_photon_nlcs(const TwoPhotonSpec& spec) {
  spec.cfg.validate();
  if (spec.cfg.dim < 2) throw std::invalid_argument("two-photon states need dim >= 2");
  std::vector<Complex> fv;
  for (std::size_t n = 0; n + 2 < spec.cfg.dim; ++n) fv.push_back(spec.F.checked_nonzero(static_cast<std::int64_t>(n)));
  const auto chains = two_photon_chains(spec, fv);
  FockVector s = normalize(FockVector(detail::unroll(spec.cfg.dim, chains)));
  detail::require_tail(s, spec.cfg, chains, "two-photon state (F = " + spec.F.name() + ")");
  return s;
}

FockVector build_photon_added_two_photon(const TwoPhotonSpec& spec, int m, Sign sign) {
  if (sign == Sign::minus) throw NotImplemented("negative-m two-photon states are not built");
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  const FockVector base = build_two_photon_nlcs(spec);
  if (m == 0) return base;
  const FockVector s = normalize(apply_raise(base, static_cast<std::size_t>(m)));
  const double tail = tail_mass(s, spec.cfg.tail_start());
  if (tail > spec.cfg.tail_tol) {
    throw TruncationError("photon-added two-photon state: tail mass " + std::to_string(tail) +
                              " exceeds tolerance at dim " + std::to_string(spec.cfg.dim),
                          tail, 0);
  }
  return s;
}

NonlinearFn two_photon_added_function(const NonlinearFn& F, int m) {
  return NonlinearFn(F.name() + " two-photon added m = " + std::to_string(m), [F, m](std::int64_t n) {
    if (n + 2 == m || n + 1 == m) return Complex(0.0);
    const double a = 1.0 - static_cast<double>(m) / static_cast<double>(n + 2);
    const double b = 1.0 - static_cast<double>(m) / static_cast<double>(n + 1);
    return F(n - m) * (a * b);
  });
}

double operator_identity_residual(int m, std::size_t n_max, const TruncationConfig& cfg, int shift) {
  if (m < 2) throw std::invalid_argument("operator identity needs m >= 2");
  cfg.validate();
  const auto mm = static_cast<std::size_t>(m);
  if (n_max + mm + 2 > cfg.dim - 1) throw std::invalid_argument("n_max too large for dim");
  const NonlinearFn poly("(N+s-m)(N+s-1-m)", [m, shift](std::int64_t n) {
    return Complex(static_cast<double>(n + shift - m) * static_cast<double>(n + shift - 1 - m));
  });
  double worst = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const FockVector e = basis_state(n, cfg);
    const FockVector lhs = apply_lower(apply_raise(apply_lower(e, 2), mm), 2);
    const FockVector rhs = apply_diagonal(apply_lower(apply_raise(e, mm - 2), 2), poly);
    const double scale = std::max(1.0, lhs.norm());
    worst = std::max(worst, subtract(lhs, rhs).norm() / scale);
  }
  return worst;
}

double two_photon_added_residual(const TwoPhotonSpec& spec, int m) {
  const FockVector s = build_photon_added_two_photon(spec, m);
  const std::size_t margin = static_cast<std::size_t>(m) + 2 + spec.cfg.boundary_margin;
  return eigen_residual(s, 2, two_photon_added_function(spec.F, m), spec.alpha, margin);
}

}  // namespace nlcs
