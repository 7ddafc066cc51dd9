#include "nlcs/state_builders.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nlcs/errors.hpp"
#include "recurrence.hpp"

namespace nlcs {

namespace {

void require_nonneg_m(int m) {
  if (m < 0) throw std::invalid_argument("added-photon number m must be non-negative");
}

/// f(k) for k in [first, last], rejecting zeros and non-finite values.
std::vector<Complex> sample_nonzero(const NonlinearFn& f, std::int64_t first, std::int64_t last) {
  std::vector<Complex> values;
  for (std::int64_t k = first; k <= last; ++k) values.push_back(f.checked_nonzero(k));
  return values;
}

/// sqrt((n+p)!/n!)
double rising_sqrt(std::size_t n, std::size_t p) {
  double r = 1.0;
  for (std::size_t i = 1; i <= p; ++i) r *= static_cast<double>(n + i);
  return std::sqrt(r);
}

/// sum_k alpha^k/k! (G^dag)^k |seed>, term by term until the term leaves the
/// truncated space or underflows.
FockVector exp_sector_raising(const SectorRaising& g, Complex alpha, std::size_t seed, std::size_t dim) {
  FockVector term = basis_state(seed, dim);
  FockVector sum = term;
  for (std::size_t k = 0; k < dim; ++k) {
    term = scale(g(term), alpha / static_cast<double>(k + 1));
    if (term.is_zero()) break;
    sum = add(sum, term);
  }
  return sum;
}

}  // namespace

void AddedPhotonIndex::validate() const {
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  if (m == 0 && sign == Sign::minus) throw std::invalid_argument("m = 0 requires Sign::plus");
}

FockVector LoweringAction::apply(const FockVector& s) const { return apply_diagonal(apply_lower(s, power), g); }

FockVector LoweringAction::apply_adjoint(const FockVector& s) const {
  const NonlinearFn conj_g(g.name() + "*", [g = g](std::int64_t n) { return std::conj(g(n)); });
  return apply_raise(apply_diagonal(s, conj_g), power);
}

DeformedLoweringOp::DeformedLoweringOp(NonlinearFn f, int m, Sign sign)
    : f_(std::move(f)), m_(m), sign_(sign) {
  AddedPhotonIndex{m, sign}.validate();
}

Complex DeformedLoweringOp::diagonal(std::int64_t n) const {
  const double np1 = static_cast<double>(n + 1);
  if (sign_ == Sign::plus) {
    if (n + 1 == m_) return 0.0;
    return f_(n - m_) * ((np1 - m_) / np1);
  }
  return f_(n + m_) * ((np1 + m_) / np1);
}

NonlinearFn DeformedLoweringOp::diagonal_fn() const {
  std::ostringstream os;
  os << f_.name() << " deformed by m = " << (sign_ == Sign::plus ? "+" : "-") << m_;
  return NonlinearFn(os.str(), [op = *this](std::int64_t n) { return op.diagonal(n); });
}

LoweringAction DeformedLoweringOp::lowering() const { return LoweringAction{diagonal_fn(), 1}; }

SectorRaising::SectorRaising(LoweringAction a, std::size_t sector_start)
    : a_(std::move(a)), start_(sector_start) {
  if (a_.power == 0) throw std::invalid_argument("lowering power must be positive");
}

FockVector SectorRaising::operator()(const FockVector& s) const {
  const std::size_t d = s.dim();
  const std::size_t p = a_.power;
  std::vector<Complex> out(d);
  double loss = s.truncation_loss();
  for (std::size_t n = 0; n < d; ++n) {
    const bool in_sector = n >= start_ && (n - start_) % p == 0;
    if (!in_sector) {
      if (s[n] != Complex(0.0)) {
        std::ostringstream os;
        os << "sector raising applied to |" << n << "> outside the sector starting at |" << start_ << ">";
        throw std::domain_error(os.str());
      }
      continue;
    }
    const Complex g = a_.g.checked(static_cast<std::int64_t>(n));
    const double ladder = rising_sqrt(n, p);
    const double aad = std::norm(g) * ladder * ladder;  // <n|A A^dag|n>
    if (aad == 0.0) {
      std::ostringstream os;
      os << "A A^dag vanishes on sector state |" << n << ">";
      throw EvaluationError(os.str(), static_cast<std::int64_t>(n));
    }
    const double shift = static_cast<double>(n + p) - static_cast<double>(start_);
    const Complex amp = s[n] * shift / aad * std::conj(g) * ladder / static_cast<double>(p);
    if (n + p < d) {
      out[n + p] = amp;
    } else {
      loss += std::norm(amp);
    }
  }
  return FockVector(std::move(out), loss);
}

SectorRaising make_g_dagger(const LoweringAction& a, std::size_t sector_start) {
  return SectorRaising(a, sector_start);
}

SectorRaising make_g_dagger(const DeformedLoweringOp& a, std::size_t sector_start) {
  return SectorRaising(a.lowering(), sector_start);
}

double commutator_residual(const LoweringAction& a, const OperatorAction& g, std::size_t sector_start,
                           std::size_t n_max, std::size_t dim) {
  if (sector_start > n_max) throw std::invalid_argument("sector_start must not exceed n_max");
  if (n_max + a.power >= dim) throw std::invalid_argument("n_max too close to the truncation edge");
  double worst = 0.0;
  for (std::size_t n = sector_start; n <= n_max; n += a.power) {
    const FockVector e = basis_state(n, dim);
    const FockVector ag = a.apply(g(e));
    const FockVector ga = g(a.apply(e));
    worst = std::max(worst, subtract(subtract(ag, ga), e).norm());
  }
  return worst;
}

double eigen_residual(const FockVector& state, std::size_t lower_power, const NonlinearFn& g, Complex alpha,
                      std::size_t margin) {
  if (margin < lower_power) throw std::invalid_argument("margin must be at least the lowering power");
  if (margin >= state.dim()) throw std::invalid_argument("margin leaves no band to check");
  const FockVector lhs = apply_diagonal(apply_lower(state, lower_power), g);
  const std::size_t band = state.dim() - margin;
  double res = 0.0;
  double ref = 0.0;
  for (std::size_t n = 0; n < band; ++n) {
    res += std::norm(lhs[n] - alpha * state[n]);
    ref += std::norm(state[n]);
  }
  return ref == 0.0 ? std::sqrt(res) : std::sqrt(res / ref);
}

FockVector build_nlcs(const NlcsSpec& spec) {
  spec.cfg.validate();
  const auto d = static_cast<std::int64_t>(spec.cfg.dim);
  const std::vector<Complex> fv = sample_nonzero(spec.f, 0, d - 2);
  detail::Chain chain;
  chain.ratio = [&](std::size_t n) {
    const Complex fn = n < fv.size() ? fv[n] : spec.f.checked_nonzero(static_cast<std::int64_t>(n));
    return spec.alpha / (std::sqrt(static_cast<double>(n + 1)) * fn);
  };
  const std::span<const detail::Chain> chains(&chain, 1);
  FockVector s = normalize(FockVector(detail::unroll(spec.cfg.dim, chains)));
  detail::require_tail(s, spec.cfg, chains, "nonlinear coherent state (f = " + spec.f.name() + ")");
  return s;
}

FockVector build_panlcs_apply(const NlcsSpec& spec, int m) {
  require_nonneg_m(m);
  if (m == 0) return build_nlcs(spec);
  const FockVector s = normalize(apply_raise(build_nlcs(spec), static_cast<std::size_t>(m)));
  detail::Chain chain;
  chain.start = static_cast<std::size_t>(m);
  chain.ratio = [&](std::size_t n) {
    const std::size_t k = n - static_cast<std::size_t>(m);
    return spec.alpha * std::sqrt(static_cast<double>(n + 1)) /
           (static_cast<double>(k + 1) * spec.f.checked_nonzero(static_cast<std::int64_t>(k)));
  };
  detail::require_tail(s, spec.cfg, std::span<const detail::Chain>(&chain, 1), "photon-added state");
  return s;
}

FockVector build_panlcs_deformed(const NlcsSpec& spec, int m) {
  require_nonneg_m(m);
  spec.cfg.validate();
  const auto d = static_cast<std::int64_t>(spec.cfg.dim);
  if (m >= d) throw IndexOutOfRange("added-photon number exceeds the truncated space");
  sample_nonzero(spec.f, 0, d - 1 - m);
  const DeformedLoweringOp a(spec.f, m, Sign::plus);
  const SectorRaising g = make_g_dagger(a, static_cast<std::size_t>(m));
  const FockVector s = normalize(exp_sector_raising(g, spec.alpha, static_cast<std::size_t>(m), spec.cfg.dim));
  detail::Chain chain;
  chain.start = static_cast<std::size_t>(m);
  chain.ratio = [&](std::size_t n) {
    const std::size_t k = n - static_cast<std::size_t>(m);
    return spec.alpha * std::sqrt(static_cast<double>(n + 1)) /
           (static_cast<double>(k + 1) * spec.f.checked_nonzero(static_cast<std::int64_t>(k)));
  };
  detail::require_tail(s, spec.cfg, std::span<const detail::Chain>(&chain, 1), "deformed number state");
  return s;
}

namespace {

detail::Chain negative_chain(const NlcsSpec& spec, int m, const std::vector<Complex>& fv) {
  detail::Chain chain;
  chain.ratio = [&spec, &fv, m](std::size_t n) {
    const Complex fnm =
        n < fv.size() ? fv[n] : spec.f.checked_nonzero(static_cast<std::int64_t>(n) + m);
    return spec.alpha * std::sqrt(static_cast<double>(n + 1)) /
           (fnm * static_cast<double>(n + static_cast<std::size_t>(m) + 1));
  };
  return chain;
}

void require_positive_m(int m) {
  if (m < 1) throw std::invalid_argument("negative-m states need m >= 1");
}

}  // namespace

FockVector build_negative_panlcs_series(const NlcsSpec& spec, int m) {
  require_positive_m(m);
  spec.cfg.validate();
  const auto d = static_cast<std::int64_t>(spec.cfg.dim);
  const std::vector<Complex> fv = sample_nonzero(spec.f, m, d - 2 + m);
  const detail::Chain chain = negative_chain(spec, m, fv);
  const std::span<const detail::Chain> chains(&chain, 1);
  FockVector s = normalize(FockVector(detail::unroll(spec.cfg.dim, chains)));
  detail::require_tail(s, spec.cfg, chains, "negative-m state (series)");
  return s;
}

FockVector build_negative_panlcs_deformed(const NlcsSpec& spec, int m) {
  require_positive_m(m);
  spec.cfg.validate();
  const auto d = static_cast<std::int64_t>(spec.cfg.dim);
  const std::vector<Complex> fv = sample_nonzero(spec.f, m, d - 2 + m);
  const DeformedLoweringOp a(spec.f, m, Sign::minus);
  const SectorRaising g = make_g_dagger(a, 0);
  const FockVector s = normalize(exp_sector_raising(g, spec.alpha, 0, spec.cfg.dim));
  const detail::Chain chain = negative_chain(spec, m, fv);
  detail::require_tail(s, spec.cfg, std::span<const detail::Chain>(&chain, 1), "negative-m state (deformed)");
  return s;
}

FockVector build_negative_panlcs_inverse(const NlcsSpec& spec, int m) {
  require_positive_m(m);
  const NlcsSpec shifted{spec.f.shifted(m), spec.alpha, spec.cfg};
  FockVector s = build_nlcs(shifted);
  for (int i = 0; i < m; ++i) s = apply_inverse_lower(s);
  for (int i = 0; i < m; ++i) s = apply_inverse_raise(s);
  s = normalize(s);
  const auto d = static_cast<std::int64_t>(spec.cfg.dim);
  const std::vector<Complex> fv = sample_nonzero(spec.f, m, d - 2 + m);
  const detail::Chain chain = negative_chain(spec, m, fv);
  detail::require_tail(s, spec.cfg, std::span<const detail::Chain>(&chain, 1), "negative-m state (inverse)");
  return s;
}

NonlinearFn added_photon_function(const NonlinearFn& f, int m, Sign sign) {
  return DeformedLoweringOp(f, m, sign).diagonal_fn();
}

}  // namespace nlcs
