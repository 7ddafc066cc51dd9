#include "nlcs/geometric.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nlcs/errors.hpp"
#include "recurrence.hpp"

namespace nlcs {

namespace {

/// Neumaier-compensated sum of term(n), n = 0, 1, ..., stopping once the
/// terms are decreasing and the current one is below kSeriesRelTol of the sum.
template <typename Term>
double sum_series(Term&& term, const char* what, int m, double z) {
  double sum = 0.0;
  double comp = 0.0;
  double prev = INFINITY;
  for (std::size_t n = 0; n < kSeriesTermCap; ++n) {
    const double t = term(n);
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
    const double total = sum + comp;
    if (t <= prev && std::abs(t) < kSeriesRelTol * std::abs(total)) return total;
    prev = t;
  }
  std::ostringstream os;
  os << what << " did not converge: z = " << z << ", m = " << m << ", " << kSeriesTermCap << " terms";
  throw ConvergenceError(os.str());
}

void require_negative_family(const GeometricSpec& spec) {
  spec.validate();
  if (spec.sign != Sign::minus || spec.m < 1) {
    throw std::invalid_argument("series formulas apply to the negative-m geometric state (sign -, m >= 1)");
  }
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

FockVector finish(std::vector<Complex> amps, const GeometricSpec& spec, detail::Chain chain, const char* what) {
  FockVector s(std::move(amps));
  detail::require_tail(s, spec.cfg, std::span<const detail::Chain>(&chain, 1), what);
  return s;
}

}  // namespace

void GeometricSpec::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
  AddedPhotonIndex{m, sign}.validate();
  cfg.validate();
}

double GeometricSpec::alpha() const { return std::sqrt(1.0 - eta); }

FockVector build_geometric(const GeometricSpec& spec) {
  spec.validate();
  if (spec.m != 0) throw std::invalid_argument("build_geometric needs m = 0");
  const double q = 1.0 - spec.eta;
  std::vector<Complex> amps(spec.cfg.dim);
  for (std::size_t n = 0; n < amps.size(); ++n) {
    amps[n] = std::sqrt(spec.eta) * std::pow(q, 0.5 * static_cast<double>(n));
  }
  detail::Chain chain;
  chain.ratio = [r = std::sqrt(q)](std::size_t) { return Complex(r); };
  return finish(std::move(amps), spec, chain, "geometric state");
}

FockVector build_photon_added_geometric(const GeometricSpec& spec) {
  spec.validate();
  if (spec.sign != Sign::plus || spec.m < 1) throw std::invalid_argument("photon-added geometric state needs sign + and m >= 1");
  const auto m = static_cast<std::size_t>(spec.m);
  const double q = 1.0 - spec.eta;
  std::vector<Complex> amps(spec.cfg.dim);
  for (std::size_t n = 0; n + m < amps.size(); ++n) {
    const double k = static_cast<double>(n);
    const double log_binom = log_factorial(k + spec.m) - log_factorial(k) - log_factorial(spec.m);
    const double log_p = log_binom + (spec.m + 1) * std::log(spec.eta) + k * std::log(q);
    amps[n + m] = std::exp(0.5 * log_p);
  }
  detail::Chain chain;
  chain.start = m;
  chain.ratio = [q, m](std::size_t n) {
    const double k = static_cast<double>(n - m);
    return Complex(std::sqrt(q * (k + m + 1) / (k + 1)));
  };
  return finish(std::move(amps), spec, chain, "photon-added geometric state");
}

FockVector build_negative_m_geometric(const GeometricSpec& spec) {
  require_negative_family(spec);
  const double q = 1.0 - spec.eta;
  const double log_norm = log_factorial(spec.m) - std::log(hyp2f1_11(spec.m, q));
  std::vector<Complex> amps(spec.cfg.dim);
  for (std::size_t n = 0; n < amps.size(); ++n) {
    const double k = static_cast<double>(n);
    const double log_c2 = log_norm + k * std::log(q) + log_factorial(k) - log_factorial(k + spec.m);
    amps[n] = std::exp(0.5 * log_c2);
  }
  detail::Chain chain;
  chain.ratio = [q, m = spec.m](std::size_t n) {
    return Complex(std::sqrt(q * static_cast<double>(n + 1) / static_cast<double>(n + m + 1)));
  };
  return finish(std::move(amps), spec, chain, "negative-m geometric state");
}

FockVector build_geometric_family(const GeometricSpec& spec) {
  if (spec.m == 0) return build_geometric(spec);
  return spec.sign == Sign::plus ? build_photon_added_geometric(spec) : build_negative_m_geometric(spec);
}

NonlinearFn geometric_function() { return NonlinearFn::inverse_sqrt(); }

NonlinearFn photon_added_geometric_function(int m) {
  return NonlinearFn("sqrt(n-" + std::to_string(m) + "+1)/(n+1)", [m](std::int64_t n) {
    if (n < m) return Complex(0.0);
    return Complex(std::sqrt(static_cast<double>(n - m + 1)) / static_cast<double>(n + 1));
  });
}

NonlinearFn negative_m_geometric_function(int m) {
  return NonlinearFn("sqrt(n+" + std::to_string(m) + "+1)/(n+1)", [m](std::int64_t n) {
    return Complex(std::sqrt(static_cast<double>(n + m + 1)) / static_cast<double>(n + 1));
  });
}

double hyp2f1_11(int m, double z) {
  if (m < 1) throw std::invalid_argument("hyp2f1_11 needs m >= 1");
  if (!(z >= 0.0 && z < 1.0)) throw std::invalid_argument("hyp2f1_11 needs 0 <= z < 1");
  double t = 1.0;
  return sum_series(
      [&](std::size_t n) {
        if (n > 0) t *= z * static_cast<double>(n) / static_cast<double>(n + static_cast<std::size_t>(m));
        return t;
      },
      "2F1(1,1;m+1;z)", m, z);
}

double moment_Nk_series(const GeometricSpec& spec, int k) {
  require_negative_family(spec);
  if (k < 1) throw std::invalid_argument("moment order must be positive");
  const double z = 1.0 - spec.eta;
  // b_n = z^n n!/(n+m)!, starting from 1/m!
  double b = std::exp(-log_factorial(spec.m));
  const double series = sum_series(
      [&](std::size_t n) {
        if (n > 0) b *= z * static_cast<double>(n) / static_cast<double>(n + static_cast<std::size_t>(spec.m));
        return std::pow(static_cast<double>(n), k) * b;
      },
      "<N^k> series", spec.m, z);
  return std::exp(log_factorial(spec.m)) / hyp2f1_11(spec.m, z) * series;
}

double lowering_moment_series(const GeometricSpec& spec, int k) {
  require_negative_family(spec);
  if (k < 1) throw std::invalid_argument("moment order must be positive");
  const double z = 1.0 - spec.eta;
  const double m = spec.m;
  // u_n = z^n (n+k)! / sqrt((n+m)! (n+m+k)!)
  double u = std::exp(log_factorial(k) - 0.5 * (log_factorial(m) + log_factorial(m + k)));
  const double series = sum_series(
      [&](std::size_t n) {
        if (n > 0) {
          const double j = static_cast<double>(n);
          u *= z * (j + k) / std::sqrt((j + m) * (j + m + k));
        }
        return u;
      },
      "<a^k> series", spec.m, z);
  return std::exp(log_factorial(m)) / hyp2f1_11(spec.m, z) * std::pow(z, 0.5 * k) * series;
}

}  // namespace nlcs
