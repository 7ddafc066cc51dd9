#include "recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlcs/errors.hpp"

namespace nlcs::detail {

namespace {

constexpr double kRescaleAbove = 1e150;
constexpr std::size_t kSearchCap = std::size_t{1} << 20;

}  // namespace

std::vector<Complex> unroll(std::size_t dim, std::span<const Chain> chains) {
  // Each chain is unrolled on its own scale, then all are brought to the
  // largest one so the relative weight between chains is kept.
  std::vector<std::vector<Complex>> parts;
  std::vector<int> rescales;
  for (const auto& chain : chains) {
    std::vector<Complex> amps(dim);
    int count = 0;
    if (chain.start < dim) {
      Complex c = chain.seed;
      amps[chain.start] = c;
      for (std::size_t n = chain.start; n + chain.step < dim; n += chain.step) {
        c *= chain.ratio(n);
        if (std::abs(c) > kRescaleAbove) {
          for (auto& a : amps) a /= kRescaleAbove;
          c /= kRescaleAbove;
          ++count;
        }
        amps[n + chain.step] = c;
      }
    }
    parts.push_back(std::move(amps));
    rescales.push_back(count);
  }
  std::vector<Complex> out(dim);
  if (parts.empty()) return out;
  const int top = *std::max_element(rescales.begin(), rescales.end());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double factor = std::pow(kRescaleAbove, rescales[i] - top);
    for (std::size_t n = 0; n < dim; ++n) out[n] += parts[i][n] * factor;
  }
  return out;
}

std::size_t estimate_adequate_dim(std::span<const Chain> chains, const TruncationConfig& cfg) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const std::size_t cap = std::max<std::size_t>(kSearchCap, 64 * cfg.dim);
  std::vector<double> logw;  // log |c_n|^2, merged over chains
  std::size_t len = cfg.dim;
  try {
    while (true) {
      logw.assign(len, neg_inf);
      for (const auto& chain : chains) {
        if (chain.start >= len || chain.seed == Complex(0.0)) continue;
        double lc = std::log(std::norm(chain.seed));
        logw[chain.start] = lc;
        for (std::size_t n = chain.start; n + chain.step < len; n += chain.step) {
          const double r = std::norm(chain.ratio(n));
          if (r == 0.0) break;
          lc += std::log(r);
          logw[n + chain.step] = lc;
        }
      }
      const double peak = *std::max_element(logw.begin(), logw.end());
      if (!std::isfinite(peak)) return 0;
      // Converged once the last stretch sits far below the peak.
      const std::size_t probe = std::min<std::size_t>(len, 16);
      const bool settled = std::all_of(logw.end() - static_cast<std::ptrdiff_t>(probe), logw.end(),
                                       [&](double w) { return w < peak - 80.0; });
      if (settled) break;
      if (len >= cap) return 0;
      len = std::min(cap, len * 2);
    }
  } catch (const Error&) {
    return 0;
  }

  const double peak = *std::max_element(logw.begin(), logw.end());
  std::vector<double> suffix(logw.size() + 1, 0.0);
  for (std::size_t n = logw.size(); n-- > 0;) {
    suffix[n] = suffix[n + 1] + std::exp(logw[n] - peak);
  }
  const double total = suffix[0];
  for (std::size_t d = cfg.boundary_margin + 1; d <= logw.size(); ++d) {
    if (suffix[d - cfg.boundary_margin] / total <= cfg.tail_tol) return d;
  }
  return 0;
}

void require_tail(const FockVector& s, const TruncationConfig& cfg, std::span<const Chain> chains,
                  const std::string& what) {
  const double tail = tail_mass(s, cfg.tail_start());
  if (tail <= cfg.tail_tol) return;
  const std::size_t suggested = estimate_adequate_dim(chains, cfg);
  std::ostringstream os;
  os << what << ": tail mass " << tail << " above n = " << cfg.tail_start() << " exceeds tolerance "
     << cfg.tail_tol << " at dim " << cfg.dim;
  if (suggested != 0) {
    os << "; smallest adequate dim is about " << suggested;
  } else {
    os << "; no adequate dim found (series may not converge for these parameters)";
  }
  throw TruncationError(os.str(), tail, suggested);
}

}  // namespace nlcs::detail
