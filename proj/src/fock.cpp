#include "nlcs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "nlcs/errors.hpp"

namespace nlcs {

namespace {

void require_same_dim(const FockVector& a, const FockVector& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw DimensionMismatch(os.str());
  }
}

FockVector raise_once(const FockVector& s) {
  const std::size_t d = s.dim();
  std::vector<Complex> out(d);
  for (std::size_t n = 0; n + 1 < d; ++n) {
    out[n + 1] = s[n] * std::sqrt(static_cast<double>(n + 1));
  }
  const double top = std::norm(s[d - 1]) * static_cast<double>(d);
  return FockVector(std::move(out), s.truncation_loss() + top);
}

FockVector lower_once(const FockVector& s) {
  const std::size_t d = s.dim();
  std::vector<Complex> out(d);
  for (std::size_t n = 1; n < d; ++n) {
    out[n - 1] = s[n] * std::sqrt(static_cast<double>(n));
  }
  return FockVector(std::move(out), s.truncation_loss());
}

}  // namespace

void TruncationConfig::validate() const {
  if (dim == 0) throw std::invalid_argument("truncation dim must be positive");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be positive");
  if (boundary_margin >= dim) throw std::invalid_argument("boundary_margin must be below dim");
}

FockVector::FockVector(std::size_t dim) : amps_(dim) {
  if (dim == 0) throw std::invalid_argument("FockVector dimension must be positive");
}

FockVector::FockVector(std::vector<Complex> amplitudes, double truncation_loss)
    : amps_(std::move(amplitudes)), loss_(truncation_loss) {
  if (amps_.empty()) throw std::invalid_argument("FockVector dimension must be positive");
  for (std::size_t n = 0; n < amps_.size(); ++n) {
    if (!std::isfinite(amps_[n].real()) || !std::isfinite(amps_[n].imag())) {
      std::ostringstream os;
      os << "non-finite amplitude at n = " << n;
      throw std::invalid_argument(os.str());
    }
  }
}

double FockVector::norm_squared() const {
  double sum = 0.0;
  for (const auto& c : amps_) sum += std::norm(c);
  return sum;
}

double FockVector::norm() const { return std::sqrt(norm_squared()); }

bool FockVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) < tol; }

bool FockVector::is_zero() const {
  return std::all_of(amps_.begin(), amps_.end(), [](Complex c) { return c == Complex(0.0); });
}

FockVector basis_state(std::size_t n, std::size_t dim) {
  if (n >= dim) {
    std::ostringstream os;
    os << "basis index " << n << " out of range for dim " << dim;
    throw IndexOutOfRange(os.str());
  }
  std::vector<Complex> amps(dim);
  amps[n] = 1.0;
  return FockVector(std::move(amps));
}

FockVector basis_state(std::size_t n, const TruncationConfig& cfg) { return basis_state(n, cfg.dim); }

FockVector apply_raise(const FockVector& s, std::size_t m) {
  FockVector out = s;
  for (std::size_t i = 0; i < m; ++i) out = raise_once(out);
  return out;
}

FockVector apply_lower(const FockVector& s, std::size_t m) {
  FockVector out = s;
  for (std::size_t i = 0; i < m; ++i) out = lower_once(out);
  return out;
}

FockVector apply_inverse_lower(const FockVector& s) {
  const std::size_t d = s.dim();
  std::vector<Complex> out(d);
  for (std::size_t n = 0; n + 1 < d; ++n) {
    out[n + 1] = s[n] / std::sqrt(static_cast<double>(n + 1));
  }
  const double top = std::norm(s[d - 1]) / static_cast<double>(d);
  return FockVector(std::move(out), s.truncation_loss() + top);
}

FockVector apply_inverse_raise(const FockVector& s) {
  const std::size_t d = s.dim();
  std::vector<Complex> out(d);
  for (std::size_t n = 1; n < d; ++n) {
    out[n - 1] = s[n] / std::sqrt(static_cast<double>(n));
  }
  return FockVector(std::move(out), s.truncation_loss());
}

FockVector apply_diagonal(const FockVector& s, const NonlinearFn& g) {
  std::vector<Complex> out(s.dim());
  for (std::size_t n = 0; n < s.dim(); ++n) {
    out[n] = s[n] * g.checked(static_cast<std::int64_t>(n));
  }
  return FockVector(std::move(out), s.truncation_loss());
}

FockVector scale(const FockVector& s, Complex factor) {
  std::vector<Complex> out(s.amplitudes().begin(), s.amplitudes().end());
  for (auto& c : out) c *= factor;
  return FockVector(std::move(out), s.truncation_loss() * std::norm(factor));
}

FockVector subtract(const FockVector& a, const FockVector& b) {
  require_same_dim(a, b);
  std::vector<Complex> out(a.dim());
  for (std::size_t n = 0; n < a.dim(); ++n) out[n] = a[n] - b[n];
  return FockVector(std::move(out));
}

FockVector add(const FockVector& a, const FockVector& b) {
  require_same_dim(a, b);
  std::vector<Complex> out(a.dim());
  for (std::size_t n = 0; n < a.dim(); ++n) out[n] = a[n] + b[n];
  return FockVector(std::move(out), a.truncation_loss() + b.truncation_loss());
}

Complex inner_product(const FockVector& a, const FockVector& b) {
  require_same_dim(a, b);
  Complex sum = 0.0;
  for (std::size_t n = 0; n < a.dim(); ++n) sum += std::conj(a[n]) * b[n];
  return sum;
}

FockVector normalize(const FockVector& s) {
  const double nrm = s.norm();
  if (nrm == 0.0) throw ZeroVectorError("cannot normalize the zero vector");
  const auto amps = s.amplitudes();
  const auto first = std::find_if(amps.begin(), amps.end(), [](Complex c) { return c != Complex(0.0); });
  const Complex phase = *first / std::abs(*first);
  std::vector<Complex> out(amps.begin(), amps.end());
  const Complex factor = std::conj(phase) / nrm;
  for (auto& c : out) c *= factor;
  // The lowest amplitude is set exactly real so the phase convention is bitwise.
  const auto k = static_cast<std::size_t>(first - amps.begin());
  out[k] = Complex(std::abs(amps[k]) / nrm, 0.0);
  return FockVector(std::move(out), s.truncation_loss() / (nrm * nrm));
}

double tail_mass(const FockVector& s, std::size_t k) {
  if (k > s.dim()) throw IndexOutOfRange("tail_mass cutoff beyond dimension");
  double head = 0.0;
  double tail = 0.0;
  for (std::size_t n = 0; n < s.dim(); ++n) (n < k ? head : tail) += std::norm(s[n]);
  const double total = head + tail;
  return total == 0.0 ? 0.0 : tail / total;
}

double overlap_magnitude(const FockVector& a, const FockVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ZeroVectorError("overlap with the zero vector");
  return std::abs(inner_product(a, b)) / (na * nb);
}

}  // namespace nlcs
