#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nlcs/nonlinear_fn.hpp"

namespace nlcs {

struct TruncationConfig {
  std::size_t dim = 512;
  double tail_tol = 1e-12;
  /// Top rows excluded from residual norms and used as the tail-mass cutoff.
  std::size_t boundary_margin = 4;

  /// Throws std::invalid_argument when dim == 0, tail_tol <= 0 or
  /// boundary_margin >= dim.
  void validate() const;

  /// Index from which tail mass is measured: dim - boundary_margin.
  std::size_t tail_start() const { return dim - boundary_margin; }
};

/// Amplitudes c_0 .. c_{D-1} over the number states |0> .. |D-1>.
///
/// Immutable once constructed. Every operation that pushes weight past the
/// top index drops it and accumulates the dropped squared magnitude in
/// truncation_loss().
class FockVector {
 public:
  /// Zero vector of dimension dim.
  explicit FockVector(std::size_t dim);
  /// Throws std::invalid_argument for empty or non-finite input.
  explicit FockVector(std::vector<Complex> amplitudes, double truncation_loss = 0.0);

  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex operator[](std::size_t n) const { return amps_[n]; }

  double truncation_loss() const { return loss_; }
  bool truncation_warning(double tol) const { return loss_ > tol; }

  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tol = 1e-12) const;
  bool is_zero() const;

 private:
  std::vector<Complex> amps_;
  double loss_ = 0.0;
};

/// |n>; throws IndexOutOfRange when n >= cfg.dim.
FockVector basis_state(std::size_t n, const TruncationConfig& cfg);
FockVector basis_state(std::size_t n, std::size_t dim);

/// a^dag^m, implemented as m single raising steps.
FockVector apply_raise(const FockVector& s, std::size_t m = 1);
/// a^m, implemented as m single lowering steps.
FockVector apply_lower(const FockVector& s, std::size_t m = 1);
/// a^{-1}|n> = |n+1>/sqrt(n+1)
FockVector apply_inverse_lower(const FockVector& s);
/// a^dag^{-1}|n> = |n-1>/sqrt(n), a^dag^{-1}|0> = 0
FockVector apply_inverse_raise(const FockVector& s);
/// g(N); evaluates g on every index 0..D-1, throwing EvaluationError on a
/// non-finite value.
FockVector apply_diagonal(const FockVector& s, const NonlinearFn& g);

FockVector scale(const FockVector& s, Complex factor);
/// a - b; dims must match.
FockVector subtract(const FockVector& a, const FockVector& b);
FockVector add(const FockVector& a, const FockVector& b);

/// sum_n conj(a_n) b_n
Complex inner_product(const FockVector& a, const FockVector& b);

/// Unit norm, with the lowest-index nonzero amplitude made real positive.
/// Throws ZeroVectorError for the zero vector.
FockVector normalize(const FockVector& s);

/// sum_{n >= k} |c_n|^2 / sum_n |c_n|^2; 0 for the zero vector.
double tail_mass(const FockVector& s, std::size_t k);

/// |<a|b>| / (|a| |b|)
double overlap_magnitude(const FockVector& a, const FockVector& b);

}  // namespace nlcs
