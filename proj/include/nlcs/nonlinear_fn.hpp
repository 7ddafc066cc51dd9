#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

namespace nlcs {

using Complex = std::complex<double>;

/// A (possibly complex) function of the photon number, used as f(N), F(N)
/// and every derived diagonal operator.
///
/// The argument is signed: deformed operators such as f(N - m) are evaluated
/// below zero, where families like 1/sqrt(n+1) may or may not be defined.
/// Evaluators must be pure so they can be shared across threads.
class NonlinearFn {
 public:
  using Evaluator = std::function<Complex(std::int64_t)>;

  NonlinearFn(std::string name, Evaluator eval);

  Complex operator()(std::int64_t n) const { return eval_(n); }

  /// Evaluates and throws EvaluationError if the value is NaN or infinite.
  Complex checked(std::int64_t n) const;

  /// Evaluates and throws EvaluationError if the value is zero or non-finite.
  Complex checked_nonzero(std::int64_t n) const;

  const std::string& name() const { return name_; }

  /// n -> f(n + shift)
  NonlinearFn shifted(std::int64_t shift) const;

  static NonlinearFn constant(Complex value);
  static NonlinearFn one() { return constant(1.0); }
  /// n -> n + 1
  static NonlinearFn linear();
  /// n -> 1/sqrt(n + 1), the geometric-state function.
  static NonlinearFn inverse_sqrt();
  /// n -> 1/(n + 1)
  static NonlinearFn reciprocal();

 private:
  std::string name_;
  Evaluator eval_;
};

}  // namespace nlcs
