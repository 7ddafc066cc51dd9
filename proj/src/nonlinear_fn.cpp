#include "nlcs/nonlinear_fn.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "nlcs/errors.hpp"

namespace nlcs {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

NonlinearFn::NonlinearFn(std::string name, Evaluator eval)
    : name_(std::move(name)), eval_(std::move(eval)) {}

Complex NonlinearFn::checked(std::int64_t n) const {
  const Complex v = eval_(n);
  if (!is_finite(v)) {
    std::ostringstream os;
    os << "nonlinear function '" << name_ << "' is not finite at n = " << n;
    throw EvaluationError(os.str(), n);
  }
  return v;
}

Complex NonlinearFn::checked_nonzero(std::int64_t n) const {
  const Complex v = checked(n);
  if (v == Complex(0.0)) {
    std::ostringstream os;
    os << "nonlinear function '" << name_ << "' vanishes at n = " << n;
    throw EvaluationError(os.str(), n);
  }
  return v;
}

NonlinearFn NonlinearFn::shifted(std::int64_t shift) const {
  std::ostringstream os;
  os << name_ << "(n" << (shift < 0 ? "" : "+") << shift << ")";
  return NonlinearFn(os.str(), [eval = eval_, shift](std::int64_t n) { return eval(n + shift); });
}

NonlinearFn NonlinearFn::constant(Complex value) {
  std::ostringstream os;
  os << "const(" << value.real();
  if (value.imag() != 0.0) os << (value.imag() < 0 ? "" : "+") << value.imag() << "i";
  os << ")";
  return NonlinearFn(os.str(), [value](std::int64_t) { return value; });
}

NonlinearFn NonlinearFn::linear() {
  return NonlinearFn("n+1", [](std::int64_t n) { return Complex(static_cast<double>(n) + 1.0); });
}

NonlinearFn NonlinearFn::inverse_sqrt() {
  // Complex sqrt keeps the value finite for n < -1.
  return NonlinearFn("1/sqrt(n+1)", [](std::int64_t n) {
    return 1.0 / std::sqrt(Complex(static_cast<double>(n) + 1.0));
  });
}

NonlinearFn NonlinearFn::reciprocal() {
  return NonlinearFn("1/(n+1)",
                     [](std::int64_t n) { return Complex(1.0 / (static_cast<double>(n) + 1.0)); });
}

}  // namespace nlcs
