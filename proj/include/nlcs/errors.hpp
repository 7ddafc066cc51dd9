#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nlcs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroVectorError : public Error {
 public:
  using Error::Error;
};

/// A nonlinear function returned a non-finite value, or vanished where the
/// construction has to divide by it.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::int64_t n) : Error(what), n_(n) {}
  std::int64_t n() const { return n_; }

 private:
  std::int64_t n_;
};

/// Tail mass above the safe band exceeds the configured tolerance.
/// suggested_dim() is 0 when no adequate dimension was found.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double tail, std::size_t suggested_dim)
      : Error(what), tail_(tail), suggested_dim_(suggested_dim) {}
  double tail() const { return tail_; }
  std::size_t suggested_dim() const { return suggested_dim_; }

 private:
  double tail_;
  std::size_t suggested_dim_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class NotImplemented : public Error {
 public:
  using Error::Error;
};

}  // namespace nlcs
