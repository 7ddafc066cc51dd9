#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlcs/fock.hpp"

namespace nlcs::detail {

/// One amplitude chain c_start, c_{start+step}, ... with
/// c_{n+step} = ratio(n) * c_n.
struct Chain {
  std::size_t start = 0;
  std::size_t step = 1;
  Complex seed = 1.0;
  std::function<Complex(std::size_t)> ratio;
};

/// Writes every chain into a dim-length amplitude array, rescaling on the fly
/// so large intermediate values never overflow. Only the relative scale
/// between chains sharing no index is preserved up to the common rescale.
std::vector<Complex> unroll(std::size_t dim, std::span<const Chain> chains);

/// Smallest dimension whose tail above dim - margin is below tol, found by
/// continuing the chains past cfg.dim in log space. Returns 0 if the
/// continuation does not converge within the search cap.
std::size_t estimate_adequate_dim(std::span<const Chain> chains, const TruncationConfig& cfg);

/// Throws TruncationError when tail_mass(s, cfg.tail_start()) > cfg.tail_tol,
/// with the estimated adequate dimension in the message.
void require_tail(const FockVector& s, const TruncationConfig& cfg, std::span<const Chain> chains,
                  const std::string& what);

}  // namespace nlcs::detail
