#include <cmath>
#include <vector>

#include "doctest.h"
#include "nlcs/errors.hpp"
#include "nlcs/geometric.hpp"
#include "nlcs/state_builders.hpp"
#include "nlcs/statistics.hpp"
#include "test_helpers.hpp"

using namespace nlcs;
using nlcs::testing::log_fact;
using nlcs::testing::max_abs_diff;

namespace {

const std::vector<double> kEtas = {0.1, 0.3, 0.5, 0.7, 0.9};
const std::vector<int> kMs = {1, 2, 3, 5};

struct Family {
  const char* label;
  NonlinearFn f;
  Complex alpha;
};

std::vector<Family> grid_families() {
  std::vector<Family> out;
  for (double eta : kEtas) out.push_back({"geometric", NonlinearFn::inverse_sqrt(), std::sqrt(1.0 - eta)});
  for (double a : {0.3, 0.8}) {
    out.push_back({"f=1", NonlinearFn::one(), a});
    out.push_back({"f=n+1", NonlinearFn::linear(), a});
  }
  return out;
}

/// Normalizes a real coefficient list given as log-magnitudes into a FockVector.
FockVector from_log_coeffs(const std::vector<double>& logc) {
  double peak = -INFINITY;
  for (double l : logc) peak = std::max(peak, l);
  std::vector<Complex> amps;
  for (double l : logc) amps.emplace_back(std::exp(l - peak));
  return normalize(FockVector(std::move(amps)));
}

/// Direct evaluation of the negative-m number-state expansion:
/// alpha^n sqrt(n!) / (f(n+m-1)...f(0) (n+m)!), f real positive on its range.
FockVector negative_m_direct_series(const NonlinearFn& f, double alpha, int m, std::size_t dim) {
  std::vector<double> logc(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    double log_prod = 0.0;
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n) + m; ++k) log_prod += std::log(std::abs(f(k)));
    logc[n] = n * std::log(alpha) + 0.5 * log_fact(n) - log_prod - log_fact(n + m);
  }
  return from_log_coeffs(logc);
}

TruncationConfig small_cfg(std::size_t dim) {
  TruncationConfig cfg;
  cfg.dim = dim;
  return cfg;
}

}  // namespace

TEST_SUITE("state_builders") {
  TEST_CASE("build_nlcs: f = 1 gives the coherent state") {
    const FockVector s = build_nlcs({NonlinearFn::one(), 1.0, small_cfg(64)});
    for (std::size_t n = 0; n < 30; ++n) {
      CHECK(std::abs(s[n] - std::exp(-0.5 - 0.5 * log_fact(n))) < 1e-15);
    }
    CHECK(std::abs(mandel_q(s)) < 1e-10);
  }

  TEST_CASE("build_nlcs: geometric state") {
    const FockVector s = build_nlcs({NonlinearFn::inverse_sqrt(), std::sqrt(0.5), {}});
    CHECK(std::norm(s[0]) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::norm(s[1]) == doctest::Approx(0.25).epsilon(1e-14));
  }

  TEST_CASE("build_nlcs: f(n) = n + 1 against the direct series") {
    const double alpha = 2.0;
    const std::size_t dim = 128;
    std::vector<double> logc(dim);
    for (std::size_t n = 0; n < dim; ++n) logc[n] = n * std::log(alpha) - 0.5 * log_fact(n) - log_fact(n);
    const FockVector oracle = from_log_coeffs(logc);
    const FockVector s = build_nlcs({NonlinearFn::linear(), alpha, small_cfg(dim)});
    CHECK(max_abs_diff(s, oracle) < 1e-14);
    CHECK(eigen_residual(s, 1, NonlinearFn::linear(), alpha, 4) < 1e-10);
  }

  TEST_CASE("build_nlcs: complex alpha") {
    const Complex alpha(0.4, -0.7);
    const FockVector s = build_nlcs({NonlinearFn::linear(), alpha, small_cfg(96)});
    CHECK(eigen_residual(s, 1, NonlinearFn::linear(), alpha, 4) < 1e-10);
    CHECK(s.is_normalized());
  }

  TEST_CASE("build_nlcs: zero f names the offending n") {
    const NonlinearFn f("zero at 3", [](std::int64_t n) { return Complex(n == 3 ? 0.0 : 1.0); });
    try {
      build_nlcs({f, 0.5, small_cfg(32)});
      FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
      CHECK(e.n() == 3);
    }
  }

  TEST_CASE("build_nlcs: tail-mass guard suggests an adequate dimension") {
    // Geometric eta = 0.05: tail above k is 0.95^k, below 1e-12 from k = 539,
    // so with the default margin of 4 the smallest adequate dim is 543.
    TruncationConfig cfg = small_cfg(32);
    try {
      build_nlcs({NonlinearFn::inverse_sqrt(), std::sqrt(0.95), cfg});
      FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
      CHECK(e.tail() > cfg.tail_tol);
      CHECK(e.suggested_dim() == 543);
    }
    // The geometric series diverges for alpha > 1.
    try {
      build_nlcs({NonlinearFn::inverse_sqrt(), 1.2, small_cfg(64)});
      FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
      CHECK(e.suggested_dim() == 0);
    }
  }

  TEST_CASE("build_panlcs_apply") {
    const NlcsSpec geo{NonlinearFn::inverse_sqrt(), std::sqrt(0.5), {}};
    const FockVector plain = build_nlcs(geo);
    const FockVector m0 = build_panlcs_apply(geo, 0);
    for (std::size_t n = 0; n < plain.dim(); ++n) CHECK(m0[n] == plain[n]);

    const FockVector two = build_panlcs_apply({NonlinearFn::one(), 0.0, small_cfg(16)}, 2);
    CHECK(max_abs_diff(two, basis_state(2, 16)) == 0.0);

    // Photon-added geometric state: negative binomial in the shifted index.
    const double eta = 0.5;
    const FockVector nb = build_panlcs_apply(geo, 1);
    CHECK(nb[0] == Complex(0.0));
    for (std::size_t n = 0; n < 60; ++n) {
      const double p = (n + 1.0) * eta * eta * std::pow(1.0 - eta, n);
      CHECK(std::norm(nb[n + 1]) == doctest::Approx(p).epsilon(1e-12));
    }

    CHECK_THROWS_AS(build_panlcs_apply(geo, -1), std::invalid_argument);
  }

  TEST_CASE("build_panlcs_deformed") {
    for (const auto& f : {NonlinearFn::one(), NonlinearFn::linear(), NonlinearFn::inverse_sqrt()}) {
      CHECK(max_abs_diff(build_panlcs_deformed({f, 0.0, small_cfg(16)}, 3), basis_state(3, 16)) == 0.0);
    }
    const NlcsSpec coherent{NonlinearFn::one(), 0.8, small_cfg(96)};
    CHECK(max_abs_diff(build_panlcs_deformed(coherent, 1), build_panlcs_apply(coherent, 1)) < 1e-13);

    const NlcsSpec geo{NonlinearFn::inverse_sqrt(), std::sqrt(0.5), {}};
    CHECK(overlap_magnitude(build_panlcs_deformed(geo, 2), build_panlcs_apply(geo, 2)) > 1.0 - 1e-10);

    const NonlinearFn f("zero at 2", [](std::int64_t n) { return Complex(n == 2 ? 0.0 : 1.0); });
    CHECK_THROWS_AS(build_panlcs_deformed({f, 0.5, small_cfg(32)}, 1), EvaluationError);
  }

  TEST_CASE("build_negative_panlcs_series") {
    CHECK(max_abs_diff(build_negative_panlcs_series({NonlinearFn::linear(), 0.0, small_cfg(16)}, 2),
                       basis_state(0, 16)) == 0.0);

    // Geometric family against (1-eta)^{n/2} sqrt(n!/(n+m)!).
    for (int m : kMs) {
      const double eta = 0.3;
      std::vector<double> logc(512);
      for (std::size_t n = 0; n < logc.size(); ++n) {
        logc[n] = 0.5 * n * std::log(1.0 - eta) + 0.5 * (log_fact(n) - log_fact(n + m));
      }
      const FockVector s = build_negative_panlcs_series({NonlinearFn::inverse_sqrt(), std::sqrt(1.0 - eta), {}}, m);
      CHECK(max_abs_diff(s, from_log_coeffs(logc)) < 1e-14);
    }

    // f = 1, m = 1, alpha = 0.6: c_n ~ alpha^n sqrt(n!)/(n+1)!
    const FockVector s = build_negative_panlcs_series({NonlinearFn::one(), 0.6, small_cfg(64)}, 1);
    CHECK(max_abs_diff(s, negative_m_direct_series(NonlinearFn::one(), 0.6, 1, 64)) < 1e-14);

    // The direct product over f(0)..f(n+m-1) for a non-constant f.
    const FockVector lin = build_negative_panlcs_series({NonlinearFn::linear(), 0.8, small_cfg(64)}, 3);
    CHECK(max_abs_diff(lin, negative_m_direct_series(NonlinearFn::linear(), 0.8, 3, 64)) < 1e-14);

    CHECK_THROWS_AS(build_negative_panlcs_series({NonlinearFn::one(), 0.5, small_cfg(16)}, 0), std::invalid_argument);
  }

  TEST_CASE("the recurrence tolerates f vanishing below m") {
    // f(0) = 0 breaks the printed product form but not the recurrence, which
    // only reads f(n + m).
    const NonlinearFn f("n", [](std::int64_t n) { return Complex(static_cast<double>(n)); });
    const FockVector s = build_negative_panlcs_series({f, 0.5, small_cfg(64)}, 2);
    CHECK(eigen_residual(s, 1, added_photon_function(f, 2, Sign::minus), 0.5, 4) < 1e-10);
  }

  TEST_CASE("build_negative_panlcs_deformed and _inverse") {
    for (const auto& f : {NonlinearFn::one(), NonlinearFn::inverse_sqrt()}) {
      const NlcsSpec vac{f, 0.0, small_cfg(16)};
      CHECK(max_abs_diff(build_negative_panlcs_deformed(vac, 2), basis_state(0, 16)) == 0.0);
      CHECK(max_abs_diff(build_negative_panlcs_inverse(vac, 2), basis_state(0, 16)) == 0.0);
    }

    const NlcsSpec c2{NonlinearFn::one(), 0.5, small_cfg(96)};
    CHECK(overlap_magnitude(build_negative_panlcs_deformed(c2, 2), build_negative_panlcs_inverse(c2, 2)) > 1.0 - 1e-10);

    const NlcsSpec c3{NonlinearFn::one(), 0.4, small_cfg(96)};
    CHECK(overlap_magnitude(build_negative_panlcs_inverse(c3, 3), build_negative_panlcs_deformed(c3, 3)) > 1.0 - 1e-10);

    const GeometricSpec closed{0.5, 1, Sign::minus, {}};
    const NlcsSpec geo{NonlinearFn::inverse_sqrt(), closed.alpha(), {}};
    CHECK(overlap_magnitude(build_negative_panlcs_inverse(geo, 1), build_negative_m_geometric(closed)) > 1.0 - 1e-10);
    CHECK(overlap_magnitude(build_negative_panlcs_deformed(geo, 1), build_negative_m_geometric(closed)) > 1.0 - 1e-10);
  }

  TEST_CASE("three negative-m routes and two positive-m routes agree on the grid") {
    for (const auto& fam : grid_families()) {
      for (int m : kMs) {
        CAPTURE(fam.label);
        CAPTURE(fam.alpha);
        CAPTURE(m);
        const NlcsSpec spec{fam.f, fam.alpha, {}};
        const FockVector series = build_negative_panlcs_series(spec, m);
        const FockVector deformed = build_negative_panlcs_deformed(spec, m);
        const FockVector inverse = build_negative_panlcs_inverse(spec, m);
        CHECK(overlap_magnitude(series, deformed) > 1.0 - 1e-10);
        CHECK(overlap_magnitude(series, inverse) > 1.0 - 1e-10);
        CHECK(overlap_magnitude(deformed, inverse) > 1.0 - 1e-10);
        CHECK(overlap_magnitude(build_panlcs_apply(spec, m), build_panlcs_deformed(spec, m)) > 1.0 - 1e-10);
      }
    }
  }

  TEST_CASE("photon-added states are NLCS with the deformed function") {
    for (const auto& fam : grid_families()) {
      for (int m : kMs) {
        CAPTURE(fam.label);
        CAPTURE(m);
        const NlcsSpec spec{fam.f, fam.alpha, {}};
        const FockVector plus = build_panlcs_apply(spec, m);
        CHECK(eigen_residual(plus, 1, added_photon_function(fam.f, m, Sign::plus), fam.alpha, 4) < 1e-10);
        for (int n = 0; n < m; ++n) CHECK(plus[static_cast<std::size_t>(n)] == Complex(0.0));

        const FockVector minus = build_negative_panlcs_series(spec, m);
        CHECK(eigen_residual(minus, 1, added_photon_function(fam.f, m, Sign::minus), fam.alpha, 4) < 1e-10);
        CHECK(std::abs(minus[0]) > 0.0);
      }
    }
  }

  TEST_CASE("eigen_residual") {
    const GeometricSpec g{0.4, 2, Sign::plus, {}};
    const NlcsSpec geo{NonlinearFn::inverse_sqrt(), g.alpha(), {}};
    CHECK(eigen_residual(build_nlcs(geo), 1, geo.f, geo.alpha, 4) < 1e-10);
    CHECK(eigen_residual(build_panlcs_apply(geo, 2), 1, photon_added_geometric_function(2), g.alpha(), 4) < 1e-10);
    CHECK(eigen_residual(build_negative_panlcs_series(geo, 2), 1, negative_m_geometric_function(2), g.alpha(), 4) <
          1e-10);
    // Wrong eigenvalue.
    CHECK(eigen_residual(build_nlcs(geo), 1, geo.f, 0.5 * geo.alpha, 4) > 0.1);
    CHECK_THROWS_AS(eigen_residual(build_nlcs(geo), 2, geo.f, geo.alpha, 1), std::invalid_argument);
  }

  TEST_CASE("deformed lowering operators annihilate the right basis states") {
    const std::size_t dim = 40;
    for (const auto& f : {NonlinearFn::one(), NonlinearFn::linear()}) {
      for (int m : {1, 2, 3, 5}) {
        CAPTURE(f.name());
        CAPTURE(m);
        const DeformedLoweringOp plus(f, m, Sign::plus);
        const DeformedLoweringOp minus(f, m, Sign::minus);
        for (std::size_t n = 0; n < dim; ++n) {
          const FockVector e = basis_state(n, dim);
          const bool plus_kills = n == 0 || n == static_cast<std::size_t>(m);
          CHECK(plus.apply(e).is_zero() == plus_kills);
          CHECK(minus.apply(e).is_zero() == (n == 0));
        }
      }
    }
  }

  TEST_CASE("make_g_dagger reduces to the closed forms") {
    const std::size_t dim = 64;
    for (const auto& f : {NonlinearFn::inverse_sqrt(), NonlinearFn::linear()}) {
      for (int m : kMs) {
        const auto mm = static_cast<std::size_t>(m);
        const SectorRaising gp = make_g_dagger(DeformedLoweringOp(f, m, Sign::plus), mm);
        const SectorRaising gm = make_g_dagger(DeformedLoweringOp(f, m, Sign::minus), 0);
        for (std::size_t n = mm; n + 1 < dim; ++n) {
          const Complex expect = std::sqrt(n + 1.0) / f(static_cast<std::int64_t>(n) - m);
          CHECK(std::abs(gp(basis_state(n, dim))[n + 1] - expect) < 1e-12 * std::abs(expect));
        }
        for (std::size_t n = 0; n + 1 < dim; ++n) {
          const Complex expect = std::sqrt(n + 1.0) * (n + 1.0) / (f(static_cast<std::int64_t>(n) + m) * (n + m + 1.0));
          CHECK(std::abs(gm(basis_state(n, dim))[n + 1] - expect) < 1e-12 * std::abs(expect));
        }
      }
    }
    // f = 1, m = 0: A = a and G^dag = a^dag, so [a, G^dag] = 1 on n = 0..20.
    const DeformedLoweringOp a(NonlinearFn::one(), 0, Sign::plus);
    const SectorRaising g = make_g_dagger(a, 0);
    CHECK(max_abs_diff(g(basis_state(4, 32)), apply_raise(basis_state(4, 32))) < 1e-14);
    CHECK(commutator_residual(a.lowering(), g, 0, 20, 32) < 1e-13);
  }

  TEST_CASE("commutator identity for both sector constructions") {
    for (const auto& f : {NonlinearFn::inverse_sqrt(), NonlinearFn::one(), NonlinearFn::linear()}) {
      for (int m : kMs) {
        const auto mm = static_cast<std::size_t>(m);
        const DeformedLoweringOp plus(f, m, Sign::plus);
        CHECK(commutator_residual(plus.lowering(), make_g_dagger(plus, mm), mm, 100, 512) < 1e-12);
        const DeformedLoweringOp minus(f, m, Sign::minus);
        CHECK(commutator_residual(minus.lowering(), make_g_dagger(minus, 0), 0, 100, 512) < 1e-12);
      }
    }
  }

  TEST_CASE("commutator residual detects a wrong conjugate operator") {
    const NonlinearFn f = NonlinearFn::inverse_sqrt();
    const int m = 2;
    const DeformedLoweringOp minus(f, m, Sign::minus);
    // Drop the (N+1) factor from the sector-|0> conjugate.
    const OperatorAction wrong = [&](const FockVector& s) {
      std::vector<Complex> out(s.dim());
      for (std::size_t n = 0; n + 1 < s.dim(); ++n) {
        out[n + 1] = s[n] * std::sqrt(n + 1.0) / (f(static_cast<std::int64_t>(n) + m) * (n + m + 1.0));
      }
      return FockVector(std::move(out));
    };
    CHECK(commutator_residual(minus.lowering(), wrong, 0, 100, 512) > 0.1);
  }

  TEST_CASE("sector raising for a two-photon lowering operator") {
    // A = a^2 has the even and odd sectors; [A, G_j^dag] = 1 on each.
    const LoweringAction a2{NonlinearFn::one(), 2};
    CHECK(commutator_residual(a2, make_g_dagger(a2, 0), 0, 80, 128) < 1e-12);
    CHECK(commutator_residual(a2, make_g_dagger(a2, 1), 1, 81, 128) < 1e-12);
  }

  TEST_CASE("sector raising errors") {
    const DeformedLoweringOp plus(NonlinearFn::one(), 3, Sign::plus);
    const SectorRaising g = make_g_dagger(plus, 3);
    CHECK_THROWS_AS(g(basis_state(1, 16)), std::domain_error);
    CHECK(g(FockVector(16)).is_zero());

    const NonlinearFn dead("zero at 5", [](std::int64_t n) { return Complex(n == 5 ? 0.0 : 1.0); });
    const SectorRaising broken = make_g_dagger(LoweringAction{dead, 1}, 0);
    CHECK_THROWS_AS(broken(basis_state(5, 16)), EvaluationError);
  }
}
