#include "nlcs/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nlcs/errors.hpp"
#include "nlcs/geometric.hpp"
#include "nlcs/state_builders.hpp"
#include "nlcs/two_photon.hpp"

namespace nlcs {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::size_t default_dim() {
  if (const char* env = std::getenv("NLCS_DEFAULT_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 512;
}

void SweepConfig::validate() const {
  if (m_list.empty()) throw std::invalid_argument("m list must not be empty");
  for (int m : m_list) {
    if (m < 1) throw std::invalid_argument("every m must be >= 1");
  }
  if (!(eta_min > 0.0 && eta_max < 1.0)) throw std::invalid_argument("eta range must lie inside (0, 1)");
  if (!(eta_min < eta_max)) throw std::invalid_argument("eta_min must be below eta_max");
  if (eta_steps < 2) throw std::invalid_argument("eta_steps must be at least 2");
  truncation().validate();
}

TruncationConfig SweepConfig::truncation() const {
  TruncationConfig t;
  t.dim = dim;
  t.tail_tol = tail_tol;
  return t;
}

std::vector<double> eta_grid(const SweepConfig& cfg) {
  std::vector<double> grid;
  const double step = (cfg.eta_max - cfg.eta_min) / (cfg.eta_steps - 1);
  for (int i = 0; i + 1 < cfg.eta_steps; ++i) grid.push_back(cfg.eta_min + i * step);
  grid.push_back(cfg.eta_max);
  return grid;
}

SweepOutcome sweep_negative_m_geometric(const SweepConfig& cfg) {
  cfg.validate();
  SweepOutcome out;
  const auto grid = eta_grid(cfg);
  for (int m : cfg.m_list) {
    for (double eta : grid) {
      const GeometricSpec spec{eta, m, Sign::minus, cfg.truncation()};
      try {
        const FockVector s = build_negative_m_geometric(spec);
        out.rows.push_back(make_stats_record(s, eta, m, Sign::minus, spec.cfg));
      } catch (const std::exception& e) {
        out.failures.push_back("eta=" + format_number(eta) + " m=" + std::to_string(m) + ": " + e.what());
      }
    }
  }
  return out;
}

SweepOutcome run_figure1(const SweepConfig& cfg, std::ostream& csv) {
  SweepOutcome out = sweep_negative_m_geometric(cfg);
  csv << "eta,m,mean_n,q,tail\n";
  for (const auto& r : out.rows) {
    csv << format_number(r.eta) << ',' << r.m << ',' << format_number(r.mean_n) << ',' << format_number(r.q)
        << ',' << format_number(r.tail) << '\n';
    const std::string where = "eta=" + format_number(r.eta) + " m=" + std::to_string(r.m);
    if (!(r.q > 0.0)) out.failures.push_back(where + ": Q = " + format_number(r.q) + " is not positive");
    if (!(r.tail < cfg.tail_tol)) out.failures.push_back(where + ": tail " + format_number(r.tail) + " above tolerance");
    if (r.eta >= 0.99) {
      const bool ok = r.q < 0.05;
      out.notes.push_back(std::string(ok ? "ok" : "not met") + " [operational threshold Q < 0.05 near eta = 1] " +
                          where + ": Q = " + format_number(r.q));
    }
  }
  return out;
}

SweepOutcome run_figure2(const SweepConfig& cfg, std::ostream& csv) {
  SweepOutcome out = sweep_negative_m_geometric(cfg);
  csv << "eta,m,var_x,var_y,uncertainty_product,tail\n";
  std::map<int, double> min_var_y;
  for (const auto& r : out.rows) {
    csv << format_number(r.eta) << ',' << r.m << ',' << format_number(r.var_x) << ',' << format_number(r.var_y)
        << ',' << format_number(r.uncertainty_product) << ',' << format_number(r.tail) << '\n';
    const std::string where = "eta=" + format_number(r.eta) + " m=" + std::to_string(r.m);
    if (!(r.uncertainty_product >= 1.0 / 16.0 - 1e-12)) {
      out.failures.push_back(where + ": uncertainty product " + format_number(r.uncertainty_product) + " below 1/16");
    }
    auto [it, inserted] = min_var_y.try_emplace(r.m, r.var_y);
    if (!inserted) it->second = std::min(it->second, r.var_y);
    if (r.eta >= 0.99) {
      const bool ok = std::abs(r.var_x - 0.25) < 0.01 && std::abs(r.var_y - 0.25) < 0.01;
      out.notes.push_back(std::string(ok ? "ok" : "not met") +
                          " [operational threshold |var - 1/4| < 0.01 near eta = 1] " + where +
                          ": var_x = " + format_number(r.var_x) + ", var_y = " + format_number(r.var_y));
    }
  }
  for (int m : cfg.m_list) {
    const auto it = min_var_y.find(m);
    if (it == min_var_y.end()) continue;
    if (!(it->second < 0.25)) {
      out.failures.push_back("m=" + std::to_string(m) + ": no squeezing in Y, min var_y = " + format_number(it->second));
    }
  }
  // Reported only: whether the deepest Y squeezing grows with m.
  double prev = -INFINITY;
  bool deepening = true;
  std::ostringstream mins;
  for (const auto& [m, v] : min_var_y) {
    mins << " m=" << m << ":" << format_number(v);
    if (v > prev && prev != -INFINITY) deepening = false;
    prev = v;
  }
  out.notes.push_back(std::string(deepening ? "ok" : "not met") +
                      " [min over eta of var_y non-increasing in m]" + mins.str());
  return out;
}

namespace {

struct FamilyCase {
  std::string label;
  NonlinearFn f;
  Complex alpha;
};

class ResidualCollector {
 public:
  ResidualCollector(ResidualReport& report, double tol) : report_(report), tol_(tol) {}

  /// Runs check(), which returns a non-negative deviation; records the max
  /// per label and flags values at or above tol and any thrown error.
  void run(const std::string& label, const std::string& where, const std::function<double()>& check) {
    auto& entry = entry_for(label);
    ++entry.checks;
    try {
      const double v = check();
      entry.max_value = std::max(entry.max_value, v);
      if (!(v < tol_)) report_.failures.push_back(label + " [" + where + "]: " + format_number(v));
    } catch (const std::exception& e) {
      entry.max_value = INFINITY;
      report_.failures.push_back(label + " [" + where + "]: " + e.what());
    }
  }

 private:
  ResidualEntry& entry_for(const std::string& label) {
    for (auto& e : report_.entries) {
      if (e.label == label) return e;
    }
    report_.entries.push_back({label, 0.0, 0});
    return report_.entries.back();
  }

  ResidualReport& report_;
  double tol_;
};

}  // namespace

ResidualReport run_residuals(std::size_t dim, double tol) {
  TruncationConfig cfg;
  cfg.dim = dim;
  cfg.validate();
  const std::vector<double> etas = {0.1, 0.3, 0.5, 0.7, 0.9};
  const std::vector<int> ms = {1, 2, 3, 5};

  std::vector<FamilyCase> families;
  for (double eta : etas) {
    families.push_back({"geometric eta=" + format_number(eta), NonlinearFn::inverse_sqrt(), std::sqrt(1.0 - eta)});
  }
  for (double a : {0.3, 0.8}) {
    families.push_back({"f=1 alpha=" + format_number(a), NonlinearFn::one(), a});
    families.push_back({"f=n+1 alpha=" + format_number(a), NonlinearFn::linear(), a});
  }

  ResidualReport report;
  ResidualCollector c(report, tol);
  const std::size_t margin = cfg.boundary_margin;
  const std::size_t n_cap = dim > margin + 2 ? std::min<std::size_t>(100, dim - margin - 2) : 0;

  for (const auto& fam : families) {
    const NlcsSpec spec{fam.f, fam.alpha, cfg};
    c.run("nlcs eigen-equation", fam.label, [&] {
      return eigen_residual(build_nlcs(spec), 1, fam.f, fam.alpha, std::max<std::size_t>(margin, 1));
    });
    for (int m : ms) {
      const std::string where = fam.label + " m=" + std::to_string(m);
      c.run("photon-added eigen-equation", where, [&] {
        return eigen_residual(build_panlcs_apply(spec, m), 1, added_photon_function(fam.f, m, Sign::plus), fam.alpha,
                              std::max<std::size_t>(margin, 1));
      });
      c.run("negative-m eigen-equation", where, [&] {
        return eigen_residual(build_negative_panlcs_series(spec, m), 1, added_photon_function(fam.f, m, Sign::minus),
                              fam.alpha, std::max<std::size_t>(margin, 1));
      });
      c.run("positive-m routes: 1 - |overlap(apply, deformed)|", where, [&] {
        return 1.0 - overlap_magnitude(build_panlcs_apply(spec, m), build_panlcs_deformed(spec, m));
      });
      c.run("negative-m routes: 1 - min pairwise |overlap|", where, [&] {
        const FockVector series = build_negative_panlcs_series(spec, m);
        const FockVector deformed = build_negative_panlcs_deformed(spec, m);
        const FockVector inverse = build_negative_panlcs_inverse(spec, m);
        const double worst = std::min({overlap_magnitude(series, deformed), overlap_magnitude(series, inverse),
                                       overlap_magnitude(deformed, inverse)});
        return 1.0 - worst;
      });
    }
  }

  // [A, G^dag] = 1 depends on f and m only.
  for (const auto& [label, f] : std::vector<std::pair<std::string, NonlinearFn>>{
           {"f=1/sqrt(n+1)", NonlinearFn::inverse_sqrt()}, {"f=1", NonlinearFn::one()}, {"f=n+1", NonlinearFn::linear()}}) {
    for (int m : ms) {
      const std::string where = label + " m=" + std::to_string(m);
      c.run("commutator [A, G^dag] = 1, sector |m>", where, [&] {
        const DeformedLoweringOp a(f, m, Sign::plus);
        return commutator_residual(a.lowering(), make_g_dagger(a, static_cast<std::size_t>(m)),
                                   static_cast<std::size_t>(m), n_cap, dim);
      });
      c.run("commutator [A, G^dag] = 1, sector |0>", where, [&] {
        const DeformedLoweringOp a(f, m, Sign::minus);
        return commutator_residual(a.lowering(), make_g_dagger(a, 0), 0, n_cap, dim);
      });
    }
  }

  for (double eta : etas) {
    const std::string where = "eta=" + format_number(eta);
    const double alpha = std::sqrt(1.0 - eta);
    c.run("geometric eigen-equation", where, [&] {
      return eigen_residual(build_geometric({eta, 0, Sign::plus, cfg}), 1, geometric_function(), alpha,
                            std::max<std::size_t>(margin, 1));
    });
    for (int m : ms) {
      const std::string wm = where + " m=" + std::to_string(m);
      c.run("photon-added geometric eigen-equation", wm, [&] {
        return eigen_residual(build_photon_added_geometric({eta, m, Sign::plus, cfg}), 1,
                              photon_added_geometric_function(m), alpha, std::max<std::size_t>(margin, 1));
      });
      c.run("negative-m geometric eigen-equation", wm, [&] {
        return eigen_residual(build_negative_m_geometric({eta, m, Sign::minus, cfg}), 1,
                              negative_m_geometric_function(m), alpha, std::max<std::size_t>(margin, 1));
      });
      c.run("negative-m geometric norm |1 - <psi|psi>|", wm,
            [&] { return std::abs(1.0 - build_negative_m_geometric({eta, m, Sign::minus, cfg}).norm_squared()); });
    }
  }

  const std::vector<std::pair<std::string, NonlinearFn>> two_photon_fns = {{"F=1", NonlinearFn::one()},
                                                                           {"F=1/(n+1)", NonlinearFn::reciprocal()}};
  for (const auto& [label, F] : two_photon_fns) {
    for (double a : {0.3, 0.8}) {
      for (const auto& [seed_label, seed] :
           std::vector<std::pair<std::string, TwoPhotonSeed>>{{"even", TwoPhotonSeed::even()}, {"odd", TwoPhotonSeed::odd()}}) {
        const TwoPhotonSpec spec{F, a, seed, cfg};
        const std::string where = label + " alpha=" + format_number(a) + " " + seed_label;
        c.run("two-photon eigen-equation", where, [&] {
          return eigen_residual(build_two_photon_nlcs(spec), 2, F, a, std::max<std::size_t>(margin, 2));
        });
        for (int m : ms) {
          c.run("photon-added two-photon eigen-equation", where + " m=" + std::to_string(m),
                [&] { return two_photon_added_residual(spec, m); });
        }
      }
    }
  }

  for (int m = 2; m <= 8; ++m) {
    c.run("a^2 a^dag^m a^2 identity (relative)", "m=" + std::to_string(m), [&] {
      const std::size_t n_max = std::min<std::size_t>(50, dim - 1 - static_cast<std::size_t>(m) - 2);
      return operator_identity_residual(m, n_max, cfg);
    });
  }
  return report;
}

NonlinearFn function_by_name(const std::string& name) {
  if (name == "one") return NonlinearFn::one();
  if (name == "linear") return NonlinearFn::linear();
  if (name == "inverse-sqrt") return NonlinearFn::inverse_sqrt();
  if (name == "reciprocal") return NonlinearFn::reciprocal();
  throw std::invalid_argument("unknown function '" + name + "' (one, linear, inverse-sqrt, reciprocal)");
}

FockVector build_requested_state(const StateRequest& req) {
  TruncationConfig cfg;
  cfg.dim = req.dim;
  cfg.tail_tol = req.tail_tol;
  const std::string& fam = req.family;
  if (fam == "geometric") return build_geometric({req.eta, 0, Sign::plus, cfg});
  if (fam == "pags") return build_photon_added_geometric({req.eta, req.m, Sign::plus, cfg});
  if (fam == "neg-pags") return build_negative_m_geometric({req.eta, req.m, Sign::minus, cfg});
  if (fam == "nlcs" || fam == "panlcs" || fam == "neg-panlcs") {
    const NlcsSpec spec{function_by_name(req.f), req.alpha, cfg};
    if (fam == "nlcs") return build_nlcs(spec);
    if (fam == "panlcs") return build_panlcs_apply(spec, req.m);
    return build_negative_panlcs_series(spec, req.m);
  }
  if (fam == "two-photon" || fam == "pa-two-photon") {
    TwoPhotonSeed seed;
    if (req.seed == "even") {
      seed = TwoPhotonSeed::even();
    } else if (req.seed == "odd") {
      seed = TwoPhotonSeed::odd();
    } else {
      throw std::invalid_argument("unknown seed '" + req.seed + "' (even, odd)");
    }
    const TwoPhotonSpec spec{function_by_name(req.f), req.alpha, seed, cfg};
    if (fam == "two-photon") return build_two_photon_nlcs(spec);
    return build_photon_added_two_photon(spec, req.m);
  }
  throw std::invalid_argument("unknown family '" + fam +
                              "' (nlcs, panlcs, neg-panlcs, geometric, pags, neg-pags, two-photon, pa-two-photon)");
}

void write_state_csv(const FockVector& s, std::ostream& out) {
  out << "n,re,im,p\n";
  for (std::size_t n = 0; n < s.dim(); ++n) {
    out << n << ',' << format_number(s[n].real()) << ',' << format_number(s[n].imag()) << ','
        << format_number(std::norm(s[n])) << '\n';
  }
}

}  // namespace nlcs
