#include "fedr/relations.hpp"

#include <cmath>
#include <stdexcept>

#include "fedr/edr.hpp"
#include "fedr/psa.hpp"
#include "fedr/sweep.hpp"
#include "fedr/tolerances.hpp"

namespace fedr {

std::string_view to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::Holds: return "holds";
    case RelationStatus::Boundary: return "boundary";
    case RelationStatus::Violated: return "violated";
  }
  return "?";
}

namespace {

RelationStatus compare(double lhs, double bound) {
  if (lhs < bound - tol::relation_band) return RelationStatus::Violated;
  if (lhs <= bound + tol::relation_band) return RelationStatus::Boundary;
  return RelationStatus::Holds;
}

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite and non-negative");
  }
}

// eps^2 sigma_B^2 + sigma_A^2 eta^2 + 2 eps eta sqrt(sigma_A^2 sigma_B^2 - C^2)
double branciard_ozawa(double eps2, double eta2, double sa, double sb, double c) {
  const double slack = sa * sa * sb * sb - c * c;
  const double cross =
      slack > 0.0 && eta2 > 0.0 ? 2.0 * std::sqrt(eps2 * eta2 * slack) : 0.0;
  return eps2 * sb * sb + sa * sa * eta2 + cross;
}

}  // namespace

BoundsRecord evaluate_bounds(double eps2, double eta2, double sigma_a, double sigma_b,
                             double c_ab) {
  require_non_negative(eps2, "eps2");
  require_non_negative(eta2, "eta2");
  require_non_negative(sigma_a, "sigma_a");
  require_non_negative(sigma_b, "sigma_b");
  require_non_negative(c_ab, "c_ab");
  if (sigma_a * sigma_b < c_ab - tol::relation_band) {
    throw std::invalid_argument("sigma_a sigma_b must be at least c_ab");
  }

  BoundsRecord b;
  const double eps = std::sqrt(eps2);
  const double eta = std::sqrt(eta2);
  b.hak = eps2 * eta2;
  b.ozawa_lhs = eps * eta + eps * sigma_b + eta * sigma_a;
  b.bo_lhs = branciard_ozawa(eps2, eta2, sigma_a, sigma_b, c_ab);
  // Negative past eta2 = 4, which only the weak interaction model reaches.
  const double eta2_tight = eta2 * (1.0 - eta2 / 4.0);
  b.bot_lhs = branciard_ozawa(eps2, eta2_tight, sigma_a, sigma_b, c_ab);

  const double c2 = c_ab * c_ab;
  b.hak_status = compare(b.hak, c2);
  b.ozawa_status = compare(b.ozawa_lhs, c_ab);
  b.bo_status = compare(b.bo_lhs, c2);
  b.bot_status = compare(b.bot_lhs, c2);
  return b;
}

double bot_frontier(double eps2) {
  require_non_negative(eps2, "eps2");
  if (eps2 > 1.0) return 0.0;
  return 2.0 * (1.0 - std::sqrt(eps2));
}

double hak_frontier(double eps2) {
  require_non_negative(eps2, "eps2");
  if (eps2 == 0.0) throw std::invalid_argument("HAK frontier diverges at eps2 = 0");
  return 1.0 / eps2;
}

std::string_view to_string(Model m) {
  switch (m) {
    case Model::ExactCoherent: return "exact-coherent";
    case Model::ExactSqueezed: return "exact-squeezed";
    case Model::Psa: return "psa";
    case Model::Wia: return "wia";
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view name) {
  for (Model m : {Model::ExactCoherent, Model::ExactSqueezed, Model::Psa, Model::Wia}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::vector<double> linear_grid(double start, double stop, int steps) {
  if (steps < 2) throw std::invalid_argument("a grid needs at least 2 steps");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw std::invalid_argument("grid ends must be finite");
  }
  std::vector<double> grid(static_cast<size_t>(steps));
  const double h = (stop - start) / (steps - 1);
  for (int k = 0; k < steps; ++k) grid[static_cast<size_t>(k)] = start + k * h;
  grid.back() = stop;
  return grid;
}

TradeoffCurve tradeoff_curve(const TradeoffRequest& req) {
  const std::vector<double> grid = linear_grid(req.start, req.stop, req.steps);
  TradeoffCurve curve;
  curve.samples.reserve(grid.size());

  if (req.model == Model::ExactCoherent || req.model == Model::ExactSqueezed) {
    MeasurementConfig cfg;
    cfg.alpha = Complex(std::sqrt(req.alpha2), 0.0);
    cfg.tail_tol = req.tail_tol;
    if (req.model == Model::ExactSqueezed) cfg.squeeze = SqueezeSpec{req.r, 0.0};
    const auto meter = prepare_meter(cfg);
    for (const EDRPoint& p : sweep_g(meter, grid, Execution::Parallel)) {
      TradeoffSample s{p.g, p.eps2, p.eta2, std::nullopt};
      if (p.eps2) s.bounds = evaluate_bounds(*p.eps2, p.eta2, p.sigma_a, p.sigma_b, p.c_ab);
      curve.samples.push_back(s);
    }
  } else {
    for (double chi : grid) {
      TradeoffSample s{chi, std::nullopt, 0.0, std::nullopt};
      const bool wia = req.model == Model::Wia;
      s.eta2 = wia ? eta2_wia(chi) : eta2_psa(chi);
      if (chi > 0.0) {
        s.eps2 = wia ? eps2_wia(chi) : eps2_psa(chi);
        s.bounds = evaluate_bounds(*s.eps2, s.eta2);
      }
      curve.samples.push_back(s);
    }
  }

  for (const TradeoffSample& s : curve.samples) {
    if (!s.eps2 || *s.eps2 == 0.0) continue;
    curve.hak_bound.push_back({*s.eps2, hak_frontier(*s.eps2)});
    curve.bot_bound.push_back({*s.eps2, bot_frontier(*s.eps2)});
  }
  return curve;
}

}  // namespace fedr
