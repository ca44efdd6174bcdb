#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace fedr {

enum class RelationStatus { Holds, Boundary, Violated };

std::string_view to_string(RelationStatus s);

/// Left-hand sides of the four error-disturbance relations, each compared
/// against its bound (C^2 for the squared forms, C for Ozawa).
struct BoundsRecord {
  double hak = 0.0;        // eps^2 eta^2
  double ozawa_lhs = 0.0;  // eps eta + eps sigma_B + eta sigma_A
  double bo_lhs = 0.0;     // Branciard-Ozawa; eps^2 + eta^2 when sigma_A = sigma_B = C = 1
  double bot_lhs = 0.0;    // BO with eta -> eta sqrt(1 - eta^2 / 4)

  RelationStatus hak_status = RelationStatus::Holds;
  RelationStatus ozawa_status = RelationStatus::Holds;
  RelationStatus bo_status = RelationStatus::Holds;
  RelationStatus bot_status = RelationStatus::Holds;

  bool hak_violated() const { return hak_status == RelationStatus::Violated; }
  bool ozawa_satisfied() const { return ozawa_status != RelationStatus::Violated; }
  bool bo_satisfied() const { return bo_status != RelationStatus::Violated; }
  bool bot_satisfied() const { return bot_status != RelationStatus::Violated; }
};

/// Throws std::invalid_argument for negative or non-finite inputs, or when
/// sigma_a sigma_b < c_ab (no such state exists).
BoundsRecord evaluate_bounds(double eps2, double eta2, double sigma_a = 1.0,
                             double sigma_b = 1.0, double c_ab = 1.0);

/// Smallest eta2 on the tight BO frontier eps2 + eta2 (1 - eta2/4) = 1, i.e.
/// 2 (1 - sqrt(eps2)); 0 once eps2 > 1.
double bot_frontier(double eps2);
/// eta2 on the HAK bound eps2 eta2 = 1.
double hak_frontier(double eps2);

enum class Model { ExactCoherent, ExactSqueezed, Psa, Wia };

std::string_view to_string(Model m);
std::optional<Model> parse_model(std::string_view name);

struct TradeoffRequest {
  Model model = Model::ExactCoherent;
  double start = 0.0;  // g for exact models, chi for psa / wia
  double stop = 0.0;
  int steps = 2;
  double alpha2 = 6.0;
  double r = 0.0;  // exact-squeezed only
  double tail_tol = 1e-12;
};

struct TradeoffSample {
  double parameter = 0.0;
  std::optional<double> eps2;  // empty for singular samples
  double eta2 = 0.0;
  std::optional<BoundsRecord> bounds;
};

struct FrontierPoint {
  double eps2 = 0.0;
  double eta2 = 0.0;
};

struct TradeoffCurve {
  std::vector<TradeoffSample> samples;
  std::vector<FrontierPoint> hak_bound;
  std::vector<FrontierPoint> bot_bound;
};

/// Parametric sweep in grid order. Exact models run the matrix simulation;
/// psa and wia use their closed forms. Bound curves are sampled on the
/// finite eps2 values of the samples.
TradeoffCurve tradeoff_curve(const TradeoffRequest& req);

/// steps points from start to stop inclusive. Throws for steps < 2 or
/// non-finite ends.
std::vector<double> linear_grid(double start, double stop, int steps);

}  // namespace fedr
