#ifndef OCOMD_EXPERIMENTS_HPP
#define OCOMD_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "ocomd/predictors.hpp"
#include "ocomd/regret.hpp"

namespace ocomd {

// Receives every finished per-run ledger in deterministic order:
// (algorithm, model id, repetition index, ledger).
using LedgerSink =
    std::function<void(const std::string&, const std::string&, int, const RegretLedger&)>;

// ---------------------------------------------------------------------------
// Parameter tracking

struct TrackingConfig {
  int horizon = 1000;
  int repetitions = 100;
  std::uint64_t seed = 0;
  std::vector<double> dynamics_matrix;  // 4x4 row-major, default below
  double noise_up = 2.0;    // v_t component when the Gaussian draw is positive
  double noise_down = -1.0; // otherwise
  double l1_weight = 1.0;
  double eta_y = 1.0;    // constant step of the y~ update (the paper's hybrid)
  double eta_dmd = 1.0;
  bool doptmd_adaptive = true;  // baseline step rule; constant eta otherwise
  double eta_doptmd = 1.0;
  std::vector<TrackingModel> models{TrackingModel::Perfect, TrackingModel::Noisy,
                                    TrackingModel::NoisyBias, TrackingModel::Previous,
                                    TrackingModel::Random};
  Vec u0 = Vec(4, 0.0);
  Vec y0 = Vec(4, 0.0);
  int threads = 1;

  static std::vector<double> default_matrix();
};

struct TrackingModelCurves {
  TrackingModel model;
  std::vector<double> mean_diff_dmd, std_diff_dmd;        // Reg^d_t(OptDCMD)-Reg^d_t(DMD)
  std::vector<double> mean_diff_doptmd, std_diff_doptmd;  // vs d-OptMD
  double mean_final_optdcmd = 0;
  double mean_final_dmd = 0;
  double mean_final_doptmd = 0;
  int nonexpansive_warnings = 0;
};

struct TrackingResult {
  std::vector<TrackingModelCurves> curves;
};

TrackingResult run_tracking(const TrackingConfig& config, const LedgerSink& sink = {});

// ---------------------------------------------------------------------------
// Portfolio selection

struct MarketDataset {
  std::string name;
  std::size_t assets = 0;
  std::size_t rounds = 0;
  std::vector<Vec> returns;  // one price-relative vector per round
};

struct PortfolioConfig {
  int repetitions = 10;
  std::uint64_t seed = 0;
  double beta = 9.0;
  double r_min = 0.5;
  double r_max = 1.5;
  int ma_lags = 5;
  int rls_lags = 6;
  double entropy_floor = 1e-12;
  std::vector<ReturnModel> models{ReturnModel::MovingAverage, ReturnModel::Previous,
                                  ReturnModel::Noisy, ReturnModel::Random,
                                  ReturnModel::RecursiveLS};
  int offline_iters = 10000;
  int threads = 1;
};

struct PortfolioModelCurves {
  ReturnModel model;
  std::vector<double> mean_diff_cup, std_diff_cup;  // Reg^s_t(OptMD) - Reg^s_t(CUP)
  double mean_final_regret = 0;
  double std_final_regret = 0;
  bool causal = true;
};

struct PortfolioResult {
  std::vector<PortfolioModelCurves> curves;
  std::vector<double> cup_regret_curve;
  double cup_final_regret = 0;
  std::size_t clipped_entries = 0;
  double comparator_gap = 0;
};

PortfolioResult run_portfolio(const PortfolioConfig& config, const MarketDataset& dataset,
                              const LedgerSink& sink = {});

// CSV with a header line and one row of price relatives per round.
MarketDataset ingest_dataset(const std::string& path);

struct MarketLaw {
  double ar_coeff = 0.9;       // AR(1) coefficient of per-asset log returns
  double noise = 0.05;         // innovation standard deviation
  double drift_spread = 0.004; // per-asset mean log-return drawn in +-spread
  double r_min = 0.5;
  double r_max = 1.5;
};

MarketDataset synth_market(std::size_t n, std::size_t rounds, const MarketLaw& law,
                           std::uint64_t seed);

}  // namespace ocomd

#endif
