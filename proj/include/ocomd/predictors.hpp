#ifndef OCOMD_PREDICTORS_HPP
#define OCOMD_PREDICTORS_HPP

#include <deque>
#include <string>

#include "ocomd/algorithms.hpp"
#include "ocomd/rng.hpp"

namespace ocomd {

// ---------------------------------------------------------------------------
// Tracking gradient prediction models

enum class TrackingModel { Perfect, Noisy, NoisyBias, Previous, Random };

TrackingModel tracking_model_from_string(const std::string& name);
const char* tracking_model_name(TrackingModel m);

// Gradient prediction at y_{t-1}. prev_grad is the previous round's smooth
// gradient oracle, null at t = 1 (the "previous" model then falls back to the
// zero vector). Noise w_t ~ N(0, 0.5 I).
Vec tracking_grad_pred(TrackingModel model, const SmoothOracle& current,
                       const SmoothOracle* prev, const Vec& y_prev, Rng& rng);

// ---------------------------------------------------------------------------
// Portfolio return prediction models

enum class ReturnModel { MovingAverage, Previous, Noisy, Random, RecursiveLS };

ReturnModel return_model_from_string(const std::string& name);
const char* return_model_name(ReturnModel m);

// Exact recursive least squares with forgetting factor 1: affine prediction
// of one asset's return from its last k returns. P starts at delta * I.
class RlsState {
 public:
  explicit RlsState(int lags, double delta = 100.0);

  double predict(const Vec& features) const;  // features = lags then bias 1
  void update(const Vec& features, double target);

  const Vec& weights() const { return w_; }
  int reinit_count() const { return reinits_; }
  int lags() const { return lags_; }

 private:
  bool spd_ok() const;  // Cholesky success check
  void reinit();

  int lags_;
  double delta_;
  Vec w_;
  std::vector<double> p_;  // (k+1)x(k+1) row-major covariance inverse proxy
  int updates_ = 0;
  int reinits_ = 0;
};

// Per-asset predictor bank with the shared lag window.
class ReturnPredictor {
 public:
  ReturnPredictor(ReturnModel model, std::size_t assets, int lags, double r_min,
                  double r_max);

  // Raw prediction r~_t. The noisy model reads the upcoming return (oracle
  // access, as the paper's upper reference); others use history only.
  Vec predict(const Vec* actual_next, Rng& rng);

  // Feed the realized return of round t.
  void observe(const Vec& realized);

  bool is_causal() const { return model_ != ReturnModel::Noisy; }
  ReturnModel model() const { return model_; }

 private:
  ReturnModel model_;
  std::size_t assets_;
  int lags_;
  double r_min_, r_max_;
  std::deque<Vec> window_;  // most recent first
  std::vector<RlsState> rls_;
};

// The three-branch indicator transform of the raw prediction; equality with 1
// is an exact comparison.
Vec clamp_g(const Vec& r_tilde, double r_min, double r_max);

// -r_hat / <r_hat, y_prev>
Vec portfolio_grad_pred(const Vec& r_hat, const Vec& y_prev);

}  // namespace ocomd

#endif
