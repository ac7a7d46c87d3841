#include "ocomd/predictors.hpp"

#include <algorithm>
#include <cmath>

namespace ocomd {

TrackingModel tracking_model_from_string(const std::string& name) {
  if (name == "perfect") return TrackingModel::Perfect;
  if (name == "noisy") return TrackingModel::Noisy;
  if (name == "noisy+bias") return TrackingModel::NoisyBias;
  if (name == "previous") return TrackingModel::Previous;
  if (name == "random") return TrackingModel::Random;
  throw UnknownModel("unknown tracking model: " + name);
}

const char* tracking_model_name(TrackingModel m) {
  switch (m) {
    case TrackingModel::Perfect: return "perfect";
    case TrackingModel::Noisy: return "noisy";
    case TrackingModel::NoisyBias: return "noisy+bias";
    case TrackingModel::Previous: return "previous";
    case TrackingModel::Random: return "random";
  }
  return "?";
}

Vec tracking_grad_pred(TrackingModel model, const SmoothOracle& current,
                       const SmoothOracle* prev, const Vec& y_prev, Rng& rng) {
  const std::size_t n = y_prev.size();
  const double noise_std = std::sqrt(0.5);
  switch (model) {
    case TrackingModel::Perfect:
      return current.grad(y_prev);
    case TrackingModel::Noisy:
      return add(current.grad(y_prev), rng.normal_vec(n, noise_std));
    case TrackingModel::NoisyBias: {
      // "- 1" read as subtracting the all-ones vector
      Vec g = add(current.grad(y_prev), rng.normal_vec(n, noise_std));
      for (auto& gi : g) gi -= 1.0;
      return g;
    }
    case TrackingModel::Previous:
      return prev ? prev->grad(y_prev) : zeros(n);
    case TrackingModel::Random:
      return rng.normal_vec(n, noise_std);
  }
  throw UnknownModel("tracking_grad_pred: unknown model");
}

ReturnModel return_model_from_string(const std::string& name) {
  if (name.rfind("ma", 0) == 0) return ReturnModel::MovingAverage;
  if (name == "previous") return ReturnModel::Previous;
  if (name == "noisy") return ReturnModel::Noisy;
  if (name == "random") return ReturnModel::Random;
  if (name.rfind("recursive_ls", 0) == 0 || name.rfind("recursiveLS", 0) == 0)
    return ReturnModel::RecursiveLS;
  throw UnknownModel("unknown return model: " + name);
}

const char* return_model_name(ReturnModel m) {
  switch (m) {
    case ReturnModel::MovingAverage: return "ma";
    case ReturnModel::Previous: return "previous";
    case ReturnModel::Noisy: return "noisy";
    case ReturnModel::Random: return "random";
    case ReturnModel::RecursiveLS: return "recursive_ls";
  }
  return "?";
}

// ---------------------------------------------------------------------------

RlsState::RlsState(int lags, double delta) : lags_(lags), delta_(delta) {
  if (lags < 1) throw ConfigError("RlsState: need at least one lag");
  const int d = lags_ + 1;
  w_.assign(d, 0.0);
  p_.assign(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) p_[static_cast<std::size_t>(i) * d + i] = delta_;
}

double RlsState::predict(const Vec& features) const { return dot(w_, features); }

bool RlsState::spd_ok() const {
  // in-place Cholesky attempt on a copy
  const int d = lags_ + 1;
  std::vector<double> a = p_;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[static_cast<std::size_t>(i) * d + j];
      for (int k = 0; k < j; ++k)
        s -= a[static_cast<std::size_t>(i) * d + k] * a[static_cast<std::size_t>(j) * d + k];
      if (i == j) {
        if (s <= 0 || !std::isfinite(s)) return false;
        a[static_cast<std::size_t>(i) * d + i] = std::sqrt(s);
      } else {
        a[static_cast<std::size_t>(i) * d + j] = s / a[static_cast<std::size_t>(j) * d + j];
      }
    }
  }
  return true;
}

void RlsState::reinit() {
  const int d = lags_ + 1;
  w_.assign(d, 0.0);
  p_.assign(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) p_[static_cast<std::size_t>(i) * d + i] = delta_;
  ++reinits_;
}

void RlsState::update(const Vec& features, double target) {
  const int d = lags_ + 1;
  if (static_cast<int>(features.size()) != d)
    throw DimensionMismatch("RlsState::update: feature dimension mismatch");
  // gain = P phi / (1 + phi' P phi)
  Vec pphi(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      pphi[i] += p_[static_cast<std::size_t>(i) * d + j] * features[j];
  double denom = 1.0 + dot(features, pphi);
  Vec gain = scale(pphi, 1.0 / denom);
  double err = target - dot(w_, features);
  for (int i = 0; i < d; ++i) w_[i] += gain[i] * err;
  // P -= gain (P phi)'
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      p_[static_cast<std::size_t>(i) * d + j] -= gain[i] * pphi[j];
  // keep P numerically symmetric
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      double avg = 0.5 * (p_[static_cast<std::size_t>(i) * d + j] +
                          p_[static_cast<std::size_t>(j) * d + i]);
      p_[static_cast<std::size_t>(i) * d + j] = avg;
      p_[static_cast<std::size_t>(j) * d + i] = avg;
    }
  if (++updates_ % 32 == 0 && !spd_ok()) reinit();
}

// ---------------------------------------------------------------------------

ReturnPredictor::ReturnPredictor(ReturnModel model, std::size_t assets, int lags,
                                 double r_min, double r_max)
    : model_(model), assets_(assets), lags_(std::max(lags, 1)), r_min_(r_min),
      r_max_(r_max) {
  if (model_ == ReturnModel::RecursiveLS)
    rls_.assign(assets_, RlsState(lags_));
}

Vec ReturnPredictor::predict(const Vec* actual_next, Rng& rng) {
  switch (model_) {
    case ReturnModel::MovingAverage: {
      if (window_.empty()) return ones(assets_);
      std::size_t k = std::min<std::size_t>(lags_, window_.size());
      Vec m = zeros(assets_);
      for (std::size_t j = 0; j < k; ++j) m = add(m, window_[j]);
      return scale(m, 1.0 / static_cast<double>(k));
    }
    case ReturnModel::Previous:
      return window_.empty() ? ones(assets_) : window_.front();
    case ReturnModel::Noisy: {
      if (!actual_next) throw UnknownModel("noisy return model needs oracle access");
      Vec r(*actual_next);
      const double std_dev = std::sqrt(0.3);
      for (auto& ri : r) ri += rng.normal(0.0, std_dev);
      return r;
    }
    case ReturnModel::Random:
      return rng.uniform_vec(assets_, r_min_, r_max_);
    case ReturnModel::RecursiveLS: {
      if (window_.size() < static_cast<std::size_t>(lags_))
        return window_.empty() ? ones(assets_) : window_.front();
      Vec pred(assets_);
      for (std::size_t a = 0; a < assets_; ++a) {
        Vec phi(lags_ + 1, 1.0);
        for (int j = 0; j < lags_; ++j) phi[j] = window_[j][a];
        pred[a] = rls_[a].predict(phi);
      }
      return pred;
    }
  }
  throw UnknownModel("ReturnPredictor: unknown model");
}

void ReturnPredictor::observe(const Vec& realized) {
  if (realized.size() != assets_)
    throw DimensionMismatch("ReturnPredictor::observe: asset count mismatch");
  if (model_ == ReturnModel::RecursiveLS &&
      window_.size() >= static_cast<std::size_t>(lags_)) {
    for (std::size_t a = 0; a < assets_; ++a) {
      Vec phi(lags_ + 1, 1.0);
      for (int j = 0; j < lags_; ++j) phi[j] = window_[j][a];
      rls_[a].update(phi, realized[a]);
    }
  }
  window_.push_front(realized);
  while (window_.size() > static_cast<std::size_t>(std::max(lags_, 1)))
    window_.pop_back();
}

Vec clamp_g(const Vec& r_tilde, double r_min, double r_max) {
  Vec g(r_tilde.size());
  for (std::size_t i = 0; i < r_tilde.size(); ++i) {
    if (r_tilde[i] > 1.0)
      g[i] = r_max;
    else if (r_tilde[i] == 1.0)
      g[i] = 1.0;
    else
      g[i] = r_min;
  }
  return g;
}

Vec portfolio_grad_pred(const Vec& r_hat, const Vec& y_prev) {
  if (r_hat.size() != y_prev.size())
    throw DimensionMismatch("portfolio_grad_pred: dimension mismatch");
  double ip = dot(r_hat, y_prev);
  if (ip <= 1e-15)
    throw DegenerateInnerProduct("portfolio_grad_pred: <r_hat, y> is degenerate");
  return scale(r_hat, -1.0 / ip);
}

}  // namespace ocomd
