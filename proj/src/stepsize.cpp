#include "ocomd/stepsize.hpp"

#include <algorithm>
#include <cmath>

namespace ocomd {

static void require_round(int t) {
  if (t < 1) throw ConfigError("step-size schedules start at t = 1");
}

double eta_thm1(StepSizeState& state, int t) {
  require_round(t);
  if (!(state.beta > 0)) throw ConfigError("eta_thm1: beta must be positive");
  // at t = 1 the accumulators are zero and this is exactly 1/(2 beta)
  double eta = 1.0 / std::sqrt(4.0 * state.beta * state.beta +
                               state.v_prime * state.v_prime + state.d_prime);
  state.eta_prev = eta;
  return eta;
}

double eta_thm2(StepSizeState& state, int t) {
  require_round(t);
  if (!(state.beta > 0)) throw ConfigError("eta_thm2: beta must be positive");
  if (!(state.alpha > 0))
    throw ConfigError("eta_thm2: requires strongly convex costs (alpha > 0)");
  if (!state.exact_func_pred)
    throw ConfigError("eta_thm2: requires exact function predictions");
  if (!(state.sigma > 0)) throw ConfigError("eta_thm2: sigma must be positive");
  double eta = 1.0 / (2.0 * state.beta +
                      state.alpha / (2.0 * state.sigma * state.sigma) * state.d_prime);
  state.eta_prev = eta;
  return eta;
}

double eta_thm4(StepSizeState& state, int t) {
  require_round(t);
  if (!(state.tau > 0)) throw ConfigError("eta_thm4: tau must be positive");
  double eta = state.v_prime > 0 ? state.tau / state.v_prime : state.eta_max;
  state.eta_prev = eta;
  return eta;
}

double eta_thm5(StepSizeState& state, int t) {
  require_round(t);
  if (!(state.beta > 0)) throw ConfigError("eta_thm5: beta must be positive");
  const double cap = 1.0 / (2.0 * state.beta);
  if (t <= 2) {
    state.eta_prev = cap;
    return cap;
  }
  // accumulators: d_prime = D'_{t-1}, d_prime_lag1 = D'_{t-2},
  // c_prime_lag1 = C'_{t-2}, c_prime_lag2 = C'_{t-3}
  const double c2 = state.c_prime_lag1 + 1.0;
  const double c3 = state.c_prime_lag2 + 1.0;
  double theta = std::max(
      {state.theta, 4.0 * state.beta * state.beta * c2 - state.d_prime,
       c2 * (state.d_prime_lag1 + state.theta) / c3 - state.d_prime, 0.0});
  state.theta = theta;
  double eta = std::sqrt(c2 / (state.d_prime + theta));
  state.eta_prev = eta;
  return eta;
}

double eta_constant(StepSizeState& state, double eta) {
  if (!(eta > 0)) throw ConfigError("constant step-size must be positive");
  state.eta_prev = eta;
  return eta;
}

void accumulate(StepSizeState& state, double grad_err_sq, double delta_abs,
                double ref_step) {
  if (grad_err_sq < 0 || delta_abs < 0 || ref_step < 0)
    throw NegativeInput("accumulate: inputs must be nonnegative");
  state.d_prime_lag1 = state.d_prime;
  state.c_prime_lag2 = state.c_prime_lag1;
  state.c_prime_lag1 = state.c_prime;
  state.d_prime += grad_err_sq;
  state.v_prime += delta_abs;
  state.c_prime += ref_step;
  if (state.sigma_mode == SigmaMode::Estimated)
    state.sigma = std::max(state.sigma, std::sqrt(grad_err_sq));
  ++state.rounds_accumulated;
}

double lemma3_violation(const std::vector<double>& a, const std::vector<double>& b,
                        const std::vector<double>& c) {
  double lhs = 0, prefix = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    prefix += a[t];
    if (a[t] > 0) lhs += a[t] * std::sqrt(b[t] / (c[t] + prefix));
  }
  double rhs = 2.0 * std::sqrt(b[a.size() - 1] * (c[a.size() - 1] + prefix));
  return lhs - rhs;
}

double lemma4_violation(double a, double b) {
  return b * (1.0 / b - 1.0 / a) - std::log((1.0 / b) / (1.0 / a));
}

}  // namespace ocomd
