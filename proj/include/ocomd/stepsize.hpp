#ifndef OCOMD_STEPSIZE_HPP
#define OCOMD_STEPSIZE_HPP

#include <vector>

#include "ocomd/errors.hpp"

namespace ocomd {

enum class SigmaMode { Supplied, Estimated };

// Running accumulators feeding the adaptive schedules. accumulate() is called
// once per round, after the round's step; eta_*(t) reads rounds 1..t-1.
struct StepSizeState {
  double beta = 1.0;
  double alpha = 0.0;
  double sigma = 0.0;
  double tau = 0.0;      // known upper bound on C'_T (implicit schedule only)
  double eta_max = 1e6;  // cap used when the implicit schedule divides by 0

  SigmaMode sigma_mode = SigmaMode::Supplied;
  bool exact_func_pred = false;

  double d_prime = 0;  // D'_t, sum of squared dual-norm gradient prediction errors
  double v_prime = 0;  // V'_t, sum of |Delta_t|
  double c_prime = 0;  // C'_t, sum of ||u_{t+1} - Phi_t(u_t)||
  double theta = 0;    // theta_t of the fully adaptive schedule
  double eta_prev = 0;

  int rounds_accumulated = 0;

  // lagged snapshots used by the fully adaptive schedule
  double d_prime_lag1 = 0;  // D'_{t-1} one round back
  double c_prime_lag1 = 0;  // C'_{t-1}
  double c_prime_lag2 = 0;  // C'_{t-2}
};

// eta_t = (4 beta^2 + (V'_{t-1})^2 + D'_{t-1})^{-1/2}; equals 1/(2 beta) at t=1.
double eta_thm1(StepSizeState& state, int t);

// eta_t = (2 beta + (alpha / (2 sigma^2)) D'_{t-1})^{-1}; needs alpha > 0 and
// exact function predictions.
double eta_thm2(StepSizeState& state, int t);

// eta_t = tau / V'_{t-1}, capped at eta_max when V' = 0; fully implicit mode.
double eta_thm4(StepSizeState& state, int t);

// eta_1 = eta_2 = 1/(2 beta); eta_t = sqrt((C'_{t-2}+1)/(D'_{t-1}+theta_t))
// with theta_t the minimal value keeping eta_t <= eta_{t-1} <= 1/(2 beta)
// and theta nondecreasing.
double eta_thm5(StepSizeState& state, int t);

double eta_constant(StepSizeState& state, double eta);

// Feed the round-t quantities: gradient prediction error squared (at y_{t-1}),
// |Delta_t|, and the reference step ||u_{t+1} - Phi_t(u_t)|| when available.
void accumulate(StepSizeState& state, double grad_err_sq, double delta_abs,
                double ref_step);

// Numeric checks of the two auxiliary inequalities behind the schedules;
// exposed for property tests. Return the violation (<= 0 means it holds).
double lemma3_violation(const std::vector<double>& a, const std::vector<double>& b,
                        const std::vector<double>& c);
double lemma4_violation(double a, double b);

}  // namespace ocomd

#endif
