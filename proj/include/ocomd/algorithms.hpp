#ifndef OCOMD_ALGORITHMS_HPP
#define OCOMD_ALGORITHMS_HPP

#include <functional>
#include <optional>

#include "ocomd/prox.hpp"

namespace ocomd {

struct SmoothOracle {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;
  double beta = 0;   // smoothness constant
  double alpha = 0;  // strong convexity constant, 0 for merely convex
  // set when the smooth part is (weight/2)||x-target||^2; enables the
  // implicit closed form
  std::optional<QuadraticCost> quadratic;

  static SmoothOracle zero(std::size_t n);
  static SmoothOracle from_quadratic(QuadraticCost q);
};

struct CompositeCost {
  SmoothOracle smooth;
  NonsmoothPart nonsmooth;

  double value(const Vec& x) const { return smooth.value(x) + nonsmooth.value(x); }
  // gradient of the smooth part plus a subgradient of the nonsmooth part
  Vec full_subgrad(const Vec& x) const {
    return add(smooth.grad(x), nonsmooth.subgrad(x));
  }
};

struct PredictionBundle {
  std::function<Vec(const Vec&)> grad_pred;
  NonsmoothPart func_pred;
  double sigma = 0;  // bound on the dual-norm gradient prediction error

  static PredictionBundle perfect(const SmoothOracle& smooth,
                                  const NonsmoothPart& nonsmooth);
  static PredictionBundle zero(std::size_t n);
};

struct DynamicsModel {
  std::function<Vec(const Vec&)> phi;
  static DynamicsModel identity();
  Vec apply(const Vec& x) const { return phi ? phi(x) : x; }
};

struct AlgorithmState {
  Vec x_prev;
  Vec y_prev;
  int round = 1;

  static AlgorithmState at(const MirrorSetup& setup, Vec start);
};

struct StepOutcome {
  Vec played;
  AlgorithmState next;
  double grad_err_sq = 0;  // ||grad s_t(y_{t-1}) - grad shat_t(y_{t-1})||_*^2
  double delta = 0;        // r_t(x_t) - rhat_t(x_t) + rhat_t(y_t) - r_t(y_t)
  bool nonexpansive_warning = false;
};

// x_{t+1} = prox of the full (sub)gradient at x_t; the cost is treated as a
// whole, the nonsmooth part is linearized.
AlgorithmState omd_step(const MirrorSetup& setup, const AlgorithmState& state,
                        const CompositeCost& cost, double eta);

// Two prox calls from y_{t-1}: prediction first, revealed gradient second.
StepOutcome optmd_step(const MirrorSetup& setup, const AlgorithmState& state,
                       const CompositeCost& cost, const PredictionBundle& bundle,
                       double eta);

// Composite update: smooth part linearized at x_t, nonsmooth part kept exact.
AlgorithmState comid_step(const MirrorSetup& setup, const AlgorithmState& state,
                          const CompositeCost& cost, double eta);

// Fully implicit update with the unlinearized cost.
AlgorithmState iomd_step(const MirrorSetup& setup, const AlgorithmState& state,
                         const CompositeCost& cost, double eta);

// Optimistic composite update; records the step-size accumulator inputs.
StepOutcome optcmd_step(const MirrorSetup& setup, const AlgorithmState& state,
                        const CompositeCost& cost, const PredictionBundle& bundle,
                        double eta);

// Dynamic variant: y_t = Phi_t(y~_t). Delta is evaluated at (x_t, y~_t).
// eta_aux > 0 selects a different step size for the y~ update (the tracking
// experiment runs that hybrid).
StepOutcome optdcmd_step(const MirrorSetup& setup, const AlgorithmState& state,
                         const CompositeCost& cost, const PredictionBundle& bundle,
                         const DynamicsModel& dynamics, double eta,
                         double eta_aux = -1);

// Benchmark of Hall & Willett: composite mirror step then the dynamical map.
AlgorithmState dmd_baseline_step(const MirrorSetup& setup, const AlgorithmState& state,
                                 const CompositeCost& cost,
                                 const DynamicsModel& dynamics, double eta);

// Dynamic optimistic baseline on the full linearized gradient.
StepOutcome doptmd_baseline_step(const MirrorSetup& setup, const AlgorithmState& state,
                                 const CompositeCost& cost,
                                 const PredictionBundle& bundle,
                                 const DynamicsModel& dynamics, double eta);

// Constant uniform portfolio.
Vec cup_baseline(std::size_t n);

}  // namespace ocomd

#endif
