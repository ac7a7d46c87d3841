#include "ocomd/algorithms.hpp"

namespace ocomd {

SmoothOracle SmoothOracle::zero(std::size_t n) {
  SmoothOracle s;
  s.value = [](const Vec&) { return 0.0; };
  s.grad = [n](const Vec&) { return zeros(n); };
  s.beta = 0;
  return s;
}

SmoothOracle SmoothOracle::from_quadratic(QuadraticCost q) {
  SmoothOracle s;
  s.beta = q.weight;
  s.alpha = q.weight;
  QuadraticCost qc = q;
  s.value = [qc](const Vec& x) {
    Vec d = sub(x, qc.target);
    return 0.5 * qc.weight * dot(d, d);
  };
  s.grad = [qc](const Vec& x) { return scale(sub(x, qc.target), qc.weight); };
  s.quadratic = std::move(q);
  return s;
}

PredictionBundle PredictionBundle::perfect(const SmoothOracle& smooth,
                                           const NonsmoothPart& nonsmooth) {
  PredictionBundle b;
  b.grad_pred = smooth.grad;
  b.func_pred = nonsmooth;
  b.sigma = 0;
  return b;
}

PredictionBundle PredictionBundle::zero(std::size_t n) {
  PredictionBundle b;
  b.grad_pred = [n](const Vec&) { return zeros(n); };
  b.func_pred = NonsmoothPart::zero();
  b.sigma = 0;
  return b;
}

DynamicsModel DynamicsModel::identity() {
  DynamicsModel d;
  d.phi = [](const Vec& x) { return x; };
  return d;
}

AlgorithmState AlgorithmState::at(const MirrorSetup& setup, Vec start) {
  check_dimension(setup, start, "AlgorithmState start");
  Vec s = project(setup, start);
  return {s, s, 1};
}

AlgorithmState omd_step(const MirrorSetup& setup, const AlgorithmState& state,
                        const CompositeCost& cost, double eta) {
  Vec w = cost.full_subgrad(state.x_prev);
  Vec x = composite_prox(setup, w, NonsmoothPart::zero(), eta, state.x_prev);
  return {x, x, state.round + 1};
}

StepOutcome optmd_step(const MirrorSetup& setup, const AlgorithmState& state,
                       const CompositeCost& cost, const PredictionBundle& bundle,
                       double eta) {
  const Vec& y_prev = state.y_prev;
  Vec m = bundle.grad_pred(y_prev);
  Vec x = composite_prox(setup, m, NonsmoothPart::zero(), eta, y_prev);
  Vec y = composite_prox(setup, cost.full_subgrad(x), NonsmoothPart::zero(), eta, y_prev);
  StepOutcome out;
  out.played = x;
  out.next = {x, y, state.round + 1};
  Vec err = sub(cost.full_subgrad(y_prev), m);
  out.grad_err_sq = dual_norm(setup, err) * dual_norm(setup, err);
  return out;
}

AlgorithmState comid_step(const MirrorSetup& setup, const AlgorithmState& state,
                          const CompositeCost& cost, double eta) {
  Vec w = cost.smooth.grad(state.x_prev);
  Vec x = composite_prox(setup, w, cost.nonsmooth, eta, state.x_prev);
  return {x, x, state.round + 1};
}

AlgorithmState iomd_step(const MirrorSetup& setup, const AlgorithmState& state,
                         const CompositeCost& cost, double eta) {
  Vec x;
  if (cost.smooth.quadratic) {
    x = implicit_prox_quadratic(setup, *cost.smooth.quadratic, cost.nonsmooth, eta,
                                state.x_prev);
  } else {
    auto value = [&cost](const Vec& z) { return cost.value(z); };
    auto subgrad = [&cost](const Vec& z) { return cost.full_subgrad(z); };
    x = implicit_prox(setup, value, subgrad, eta, state.x_prev);
  }
  return {x, x, state.round + 1};
}

static StepOutcome optimistic_composite(const MirrorSetup& setup,
                                        const AlgorithmState& state,
                                        const CompositeCost& cost,
                                        const PredictionBundle& bundle, double eta_x,
                                        double eta_y) {
  const Vec& y_prev = state.y_prev;
  Vec m = bundle.grad_pred(y_prev);
  Vec x = composite_prox(setup, m, bundle.func_pred, eta_x, y_prev);
  Vec y = composite_prox(setup, cost.smooth.grad(x), cost.nonsmooth, eta_y, y_prev);
  StepOutcome out;
  out.played = x;
  out.next = {x, y, state.round + 1};
  Vec err = sub(cost.smooth.grad(y_prev), m);
  double e = dual_norm(setup, err);
  out.grad_err_sq = e * e;
  out.delta = cost.nonsmooth.value(x) - bundle.func_pred.value(x) +
              bundle.func_pred.value(y) - cost.nonsmooth.value(y);
  return out;
}

StepOutcome optcmd_step(const MirrorSetup& setup, const AlgorithmState& state,
                        const CompositeCost& cost, const PredictionBundle& bundle,
                        double eta) {
  return optimistic_composite(setup, state, cost, bundle, eta, eta);
}

StepOutcome optdcmd_step(const MirrorSetup& setup, const AlgorithmState& state,
                         const CompositeCost& cost, const PredictionBundle& bundle,
                         const DynamicsModel& dynamics, double eta, double eta_aux) {
  StepOutcome out = optimistic_composite(setup, state, cost, bundle, eta,
                                         eta_aux > 0 ? eta_aux : eta);
  Vec y_tilde = out.next.y_prev;
  Vec y = dynamics.apply(y_tilde);
  if (!setup.set.contains(y))
    throw InfeasibleDynamics("optdcmd_step: dynamics output left the feasible set");
  // Assumption-4 spot check along the trajectory
  double before = bregman(setup, project(setup, y_tilde), project(setup, state.y_prev));
  double after = bregman(setup, project(setup, y),
                         project(setup, dynamics.apply(state.y_prev)));
  if (after > before + 1e-9) out.nonexpansive_warning = true;
  out.next.y_prev = y;
  return out;
}

AlgorithmState dmd_baseline_step(const MirrorSetup& setup, const AlgorithmState& state,
                                 const CompositeCost& cost,
                                 const DynamicsModel& dynamics, double eta) {
  AlgorithmState mid = comid_step(setup, state, cost, eta);
  Vec x = dynamics.apply(mid.x_prev);
  if (!setup.set.contains(x))
    throw InfeasibleDynamics("dmd_baseline_step: dynamics output left the feasible set");
  return {x, x, state.round + 1};
}

StepOutcome doptmd_baseline_step(const MirrorSetup& setup, const AlgorithmState& state,
                                 const CompositeCost& cost,
                                 const PredictionBundle& bundle,
                                 const DynamicsModel& dynamics, double eta) {
  StepOutcome out = optmd_step(setup, state, cost, bundle, eta);
  Vec y = dynamics.apply(out.next.y_prev);
  if (!setup.set.contains(y))
    throw InfeasibleDynamics("doptmd_baseline_step: dynamics output left the feasible set");
  out.next.y_prev = y;
  return out;
}

Vec cup_baseline(std::size_t n) {
  if (n == 0) throw ConfigError("cup_baseline: need at least one asset");
  return constant(n, 1.0 / static_cast<double>(n));
}

}  // namespace ocomd
