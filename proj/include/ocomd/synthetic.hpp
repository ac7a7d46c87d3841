#ifndef OCOMD_SYNTHETIC_HPP
#define OCOMD_SYNTHETIC_HPP

#include <cstdint>

#include "ocomd/regret.hpp"
#include "ocomd/stepsize.hpp"

namespace ocomd {

// Randomized convex-composite instances and single-run drivers behind the
// theorem-bound verification suites. Every run returns the measured regret
// together with everything bound_expression needs.

enum class GradPredKind { Perfect, BoundedNoise, Previous, Zero };

struct StaticInstanceSpec {
  std::size_t dim = 2;
  int horizon = 500;
  double beta = 2.0;          // largest admissible curvature
  double alpha = 0.0;         // smallest curvature; > 0 for the strongly convex runs
  double l1_weight = 0.2;     // weight of the fixed nonsmooth part (0 = none)
  GradPredKind grad_pred = GradPredKind::BoundedNoise;
  double noise_level = 0.2;   // sigma for BoundedNoise
  bool perfect_func_pred = true;
  double func_pred_jitter = 0.5;  // relative l1-weight perturbation when imperfect
  std::uint64_t seed = 0;
};

struct StaticRunReport {
  double regret = 0;       // certified upper bracket (estimate + solver gap)
  double regret_est = 0;
  double solver_gap = 0;
  BoundConstants constants;
  BoundMeasures measures;
  bool eta_monotone = true;
  bool eta_capped = true;  // eta_t <= 1/(2 beta) throughout
  std::vector<double> prefix_regret;  // filled only by the perfect-prediction driver
};

// OptCMD on random quadratic-plus-l1 costs over a random box, Theorem-1
// schedule; the offline comparator is the aggregated quadratic.
StaticRunReport run_static_convex(const StaticInstanceSpec& spec);

// Same family with strongly convex costs, exact function predictions and the
// Theorem-2 schedule.
StaticRunReport run_static_strongly_convex(const StaticInstanceSpec& spec);

// Perfect predictions, unit quadratics: the prefix comparator has a closed
// form, so the constant-regret claim is checkable at every horizon.
StaticRunReport run_static_perfect_all_prefixes(std::size_t dim, int horizon,
                                                double l1_weight, std::uint64_t seed);

struct DynamicInstanceSpec {
  std::size_t dim = 3;
  int horizon = 400;
  double noise_level = 0.2;      // gradient prediction noise bound
  double dynamics_noise = 0.05;  // reference perturbation scale; 0 = exact dynamics
  bool perfect_func_pred = true;
  double func_pred_jitter = 0.5;
  bool fully_adaptive = false;  // Theorem-5 schedule instead of Theorem-3
  std::uint64_t seed = 0;
};

// OptDCMD on tracking-style quadratic-plus-l1 costs over the unit ball with a
// contractive rotation as dynamics.
StaticRunReport run_dynamic_convex(const DynamicInstanceSpec& spec);

struct ImplicitInstanceSpec {
  std::size_t dim = 3;
  int horizon = 300;
  double func_pred_noise = 0.2;  // 0 = perfect function predictions
  double dynamics_noise = 0.05;
  double eta_max = 1e6;
  std::uint64_t seed = 0;
};

// Fully implicit mode (s = 0): costs are l1-plus-linear, every update has a
// closed form, Theorem-4 schedule with tau derived from the generator.
StaticRunReport run_implicit_dynamic(const ImplicitInstanceSpec& spec);

}  // namespace ocomd

#endif
