#ifndef OCOMD_PROX_HPP
#define OCOMD_PROX_HPP

#include <functional>

#include "ocomd/geometry.hpp"

namespace ocomd {

// Nonsmooth cost component r. Custom parts carry value + subgradient
// oracles; prox routing for them goes through the certified fallback.
struct NonsmoothPart {
  enum class Kind { Zero, L1, Custom };
  Kind kind = Kind::Zero;
  double weight = 0;  // l1
  std::function<double(const Vec&)> value_fn;
  std::function<Vec(const Vec&)> subgrad_fn;

  static NonsmoothPart zero() { return {}; }
  static NonsmoothPart l1(double weight);
  static NonsmoothPart custom(std::function<double(const Vec&)> value,
                              std::function<Vec(const Vec&)> subgrad);

  double value(const Vec& x) const;
  // l1 subgradient at 0 is taken as 0 (minimal-norm element).
  Vec subgrad(const Vec& x) const;
  bool is_zero() const { return kind == Kind::Zero || (kind == Kind::L1 && weight == 0); }
};

// s(x) = (weight/2) ||x - target||_2^2
struct QuadraticCost {
  Vec target;
  double weight = 1.0;
};

struct ProxInfo {
  bool used_fallback = false;
  int iterations = 0;
  double gap = 0;  // certified optimality gap of the fallback, 0 for closed forms
};

// arg min over X of eta*<w,x> + eta*r(x) + B_h(x,v).
// Closed forms: every euclidean set with r in {zero, l1}; entropy simplex
// with r = zero (multiplicative update). Custom r goes to the fallback
// solver (projected subgradient, 500 iterations, certified gap 1e-8).
Vec composite_prox(const MirrorSetup& setup, const Vec& w, const NonsmoothPart& r,
                   double eta, const Vec& v, ProxInfo* info = nullptr);

// arg min over X of eta*(quad(x) + r(x)) + B_h(x,v); the quadratic merges
// with the euclidean Bregman term, so this reuses the same closed forms.
Vec implicit_prox_quadratic(const MirrorSetup& setup, const QuadraticCost& quad,
                            const NonsmoothPart& r, double eta, const Vec& v,
                            ProxInfo* info = nullptr);

// arg min over X of eta*f(x) + B_h(x,v) for a general convex value/subgradient
// oracle; certified fallback only.
Vec implicit_prox(const MirrorSetup& setup,
                  const std::function<double(const Vec&)>& value,
                  const std::function<Vec(const Vec&)>& subgrad, double eta,
                  const Vec& v, ProxInfo* info = nullptr);

// Objective of the composite subproblem; exposed for tests and oracles.
double prox_objective(const MirrorSetup& setup, const Vec& w, const NonsmoothPart& r,
                      double eta, const Vec& v, const Vec& x);

// arg min over the set of 0.5||x-z||^2 + shrink*||x||_1, exact for all four
// set kinds (bisection couples the ball constraint with the l1 term).
Vec euclidean_prox_core(const FeasibleSet& set, const Vec& z, double shrink);

// Certified solver for min over X of G(x) given value/subgradient oracles of
// a 1-strongly-convex G. Polyak-type projected subgradient; the gap bound
// comes from the strong-convexity lower bound minimized over the set.
struct FallbackResult {
  Vec x;
  double gap;
  int iterations;
};
FallbackResult certified_min(const FeasibleSet& set,
                             const std::function<double(const Vec&)>& value,
                             const std::function<Vec(const Vec&)>& subgrad,
                             const Vec& start, int max_iters = 500,
                             double gap_target = 1e-8);

}  // namespace ocomd

#endif
