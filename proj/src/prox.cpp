#include "ocomd/prox.hpp"

#include <algorithm>
#include <cmath>

namespace ocomd {

NonsmoothPart NonsmoothPart::l1(double weight) {
  if (!(weight >= 0) || !std::isfinite(weight))
    throw DomainViolation("l1 weight must be finite and nonnegative");
  NonsmoothPart r;
  r.kind = Kind::L1;
  r.weight = weight;
  return r;
}

NonsmoothPart NonsmoothPart::custom(std::function<double(const Vec&)> value,
                                    std::function<Vec(const Vec&)> subgrad) {
  NonsmoothPart r;
  r.kind = Kind::Custom;
  r.value_fn = std::move(value);
  r.subgrad_fn = std::move(subgrad);
  return r;
}

double NonsmoothPart::value(const Vec& x) const {
  switch (kind) {
    case Kind::Zero:
      return 0;
    case Kind::L1:
      return weight * norm1(x);
    case Kind::Custom:
      return value_fn(x);
  }
  return 0;
}

Vec NonsmoothPart::subgrad(const Vec& x) const {
  switch (kind) {
    case Kind::Zero:
      return zeros(x.size());
    case Kind::L1: {
      Vec g(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) g[i] = weight * sign(x[i]);
      return g;
    }
    case Kind::Custom:
      return subgrad_fn(x);
  }
  return zeros(x.size());
}

double prox_objective(const MirrorSetup& setup, const Vec& w, const NonsmoothPart& r,
                      double eta, const Vec& v, const Vec& x) {
  return eta * dot(w, x) + eta * r.value(x) + bregman(setup, x, v);
}

// ---------------------------------------------------------------------------
// Euclidean core: arg min over the set of 0.5||x-z||^2 + shrink*||x||_1

static Vec ball_l1_bisection(const FeasibleSet& set, const Vec& z, double shrink) {
  const Vec& c = set.center;
  const double rho = set.radius;
  auto candidate = [&](double mu) {
    Vec x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      x[i] = soft_threshold(z[i] + mu * c[i], shrink) / (1.0 + mu);
    return x;
  };
  Vec x0 = candidate(0.0);
  double d0 = norm2(sub(x0, c));
  if (d0 <= rho) return x0;
  // ||x(mu) - c|| is nonincreasing in mu and tends to 0; bracket then bisect.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && norm2(sub(candidate(hi), c)) > rho; ++i) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 120; ++i) {
    double mid = 0.5 * (lo + hi);
    if (norm2(sub(candidate(mid), c)) > rho)
      lo = mid;
    else
      hi = mid;
  }
  return candidate(hi);
}

Vec euclidean_prox_core(const FeasibleSet& set, const Vec& z, double shrink) {
  switch (set.kind) {
    case SetKind::WholeSpace:
      return soft_threshold(z, shrink);
    case SetKind::Box: {
      // separable: clamp of the 1-D soft threshold
      Vec x(z.size());
      for (std::size_t i = 0; i < z.size(); ++i)
        x[i] = std::clamp(soft_threshold(z[i], shrink), set.lower[i], set.upper[i]);
      return x;
    }
    case SetKind::Simplex:
      // ||x||_1 = 1 on the simplex, so the l1 term is constant
      return project_euclidean(set, z);
    case SetKind::Ball:
      if (shrink == 0) return project_euclidean(set, z);
      return ball_l1_bisection(set, z, shrink);
  }
  return z;
}

// ---------------------------------------------------------------------------
// Certified fallback

FallbackResult certified_min(const FeasibleSet& set,
                             const std::function<double(const Vec&)>& value,
                             const std::function<Vec(const Vec&)>& subgrad,
                             const Vec& start, int max_iters, double gap_target) {
  Vec x = project_euclidean(set, start);
  Vec best_x = x;
  double best_val = value(x);
  // G is 1-strongly convex, so G* >= G(x) + min_z { <g, z-x> + 0.5||z-x||^2 }.
  double lb_best = -std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < max_iters; ++it) {
    double fx = value(x);
    Vec g = subgrad(x);
    if (fx < best_val) {
      best_val = fx;
      best_x = x;
    }
    Vec zstar = project_euclidean(set, sub(x, g));
    Vec dz = sub(zstar, x);
    double lb = fx + dot(g, dz) + 0.5 * dot(dz, dz);
    lb_best = std::max(lb_best, lb);
    if (best_val - lb_best <= gap_target) break;
    double gg = dot(g, g);
    if (gg < 1e-30) break;
    double step = (fx - lb_best) / gg;
    x = project_euclidean(set, axpy(x, -step, g));
  }
  return {best_x, best_val - lb_best, it};
}

// ---------------------------------------------------------------------------

static Vec entropy_multiplicative(const MirrorSetup& setup, const Vec& w, double eta,
                                  const Vec& v) {
  // x_i proportional to v_i * exp(-eta w_i), stabilized in log space
  Vec t(v.size());
  double tmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= 0) throw DomainViolation("entropy prox: center must be strictly positive");
    t[i] = std::log(v[i]) - eta * w[i];
    tmax = std::max(tmax, t[i]);
  }
  Vec x(v.size());
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    x[i] = std::exp(t[i] - tmax);
    s += x[i];
  }
  for (auto& xi : x) xi /= s;
  return floor_simplex(x, setup.entropy_floor);
}

static Vec run_fallback(const MirrorSetup& setup,
                        const std::function<double(const Vec&)>& value,
                        const std::function<Vec(const Vec&)>& subgrad, const Vec& v,
                        ProxInfo* info) {
  // entropy iterates are kept interior so log-gradients stay finite
  auto lift = [&](const Vec& x) {
    return setup.map_kind == MapKind::NegativeEntropy
               ? floor_simplex(x, setup.entropy_floor)
               : x;
  };
  auto val = [&](const Vec& x) { return value(lift(x)); };
  auto grd = [&](const Vec& x) { return subgrad(lift(x)); };
  FallbackResult res = certified_min(setup.set, val, grd, v, 500, 1e-8);
  if (info) {
    info->used_fallback = true;
    info->iterations = res.iterations;
    info->gap = res.gap;
  }
  if (res.gap > 1e-8)
    throw NonConvergence("prox fallback missed gap target", lift(res.x), res.gap);
  return lift(res.x);
}

Vec composite_prox(const MirrorSetup& setup, const Vec& w, const NonsmoothPart& r,
                   double eta, const Vec& v, ProxInfo* info) {
  check_dimension(setup, w, "composite_prox w");
  check_dimension(setup, v, "composite_prox v");
  if (!(eta > 0)) throw ConfigError("composite_prox: eta must be positive");
  if (info) *info = ProxInfo{};

  if (setup.map_kind == MapKind::NegativeEntropy) {
    if (r.kind == NonsmoothPart::Kind::L1 && r.weight != 0)
      throw UnsupportedCombination("negative-entropy with nonzero l1 is not implemented");
    if (r.kind == NonsmoothPart::Kind::Custom) {
      auto value = [&](const Vec& x) { return prox_objective(setup, w, r, eta, v, x); };
      auto subgrad = [&](const Vec& x) {
        Vec g = r.subgrad(x);
        for (std::size_t i = 0; i < x.size(); ++i)
          g[i] = eta * w[i] + eta * g[i] + std::log(x[i] / v[i]);
        return g;
      };
      return run_fallback(setup, value, subgrad, v, info);
    }
    return entropy_multiplicative(setup, w, eta, v);
  }

  switch (r.kind) {
    case NonsmoothPart::Kind::Zero:
      return euclidean_prox_core(setup.set, axpy(v, -eta, w), 0.0);
    case NonsmoothPart::Kind::L1:
      return euclidean_prox_core(setup.set, axpy(v, -eta, w), eta * r.weight);
    case NonsmoothPart::Kind::Custom: {
      auto value = [&](const Vec& x) { return prox_objective(setup, w, r, eta, v, x); };
      auto subgrad = [&](const Vec& x) {
        Vec g = r.subgrad(x);
        for (std::size_t i = 0; i < x.size(); ++i)
          g[i] = eta * w[i] + eta * g[i] + (x[i] - v[i]);
        return g;
      };
      return run_fallback(setup, value, subgrad, v, info);
    }
  }
  return v;
}

Vec implicit_prox_quadratic(const MirrorSetup& setup, const QuadraticCost& quad,
                            const NonsmoothPart& r, double eta, const Vec& v,
                            ProxInfo* info) {
  check_dimension(setup, quad.target, "implicit_prox target");
  check_dimension(setup, v, "implicit_prox v");
  if (!(eta > 0)) throw ConfigError("implicit_prox: eta must be positive");
  if (!(quad.weight > 0)) throw DomainViolation("implicit_prox: quadratic weight must be positive");
  if (info) *info = ProxInfo{};

  auto quad_value = [&](const Vec& x) {
    Vec d = sub(x, quad.target);
    return 0.5 * quad.weight * dot(d, d);
  };

  if (setup.map_kind == MapKind::Euclidean && r.kind != NonsmoothPart::Kind::Custom) {
    // eta*(W/2)||x-a||^2 + 0.5||x-v||^2 = ((1+eta*W)/2)||x-m||^2 + const
    const double ew = eta * quad.weight;
    Vec m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      m[i] = (v[i] + ew * quad.target[i]) / (1.0 + ew);
    double shrink =
        r.kind == NonsmoothPart::Kind::L1 ? eta * r.weight / (1.0 + ew) : 0.0;
    return euclidean_prox_core(setup.set, m, shrink);
  }

  auto value = [&](const Vec& x) {
    return eta * (quad_value(x) + r.value(x)) + bregman(setup, x, v);
  };
  auto subgrad = [&](const Vec& x) {
    Vec g = r.subgrad(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double breg = setup.map_kind == MapKind::Euclidean ? (x[i] - v[i])
                                                         : std::log(x[i] / v[i]);
      g[i] = eta * (quad.weight * (x[i] - quad.target[i]) + g[i]) + breg;
    }
    return g;
  };
  return run_fallback(setup, value, subgrad, v, info);
}

Vec implicit_prox(const MirrorSetup& setup,
                  const std::function<double(const Vec&)>& value,
                  const std::function<Vec(const Vec&)>& subgrad, double eta,
                  const Vec& v, ProxInfo* info) {
  check_dimension(setup, v, "implicit_prox v");
  if (!(eta > 0)) throw ConfigError("implicit_prox: eta must be positive");
  if (info) *info = ProxInfo{};
  auto obj = [&](const Vec& x) { return eta * value(x) + bregman(setup, x, v); };
  auto grd = [&](const Vec& x) {
    Vec g = subgrad(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double breg = setup.map_kind == MapKind::Euclidean ? (x[i] - v[i])
                                                         : std::log(x[i] / v[i]);
      g[i] = eta * g[i] + breg;
    }
    return g;
  };
  return run_fallback(setup, obj, grd, v, info);
}

}  // namespace ocomd
