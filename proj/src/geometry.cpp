#include "ocomd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ocomd {

FeasibleSet FeasibleSet::whole_space(std::size_t n) {
  FeasibleSet s;
  s.kind = SetKind::WholeSpace;
  s.dim_ = n;
  return s;
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size())
    throw DimensionMismatch("box: lower/upper dimension mismatch");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i]) throw DomainViolation("box: lower > upper");
  FeasibleSet s;
  s.kind = SetKind::Box;
  s.dim_ = lower.size();
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  return s;
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (radius <= 0) throw DomainViolation("ball: radius must be positive");
  FeasibleSet s;
  s.kind = SetKind::Ball;
  s.dim_ = center.size();
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

FeasibleSet FeasibleSet::simplex(std::size_t n) {
  if (n == 0) throw DomainViolation("simplex: dimension must be positive");
  FeasibleSet s;
  s.kind = SetKind::Simplex;
  s.dim_ = n;
  return s;
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) return false;
  switch (kind) {
    case SetKind::WholeSpace:
      return true;
    case SetKind::Box:
      for (std::size_t i = 0; i < dim_; ++i)
        if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
      return true;
    case SetKind::Ball:
      return norm2(sub(x, center)) <= radius + tol;
    case SetKind::Simplex: {
      double s = 0;
      for (double xi : x) {
        if (xi < -tol) return false;
        s += xi;
      }
      return std::fabs(s - 1.0) <= tol;
    }
  }
  return false;
}

double FeasibleSet::diameter() const {
  switch (kind) {
    case SetKind::WholeSpace:
      return std::numeric_limits<double>::infinity();
    case SetKind::Box:
      return norm2(sub(upper, lower));
    case SetKind::Ball:
      return 2.0 * radius;
    case SetKind::Simplex:
      return std::sqrt(2.0);  // between two vertices
  }
  return 0;
}

MirrorSetup MirrorSetup::euclidean(FeasibleSet set, double diameter_sq, double gamma) {
  MirrorSetup m;
  m.dimension = set.dimension();
  m.map_kind = MapKind::Euclidean;
  double diam = set.diameter();
  m.set = std::move(set);
  // sup B_h = 0.5 * diam^2 for h = 0.5||.||^2
  m.diameter_sq = diameter_sq > 0 ? diameter_sq : 0.5 * diam * diam;
  m.bregman_lipschitz = gamma > 0 ? gamma : diam;
  return m;
}

MirrorSetup MirrorSetup::negative_entropy(std::size_t n, double floor_eps) {
  if (floor_eps <= 0 || floor_eps >= 1.0 / static_cast<double>(n))
    throw DomainViolation("negative_entropy: floor must be in (0, 1/n)");
  MirrorSetup m;
  m.dimension = n;
  m.map_kind = MapKind::NegativeEntropy;
  m.set = FeasibleSet::simplex(n);
  // KL against a floored point is at most log(1/eps)
  m.diameter_sq = std::log(1.0 / floor_eps);
  // per-coordinate mean value bound on |d/du u log(u/c)| for u, c in [eps, 1]
  m.bregman_lipschitz = std::log(1.0 / floor_eps) + 1.0;
  m.entropy_floor = floor_eps;
  return m;
}

void check_dimension(const MirrorSetup& setup, const Vec& v, const char* what) {
  if (v.size() != setup.dimension)
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(setup.dimension) + ", got " +
                            std::to_string(v.size()));
}

double bregman(const MirrorSetup& setup, const Vec& x, const Vec& y) {
  check_dimension(setup, x, "bregman x");
  check_dimension(setup, y, "bregman y");
  if (setup.map_kind == MapKind::Euclidean) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double d = x[i] - y[i];
      s += d * d;
    }
    return 0.5 * s;
  }
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] <= 0) throw DomainViolation("bregman: entropy divergence needs y > 0");
    if (x[i] > 0) s += x[i] * std::log(x[i] / y[i]);
  }
  return s;
}

double dual_norm(const MirrorSetup& setup, const Vec& w) {
  check_dimension(setup, w, "dual_norm");
  return setup.map_kind == MapKind::Euclidean ? norm2(w) : norm_inf(w);
}

double primal_norm(const MirrorSetup& setup, const Vec& v) {
  check_dimension(setup, v, "primal_norm");
  return setup.map_kind == MapKind::Euclidean ? norm2(v) : norm1(v);
}

Vec floor_simplex(const Vec& x, double eps) {
  Vec r(x.size());
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r[i] = std::max(x[i], eps);
    s += r[i];
  }
  for (auto& ri : r) ri /= s;
  return r;
}

// Euclidean projection onto the simplex [Held, Wolfe, Crowder 1974].
static Vec project_simplex_sorted(const Vec& x) {
  const std::size_t n = x.size();
  Vec u = x;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double csum = 0;
  double theta = 0;
  std::size_t rho = 0;
  for (std::size_t j = 0; j < n; ++j) {
    csum += u[j];
    double t = (csum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) {
      rho = j + 1;
      theta = t;
    }
  }
  (void)rho;
  Vec p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = std::max(x[i] - theta, 0.0);
  return p;
}

Vec project_euclidean(const FeasibleSet& set, const Vec& x) {
  if (x.size() != set.dimension())
    throw DimensionMismatch("project: dimension mismatch");
  switch (set.kind) {
    case SetKind::WholeSpace:
      return x;
    case SetKind::Box: {
      Vec r(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = std::clamp(x[i], set.lower[i], set.upper[i]);
      return r;
    }
    case SetKind::Ball: {
      Vec d = sub(x, set.center);
      double nd = norm2(d);
      if (nd <= set.radius) return x;
      return axpy(set.center, set.radius / nd, d);
    }
    case SetKind::Simplex:
      return project_simplex_sorted(x);
  }
  return x;
}

Vec project(const MirrorSetup& setup, const Vec& x) {
  check_dimension(setup, x, "project");
  if (setup.map_kind == MapKind::NegativeEntropy)
    return floor_simplex(x, setup.entropy_floor);
  return project_euclidean(setup.set, x);
}

}  // namespace ocomd
