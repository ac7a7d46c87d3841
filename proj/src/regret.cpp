#include "ocomd/regret.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ocomd {

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void RegretLedger::append(const LedgerRow& row) {
  if (row.grad_err_sq < 0 || row.delta_abs < 0 || row.ref_step < 0)
    throw NegativeInput("ledger: measure increments must be nonnegative");
  rows_.push_back(row);
  d_prime_ += row.grad_err_sq;
  v_prime_ += row.delta_abs;
  c_prime_ += row.ref_step;
  sum_g_sq_ += row.g_sq;
  total_loss_ += row.loss;
}

void RegretLedger::set_dynamic_comparator(std::vector<double> losses) {
  if (losses.size() != rows_.size())
    throw LengthMismatch("ledger: dynamic comparator length mismatch");
  dynamic_comp_ = std::move(losses);
}

void RegretLedger::set_static_comparator(std::vector<double> losses) {
  if (losses.size() != rows_.size())
    throw LengthMismatch("ledger: static comparator length mismatch");
  static_comp_ = std::move(losses);
}

double RegretLedger::dynamic_regret_final() const {
  auto c = dynamic_regret_curve();
  return c.empty() ? 0 : c.back();
}

double RegretLedger::static_regret_final() const {
  auto c = static_regret_curve();
  return c.empty() ? 0 : c.back();
}

std::vector<double> RegretLedger::dynamic_regret_curve() const {
  std::vector<double> out(rows_.size(), 0.0);
  if (dynamic_comp_.empty()) return out;
  double s = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    s += rows_[i].loss - dynamic_comp_[i];
    out[i] = s;
  }
  return out;
}

std::vector<double> RegretLedger::static_regret_curve() const {
  std::vector<double> out(rows_.size(), 0.0);
  if (static_comp_.empty()) return out;
  double s = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    s += rows_[i].loss - static_comp_[i];
    out[i] = s;
  }
  return out;
}

void RegretLedger::validate(double tol) const {
  double d = 0, v = 0, c = 0, g = 0, l = 0;
  for (const auto& r : rows_) {
    d += r.grad_err_sq;
    v += r.delta_abs;
    c += r.ref_step;
    g += r.g_sq;
    l += r.loss;
  }
  auto off = [&](double a, double b) { return std::fabs(a - b) > tol * (1 + std::fabs(b)); };
  if (off(d, d_prime_) || off(v, v_prime_) || off(c, c_prime_) || off(g, sum_g_sq_) ||
      off(l, total_loss_))
    throw ValidationError("ledger: cumulative fields disagree with re-summation");
}

void RegretLedger::write_csv(std::ostream& os, const std::string& extra_header,
                             const std::string& extra_values) const {
  os << "t,loss,comparator_loss,reg_s,reg_d,d_prime,v_prime,c_prime,eta";
  if (!extra_header.empty()) os << ',' << extra_header;
  os << '\n';
  auto reg_s = static_regret_curve();
  auto reg_d = dynamic_regret_curve();
  double d = 0, v = 0, c = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    d += r.grad_err_sq;
    v += r.delta_abs;
    c += r.ref_step;
    double comp = !dynamic_comp_.empty() ? dynamic_comp_[i]
                                         : (!static_comp_.empty() ? static_comp_[i] : 0.0);
    os << r.t << ',' << format_g12(r.loss) << ',' << format_g12(comp) << ','
       << format_g12(reg_s[i]) << ',' << format_g12(reg_d[i]) << ',' << format_g12(d)
       << ',' << format_g12(v) << ',' << format_g12(c) << ',' << format_g12(r.eta);
    if (!extra_values.empty()) os << ',' << extra_values;
    os << '\n';
  }
}

PathLengths path_length(const MirrorSetup& setup, const ReferenceSequence& refs,
                        const DynamicsModel* dynamics) {
  PathLengths p;
  for (std::size_t t = 0; t + 1 < refs.points.size(); ++t) {
    const Vec& u = refs.points[t];
    const Vec& u_next = refs.points[t + 1];
    p.c_t += primal_norm(setup, sub(u_next, u));
    Vec phi_u = dynamics ? dynamics->apply(u) : u;
    p.c_prime_t += primal_norm(setup, sub(u_next, phi_u));
  }
  return p;
}

double dynamic_regret(const std::vector<double>& losses,
                      const std::vector<double>& comparator_losses) {
  if (losses.size() != comparator_losses.size())
    throw LengthMismatch("dynamic_regret: sequence length mismatch");
  double s = 0;
  for (std::size_t i = 0; i < losses.size(); ++i) s += losses[i] - comparator_losses[i];
  return s;
}

// ---------------------------------------------------------------------------
// Offline comparator solver

// Frank-Wolfe gap max_z { <g, x-z> + reg(x) - reg(z) }; exact on compact sets.
static double fw_gap(const FeasibleSet& set, const NonsmoothPart& reg, const Vec& x,
                     const Vec& g) {
  const double lam = reg.kind == NonsmoothPart::Kind::L1 ? reg.weight : 0.0;
  switch (set.kind) {
    case SetKind::Box: {
      double gap = dot(g, x) + lam * norm1(x);
      for (std::size_t i = 0; i < x.size(); ++i) {
        double best = -g[i] * set.lower[i] - lam * std::fabs(set.lower[i]);
        best = std::max(best, -g[i] * set.upper[i] - lam * std::fabs(set.upper[i]));
        if (set.lower[i] <= 0 && set.upper[i] >= 0) best = std::max(best, 0.0);
        gap += best;
      }
      return gap;
    }
    case SetKind::Ball: {
      if (lam != 0)
        throw SolverFailure("offline solver: no gap certificate for l1 on a ball");
      return dot(g, sub(x, set.center)) + set.radius * norm2(g);
    }
    case SetKind::Simplex: {
      // ||z||_1 = 1 on the simplex, the l1 term cancels
      double zmin = g[0];
      for (double gi : g) zmin = std::min(zmin, gi);
      return dot(g, x) - zmin;
    }
    case SetKind::WholeSpace:
      throw SolverFailure("offline solver: no Frank-Wolfe gap on the whole space");
  }
  return 0;
}

OfflineSolution offline_minimize(const MirrorSetup& setup, const OfflineProblem& problem,
                                 const Vec& start, int max_iters, double rel_gap) {
  if (problem.reg.kind == NonsmoothPart::Kind::Custom)
    throw SolverFailure("offline solver: custom nonsmooth parts are not supported");
  const FeasibleSet& set = setup.set;
  double L = std::max(problem.lipschitz, 1e-12);
  const double lam = problem.reg.kind == NonsmoothPart::Kind::L1 ? problem.reg.weight : 0.0;

  auto total = [&](const Vec& x) { return problem.value(x) + problem.reg.value(x); };

  Vec x = project_euclidean(set, start);
  Vec y = x;
  Vec x_best = x;
  double f_best = total(x);
  double tk = 1.0;
  double gap = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < max_iters; ++it) {
    Vec gy = problem.grad(y);
    Vec x_new = euclidean_prox_core(set, axpy(y, -1.0 / L, gy), lam / L);
    // backtracking on the smooth upper model
    for (int bt = 0; bt < 60; ++bt) {
      Vec d = sub(x_new, y);
      double lhs = problem.value(x_new);
      double rhs = problem.value(y) + dot(gy, d) + 0.5 * L * dot(d, d);
      if (lhs <= rhs + 1e-12 * (1 + std::fabs(rhs))) break;
      L *= 2.0;
      x_new = euclidean_prox_core(set, axpy(y, -1.0 / L, gy), lam / L);
    }
    double f_new = total(x_new);
    if (f_new < f_best) {
      f_best = f_new;
      x_best = x_new;
    }
    double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    y = axpy(x_new, (tk - 1.0) / t_next, sub(x_new, x));
    y = project_euclidean(set, y);
    tk = t_next;
    x = x_new;

    if ((it & 15) == 0 || it + 1 == max_iters) {
      if (set.kind == SetKind::WholeSpace) {
        if (problem.strong_convexity > 0 && lam == 0) {
          Vec gb = problem.grad(x_best);
          gap = dot(gb, gb) / (2.0 * problem.strong_convexity);
        } else {
          gap = std::numeric_limits<double>::infinity();
        }
      } else {
        gap = fw_gap(set, problem.reg, x_best, problem.grad(x_best));
      }
      if (gap <= rel_gap * std::max(1.0, std::fabs(f_best))) break;
    }
  }
  if (!std::isfinite(gap))
    throw SolverFailure("offline solver: could not certify a gap on this instance");
  return {x_best, f_best, std::max(gap, 0.0), it};
}

StaticRegretResult static_regret(const MirrorSetup& setup,
                                 const std::vector<double>& losses,
                                 const OfflineProblem& problem, const Vec& start) {
  OfflineSolution sol = offline_minimize(setup, problem, start);
  double played = 0;
  for (double l : losses) played += l;
  return {played - sol.objective, sol.gap, sol.x, sol.iterations};
}

GradientErrorMeasures gradient_error_measures(
    const MirrorSetup& setup, const std::vector<Vec>& played,
    const std::vector<Vec>& y_prevs,
    const std::function<Vec(int, const Vec&)>& true_grad,
    const std::function<Vec(int, const Vec&)>& pred_grad) {
  if (played.size() != y_prevs.size())
    throw LengthMismatch("gradient_error_measures: trajectory length mismatch");
  GradientErrorMeasures m;
  for (std::size_t i = 0; i < played.size(); ++i) {
    int t = static_cast<int>(i) + 1;
    Vec mt = pred_grad(t, y_prevs[i]);
    double at_x = dual_norm(setup, sub(true_grad(t, played[i]), mt));
    double at_y = dual_norm(setup, sub(true_grad(t, y_prevs[i]), mt));
    m.d_t += at_x * at_x;
    m.d_prime_t += at_y * at_y;
  }
  return m;
}

double temporal_variability(const std::vector<std::function<double(const Vec&)>>& costs,
                            const std::vector<Vec>& samples) {
  double vt = 0;
  for (std::size_t t = 1; t < costs.size(); ++t) {
    double worst = 0;
    for (const Vec& x : samples)
      worst = std::max(worst, std::fabs(costs[t](x) - costs[t - 1](x)));
    vt += worst;
  }
  return vt;
}

double temporal_variability_quadratic_1d(
    const std::vector<std::function<double(const Vec&)>>& costs, double lo, double hi) {
  // fit the quadratic difference from 3 evaluations, then check endpoints and
  // the stationary point
  double vt = 0;
  const double mid = 0.5 * (lo + hi);
  for (std::size_t t = 1; t < costs.size(); ++t) {
    auto diff = [&](double x) { return costs[t]({x}) - costs[t - 1]({x}); };
    double f0 = diff(lo), f1 = diff(mid), f2 = diff(hi);
    // Lagrange coefficients of a x^2 + b x + c through the three nodes
    double h = mid - lo;
    double a = (f2 - 2 * f1 + f0) / (2 * h * h);
    double b = (f1 - f0) / h - a * (lo + mid);
    double worst = std::max(std::fabs(f0), std::fabs(f2));
    if (a != 0) {
      double xs = -b / (2 * a);
      if (xs > lo && xs < hi) worst = std::max(worst, std::fabs(diff(xs)));
    }
    vt += worst;
  }
  return vt;
}

double bound_expression(Theorem theorem, const BoundConstants& k,
                        const BoundMeasures& m) {
  switch (theorem) {
    case Theorem::ConvexStatic:
      return (5.0 + 1.5 * k.r_sq) *
             (m.v_prime + std::sqrt(4.0 * k.beta * k.beta + m.d_prime));
    case Theorem::StronglyConvexStatic: {
      double lambda = 0.5 * k.alpha;
      return 2.0 * k.beta * k.r_sq + k.sigma * k.sigma / k.beta +
             (2.0 * k.sigma * k.sigma / lambda) *
                 std::log1p(lambda / (2.0 * k.beta * k.sigma * k.sigma) * m.d_prime);
    }
    case Theorem::ConvexDynamic:
      return (5.0 + 1.5 * k.r_sq + k.gamma * m.c_prime) *
             (m.v_prime + std::sqrt(4.0 * k.beta * k.beta + m.d_prime));
    case Theorem::ImplicitDynamic: {
      double c = k.r_sq / k.tau + k.gamma + 1.0;
      double branch_v = (k.r_sq + k.gamma * k.tau) / m.eta_T + m.v_prime;
      double branch_sqrt =
          c * std::sqrt(2.0 * k.r_sq + 2.0 * k.tau * c) * std::sqrt(m.sum_g_sq);
      return std::min(branch_v, branch_sqrt);
    }
    case Theorem::FullyAdaptiveDynamic:
      return 2.0 * k.gamma * k.r_sq / m.eta_1 + k.r_sq / m.eta_T +
             0.5 * k.r_sq / m.eta_T1 +
             (4.0 + 2.0 * k.gamma) *
                 std::sqrt((m.theta_T2 + m.d_prime_T1) * (1.0 + m.c_prime));
  }
  throw UnknownTheorem("bound_expression: unknown theorem id");
}

}  // namespace ocomd
