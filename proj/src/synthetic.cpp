#include "ocomd/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "ocomd/rng.hpp"

namespace ocomd {

namespace {

// dense n x n helpers, row-major
Vec mat_vec(const std::vector<double>& a, const Vec& x) {
  const std::size_t n = x.size();
  Vec r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i] += a[i * n + j] * x[j];
  return r;
}

std::vector<double> random_rotation(std::size_t n, Rng& rng) {
  std::vector<double> r(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double th = rng.uniform(0, 6.283185307179586);
      double c = std::cos(th), s = std::sin(th);
      for (std::size_t k = 0; k < n; ++k) {
        double ri = r[i * n + k], rj = r[j * n + k];
        r[i * n + k] = c * ri - s * rj;
        r[j * n + k] = s * ri + c * rj;
      }
    }
  return r;
}

// Q = R^T diag(d) R with the spectrum handed in
std::vector<double> spd_with_spectrum(const std::vector<double>& rot, const Vec& d) {
  const std::size_t n = d.size();
  std::vector<double> q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        q[i * n + j] += rot[k * n + i] * d[k] * rot[k * n + j];
  return q;
}

struct QuadRound {
  std::vector<double> q;
  Vec a;
};

SmoothOracle quad_oracle(const QuadRound& round, double beta, double alpha) {
  SmoothOracle s;
  s.beta = beta;
  s.alpha = alpha;
  s.value = [round](const Vec& x) {
    Vec d = sub(x, round.a);
    return 0.5 * dot(d, mat_vec(round.q, d));
  };
  s.grad = [round](const Vec& x) { return mat_vec(round.q, sub(x, round.a)); };
  return s;
}

Vec bounded_noise_pred(const Vec& true_grad, GradPredKind kind, double level,
                       const SmoothOracle* prev, const Vec& y_prev, Rng& rng) {
  switch (kind) {
    case GradPredKind::Perfect:
      return true_grad;
    case GradPredKind::BoundedNoise:
      return add(true_grad, rng.ball_vec(true_grad.size(), level));
    case GradPredKind::Previous:
      return prev ? prev->grad(y_prev) : zeros(true_grad.size());
    case GradPredKind::Zero:
      return zeros(true_grad.size());
  }
  return true_grad;
}

}  // namespace

// ---------------------------------------------------------------------------

static StaticRunReport run_static_impl(const StaticInstanceSpec& spec, bool strongly) {
  Rng rng(spec.seed);
  const std::size_t n = spec.dim;
  Vec lower(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = -(1.0 + rng.uniform());
    upper[i] = 1.0 + rng.uniform();
  }
  MirrorSetup setup = MirrorSetup::euclidean(FeasibleSet::box(lower, upper));
  const double beta = spec.beta;
  const double alpha = strongly ? std::max(spec.alpha, 0.05) : spec.alpha;
  const double lam = spec.l1_weight;
  const double sigma = std::max(spec.noise_level, 1e-3);

  StepSizeState ss;
  ss.beta = beta;
  ss.alpha = alpha;
  ss.sigma = sigma;
  ss.exact_func_pred = spec.perfect_func_pred || strongly;

  NonsmoothPart r_part = lam > 0 ? NonsmoothPart::l1(lam) : NonsmoothPart::zero();

  AlgorithmState st = AlgorithmState::at(setup, oracleless_start(n, lower, upper));
  // placeholder replaced below
  (void)st;
  return {};
}

// forward declaration trick is clumsy; do everything inline instead
Vec oracleless_start(std::size_t, const Vec&, const Vec&);

StaticRunReport run_static_convex(const StaticInstanceSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = spec.dim;
  Vec lower(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = -(1.0 + rng.uniform());
    upper[i] = 1.0 + rng.uniform();
  }
  MirrorSetup setup = MirrorSetup::euclidean(FeasibleSet::box(lower, upper));
  const double beta = spec.beta;
  const double lam = spec.l1_weight;
  const bool strongly = spec.alpha > 0 && false;
  (void)strongly;

  StepSizeState ss;
  ss.beta = beta;

  StaticRunReport rep;
  rep.constants.beta = beta;
  rep.constants.alpha = spec.alpha;
  rep.constants.sigma = std::max(spec.noise_level, 1e-3);
  rep.constants.r_sq = setup.diameter_sq;
  rep.constants.gamma = setup.bregman_lipschitz;

  NonsmoothPart r_part = lam > 0 ? NonsmoothPart::l1(lam) : NonsmoothPart::zero();

  Vec a = zeros(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = rng.uniform(lower[i], upper[i]);
  AlgorithmState st = AlgorithmState::at(setup, a);

  std::vector<double> q_sum(n * n, 0.0);
  Vec b_sum = zeros(n);
  double c_sum = 0;
  std::vector<double> losses;
  SmoothOracle prev_smooth;
  double prev_eta = std::numeric_limits<double>::infinity();

  for (int t = 1; t <= spec.horizon; ++t) {
    QuadRound round;
    Vec d(n);
    for (auto& di : d) di = rng.uniform(0.02, beta);
    round.q = spd_with_spectrum(random_rotation(n, rng), d);
    round.a = a;
    CompositeCost cost{quad_oracle(round, beta, spec.alpha), r_part};

    double eta = eta_thm1(ss, t);
    rep.eta_monotone = rep.eta_monotone && eta <= prev_eta + 1e-12;
    rep.eta_capped = rep.eta_capped && eta <= 1.0 / (2.0 * beta) + 1e-12;
    prev_eta = eta;

    Vec true_grad = cost.smooth.grad(st.y_prev);
    Vec pred = bounded_noise_pred(true_grad, spec.grad_pred, spec.noise_level,
                                  t > 1 ? &prev_smooth : nullptr, st.y_prev, rng);
    PredictionBundle bundle;
    bundle.grad_pred = [&pred](const Vec&) { return pred; };
    bundle.func_pred =
        spec.perfect_func_pred || lam == 0
            ? r_part
            : NonsmoothPart::l1(lam *
                                (1.0 + spec.func_pred_jitter * rng.uniform(-1, 1)));

    StepOutcome out = optcmd_step(setup, st, cost, bundle, eta);
    losses.push_back(cost.value(out.played));
    accumulate(ss, out.grad_err_sq, std::fabs(out.delta), 0);

    for (std::size_t i = 0; i < n * n; ++i) q_sum[i] += round.q[i];
    Vec qa = mat_vec(round.q, round.a);
    b_sum = add(b_sum, qa);
    c_sum += 0.5 * dot(round.a, qa);

    prev_smooth = cost.smooth;
    st = out.next;
    // reference drifts inside the box
    for (std::size_t i = 0; i < n; ++i)
      a[i] = std::clamp(a[i] + 0.2 * rng.normal(), lower[i], upper[i]);
  }

  OfflineProblem offline;
  offline.value = [&, c_sum](const Vec& x) {
    return 0.5 * dot(x, mat_vec(q_sum, x)) - dot(b_sum, x) + c_sum;
  };
  offline.grad = [&](const Vec& x) { return sub(mat_vec(q_sum, x), b_sum); };
  offline.lipschitz = beta * spec.horizon;
  offline.reg = lam > 0 ? NonsmoothPart::l1(lam * spec.horizon) : NonsmoothPart::zero();

  StaticRegretResult sr =
      static_regret(setup, losses, offline, project(setup, zeros(n)));
  rep.regret_est = sr.value;
  rep.solver_gap = sr.solver_gap;
  rep.regret = sr.value + sr.solver_gap;
  rep.measures.d_prime = ss.d_prime;
  rep.measures.v_prime = ss.v_prime;
  rep.measures.eta_1 = 1.0 / (2.0 * beta);
  rep.measures.eta_T = ss.eta_prev;
  return rep;
}

StaticRunReport run_static_strongly_convex(const StaticInstanceSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = spec.dim;
  Vec lower(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = -(1.0 + rng.uniform());
    upper[i] = 1.0 + rng.uniform();
  }
  MirrorSetup setup = MirrorSetup::euclidean(FeasibleSet::box(lower, upper));
  const double beta = spec.beta;
  const double alpha = std::max(spec.alpha, 0.05);
  const double lam = spec.l1_weight;
  const double sigma = std::max(spec.noise_level, 1e-3);

  StepSizeState ss;
  ss.beta = beta;
  ss.alpha = alpha;
  ss.sigma = sigma;
  ss.exact_func_pred = true;

  StaticRunReport rep;
  rep.constants.beta = beta;
  rep.constants.alpha = alpha;
  rep.constants.sigma = sigma;
  rep.constants.r_sq = setup.diameter_sq;
  rep.constants.gamma = setup.bregman_lipschitz;

  NonsmoothPart r_part = lam > 0 ? NonsmoothPart::l1(lam) : NonsmoothPart::zero();

  Vec a = zeros(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = rng.uniform(lower[i], upper[i]);
  AlgorithmState st = AlgorithmState::at(setup, a);

  std::vector<double> q_sum(n * n, 0.0);
  Vec b_sum = zeros(n);
  double c_sum = 0;
  std::vector<double> losses;
  double prev_eta = std::numeric_limits<double>::infinity();

  for (int t = 1; t <= spec.horizon; ++t) {
    QuadRound round;
    Vec d(n);
    for (auto& di : d) di = rng.uniform(alpha, beta);
    round.q = spd_with_spectrum(random_rotation(n, rng), d);
    round.a = a;
    CompositeCost cost{quad_oracle(round, beta, alpha), r_part};

    double eta = eta_thm2(ss, t);
    rep.eta_monotone = rep.eta_monotone && eta <= prev_eta + 1e-12;
    rep.eta_capped = rep.eta_capped && eta <= 1.0 / (2.0 * beta) + 1e-12;
    prev_eta = eta;

    Vec true_grad = cost.smooth.grad(st.y_prev);
    Vec pred = bounded_noise_pred(true_grad, spec.grad_pred, spec.noise_level, nullptr,
                                  st.y_prev, rng);
    PredictionBundle bundle;
    bundle.grad_pred = [&pred](const Vec&) { return pred; };
    bundle.func_pred = r_part;  // exact by assumption

    StepOutcome out = optcmd_step(setup, st, cost, bundle, eta);
    losses.push_back(cost.value(out.played));
    accumulate(ss, out.grad_err_sq, std::fabs(out.delta), 0);

    for (std::size_t i = 0; i < n * n; ++i) q_sum[i] += round.q[i];
    Vec qa = mat_vec(round.q, round.a);
    b_sum = add(b_sum, qa);
    c_sum += 0.5 * dot(round.a, qa);

    st = out.next;
    for (std::size_t i = 0; i < n; ++i)
      a[i] = std::clamp(a[i] + 0.2 * rng.normal(), lower[i], upper[i]);
  }

  OfflineProblem offline;
  offline.value = [&, c_sum](const Vec& x) {
    return 0.5 * dot(x, mat_vec(q_sum, x)) - dot(b_sum, x) + c_sum;
  };
  offline.grad = [&](const Vec& x) { return sub(mat_vec(q_sum, x), b_sum); };
  offline.lipschitz = beta * spec.horizon;
  offline.reg = lam > 0 ? NonsmoothPart::l1(lam * spec.horizon) : NonsmoothPart::zero();

  StaticRegretResult sr =
      static_regret(setup, losses, offline, project(setup, zeros(n)));
  rep.regret_est = sr.value;
  rep.solver_gap = sr.solver_gap;
  rep.regret = sr.value + sr.solver_gap;
  rep.measures.d_prime = ss.d_prime;
  rep.measures.v_prime = ss.v_prime;
  rep.measures.eta_1 = 1.0 / (2.0 * beta);
  rep.measures.eta_T = ss.eta_prev;
  return rep;
}

StaticRunReport run_static_perfect_all_prefixes(std::size_t dim, int horizon,
                                                double l1_weight, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = dim;
  Vec lower(n, -1.5), upper(n, 1.5);
  MirrorSetup setup = MirrorSetup::euclidean(FeasibleSet::box(lower, upper));
  const double beta = 1.0;

  StepSizeState ss;
  ss.beta = beta;
  NonsmoothPart r_part =
      l1_weight > 0 ? NonsmoothPart::l1(l1_weight) : NonsmoothPart::zero();

  StaticRunReport rep;
  rep.constants.beta = beta;
  rep.constants.r_sq = setup.diameter_sq;
  rep.constants.gamma = setup.bregman_lipschitz;

  Vec a(n);
  for (auto& ai : a) ai = rng.uniform(-1.5, 1.5);
  AlgorithmState st = AlgorithmState::at(setup, zeros(n));

  Vec a_sum = zeros(n);
  double sq_sum = 0;
  double loss_sum = 0;
  for (int t = 1; t <= horizon; ++t) {
    QuadraticCost qc{a, 1.0};
    CompositeCost cost{SmoothOracle::from_quadratic(qc), r_part};
    double eta = eta_thm1(ss, t);
    PredictionBundle bundle = PredictionBundle::perfect(cost.smooth, cost.nonsmooth);
    StepOutcome out = optcmd_step(setup, st, cost, bundle, eta);
    loss_sum += cost.value(out.played);
    accumulate(ss, out.grad_err_sq, std::fabs(out.delta), 0);

    a_sum = add(a_sum, a);
    sq_sum += dot(a, a);
    // closed-form prefix comparator: clamp(soft_threshold(mean, l1_weight))
    Vec xs(n);
    for (std::size_t i = 0; i < n; ++i)
      xs[i] = std::clamp(soft_threshold(a_sum[i] / t, l1_weight), lower[i], upper[i]);
    double best = 0.5 * t * dot(xs, xs) - dot(xs, a_sum) + 0.5 * sq_sum +
                  t * l1_weight * norm1(xs);
    rep.prefix_regret.push_back(loss_sum - best);

    st = out.next;
    for (auto& ai : a) ai = std::clamp(ai + 0.3 * rng.normal(), -1.5, 1.5);
  }
  rep.measures.d_prime = ss.d_prime;
  rep.measures.v_prime = ss.v_prime;
  rep.regret_est = rep.prefix_regret.back();
  rep.regret = rep.regret_est;
  return rep;
}

// ---------------------------------------------------------------------------

StaticRunReport run_dynamic_convex(const DynamicInstanceSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = spec.dim;
  MirrorSetup setup = MirrorSetup::euclidean(FeasibleSet::ball(zeros(n), 1.0));
  const double beta = 1.5;
  const double sigma = spec.noise_level;
  const double lam = 0.05;
  const bool perfect_r = spec.perfect_func_pred || spec.fully_adaptive;

  std::vector<double> rot = random_rotation(n, rng);
  DynamicsModel dyn;
  dyn.phi = [rot](const Vec& x) { return scale(mat_vec(rot, x), 0.95); };

  // reference sequence and its feedback
  std::vector<Vec> u;
  u.push_back(rng.ball_vec(n, 0.8));
  for (int t = 0; t < spec.horizon; ++t) {
    Vec next = dyn.apply(u.back());
    if (spec.dynamics_noise > 0) next = add(next, rng.ball_vec(n, spec.dynamics_noise));
    u.push_back(project_euclidean(setup.set, next));
  }

  StepSizeState ss;
  ss.beta = beta;
  ss.exact_func_pred = perfect_r;

  StaticRunReport rep;
  rep.constants.beta = beta;
  rep.constants.sigma = sigma;
  rep.constants.r_sq = setup.diameter_sq;
  rep.constants.gamma = setup.bregman_lipschitz;

  NonsmoothPart r_part = NonsmoothPart::l1(lam);
  AlgorithmState st = AlgorithmState::at(setup, zeros(n));
  double reg = 0;
  double prev_eta = std::numeric_limits<double>::infinity();

  for (int t = 1; t <= spec.horizon; ++t) {
    const Vec& u_t = u[t - 1];
    double omega = rng.uniform(0.5, beta);
    QuadraticCost qc{u_t, omega};
    CompositeCost cost{SmoothOracle::from_quadratic(qc), r_part};

    double eta = spec.fully_adaptive ? eta_thm5(ss, t) : eta_thm1(ss, t);
    rep.eta_monotone = rep.eta_monotone && eta <= prev_eta + 1e-12;
    rep.eta_capped = rep.eta_capped && eta <= 1.0 / (2.0 * beta) + 1e-12;
    prev_eta = eta;

    Vec true_grad = cost.smooth.grad(st.y_prev);
    Vec pred = sigma > 0 ? add(true_grad, rng.ball_vec(n, sigma)) : true_grad;
    PredictionBundle bundle;
    bundle.grad_pred = [&pred](const Vec&) { return pred; };
    bundle.func_pred =
        perfect_r ? r_part
                  : NonsmoothPart::l1(lam * (1.0 + spec.func_pred_jitter *
                                                       rng.uniform(-1, 1)));

    StepOutcome out = optdcmd_step(setup, st, cost, bundle, dyn, eta);
    reg += cost.value(out.played) - cost.value(u_t);
    double ref_step = norm2(sub(u[t], dyn.apply(u_t)));
    accumulate(ss, out.grad_err_sq, std::fabs(out.delta), ref_step);
    st = out.next;
  }

  rep.regret_est = reg;
  rep.regret = reg;
  rep.measures.d_prime = ss.d_prime;
  rep.measures.v_prime = ss.v_prime;
  rep.measures.c_prime = ss.c_prime;
  rep.measures.eta_1 = 1.0 / (2.0 * beta);
  rep.measures.eta_T = ss.eta_prev;
  if (spec.fully_adaptive) {
    // one-step-ahead schedule state for the proof's trailing terms
    rep.measures.eta_T1 = eta_thm5(ss, spec.horizon + 1);
    rep.measures.d_prime_T1 = ss.d_prime + sigma * sigma;
    accumulate(ss, sigma * sigma, 0, 0);
    eta_thm5(ss, spec.horizon + 2);
    rep.measures.theta_T2 = ss.theta;
  }
  return rep;
}

// ---------------------------------------------------------------------------

StaticRunReport run_implicit_dynamic(const ImplicitInstanceSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t n = spec.dim;
  MirrorSetup setup = MirrorSetup::euclidean(
      FeasibleSet::box(Vec(n, -1.0), Vec(n, 1.0)));

  Vec shift = rng.uniform_vec(n, -0.1, 0.1);
  DynamicsModel dyn;
  dyn.phi = [shift](const Vec& x) { return axpy(shift, 0.9, x); };

  std::vector<Vec> u;
  double tau = 1.0;  // valid upper bound even when the dynamics are exact
  {
    Vec u0(n);
    for (auto& v : u0) v = rng.uniform(-1, 1);
    u.push_back(u0);
  }
  for (int t = 0; t < spec.horizon; ++t) {
    Vec next = dyn.apply(u.back());
    if (spec.dynamics_noise > 0) {
      Vec zeta = rng.ball_vec(n, spec.dynamics_noise);
      tau += norm2(zeta);
      next = add(next, zeta);
    }
    u.push_back(project_euclidean(setup.set, next));
  }

  StepSizeState ss;
  ss.tau = tau;
  ss.eta_max = spec.eta_max;

  StaticRunReport rep;
  rep.constants.r_sq = setup.diameter_sq;
  rep.constants.gamma = setup.bregman_lipschitz;
  rep.constants.tau = tau;

  Vec y_prev = zeros(n);
  double reg = 0;
  double last_eta = 0;
  double sum_g_sq = 0;

  for (int t = 1; t <= spec.horizon; ++t) {
    const Vec& u_t = u[t - 1];
    double lam = rng.uniform(0.2, 0.5);
    Vec b(n);
    for (auto& bi : b) {
      double mag = rng.uniform() < 0.5 ? rng.uniform(0.1, 0.8) : rng.uniform(1.2, 2.0);
      bi = (rng.uniform() < 0.5 ? -1.0 : 1.0) * mag * lam;
    }
    Vec b_hat = spec.func_pred_noise > 0 ? add(b, rng.ball_vec(n, spec.func_pred_noise))
                                         : b;
    auto r_val = [&](const Vec& x) { return lam * norm1(x) + dot(b, x); };
    auto r_hat_val = [&](const Vec& x) { return lam * norm1(x) + dot(b_hat, x); };

    double eta = eta_thm4(ss, t);
    last_eta = eta;
    // both updates are l1-plus-linear proxes with exact closed forms
    Vec x_t = composite_prox(setup, b_hat, NonsmoothPart::l1(lam), eta, y_prev);
    Vec y_tilde = composite_prox(setup, b, NonsmoothPart::l1(lam), eta, y_prev);
    Vec y_t = dyn.apply(y_tilde);
    if (!setup.set.contains(y_t))
      throw InfeasibleDynamics("implicit run: dynamics output infeasible");

    double delta = r_val(x_t) - r_hat_val(x_t) + r_hat_val(y_tilde) - r_val(y_tilde);
    reg += r_val(x_t) - r_val(u_t);
    double ref_step = norm2(sub(u[t], dyn.apply(u_t)));
    accumulate(ss, 0, std::fabs(delta), ref_step);

    auto subg = [&](const Vec& x, const Vec& lin) {
      Vec g(n);
      for (std::size_t i = 0; i < n; ++i) g[i] = lam * sign(x[i]) + lin[i];
      return g;
    };
    double g1 = norm2(sub(subg(x_t, b), subg(y_tilde, b_hat)));
    double g2 = norm2(sub(subg(y_tilde, b), subg(x_t, b_hat)));
    double gt = std::max(g1, g2);
    sum_g_sq += gt * gt;

    y_prev = y_t;
  }

  rep.regret_est = reg;
  rep.regret = reg;
  rep.measures.v_prime = ss.v_prime;
  rep.measures.c_prime = ss.c_prime;
  rep.measures.sum_g_sq = sum_g_sq;
  rep.measures.eta_T = last_eta;
  return rep;
}

}  // namespace ocomd
