#include "ocomd/experiments.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "ocomd/stepsize.hpp"

namespace ocomd {

namespace {

void for_each_index(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int workers = std::min(threads, n);
  pool.reserve(workers);
  for (int k = 0; k < workers; ++k)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) body(i);
    });
  for (auto& th : pool) th.join();
}

Vec mat_vec(const std::vector<double>& a, const Vec& x) {
  const std::size_t n = x.size();
  Vec r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i] += a[i * n + j] * x[j];
  return r;
}

// lower Cholesky factor of a small SPD matrix, row-major
std::vector<double> cholesky(const std::vector<double>& a, std::size_t n) {
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (s <= 0) throw NumericalBreakdown("cholesky: matrix not positive definite");
        l[i * n + i] = std::sqrt(s);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  }
  return l;
}

struct CurveStats {
  std::vector<double> mean, stddev;
};

CurveStats aggregate(const std::vector<std::vector<double>>& curves) {
  CurveStats s;
  if (curves.empty()) return s;
  const std::size_t t_len = curves[0].size();
  const double r = static_cast<double>(curves.size());
  s.mean.assign(t_len, 0.0);
  s.stddev.assign(t_len, 0.0);
  for (const auto& c : curves)
    for (std::size_t t = 0; t < t_len; ++t) s.mean[t] += c[t] / r;
  for (const auto& c : curves)
    for (std::size_t t = 0; t < t_len; ++t) {
      double d = c[t] - s.mean[t];
      s.stddev[t] += d * d / r;
    }
  for (auto& v : s.stddev) v = std::sqrt(v);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Tracking

std::vector<double> TrackingConfig::default_matrix() {
  return {1, 0.1, 0,   0,  //
          0, 1,   0.1, 0,  //
          0, 0,   1,   0.1,  //
          0, 0,   0,   1};
}

namespace {

struct TrackingRep {
  // one ledger per algorithm run, dynamic comparators attached
  std::vector<RegretLedger> optdcmd, doptmd;  // indexed by model
  RegretLedger dmd;
  std::vector<int> warnings;
};

struct TrackingProblem {
  std::vector<Vec> u;  // u_1 .. u_{T+1}
  std::vector<double> a;
};

TrackingProblem make_trajectory(const TrackingConfig& cfg, std::uint64_t rep_seed) {
  TrackingProblem p;
  p.a = cfg.dynamics_matrix.empty() ? TrackingConfig::default_matrix()
                                    : cfg.dynamics_matrix;
  const std::size_t n = cfg.u0.size();
  Rng rng(derive_seed(rep_seed, 0));
  // noise sign correlations come from a covariance drawn once per repetition
  std::vector<double> m(n * n);
  for (auto& v : m) v = rng.normal();
  std::vector<double> sigma(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) sigma[i * n + j] += m[i * n + k] * m[j * n + k];
      if (i == j) sigma[i * n + j] += 0.1;
    }
  std::vector<double> l = cholesky(sigma, n);
  p.u.push_back(cfg.u0);
  for (int t = 0; t < cfg.horizon; ++t) {
    Vec z = rng.normal_vec(n);
    Vec corr = mat_vec(l, z);
    Vec next = mat_vec(p.a, p.u.back());
    for (std::size_t i = 0; i < n; ++i)
      next[i] += corr[i] > 0 ? cfg.noise_up : cfg.noise_down;
    p.u.push_back(next);
  }
  return p;
}

CompositeCost tracking_cost(const Vec& u_t, double l1_weight) {
  CompositeCost c;
  c.smooth = SmoothOracle::from_quadratic({u_t, 1.0});
  c.nonsmooth = NonsmoothPart::l1(l1_weight);
  return c;
}

TrackingRep run_tracking_rep(const TrackingConfig& cfg, std::uint64_t rep_seed) {
  const std::size_t n = cfg.u0.size();
  MirrorSetup setup = MirrorSetup::euclidean(FeasibleSet::whole_space(n));
  DynamicsModel dyn;
  TrackingProblem prob = make_trajectory(cfg, rep_seed);
  dyn.phi = [a = prob.a](const Vec& x) { return mat_vec(a, x); };

  const int t_len = cfg.horizon;
  std::vector<double> comp_losses(t_len), ref_steps(t_len);
  for (int t = 0; t < t_len; ++t) {
    comp_losses[t] = tracking_cost(prob.u[t], cfg.l1_weight).value(prob.u[t]);
    ref_steps[t] = norm2(sub(prob.u[t + 1], mat_vec(prob.a, prob.u[t])));
  }

  TrackingRep rep;
  rep.optdcmd.resize(cfg.models.size());
  rep.doptmd.resize(cfg.models.size());
  rep.warnings.assign(cfg.models.size(), 0);

  // DMD benchmark, constant step, no predictions
  {
    AlgorithmState st = AlgorithmState::at(setup, cfg.y0);
    for (int t = 0; t < t_len; ++t) {
      CompositeCost cost = tracking_cost(prob.u[t], cfg.l1_weight);
      double loss = cost.value(st.x_prev);
      rep.dmd.append({t + 1, loss, 0, 0, ref_steps[t], cfg.eta_dmd, 0});
      st = dmd_baseline_step(setup, st, cost, dyn, cfg.eta_dmd);
    }
    rep.dmd.set_dynamic_comparator(comp_losses);
  }

  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    TrackingModel model = cfg.models[mi];
    // OptDCMD: adaptive step in the x update, constant step in the y~ update
    {
      Rng rng(derive_seed(rep_seed, 1 + 4 * mi));
      AlgorithmState st = AlgorithmState::at(setup, cfg.y0);
      StepSizeState ss;
      ss.beta = 1.0;
      CompositeCost prev_cost;
      RegretLedger& led = rep.optdcmd[mi];
      for (int t = 0; t < t_len; ++t) {
        CompositeCost cost = tracking_cost(prob.u[t], cfg.l1_weight);
        double eta = eta_thm1(ss, t + 1);
        Vec pred = tracking_grad_pred(model, cost.smooth,
                                      t > 0 ? &prev_cost.smooth : nullptr,
                                      st.y_prev, rng);
        PredictionBundle bundle;
        bundle.grad_pred = [&pred](const Vec&) { return pred; };
        bundle.func_pred = cost.nonsmooth;  // the fixed l1 term is known
        StepOutcome out = optdcmd_step(setup, st, cost, bundle, dyn, eta, cfg.eta_y);
        double loss = cost.value(out.played);
        led.append({t + 1, loss, out.grad_err_sq, std::fabs(out.delta), ref_steps[t],
                    eta, 0});
        accumulate(ss, out.grad_err_sq, std::fabs(out.delta), ref_steps[t]);
        rep.warnings[mi] += out.nonexpansive_warning ? 1 : 0;
        prev_cost = cost;
        st = out.next;
      }
      led.set_dynamic_comparator(comp_losses);
    }
    // dynamic OptMD benchmark on the full linearized cost
    {
      Rng rng(derive_seed(rep_seed, 2 + 4 * mi));
      AlgorithmState st = AlgorithmState::at(setup, cfg.y0);
      StepSizeState ss;
      ss.beta = 1.0;
      CompositeCost prev_cost;
      RegretLedger& led = rep.doptmd[mi];
      for (int t = 0; t < t_len; ++t) {
        CompositeCost cost = tracking_cost(prob.u[t], cfg.l1_weight);
        double eta = cfg.doptmd_adaptive ? eta_thm1(ss, t + 1)
                                         : eta_constant(ss, cfg.eta_doptmd);
        // the baseline predicts the full gradient, subgradient of r included
        SmoothOracle full;
        full.grad = [&cost](const Vec& x) { return cost.full_subgrad(x); };
        SmoothOracle full_prev;
        if (t > 0)
          full_prev.grad = [&prev_cost](const Vec& x) {
            return prev_cost.full_subgrad(x);
          };
        Vec pred = tracking_grad_pred(model, full, t > 0 ? &full_prev : nullptr,
                                      st.y_prev, rng);
        PredictionBundle bundle;
        bundle.grad_pred = [&pred](const Vec&) { return pred; };
        StepOutcome out = doptmd_baseline_step(setup, st, cost, bundle, dyn, eta);
        double loss = cost.value(out.played);
        led.append({t + 1, loss, out.grad_err_sq, 0, ref_steps[t], eta, 0});
        accumulate(ss, out.grad_err_sq, 0, ref_steps[t]);
        prev_cost = cost;
        st = out.next;
      }
      led.set_dynamic_comparator(comp_losses);
    }
  }
  return rep;
}

}  // namespace

TrackingResult run_tracking(const TrackingConfig& cfg, const LedgerSink& sink) {
  if (cfg.horizon < 1) throw ConfigError("tracking: horizon must be >= 1");
  if (cfg.repetitions < 1) throw ConfigError("tracking: repetitions must be >= 1");
  if (cfg.u0.size() != cfg.y0.size())
    throw ConfigError("tracking: u0/y0 dimension mismatch");
  std::vector<double> a =
      cfg.dynamics_matrix.empty() ? TrackingConfig::default_matrix() : cfg.dynamics_matrix;
  if (a.size() != cfg.u0.size() * cfg.u0.size())
    throw ConfigError("tracking: dynamics matrix must be n x n");

  std::vector<TrackingRep> reps(cfg.repetitions);
  for_each_index(cfg.repetitions, cfg.threads, [&](int r) {
    reps[r] = run_tracking_rep(cfg, derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
  });

  TrackingResult result;
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    TrackingModelCurves c;
    c.model = cfg.models[mi];
    std::vector<std::vector<double>> diff_dmd, diff_doptmd;
    for (const auto& rep : reps) {
      auto opt = rep.optdcmd[mi].dynamic_regret_curve();
      auto dmd = rep.dmd.dynamic_regret_curve();
      auto dop = rep.doptmd[mi].dynamic_regret_curve();
      std::vector<double> d1(opt.size()), d2(opt.size());
      for (std::size_t t = 0; t < opt.size(); ++t) {
        d1[t] = opt[t] - dmd[t];
        d2[t] = opt[t] - dop[t];
      }
      diff_dmd.push_back(std::move(d1));
      diff_doptmd.push_back(std::move(d2));
      c.mean_final_optdcmd += opt.back() / reps.size();
      c.mean_final_dmd += dmd.back() / reps.size();
      c.mean_final_doptmd += dop.back() / reps.size();
      c.nonexpansive_warnings += rep.warnings[mi];
    }
    CurveStats s1 = aggregate(diff_dmd);
    CurveStats s2 = aggregate(diff_doptmd);
    c.mean_diff_dmd = std::move(s1.mean);
    c.std_diff_dmd = std::move(s1.stddev);
    c.mean_diff_doptmd = std::move(s2.mean);
    c.std_diff_doptmd = std::move(s2.stddev);
    result.curves.push_back(std::move(c));
  }

  if (sink) {
    for (int r = 0; r < cfg.repetitions; ++r) {
      sink("dmd", "none", r, reps[r].dmd);
      for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
        sink("optdcmd", tracking_model_name(cfg.models[mi]), r, reps[r].optdcmd[mi]);
        sink("doptmd", tracking_model_name(cfg.models[mi]), r, reps[r].doptmd[mi]);
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Portfolio

namespace {

struct PortfolioRep {
  std::vector<RegretLedger> by_model;
};

RegretLedger run_portfolio_model(const PortfolioConfig& cfg, const MarketDataset& data,
                                 ReturnModel model, const std::vector<double>& comp_losses,
                                 std::uint64_t run_seed) {
  const std::size_t n = data.assets;
  MirrorSetup setup = MirrorSetup::negative_entropy(n, cfg.entropy_floor);
  Rng rng(run_seed);
  int lags = model == ReturnModel::RecursiveLS ? cfg.rls_lags : cfg.ma_lags;
  ReturnPredictor predictor(model, n, lags, cfg.r_min, cfg.r_max);
  AlgorithmState st = AlgorithmState::at(setup, cup_baseline(n));
  StepSizeState ss;
  ss.beta = cfg.beta;
  RegretLedger led;
  for (std::size_t t = 0; t < data.rounds; ++t) {
    const Vec& r_t = data.returns[t];
    CompositeCost cost;
    cost.smooth.beta = cfg.beta;
    cost.smooth.value = [&r_t](const Vec& x) { return -std::log(dot(r_t, x)); };
    cost.smooth.grad = [&r_t](const Vec& x) { return scale(r_t, -1.0 / dot(r_t, x)); };
    cost.nonsmooth = NonsmoothPart::zero();

    double eta = eta_thm1(ss, static_cast<int>(t) + 1);
    Vec r_tilde = predictor.predict(&r_t, rng);
    Vec r_hat = clamp_g(r_tilde, cfg.r_min, cfg.r_max);
    Vec pred = portfolio_grad_pred(r_hat, st.y_prev);
    PredictionBundle bundle;
    bundle.grad_pred = [&pred](const Vec&) { return pred; };
    StepOutcome out = optcmd_step(setup, st, cost, bundle, eta);
    double loss = cost.value(out.played);
    led.append({static_cast<int>(t) + 1, loss, out.grad_err_sq, 0, 0, eta, 0});
    accumulate(ss, out.grad_err_sq, 0, 0);
    predictor.observe(r_t);
    st = out.next;
  }
  led.set_static_comparator(comp_losses);
  return led;
}

}  // namespace

PortfolioResult run_portfolio(const PortfolioConfig& cfg, const MarketDataset& dataset,
                              const LedgerSink& sink) {
  if (dataset.assets == 0 || dataset.rounds == 0)
    throw DatasetError("portfolio: empty dataset");
  if (!(cfg.beta > 0)) throw ConfigError("portfolio: beta must be positive");

  PortfolioResult result;
  MarketDataset data = dataset;
  for (auto& row : data.returns) {
    if (row.size() != data.assets) throw DatasetError("portfolio: ragged dataset");
    for (auto& v : row) {
      if (!(v > 0)) throw DatasetError("portfolio: nonpositive price relative");
      double clipped = std::clamp(v, cfg.r_min, cfg.r_max);
      if (clipped != v) ++result.clipped_entries;
      v = clipped;
    }
  }

  // best fixed portfolio in hindsight, shared by every run on this dataset
  const std::size_t n = data.assets;
  MirrorSetup setup = MirrorSetup::negative_entropy(n, cfg.entropy_floor);
  OfflineProblem offline;
  offline.value = [&data](const Vec& x) {
    double s = 0;
    for (const auto& r : data.returns) s -= std::log(dot(r, x));
    return s;
  };
  offline.grad = [&data, n](const Vec& x) {
    Vec g(n, 0.0);
    for (const auto& r : data.returns) {
      double ip = dot(r, x);
      for (std::size_t i = 0; i < n; ++i) g[i] -= r[i] / ip;
    }
    return g;
  };
  offline.lipschitz =
      static_cast<double>(data.rounds) * (cfg.r_max / cfg.r_min) * (cfg.r_max / cfg.r_min);
  OfflineSolution comp = offline_minimize(setup, offline, cup_baseline(n),
                                          cfg.offline_iters, 1e-9);
  result.comparator_gap = comp.gap;
  std::vector<double> comp_losses(data.rounds);
  for (std::size_t t = 0; t < data.rounds; ++t)
    comp_losses[t] = -std::log(dot(data.returns[t], comp.x));

  // CUP benchmark
  {
    Vec cup = cup_baseline(n);
    RegretLedger led;
    for (std::size_t t = 0; t < data.rounds; ++t)
      led.append({static_cast<int>(t) + 1, -std::log(dot(data.returns[t], cup)), 0, 0, 0,
                  0, 0});
    led.set_static_comparator(comp_losses);
    result.cup_regret_curve = led.static_regret_curve();
    result.cup_final_regret = result.cup_regret_curve.back();
    if (sink) sink("cup", "none", 0, led);
  }

  std::vector<PortfolioRep> reps(cfg.repetitions);
  for (auto& rep : reps) rep.by_model.resize(cfg.models.size());
  std::vector<std::pair<int, int>> jobs;
  for (int r = 0; r < cfg.repetitions; ++r)
    for (std::size_t mi = 0; mi < cfg.models.size(); ++mi)
      jobs.emplace_back(r, static_cast<int>(mi));
  for_each_index(static_cast<int>(jobs.size()), cfg.threads, [&](int j) {
    auto [r, mi] = jobs[j];
    std::uint64_t run_seed = derive_seed(derive_seed(cfg.seed, r), 100 + mi);
    reps[r].by_model[mi] =
        run_portfolio_model(cfg, data, cfg.models[mi], comp_losses, run_seed);
  });

  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    PortfolioModelCurves c;
    c.model = cfg.models[mi];
    c.causal = cfg.models[mi] != ReturnModel::Noisy;
    std::vector<std::vector<double>> diffs;
    std::vector<double> finals;
    for (const auto& rep : reps) {
      auto curve = rep.by_model[mi].static_regret_curve();
      std::vector<double> d(curve.size());
      for (std::size_t t = 0; t < curve.size(); ++t)
        d[t] = curve[t] - result.cup_regret_curve[t];
      diffs.push_back(std::move(d));
      finals.push_back(curve.back());
    }
    CurveStats s = aggregate(diffs);
    c.mean_diff_cup = std::move(s.mean);
    c.std_diff_cup = std::move(s.stddev);
    for (double f : finals) c.mean_final_regret += f / finals.size();
    for (double f : finals) {
      double d = f - c.mean_final_regret;
      c.std_final_regret += d * d / finals.size();
    }
    c.std_final_regret = std::sqrt(c.std_final_regret);
    result.curves.push_back(std::move(c));
  }

  if (sink) {
    for (int r = 0; r < cfg.repetitions; ++r)
      for (std::size_t mi = 0; mi < cfg.models.size(); ++mi)
        sink("optmd", return_model_name(cfg.models[mi]), r, reps[r].by_model[mi]);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Data

MarketDataset ingest_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dataset file", 1);
  MarketDataset data;
  data.name = path;
  {
    std::stringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) ++data.assets;
    if (data.assets == 0) throw ParseError("empty header", 1);
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    Vec r;
    while (std::getline(row, field, ',')) {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(field, &used);
      } catch (const std::exception&) {
        throw ParseError("not a number: '" + field + "'", line_no);
      }
      while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used])))
        ++used;
      if (used != field.size())
        throw ParseError("trailing characters in '" + field + "'", line_no);
      r.push_back(v);
    }
    if (r.size() != data.assets)
      throw ParseError("expected " + std::to_string(data.assets) + " fields, got " +
                           std::to_string(r.size()),
                       line_no);
    for (double v : r)
      if (!(v > 0))
        throw ValidationError("nonpositive price relative at line " +
                              std::to_string(line_no));
    data.returns.push_back(std::move(r));
  }
  if (data.returns.empty()) throw ParseError("no data rows", line_no + 1);
  data.rounds = data.returns.size();
  return data;
}

MarketDataset synth_market(std::size_t n, std::size_t rounds, const MarketLaw& law,
                           std::uint64_t seed) {
  if (n == 0 || rounds == 0) throw ConfigError("synth_market: need n, rounds >= 1");
  MarketDataset data;
  data.name = "synthetic-n" + std::to_string(n) + "-T" + std::to_string(rounds) +
              "-seed" + std::to_string(seed);
  data.assets = n;
  data.rounds = rounds;
  Rng rng(derive_seed(seed, 7));
  Vec mu(n);
  for (auto& m : mu) m = rng.uniform(-law.drift_spread, law.drift_spread);
  Vec log_r(n, 0.0);
  for (std::size_t t = 0; t < rounds; ++t) {
    Vec row(n);
    for (std::size_t i = 0; i < n; ++i) {
      log_r[i] = law.ar_coeff * log_r[i] + mu[i] + law.noise * rng.normal();
      row[i] = std::clamp(std::exp(log_r[i]), law.r_min, law.r_max);
    }
    data.returns.push_back(std::move(row));
  }
  return data;
}

}  // namespace ocomd
