#ifndef OCOMD_REGRET_HPP
#define OCOMD_REGRET_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ocomd/algorithms.hpp"

namespace ocomd {

// Per-round record of one online run.
struct LedgerRow {
  int t = 0;
  double loss = 0;
  double grad_err_sq = 0;  // D' increment
  double delta_abs = 0;    // V' increment
  double ref_step = 0;     // C' increment
  double eta = 0;
  double g_sq = 0;  // G_t^2 of the nonsmooth subgradient mismatch (optional)
};

// Losses, comparators, and regularity measures of one run. Rows are appended
// sequentially; the ledger is read-only after finalization.
class RegretLedger {
 public:
  void append(const LedgerRow& row);
  void set_dynamic_comparator(std::vector<double> losses);  // f_t(u_t)
  void set_static_comparator(std::vector<double> losses);   // f_t(x*)

  std::size_t rounds() const { return rows_.size(); }
  const std::vector<LedgerRow>& rows() const { return rows_; }

  double d_prime() const { return d_prime_; }
  double v_prime() const { return v_prime_; }
  double c_prime() const { return c_prime_; }
  double sum_g_sq() const { return sum_g_sq_; }
  double total_loss() const { return total_loss_; }

  double dynamic_regret_final() const;
  double static_regret_final() const;
  std::vector<double> dynamic_regret_curve() const;
  std::vector<double> static_regret_curve() const;

  // Re-sums every cumulative field from the rows and compares against the
  // running accumulators; throws ValidationError on mismatch.
  void validate(double tol = 1e-9) const;

  // Schema: t,loss,comparator_loss,reg_s,reg_d,d_prime,v_prime,c_prime,eta
  // followed by optional caller columns. 12 significant digits.
  void write_csv(std::ostream& os, const std::string& extra_header = "",
                 const std::string& extra_values = "") const;

 private:
  std::vector<LedgerRow> rows_;
  std::vector<double> dynamic_comp_, static_comp_;
  double d_prime_ = 0, v_prime_ = 0, c_prime_ = 0, sum_g_sq_ = 0, total_loss_ = 0;
};

struct ReferenceSequence {
  std::vector<Vec> points;  // u_1 .. u_m
};

struct PathLengths {
  double c_t = 0;        // sum ||u_{t+1} - u_t||
  double c_prime_t = 0;  // sum ||u_{t+1} - Phi_t(u_t)||
};

PathLengths path_length(const MirrorSetup& setup, const ReferenceSequence& refs,
                        const DynamicsModel* dynamics = nullptr);

double dynamic_regret(const std::vector<double>& losses,
                      const std::vector<double>& comparator_losses);

// Total offline objective sum_t s_t(x) + T * r(x) presented to the solver.
struct OfflineProblem {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;
  double lipschitz = 1.0;
  double strong_convexity = 0.0;
  NonsmoothPart reg;
};

struct OfflineSolution {
  Vec x;
  double objective = 0;
  double gap = 0;  // certified optimality gap
  int iterations = 0;
};

// Accelerated projected/proximal gradient with a Frank-Wolfe gap certificate
// on compact sets (gradient-norm certificate on the whole space when strongly
// convex). 1e4 iterations or relative gap 1e-9, whichever first.
OfflineSolution offline_minimize(const MirrorSetup& setup, const OfflineProblem& problem,
                                 const Vec& start, int max_iters = 10000,
                                 double rel_gap = 1e-9);

struct StaticRegretResult {
  double value = 0;       // sum of losses minus achieved comparator objective
  double solver_gap = 0;  // true regret lies in [value, value + solver_gap]
  Vec comparator;
  int iterations = 0;
};

StaticRegretResult static_regret(const MirrorSetup& setup,
                                 const std::vector<double>& losses,
                                 const OfflineProblem& problem, const Vec& start);

struct GradientErrorMeasures {
  double d_t = 0;        // errors at played x_t
  double d_prime_t = 0;  // errors at y_{t-1}
};

// true_grad(t, x) / pred_grad(t, x) evaluate the round-t smooth gradient and
// its prediction; t is 1-based.
GradientErrorMeasures gradient_error_measures(
    const MirrorSetup& setup, const std::vector<Vec>& played,
    const std::vector<Vec>& y_prevs,
    const std::function<Vec(int, const Vec&)>& true_grad,
    const std::function<Vec(int, const Vec&)>& pred_grad);

// Sampled lower-bound estimate of the temporal variability sum_t max_x
// |f_t(x) - f_{t-1}(x)|.
double temporal_variability(const std::vector<std::function<double(const Vec&)>>& costs,
                            const std::vector<Vec>& samples);

// Exact variant for 1-D quadratic costs on an interval: the pairwise
// difference is quadratic, so its extremum is at an endpoint or vertex.
double temporal_variability_quadratic_1d(
    const std::vector<std::function<double(const Vec&)>>& costs, double lo, double hi);

enum class Theorem { ConvexStatic = 1, StronglyConvexStatic = 2, ConvexDynamic = 3,
                     ImplicitDynamic = 4, FullyAdaptiveDynamic = 5 };

struct BoundConstants {
  double beta = 0;
  double alpha = 0;
  double sigma = 0;
  double r_sq = 0;   // R^2
  double gamma = 0;  // Bregman Lipschitz constant
  double tau = 0;    // known upper bound on C'_T
};

struct BoundMeasures {
  double d_prime = 0;
  double v_prime = 0;
  double c_prime = 0;
  double sum_g_sq = 0;
  // schedule state needed by the dynamic bounds
  double eta_1 = 0;
  double eta_T = 0;
  double eta_T1 = 0;      // eta_{T+1}
  double theta_T2 = 0;    // theta_{T+2}
  double d_prime_T1 = 0;  // upper bound on D'_{T+1}
};

// Evaluates the regret bound of the given theorem with the explicit constants
// carried by its proof; used as the acceptance inequality.
double bound_expression(Theorem theorem, const BoundConstants& constants,
                        const BoundMeasures& measures);

// Formats a double with 12 significant digits (the CSV contract).
std::string format_g12(double v);

}  // namespace ocomd

#endif
