#ifndef OCOMD_VERIFY_HPP
#define OCOMD_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ocomd/prox.hpp"
#include "ocomd/rng.hpp"

namespace ocomd {

struct PropertyResult {
  std::string name;
  bool pass = false;
  long trials = 0;
  long violations = 0;
  std::string counterexample;  // empty when the property holds
};

// Runs every registered property suite whose name contains the filter
// (empty filter = all). Deterministic for a fixed seed.
std::vector<PropertyResult> run_verify(const std::string& filter, std::uint64_t seed);

namespace oracle {

// Brute-force nested grid minimizer, independent of every closed form it
// checks. Supports dimensions 1-2 (simplex via its 1-D parametrization).
Vec grid_minimize(const FeasibleSet& set, const std::function<double(const Vec&)>& obj,
                  const Vec& lo, const Vec& hi, int coarse = 61, int levels = 5);

// Uniform-ish random member of the set.
Vec random_feasible(const FeasibleSet& set, Rng& rng);

}  // namespace oracle

namespace checks {

using ProxFn = std::function<Vec(const MirrorSetup&, const Vec&, const NonsmoothPart&,
                                 double, const Vec&)>;

// Number of (geometry, set, r) grid-oracle mismatches beyond tol; the prox
// implementation is injectable so a broken closed form is detectable.
long prox_grid_violations(const ProxFn& prox, int trials_per_combo, double tol,
                          std::uint64_t seed, std::string* first_failure = nullptr);

// Lemma-style prox nonexpansiveness violations beyond 1e-10 slack.
long lemma2_violations(int trials_per_setup, std::uint64_t seed,
                       std::string* first_failure = nullptr);

}  // namespace checks

}  // namespace ocomd

#endif
