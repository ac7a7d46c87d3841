#ifndef OCOMD_GEOMETRY_HPP
#define OCOMD_GEOMETRY_HPP

#include <limits>
#include <string>

#include "ocomd/errors.hpp"
#include "ocomd/vec.hpp"

namespace ocomd {

enum class SetKind { WholeSpace, Box, Ball, Simplex };

struct FeasibleSet {
  SetKind kind = SetKind::WholeSpace;
  Vec lower, upper;   // box
  Vec center;         // ball
  double radius = 0;  // ball

  static FeasibleSet whole_space(std::size_t n);
  static FeasibleSet box(Vec lower, Vec upper);
  static FeasibleSet ball(Vec center, double radius);
  static FeasibleSet simplex(std::size_t n);

  std::size_t dimension() const { return dim_; }
  bool contains(const Vec& x, double tol = 1e-9) const;
  // Euclidean l2 diameter; +inf for the whole space.
  double diameter() const;

 private:
  std::size_t dim_ = 0;
};

enum class MapKind { Euclidean, NegativeEntropy };

// Mirror map + feasible set + norm pair. Immutable after construction.
struct MirrorSetup {
  std::size_t dimension = 0;
  MapKind map_kind = MapKind::Euclidean;
  FeasibleSet set;
  double diameter_sq = 0;       // R^2, upper bound on B_h over the set
  double bregman_lipschitz = 0; // gamma
  double entropy_floor = 0;     // iterate floor for the entropy map

  // R^2 / gamma default to values derived from the set; explicit overrides
  // allowed since R^2 only enters bound constants.
  static MirrorSetup euclidean(FeasibleSet set, double diameter_sq = -1, double gamma = -1);
  static MirrorSetup negative_entropy(std::size_t n, double floor_eps = 1e-12);

  const char* map_name() const {
    return map_kind == MapKind::Euclidean ? "euclidean" : "negative-entropy";
  }
};

// h(x) - h(y) - <grad h(y), x - y>. Entropy: sum x_i log(x_i/y_i) on the
// simplex, 0 log 0 = 0.
double bregman(const MirrorSetup& setup, const Vec& x, const Vec& y);

// l2 for euclidean, l_inf for negative entropy.
double dual_norm(const MirrorSetup& setup, const Vec& w);

// l2 for euclidean, l1 for negative entropy.
double primal_norm(const MirrorSetup& setup, const Vec& v);

// Projection onto the feasible set: closed-form euclidean projections for
// box/ball, the sorting algorithm for the simplex. Entropy setups floor and
// renormalize (the KL projection of a positive vector onto the simplex).
Vec project(const MirrorSetup& setup, const Vec& x);

// Euclidean projection onto a set, independent of the mirror map.
Vec project_euclidean(const FeasibleSet& set, const Vec& x);

// Floor entropy iterates at eps and renormalize to the simplex.
Vec floor_simplex(const Vec& x, double eps);

void check_dimension(const MirrorSetup& setup, const Vec& v, const char* what);

}  // namespace ocomd

#endif
