#pragma once

#include <set>

#include "joindeg/variety.hpp"

namespace joindeg {

inline constexpr long kOraclePairBudget = 10'000'000;
inline constexpr uint64_t kOraclePrimeCap = 101;

// All F_p-rational points of a parametrized variety, deduplicated, with
// the parameters mapping to each point.
struct PointTable {
  FieldSpec spec = FieldSpec::Q();
  int ambient = 0;
  std::vector<ProjPoint> points;
  std::vector<std::vector<Vec>> parameters;  // parameters[i] hit points[i]

  long size() const { return static_cast<long>(points.size()); }
  bool contains(const ProjPoint& p) const;
};

// Evaluates the components at every parameter of P^k(F_p).
PointTable enumerate_points(const ParamVariety& v, uint64_t q);

// All parameter tuples of P^k(F_p), first nonzero coordinate 1.
std::vector<Vec> enumerate_parameter_space(const FieldSpec& spec, int k);

struct OracleCensus {
  long b = 0;                                   // distinct join lines through z
  std::vector<std::pair<long, long>> profiles;  // per line: (#X points, #Y points)
  long fiber_size = 0;                          // sum of profile products
  bool z_general = true;                        // false when z sits in a table
};

// Brute-force census at z: every pair (x, y) with x != y is tested for
// collinearity with z; hits are grouped by Pluecker key.
OracleCensus oracle_census(const PointTable& xt, const PointTable& yt, const ProjPoint& z);

// Random point on a join line of two table points (never solved for).
ProjPoint sample_oracle_z(const PointTable& xt, const PointTable& yt, Rng& rng);

// Union of the F_p points of all join lines.
std::set<ProjPoint> covered_points(const PointTable& xt, const PointTable& yt,
                                   long budget = kOraclePairBudget);

// Growth-fit dimension estimate from covered-point counts at >= 2 primes
// (rational instances reduced mod each prime).
int oracle_dimension(const ParamVariety& x, const ParamVariety& y,
                     const std::vector<uint64_t>& primes, long budget = kOraclePairBudget);

struct SinglePrimeDim {
  int dim = -1;        // closest |P^d(F_p)| match, capped by the span
  int span_dim = -1;   // projective dimension of the span of covered points
  long covered = 0;
};

// Fallback estimator at one prime; heuristic by nature.
SinglePrimeDim single_prime_dimension(const PointTable& xt, const PointTable& yt,
                                      long budget = kOraclePairBudget);

// Maximum number of covered points on random slices of codimension
// dim_ej; converges to deg EJ from below.
long oracle_degree_slice(const PointTable& xt, const PointTable& yt, int dim_ej, int trials,
                         Rng& rng, long budget = kOraclePairBudget);

}  // namespace joindeg
