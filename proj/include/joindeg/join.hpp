#pragma once

#include <optional>

#include "joindeg/bivar.hpp"
#include "joindeg/variety.hpp"

namespace joindeg {

struct JoinInstance {
  ParamVariety x, y;
  int ambient = 0;
  FieldSpec spec = FieldSpec::Q();
  uint64_t seed = 0;
  int trials = 3;

  bool self_join() const { return x.same_components(y); }

  // Validates shared ambient/field and the excluded X = Y linear case.
  static JoinInstance create(ParamVariety x, ParamVariety y, uint64_t seed, int trials = 3);
};

struct JoinLineSample {
  Vec x_param, y_param;
  ProjPoint x, y;
  ProjLine line;
  LineProfile profile_x, profile_y;
  bool certified = false;
};

// Random join line certified against the bad sets: transversal profiles,
// smooth base parameters, line not inside X or Y.
JoinLineSample sample_join_line(const JoinInstance& inst, Rng& rng);

// Generic (m_X, m_Y); all trials must agree.
std::pair<int, int> joined_profile(const JoinInstance& inst, Rng& rng);

struct CollinearitySetup {
  BivarSystem sys;
  bool diagonal_removed = false;  // self-join: generators divided by (s - t)
  long spurious_p = 0, spurious_s = 0, spurious_t = 0;  // X cap Y artifacts
};

// System of 3x3 minors in affine curve parameters (s, t) whose distinct
// solutions are the pairs (x, y) collinear with z, after a random ambient
// coordinate change and source reparametrizations.
CollinearitySetup collinearity_system(const JoinInstance& inst, const ProjPoint& z, Rng& rng);

struct FiberCensus {
  long pair_count = 0;       // P, including self-join diagonal pairs
  long distinct_x = 0;       // S
  long distinct_y = 0;       // T
  int m_x = 0, m_y = 0;
  long b = 0;
  long deg_beta = 0, deg_alpha_x = 0, deg_alpha_y = 0, deg_pi = 0;

  // Checks P = m_X m_Y b, S = m_X b, T = m_Y b and fills the degrees.
  static FiberCensus combine(int m_x, int m_y, long p, long s, long t);
};

FiberCensus fiber_census(const JoinInstance& inst, Rng& rng);

struct TerraciniSpan {
  LinearSubspace span;
  int dim;
};

TerraciniSpan terracini_span(const JoinInstance& inst, const Vec& x_param, const Vec& y_param);

// Generic dim of T_{X,x} cap T_{Y,y}; -1 when empty.
int t_invariant(const JoinInstance& inst, Rng& rng);

enum class DimMethod { Terracini, Oracle };

struct EjDimension {
  int dim = -1;
  DimMethod method = DimMethod::Terracini;
  int terracini_dim = -1;  // always reported; a lower bound in char p
  bool heuristic = false;  // single-prime covered-set estimate was used
};

EjDimension ej_dimension(const JoinInstance& inst, Rng& rng);

bool constrained_pair_test(const JoinInstance& inst, Rng& rng);

struct StrangeResult {
  bool is_strange = false;
  std::optional<LinearSubspace> locus;
};

StrangeResult strange_pair_test(const JoinInstance& inst, Rng& rng);

ProjPoint ruled_join_point(const JoinInstance& inst, const Vec& x_param, const Vec& y_param,
                           const Fq& a, const Fq& b);

long degree_ej(const JoinInstance& inst, Rng& rng);

struct WTangentReport {
  bool pr1_is_tangent_x = false;      // item (i)
  bool x_slice_matches = false;       // item (ii)
  bool z_slice_matches = false;       // item (iv)
  bool rank_matches = false;          // Jacobian rank = dim W(X) + 2 cone scalings
  bool item3_as_pr1 = false;          // item (iii) read literally
  bool item3_as_pr2 = false;          // item (iii) read as pr2
  int points_checked = 0;
};

// Tangent-space checks on the local parametrization of W(X) (char 0,
// curves); the symmetric W(Y) run swaps the roles.
WTangentReport w_tangent_checks(const JoinInstance& inst, Rng& rng, bool swap_roles = false);

// True iff X cup Y spans the ambient space (joint coefficient rank).
bool union_nondegenerate(const JoinInstance& inst);

bool ballico_plane_test(const JoinInstance& inst, Rng& rng);

// Stacked-rank check: span(T_{X,x}, T_{Y,y}) inside the row space of the
// local join parametrization Jacobian at a random segment point.
bool terracini_inclusion_check(const JoinInstance& inst, Rng& rng);

// ------------------------------------------------------------ full report

struct SectionOutcome {
  bool ok = false;
  std::string error;   // error code name when !ok
  std::string detail;  // human-readable message
  uint64_t seed = 0;
  double wall_ms = 0.0;
};

struct JoinReport {
  ValidationReport validation_x, validation_y;
  SectionOutcome validation;

  EjDimension dims;
  int expected_dim = 0;
  SectionOutcome dims_outcome;

  std::pair<int, int> profile{0, 0};
  SectionOutcome profile_outcome;

  int t_value = -2;
  SectionOutcome t_outcome;

  StrangeResult strange;
  SectionOutcome strange_outcome;

  bool constrained = false;
  SectionOutcome constrained_outcome;

  FiberCensus census;
  SectionOutcome census_outcome;

  long deg_ej = 0;
  SectionOutcome degree_outcome;

  bool ballico = false;
  bool ballico_applicable = false;
  SectionOutcome ballico_outcome;

  int terracini_checks_passed = 0;
  int terracini_checks_total = 0;
  SectionOutcome terracini_outcome;

  WTangentReport wchecks_x, wchecks_y;
  SectionOutcome wchecks_outcome;

  uint64_t seed = 0;
  int trials = 0;
};

struct AnalyzeOptions {
  bool fast_surrogate = false;  // run the census mod two 31-bit primes instead of Q
  int terracini_samples = 100;
};

JoinReport analyze(const JoinInstance& inst, const AnalyzeOptions& opts = {});

}  // namespace joindeg
