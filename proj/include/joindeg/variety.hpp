#pragma once

#include <optional>
#include <string>

#include "joindeg/poly.hpp"
#include "joindeg/projgeom.hpp"

namespace joindeg {

// A projective variety presented by a basepoint-free tuple of homogeneous
// forms on P^0, P^1 or P^2.
struct ParamVariety {
  int source_dim = 1;        // k in {0, 1, 2}
  int ambient = 0;           // n
  std::vector<HomPoly> components;  // n+1 forms in k+1 variables, common degree
  std::string label;
  FieldSpec spec = FieldSpec::Q();

  int degree() const { return components.at(0).deg(); }
  bool same_components(const ParamVariety& o) const;
};

ParamVariety make_variety(std::string label, int source_dim, int ambient,
                          const std::vector<std::string>& component_texts, const FieldSpec& spec);

struct ValidationReport {
  bool basepoint_free = false;
  bool generically_injective = false;
  bool nondegenerate = false;  // coefficient matrix has full rank n+1
  bool linear = false;         // degree-1 parametrization
  int injectivity_count = 0;
};

// Throws BasePointFound / NonBirationalParam / DegenerateForms on failure.
ValidationReport validate_variety(const ParamVariety& v, Rng& rng);

struct SampledPoint {
  Vec parameter;
  ProjPoint point;
};

SampledPoint sample_point(const ParamVariety& v, Rng& rng);

struct TangentFrame {
  Vec parameter;
  ProjPoint base;
  LinearSubspace tangent;
  bool singular = false;  // Jacobian rank below k+1
};

TangentFrame tangent_space(const ParamVariety& v, const Vec& parameter);

struct LineProfile {
  int count = 0;
  bool transversal = false;
};

// Number of distinct closure points of V on L (k <= 1), via the gcd of the
// pulled-back linear forms cutting L.
LineProfile line_intersection_profile(const ParamVariety& v, const ProjLine& l);

// Distinct closure points of V in a plane (projective dimension 2).
int plane_section_count(const ParamVariety& v, const LinearSubspace& plane, Rng& rng);

// Linear form with the given coefficient row, pulled back through the
// parametrization: sum_j a_j x_j(s).
HomPoly pull_back_linear(const ParamVariety& v, const Vec& coeffs);

// Reparametrized copy: components composed with an invertible change of
// the source coordinates (same image variety).
ParamVariety reparametrize(const ParamVariety& v, const Mat& source_change);

// Components transformed by an ambient coordinate change x -> M x.
ParamVariety ambient_change(const ParamVariety& v, const Mat& m);

// Instance reduced mod p (Rationals -> F_p); rejects primes dividing a
// denominator or killing a component.
ParamVariety reduce_mod_p(const ParamVariety& v, uint64_t p);

// Curve components in the affine chart s1 = 1 (parameter u = s0/s1).
std::vector<UniPoly> affine_curve_components(const ParamVariety& v);

// Ternary form restricted to the chart s0 = 1, as a BiPoly in (s1, s2).
BiPoly ternary_to_affine(const HomPoly& h);

}  // namespace joindeg
