#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "joindeg/field.hpp"
#include "joindeg/linalg.hpp"

namespace joindeg {

inline constexpr int kDegreeCap = 64;

// Homogeneous form in v variables, sparse exponent map. Every stored
// monomial has total degree exactly deg(); zero coefficients are never
// stored. The zero polynomial carries a nominal degree.
class HomPoly {
 public:
  using Exponents = std::vector<int>;

  HomPoly(FieldSpec spec, int nvars, int deg)
      : spec_(spec), nvars_(nvars), deg_(deg) {}

  static HomPoly monomial(FieldSpec spec, Exponents e, Fq c);
  static HomPoly zero(FieldSpec spec, int nvars, int deg) { return HomPoly(spec, nvars, deg); }

  const FieldSpec& spec() const { return spec_; }
  int nvars() const { return nvars_; }
  int deg() const { return deg_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Fq>& terms() const { return terms_; }

  void add_term(const Exponents& e, const Fq& c);

  HomPoly operator+(const HomPoly& o) const;
  HomPoly operator-(const HomPoly& o) const;
  HomPoly operator*(const HomPoly& o) const;
  HomPoly scaled(const Fq& c) const;
  bool operator==(const HomPoly& o) const;

  Fq eval(const Vec& pt) const;
  HomPoly derivative(int var) const;

  // f composed with the invertible linear change x -> M x.
  HomPoly substitute_linear(const Mat& m) const;

  std::string str() const;

 private:
  FieldSpec spec_;
  int nvars_;
  int deg_;
  std::map<Exponents, Fq> terms_;
};

// Univariate polynomial, dense coefficients c_[i] of s^i, trailing zeros
// trimmed; the zero polynomial has empty coefficients and degree -1.
class UniPoly {
 public:
  explicit UniPoly(FieldSpec spec) : spec_(spec) {}
  UniPoly(FieldSpec spec, std::vector<Fq> coeffs);

  static UniPoly from_ints(const FieldSpec& spec, const std::vector<long>& c);

  const FieldSpec& spec() const { return spec_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq coeff(int i) const;
  Fq lead() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const Fq& c) const;
  bool operator==(const UniPoly& o) const;

  Fq eval(const Fq& x) const;
  UniPoly derivative() const;
  UniPoly monic() const;

  // Euclidean division (field coefficients): returns {quotient, remainder}.
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const;

  std::string str() const;

 private:
  void trim();
  FieldSpec spec_;
  std::vector<Fq> c_;
};

// Monic gcd. Over Q the Euclidean steps run on integer primitive parts
// to control coefficient growth.
UniPoly uni_gcd(const UniPoly& f, const UniPoly& g);

// f / gcd(f, f'), monic; in char p a vanishing derivative triggers the
// p-th-root recursion so p-th-power factors are handled.
UniPoly squarefree_part(const UniPoly& f);

// Number of distinct roots in the algebraic closure.
int distinct_root_count(const UniPoly& f);

Fq sylvester_resultant(const UniPoly& f, const UniPoly& g);

// Sparse bivariate polynomial in affine variables (s, t).
class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (s-exponent, t-exponent)

  explicit BiPoly(FieldSpec spec) : spec_(spec) {}

  static BiPoly constant(const Fq& c);
  static BiPoly monomial(FieldSpec spec, int i, int j, Fq c);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, Fq>& terms() const { return terms_; }
  int deg_s() const;
  int deg_t() const;

  void add_term(int i, int j, const Fq& c);

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly scaled(const Fq& c) const;
  bool operator==(const BiPoly& o) const;

  Fq eval(const Fq& s, const Fq& t) const;

  // (s, t) -> (m00 s + m01 t, m10 s + m11 t), M invertible.
  BiPoly substitute_linear(const Mat& m2) const;

  // View as polynomial in s with UniPoly-in-t coefficients.
  std::vector<UniPoly> coeffs_in_s() const;

  // Substitute a univariate polynomial for t: f(s, g(s)).
  UniPoly substitute_t(const UniPoly& g) const;

  std::string str() const;

 private:
  FieldSpec spec_;
  std::map<Key, Fq> terms_;
};

// Exact division of f by (s - t); fails if the remainder is nonzero.
BiPoly divide_by_s_minus_t(const BiPoly& f);

// Text grammar: integer coefficients, variables s0..s{nvars-1},
// operators + - * ^ and parentheses. Must be homogeneous; total degree
// capped at kDegreeCap.
HomPoly parse_hompoly(const std::string& text, const FieldSpec& spec, int nvars);

// Binary form f(s0, s1) of formal degree d, stored as the univariate
// F(u) with u = s0/s1; the root [1:0] has multiplicity d - deg F.
struct BinForm {
  UniPoly f;
  int formal_deg = 0;

  bool is_zero() const { return f.is_zero(); }
  int inf_multiplicity() const { return formal_deg - f.deg(); }
};

BinForm binform_from_hom(const HomPoly& h);
BinForm binform_gcd(const BinForm& a, const BinForm& b);
int binform_distinct_roots(const BinForm& a);
bool binform_squarefree(const BinForm& a);

}  // namespace joindeg
