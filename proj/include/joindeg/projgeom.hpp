#pragma once

#include <vector>

#include "joindeg/linalg.hpp"
#include "joindeg/rng.hpp"

namespace joindeg {

// Point of P^n, normalized so the first nonzero coordinate is 1.
class ProjPoint {
 public:
  explicit ProjPoint(Vec coords);

  const Vec& coords() const { return x_; }
  int ambient() const { return static_cast<int>(x_.size()) - 1; }
  const FieldSpec& spec() const { return x_[0].spec(); }
  bool operator==(const ProjPoint& o) const { return x_ == o.x_; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  bool operator<(const ProjPoint& o) const;
  std::string str() const;

 private:
  Vec x_;
};

// Line spanned by two distinct points, keyed by its normalized Pluecker
// vector (all 2x2 minors of the spanning matrix).
class ProjLine {
 public:
  ProjLine(ProjPoint a, ProjPoint b);

  const ProjPoint& a() const { return a_; }
  const ProjPoint& b() const { return b_; }
  const Vec& plucker() const { return plucker_; }
  int ambient() const { return a_.ambient(); }
  bool operator==(const ProjLine& o) const { return plucker_ == o.plucker_; }
  bool operator<(const ProjLine& o) const { return plucker_ < o.plucker_; }
  bool contains(const ProjPoint& p) const;

 private:
  ProjPoint a_, b_;
  Vec plucker_;
};

// Verifies the Grassmann-Pluecker quadratic relations for a line key.
bool plucker_relations_hold(const ProjLine& l);

// Linear subspace of P^n as a canonical reduced-echelon basis matrix.
// Projective dimension = rank - 1; the empty subspace has dimension -1.
class LinearSubspace {
 public:
  LinearSubspace(Mat basis, int ambient);

  static LinearSubspace empty(const FieldSpec& spec, int ambient);
  static LinearSubspace from_point(const ProjPoint& p);
  static LinearSubspace from_line(const ProjLine& l);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()) - 1; }
  const Mat& basis() const { return basis_; }
  bool contains(const ProjPoint& p) const;
  bool contains_subspace(const LinearSubspace& s) const;
  bool operator==(const LinearSubspace& o) const { return ambient_ == o.ambient_ && mats_equal(basis_, o.basis_); }

 private:
  Mat basis_;
  int ambient_;
};

ProjLine line_through(const ProjPoint& x, const ProjPoint& y);

LinearSubspace span_of(const std::vector<LinearSubspace>& parts);
LinearSubspace span_of_points(const std::vector<ProjPoint>& pts);

LinearSubspace intersect(const LinearSubspace& u, const LinearSubspace& v);

// Projection P^{2n+1} -> P^n from the center a_i = b_i, in coordinates
// a_i - b_i.
ProjPoint ruled_projection(const ProjPoint& q);

LinearSubspace random_subspace(const FieldSpec& spec, int ambient, int codim, Rng& rng);

// Random invertible (n+1)x(n+1) coordinate change.
Mat random_invertible(const FieldSpec& spec, int size, Rng& rng);

}  // namespace joindeg
