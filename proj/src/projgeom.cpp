#include "joindeg/projgeom.hpp"

#include <sstream>

namespace joindeg {

namespace {

Vec normalize_proj(Vec v) {
  for (const auto& c : v) {
    if (!c.is_zero()) {
      Fq inv = c.inv();
      for (auto& x : v) x = x * inv;
      return v;
    }
  }
  fail(Err::DegenerateForms, "projective vector is zero");
}

}  // namespace

ProjPoint::ProjPoint(Vec coords) : x_(normalize_proj(std::move(coords))) {}

bool ProjPoint::operator<(const ProjPoint& o) const {
  for (size_t i = 0; i < x_.size(); ++i) {
    if (x_[i] == o.x_[i]) continue;
    return x_[i] < o.x_[i];
  }
  return false;
}

std::string ProjPoint::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < x_.size(); ++i) os << (i ? ":" : "") << x_[i].str();
  os << "]";
  return os.str();
}

ProjLine::ProjLine(ProjPoint a, ProjPoint b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_ == b_) fail(Err::CoincidentPoints, "line through coincident points");
  if (a_.ambient() != b_.ambient()) fail(Err::AmbientMismatch, "line spans different ambients");
  const Vec& u = a_.coords();
  const Vec& v = b_.coords();
  Vec pl;
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j) pl.push_back(u[i] * v[j] - u[j] * v[i]);
  plucker_ = normalize_proj(std::move(pl));
}

bool ProjLine::contains(const ProjPoint& p) const {
  Mat m{a_.coords(), b_.coords(), p.coords()};
  return rref(m) <= 2;
}

bool plucker_relations_hold(const ProjLine& l) {
  // p_ij p_kl - p_ik p_jl + p_il p_jk = 0 for i<j<k<l
  const int n = l.ambient();
  const Vec& p = l.plucker();
  auto idx = [n](int i, int j) {
    // position of (i, j), i<j, in row-major pair order
    int pos = 0;
    for (int a = 0; a < i; ++a) pos += n - a;
    return pos + (j - i - 1);
  };
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int m = k + 1; m <= n; ++m) {
          Fq rel = p[static_cast<size_t>(idx(i, j))] * p[static_cast<size_t>(idx(k, m))] -
                   p[static_cast<size_t>(idx(i, k))] * p[static_cast<size_t>(idx(j, m))] +
                   p[static_cast<size_t>(idx(i, m))] * p[static_cast<size_t>(idx(j, k))];
          if (!rel.is_zero()) return false;
        }
  return true;
}

LinearSubspace::LinearSubspace(Mat basis, int ambient) : ambient_(ambient) {
  for (const auto& row : basis)
    if (static_cast<int>(row.size()) != ambient + 1) fail(Err::AmbientMismatch, "basis row length");
  basis_ = row_space(std::move(basis));
}

LinearSubspace LinearSubspace::empty(const FieldSpec& spec, int ambient) {
  (void)spec;
  return LinearSubspace(Mat{}, ambient);
}

LinearSubspace LinearSubspace::from_point(const ProjPoint& p) {
  return LinearSubspace(Mat{p.coords()}, p.ambient());
}

LinearSubspace LinearSubspace::from_line(const ProjLine& l) {
  return LinearSubspace(Mat{l.a().coords(), l.b().coords()}, l.ambient());
}

bool LinearSubspace::contains(const ProjPoint& p) const {
  Mat m = basis_;
  m.push_back(p.coords());
  return rref(m) == static_cast<int>(basis_.size());
}

bool LinearSubspace::contains_subspace(const LinearSubspace& s) const {
  Mat m = basis_;
  for (const auto& row : s.basis()) m.push_back(row);
  return rref(m) == static_cast<int>(basis_.size());
}

ProjLine line_through(const ProjPoint& x, const ProjPoint& y) { return ProjLine(x, y); }

LinearSubspace span_of(const std::vector<LinearSubspace>& parts) {
  if (parts.empty()) fail(Err::AmbientMismatch, "span of nothing");
  int ambient = parts[0].ambient();
  Mat rows;
  for (const auto& p : parts) {
    if (p.ambient() != ambient) fail(Err::AmbientMismatch, "span over mixed ambients");
    for (const auto& r : p.basis()) rows.push_back(r);
  }
  return LinearSubspace(std::move(rows), ambient);
}

LinearSubspace span_of_points(const std::vector<ProjPoint>& pts) {
  std::vector<LinearSubspace> parts;
  for (const auto& p : pts) parts.push_back(LinearSubspace::from_point(p));
  return span_of(parts);
}

LinearSubspace intersect(const LinearSubspace& u, const LinearSubspace& v) {
  if (u.ambient() != v.ambient()) fail(Err::AmbientMismatch, "intersect over mixed ambients");
  if (u.dim() < 0 || v.dim() < 0) return LinearSubspace(Mat{}, u.ambient());
  // row space cap row space = null space of stacked annihilators
  Mat ann_u = null_space(u.basis());
  Mat ann_v = null_space(v.basis());
  Mat stacked = ann_u;
  for (auto& r : ann_v) stacked.push_back(std::move(r));
  if (stacked.empty()) {
    // both subspaces are the whole space
    Mat id;
    const FieldSpec spec = u.basis()[0][0].spec();
    for (int i = 0; i <= u.ambient(); ++i) {
      Vec row(static_cast<size_t>(u.ambient() + 1), Fq::zero(spec));
      row[static_cast<size_t>(i)] = Fq::one(spec);
      id.push_back(std::move(row));
    }
    return LinearSubspace(std::move(id), u.ambient());
  }
  return LinearSubspace(null_space(stacked), u.ambient());
}

ProjPoint ruled_projection(const ProjPoint& q) {
  const Vec& x = q.coords();
  if (x.size() % 2 != 0) fail(Err::AmbientMismatch, "ruled projection needs P^{2n+1}");
  size_t half = x.size() / 2;
  Vec out;
  bool all_zero = true;
  for (size_t i = 0; i < half; ++i) {
    Fq d = x[i] - x[half + i];
    if (!d.is_zero()) all_zero = false;
    out.push_back(d);
  }
  if (all_zero) fail(Err::CenterPoint, "point lies in the projection center");
  return ProjPoint(std::move(out));
}

LinearSubspace random_subspace(const FieldSpec& spec, int ambient, int codim, Rng& rng) {
  if (codim < 0 || codim > ambient) fail(Err::AmbientMismatch, "codimension out of range");
  int rows = ambient + 1 - codim;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat m;
    for (int i = 0; i < rows; ++i) {
      Vec row;
      for (int j = 0; j <= ambient; ++j) row.push_back(random_element(spec, rng));
      m.push_back(std::move(row));
    }
    if (rank_of(m) == rows) return LinearSubspace(std::move(m), ambient);
  }
  fail(Err::DegenerateForms, "random subspace kept collapsing");
}

Mat random_invertible(const FieldSpec& spec, int size, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat m;
    for (int i = 0; i < size; ++i) {
      Vec row;
      for (int j = 0; j < size; ++j) row.push_back(random_element(spec, rng));
      m.push_back(std::move(row));
    }
    if (rank_of(m) == size) return m;
  }
  fail(Err::SingularMatrix, "could not sample an invertible matrix");
}

}  // namespace joindeg
