#include "joindeg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace joindeg {

bool PointTable::contains(const ProjPoint& p) const {
  return std::find(points.begin(), points.end(), p) != points.end();
}

std::vector<Vec> enumerate_parameter_space(const FieldSpec& spec, int k) {
  if (spec.is_rational()) fail(Err::FieldMismatch, "enumeration needs a finite field");
  uint64_t p = spec.p;
  std::vector<Vec> out;
  // pivot position i: zeros before, 1 at i, free residues after
  for (int i = 0; i <= k; ++i) {
    int free = k - i;
    std::vector<uint64_t> digits(static_cast<size_t>(free), 0);
    while (true) {
      Vec v;
      for (int j = 0; j < i; ++j) v.push_back(Fq::zero(spec));
      v.push_back(Fq::one(spec));
      for (int j = 0; j < free; ++j) v.push_back(Fq::from_residue(spec, digits[static_cast<size_t>(j)]));
      out.push_back(std::move(v));
      int pos = free - 1;
      while (pos >= 0 && digits[static_cast<size_t>(pos)] == p - 1) {
        digits[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++digits[static_cast<size_t>(pos)];
    }
  }
  return out;
}

PointTable enumerate_points(const ParamVariety& v, uint64_t q) {
  if (v.spec.is_rational()) fail(Err::FieldMismatch, "enumeration needs a finite field");
  if (v.spec.p != q) fail(Err::FieldMismatch, "table prime differs from the variety's field");
  if (q > kOraclePrimeCap) fail(Err::EnumerationBudgetExceeded, "prime above the enumeration cap");
  PointTable table;
  table.spec = v.spec;
  table.ambient = v.ambient;
  std::map<ProjPoint, size_t> index;
  for (auto& param : enumerate_parameter_space(v.spec, v.source_dim)) {
    Vec x;
    bool all_zero = true;
    for (const auto& h : v.components) {
      Fq val = h.eval(param);
      if (!val.is_zero()) all_zero = false;
      x.push_back(val);
    }
    if (all_zero) continue;  // base point: skip
    ProjPoint pt(std::move(x));
    auto it = index.find(pt);
    if (it == index.end()) {
      index.emplace(pt, table.points.size());
      table.points.push_back(pt);
      table.parameters.push_back({param});
    } else {
      table.parameters[it->second].push_back(param);
    }
  }
  return table;
}

namespace {

bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& z) {
  Mat m{a.coords(), b.coords(), z.coords()};
  return rref(m) <= 2;
}

void check_pair_budget(const PointTable& xt, const PointTable& yt, long budget) {
  if (xt.size() * yt.size() > budget)
    fail(Err::EnumerationBudgetExceeded, "pair loop over " + std::to_string(xt.size() * yt.size()) +
                                             " exceeds the budget");
}

// F_p points of line(a, b): a + l*b for all residues l, plus b.
std::vector<ProjPoint> line_points(const ProjPoint& a, const ProjPoint& b) {
  const FieldSpec& spec = a.spec();
  std::vector<ProjPoint> pts;
  for (uint64_t l = 0; l < spec.p; ++l) {
    Fq lam = Fq::from_residue(spec, l);
    Vec v;
    for (size_t i = 0; i < a.coords().size(); ++i) v.push_back(a.coords()[i] + lam * b.coords()[i]);
    pts.emplace_back(std::move(v));
  }
  pts.push_back(b);
  return pts;
}

}  // namespace

OracleCensus oracle_census(const PointTable& xt, const PointTable& yt, const ProjPoint& z) {
  if (!(xt.spec == yt.spec) || xt.ambient != yt.ambient)
    fail(Err::FieldMismatch, "tables live in different spaces");
  check_pair_budget(xt, yt, kOraclePairBudget);
  std::map<ProjLine, std::pair<long, long>> lines;
  for (const auto& x : xt.points) {
    for (const auto& y : yt.points) {
      if (x == y) continue;
      if (!collinear(x, y, z)) continue;
      ProjLine l(x, y);
      if (lines.count(l)) continue;
      long mx = 0, my = 0;
      for (const auto& px : xt.points)
        if (l.contains(px)) ++mx;
      for (const auto& py : yt.points)
        if (l.contains(py)) ++my;
      lines.emplace(std::move(l), std::make_pair(mx, my));
    }
  }
  if (lines.empty()) fail(Err::NoJoinLineThroughZ, "no rational join line passes through z");
  OracleCensus out;
  out.b = static_cast<long>(lines.size());
  for (const auto& [l, prof] : lines) {
    out.profiles.push_back(prof);
    out.fiber_size += prof.first * prof.second;
  }
  out.z_general = !xt.contains(z) && !yt.contains(z);
  return out;
}

ProjPoint sample_oracle_z(const PointTable& xt, const PointTable& yt, Rng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    const ProjPoint& x = xt.points.at(rng.below(static_cast<uint64_t>(xt.size())));
    const ProjPoint& y = yt.points.at(rng.below(static_cast<uint64_t>(yt.size())));
    if (x == y) continue;
    Fq a = random_nonzero(xt.spec, rng);
    Fq b = random_nonzero(xt.spec, rng);
    Vec v;
    for (size_t i = 0; i < x.coords().size(); ++i) v.push_back(a * x.coords()[i] + b * y.coords()[i]);
    ProjPoint z(std::move(v));
    if (z == x || z == y) continue;
    if (xt.contains(z) || yt.contains(z)) continue;  // keep z general
    return z;
  }
  fail(Err::NoJoinLineThroughZ, "could not sample a general point on a join line");
}

std::set<ProjPoint> covered_points(const PointTable& xt, const PointTable& yt, long budget) {
  check_pair_budget(xt, yt, budget);
  std::set<ProjPoint> covered;
  for (const auto& x : xt.points)
    for (const auto& y : yt.points) {
      if (x == y) continue;
      for (auto& p : line_points(x, y)) covered.insert(std::move(p));
    }
  return covered;
}

namespace {

long proj_space_size(uint64_t p, int d) {
  long n = 1, pw = 1;
  for (int i = 0; i < d; ++i) {
    pw *= static_cast<long>(p);
    n += pw;
  }
  return n;
}

}  // namespace

int oracle_dimension(const ParamVariety& x, const ParamVariety& y,
                     const std::vector<uint64_t>& primes, long budget) {
  if (primes.size() < 2) fail(Err::OracleInconclusive, "growth fit needs at least 2 primes");
  std::vector<long> counts;
  for (uint64_t p : primes) {
    ParamVariety xp = reduce_mod_p(x, p);
    ParamVariety yp = reduce_mod_p(y, p);
    PointTable xt = enumerate_points(xp, p);
    PointTable yt = enumerate_points(yp, p);
    counts.push_back(static_cast<long>(covered_points(xt, yt, budget).size()));
  }
  int fitted = -2;
  for (size_t i = 0; i + 1 < primes.size(); ++i) {
    if (counts[i] <= 0 || counts[i + 1] <= 0)
      fail(Err::OracleInconclusive, "empty covered set");
    double d = std::log(static_cast<double>(counts[i + 1]) / static_cast<double>(counts[i])) /
               std::log(static_cast<double>(primes[i + 1]) / static_cast<double>(primes[i]));
    int r = static_cast<int>(std::lround(d));
    if (fitted == -2) fitted = r;
    if (r != fitted)
      fail(Err::OracleInconclusive, "growth exponents disagree across prime pairs");
  }
  return fitted;
}

SinglePrimeDim single_prime_dimension(const PointTable& xt, const PointTable& yt, long budget) {
  std::set<ProjPoint> covered = covered_points(xt, yt, budget);
  SinglePrimeDim out;
  out.covered = static_cast<long>(covered.size());
  Mat rows;
  for (const auto& p : covered) rows.push_back(p.coords());
  out.span_dim = rank_of(std::move(rows)) - 1;
  uint64_t p = xt.spec.p;
  // log-scale fit: rational covered sets can miss a constant fraction of
  // the closure's points (conjugate contact pairs), so compare magnitudes
  double best_err = -1;
  for (int d = 0; d <= xt.ambient; ++d) {
    double err = std::fabs(std::log(static_cast<double>(out.covered)) -
                           std::log(static_cast<double>(proj_space_size(p, d))));
    if (best_err < 0 || err < best_err) {
      best_err = err;
      out.dim = d;
    }
  }
  out.dim = std::min(out.dim, out.span_dim);
  return out;
}

long oracle_degree_slice(const PointTable& xt, const PointTable& yt, int dim_ej, int trials,
                         Rng& rng, long budget) {
  if (trials <= 0) fail(Err::InvalidInstance, "slice trials must be positive");
  if (dim_ej < 1 || dim_ej > xt.ambient)
    fail(Err::InvalidInstance, "slice codimension out of range");
  std::set<ProjPoint> covered = covered_points(xt, yt, budget);
  long best = 0;
  for (int t = 0; t < trials; ++t) {
    LinearSubspace slice = random_subspace(xt.spec, xt.ambient, dim_ej, rng);
    long hits = 0;
    for (auto& coeffs : enumerate_parameter_space(xt.spec, slice.dim())) {
      Vec v(static_cast<size_t>(xt.ambient + 1), Fq::zero(xt.spec));
      for (size_t r = 0; r < slice.basis().size(); ++r)
        for (size_t c = 0; c < v.size(); ++c) v[c] = v[c] + coeffs[r] * slice.basis()[r][c];
      if (covered.count(ProjPoint(std::move(v)))) ++hits;
    }
    best = std::max(best, hits);
  }
  return best;
}

}  // namespace joindeg
