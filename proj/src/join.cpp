#include "joindeg/join.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "joindeg/oracle.hpp"

namespace joindeg {

JoinInstance JoinInstance::create(ParamVariety x, ParamVariety y, uint64_t seed, int trials) {
  if (x.ambient != y.ambient) fail(Err::AmbientMismatch, "X and Y live in different ambients");
  if (!(x.spec == y.spec)) fail(Err::FieldMismatch, "X and Y over different fields");
  if (trials < 1) fail(Err::InvalidInstance, "trial count must be positive");
  JoinInstance inst;
  inst.ambient = x.ambient;
  inst.spec = x.spec;
  inst.seed = seed;
  inst.trials = trials;
  inst.x = std::move(x);
  inst.y = std::move(y);
  if (inst.self_join() && inst.x.degree() == 1 && inst.x.source_dim >= 1)
    fail(Err::InvalidInstance, "self-join of a linear space is excluded");
  return inst;
}

namespace {

// Geometric smoothness surrogate: the (Euler-completed) embedded tangent
// space has the expected dimension. The raw Jacobian rank can drop at
// every parameter in small characteristic without the curve being
// singular, so the frame's `singular` flag alone is not used to reject.
bool frame_smooth(const TangentFrame& f, const ParamVariety& v) {
  return f.tangent.dim() == v.source_dim;
}

TangentFrame smooth_frame(const ParamVariety& v, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SampledPoint s = sample_point(v, rng);
    TangentFrame f = tangent_space(v, s.parameter);
    if (frame_smooth(f, v)) return f;
  }
  fail(Err::SingularParameter, "no smooth parameter found on " + v.label);
}

Vec segment_point(const Vec& x, const Vec& y, const Fq& a, const Fq& b) {
  Vec z;
  for (size_t i = 0; i < x.size(); ++i) z.push_back(a * x[i] + b * y[i]);
  return z;
}

// Sample z = a x + b y on a join line, distinct from both endpoints.
ProjPoint general_z(const JoinInstance& inst, const ProjPoint& x, const ProjPoint& y, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Fq a = random_nonzero(inst.spec, rng);
    Fq b = random_nonzero(inst.spec, rng);
    ProjPoint z(segment_point(x.coords(), y.coords(), a, b));
    if (z != x && z != y) return z;
  }
  fail(Err::GeneralPositionUncertain, "could not separate z from the segment endpoints");
}

// Uncertified segment sample for probes that must run even when the
// certified sampler rejects every line (inseparable curves).
ProjPoint loose_z(const JoinInstance& inst, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    SampledPoint sx = sample_point(inst.x, rng);
    SampledPoint sy = sample_point(inst.y, rng);
    if (sx.point == sy.point) continue;
    return general_z(inst, sx.point, sy.point, rng);
  }
  fail(Err::GeneralPositionUncertain, "could not sample a segment point");
}

BiPoly st_product(const UniPoly& fs, const UniPoly& ft) {
  BiPoly r(fs.spec());
  for (int i = 0; i <= fs.deg(); ++i)
    for (int j = 0; j <= ft.deg(); ++j) {
      Fq c = fs.coeff(i) * ft.coeff(j);
      if (!c.is_zero()) r.add_term(i, j, c);
    }
  return r;
}

struct Spurious {
  long p = 0, s = 0, t = 0;
};

// Pairs (s, t) with x(s) = y(t) projectively (the X cap Y artifacts that
// satisfy every collinearity/slice minor regardless of z).
Spurious intersection_spurious(const ParamVariety& xr, const ParamVariety& yr, Rng& rng) {
  std::vector<UniPoly> xs = affine_curve_components(xr);
  std::vector<UniPoly> ys = affine_curve_components(yr);
  BivarSystem isys;
  isys.prov = BivarProvenance::Other;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j) {
      BiPoly g = st_product(xs[i], ys[j]) - st_product(xs[j], ys[i]);
      if (!g.is_zero()) isys.gens.push_back(std::move(g));
    }
  if (isys.gens.size() < 2)
    fail(Err::NotZeroDimensional, "X and Y coincide as parametrized curves");
  SolutionCount sc = count_solutions(isys, rng);  // inconsistent -> all zero
  return Spurious{sc.P, sc.S, sc.T};
}

}  // namespace

JoinLineSample sample_join_line(const JoinInstance& inst, Rng& rng) {
  int coincident = 0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    SampledPoint sx = sample_point(inst.x, rng);
    SampledPoint sy = sample_point(inst.y, rng);
    if (sx.point == sy.point) {
      if (++coincident > 32) fail(Err::CoincidentSample, "samples keep coinciding");
      continue;
    }
    TangentFrame fx = tangent_space(inst.x, sx.parameter);
    TangentFrame fy = tangent_space(inst.y, sy.parameter);
    if (!frame_smooth(fx, inst.x) || !frame_smooth(fy, inst.y)) continue;
    ProjLine line(sx.point, sy.point);
    JoinLineSample out{sx.parameter, sy.parameter, sx.point, sy.point, line, {}, {}, false};
    bool ok = true;
    if (inst.x.source_dim <= 1) {
      try {
        out.profile_x = line_intersection_profile(inst.x, line);
      } catch (const Error& e) {
        if (e.code() == Err::LineInsideVariety) ok = false;  // bad set (iv)
        else throw;
      }
      ok = ok && out.profile_x.transversal && out.profile_x.count >= 1;
    }
    if (ok && inst.y.source_dim <= 1) {
      try {
        out.profile_y = line_intersection_profile(inst.y, line);
      } catch (const Error& e) {
        if (e.code() == Err::LineInsideVariety) ok = false;
        else throw;
      }
      ok = ok && out.profile_y.transversal && out.profile_y.count >= 1;
    }
    if (!ok) continue;
    out.certified = true;
    return out;
  }
  fail(Err::GeneralPositionUncertain, "no certified join line within the retry budget");
}

std::pair<int, int> joined_profile(const JoinInstance& inst, Rng& rng) {
  if (inst.x.source_dim > 1 || inst.y.source_dim > 1)
    fail(Err::ArityMismatch, "exact profile needs source dimension <= 1");
  std::pair<int, int> value{0, 0};
  for (int trial = 0; trial < inst.trials; ++trial) {
    Rng trng = rng.fork(static_cast<uint64_t>(trial) + 101);
    JoinLineSample s = sample_join_line(inst, trng);
    std::pair<int, int> m{s.profile_x.count, s.profile_y.count};
    if (trial == 0) value = m;
    else if (m != value)
      fail(Err::TrialDisagreement, "joined profile varied across certified lines");
  }
  return value;
}

CollinearitySetup collinearity_system(const JoinInstance& inst, const ProjPoint& z, Rng& rng) {
  if (inst.x.source_dim != 1 || inst.y.source_dim != 1)
    fail(Err::ArityMismatch, "collinearity system needs two curves");
  const int n = inst.ambient;
  const FieldSpec& spec = inst.spec;
  bool self = inst.self_join();
  for (int attempt = 0; attempt < 16; ++attempt) {
    Mat a = random_invertible(spec, 2, rng);
    Mat b = self ? a : random_invertible(spec, 2, rng);
    ParamVariety xr = reparametrize(inst.x, a);
    ParamVariety yr = reparametrize(inst.y, b);
    Mat m = random_invertible(spec, n + 1, rng);
    xr = ambient_change(xr, m);
    yr = ambient_change(yr, m);
    Vec zc = mat_vec(m, z.coords());
    std::vector<UniPoly> xs = affine_curve_components(xr);
    std::vector<UniPoly> ys = affine_curve_components(yr);
    CollinearitySetup setup;
    setup.sys.prov = BivarProvenance::Collinearity;
    bool degenerate = false;
    // all 3x3 minors of the stacked rows x(s), y(t), z: the leading-pair
    // minors alone admit extra algebraic solutions where the (0,1) block
    // degenerates, so the full rank-2 ideal is used
    std::vector<std::array<int, 3>> triples;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) triples.push_back({i, j, k});
    for (const auto& [ti, tj, tk] : triples) {
      size_t si = static_cast<size_t>(ti), sj = static_cast<size_t>(tj), sk = static_cast<size_t>(tk);
      UniPoly ci = ys[sj].scaled(zc[sk]) - ys[sk].scaled(zc[sj]);
      UniPoly cj = ys[si].scaled(zc[sk]) - ys[sk].scaled(zc[si]);
      UniPoly ck = ys[si].scaled(zc[sj]) - ys[sj].scaled(zc[si]);
      BiPoly g = st_product(xs[si], ci) - st_product(xs[sj], cj) + st_product(xs[sk], ck);
      if (g.is_zero()) continue;  // a minor may vanish identically for spanning reasons
      if (self) {
        try {
          g = divide_by_s_minus_t(g);  // valid: g is (s,t)-antisymmetric
        } catch (const Error&) {
          degenerate = true;
          break;
        }
        if (g.is_zero()) continue;
      }
      setup.sys.gens.push_back(std::move(g));
    }
    if (degenerate || setup.sys.gens.size() < 2) continue;
    setup.diagonal_removed = self;
    if (!self) {
      Spurious sp = intersection_spurious(xr, yr, rng);
      setup.spurious_p = sp.p;
      setup.spurious_s = sp.s;
      setup.spurious_t = sp.t;
    }
    return setup;
  }
  fail(Err::ChartFailure, "no usable chart after repeated coordinate changes");
}

FiberCensus FiberCensus::combine(int m_x, int m_y, long p, long s, long t) {
  if (m_x < 1 || m_y < 1 || p < 1 || s < 1 || t < 1)
    fail(Err::NonIntegralRatio, "census counts must be positive");
  if (s % m_x != 0) fail(Err::NonIntegralRatio, "S not divisible by m_X");
  long b = s / m_x;
  if (t != static_cast<long>(m_y) * b)
    fail(Err::NonIntegralRatio, "T disagrees with m_Y * b");
  if (p != static_cast<long>(m_x) * m_y * b)
    fail(Err::NonIntegralRatio, "P disagrees with m_X * m_Y * b");
  FiberCensus c;
  c.pair_count = p;
  c.distinct_x = s;
  c.distinct_y = t;
  c.m_x = m_x;
  c.m_y = m_y;
  c.b = b;
  c.deg_beta = b;
  c.deg_alpha_x = s;
  c.deg_alpha_y = t;
  c.deg_pi = p;
  return c;
}

FiberCensus fiber_census(const JoinInstance& inst, Rng& rng) {
  const int kx = inst.x.source_dim, ky = inst.y.source_dim;
  if (kx > 1 || ky > 1) fail(Err::ArityMismatch, "exact census supports source dimension <= 1");

  Rng dims_rng = rng.fork(11);
  EjDimension dims = ej_dimension(inst, dims_rng);
  if (dims.dim < kx + ky + 1)
    fail(Err::JoinDefective, "dim EJ = " + std::to_string(dims.dim) + " below the expected " +
                                 std::to_string(kx + ky + 1));

  // point cases: the join line through z is forced
  if (kx == 0 && ky == 0) return FiberCensus::combine(1, 1, 1, 1, 1);
  if (kx == 0 || ky == 0) {
    // one point member: unique join line through z and that point
    Rng prof_rng = rng.fork(13);
    std::pair<int, int> m = joined_profile(inst, prof_rng);
    long mx = m.first, my = m.second;
    FiberCensus value;
    for (int trial = 0; trial < inst.trials; ++trial) {
      Rng trng = rng.fork(static_cast<uint64_t>(trial) + 201);
      JoinLineSample s = sample_join_line(inst, trng);
      long sx = s.profile_x.count, sy = s.profile_y.count;
      FiberCensus c = FiberCensus::combine(static_cast<int>(mx), static_cast<int>(my), sx * sy, sx, sy);
      if (trial == 0) value = c;
      else if (c.pair_count != value.pair_count || c.distinct_x != value.distinct_x ||
               c.distinct_y != value.distinct_y)
        fail(Err::TrialDisagreement, "census varied across trials");
    }
    return value;
  }

  Rng prof_rng = rng.fork(13);
  std::pair<int, int> m = joined_profile(inst, prof_rng);
  bool self = inst.self_join();
  FiberCensus value;
  for (int trial = 0; trial < inst.trials; ++trial) {
    Rng trng = rng.fork(static_cast<uint64_t>(trial) + 301);
    Error last(Err::NonIntegralRatio, "census trial never ran");
    bool done = false;
    for (int retry = 0; retry < 4 && !done; ++retry) {
      try {
        Rng rrng = trng.fork(static_cast<uint64_t>(retry) + 17);
        JoinLineSample s = sample_join_line(inst, rrng);
        ProjPoint z = general_z(inst, s.x, s.y, rrng);
        CollinearitySetup setup = collinearity_system(inst, z, rrng);
        SolutionCount sc = count_solutions(setup.sys, rrng);
        long sv = sc.S - setup.spurious_s;
        long tv = sc.T - setup.spurious_t;
        long pv = sc.P - setup.spurious_p;
        if (self) pv += sv;  // restore the diagonal pairs removed with (s - t)
        FiberCensus c = FiberCensus::combine(m.first, m.second, pv, sv, tv);
        if (value.pair_count == 0) value = c;
        if (c.pair_count != value.pair_count || c.distinct_x != value.distinct_x ||
            c.distinct_y != value.distinct_y)
          fail(Err::TrialDisagreement, "census varied across trials");
        done = true;
      } catch (const Error& e) {
        if (e.code() == Err::NonIntegralRatio || e.code() == Err::ShearDisagreement ||
            e.code() == Err::ChartFailure) {
          last = e;
          continue;  // failed general-position assumption: fresh z
        }
        throw;
      }
    }
    if (!done) throw last;
  }
  return value;
}

TerraciniSpan terracini_span(const JoinInstance& inst, const Vec& x_param, const Vec& y_param) {
  TangentFrame fx = tangent_space(inst.x, x_param);
  TangentFrame fy = tangent_space(inst.y, y_param);
  if (!frame_smooth(fx, inst.x) || !frame_smooth(fy, inst.y))
    fail(Err::SingularParameter, "terracini span needs smooth parameters");
  LinearSubspace sp = span_of({fx.tangent, fy.tangent});
  return TerraciniSpan{sp, sp.dim()};
}

int t_invariant(const JoinInstance& inst, Rng& rng) {
  int value = -2;
  for (int trial = 0; trial < std::max(inst.trials, 3); ++trial) {
    Rng trng = rng.fork(static_cast<uint64_t>(trial) + 401);
    TangentFrame fx = smooth_frame(inst.x, trng);
    TangentFrame fy = smooth_frame(inst.y, trng);
    int guard = 0;
    while (fx.base == fy.base && guard++ < 32) fy = smooth_frame(inst.y, trng);
    int d = intersect(fx.tangent, fy.tangent).dim();
    if (value == -2) value = d;
    else if (d != value)
      fail(Err::TrialDisagreement, "tangent intersection dimension varied");
  }
  if (value > std::min(inst.x.source_dim, inst.y.source_dim))
    fail(Err::CheckFailure, "t exceeds min(dim X, dim Y)");
  return value;
}

EjDimension ej_dimension(const JoinInstance& inst, Rng& rng) {
  const int kx = inst.x.source_dim, ky = inst.y.source_dim;
  const int expected = kx + ky + 1;
  EjDimension out;

  // Terracini span dimension at generic smooth pairs
  {
    int value = -2;
    for (int trial = 0; trial < 3; ++trial) {
      Rng trng = rng.fork(static_cast<uint64_t>(trial) + 501);
      TangentFrame fx = smooth_frame(inst.x, trng);
      TangentFrame fy = smooth_frame(inst.y, trng);
      int guard = 0;
      while (inst.self_join() && fx.parameter == fy.parameter && guard++ < 32)
        fy = smooth_frame(inst.y, trng);
      int d = span_of({fx.tangent, fy.tangent}).dim();
      if (value == -2) value = d;
      else if (d != value)
        fail(Err::TrialDisagreement, "terracini span dimension varied");
    }
    out.terracini_dim = value;
  }

  if (inst.spec.is_rational()) {
    out.dim = out.terracini_dim;  // equality at generic points in char 0
    out.method = DimMethod::Terracini;
    return out;
  }

  out.method = DimMethod::Oracle;
  if (kx == 1 && ky == 1) {
    // exact probe: a finite collinearity fiber at any z on a join line
    // certifies the expected dimension (fiber dimension semicontinuity)
    for (int attempt = 0; attempt < 5; ++attempt) {
      Rng arng = rng.fork(static_cast<uint64_t>(attempt) + 601);
      try {
        ProjPoint z = loose_z(inst, arng);
        CollinearitySetup setup = collinearity_system(inst, z, arng);
        if (is_zero_dimensional(setup.sys)) {
          out.dim = expected;
          return out;
        }
      } catch (const Error& e) {
        if (e.code() == Err::NotZeroDimensional || e.code() == Err::ChartFailure ||
            e.code() == Err::DegreeCapExceeded)
          continue;
        throw;
      }
    }
  }

  // defective (or non-curve) branch: covered-set estimate at the single prime
  if (inst.spec.p > kOraclePrimeCap)
    fail(Err::OracleInconclusive, "prime too large for enumeration and no exact certificate");
  PointTable xt = enumerate_points(inst.x, inst.spec.p);
  PointTable yt = inst.self_join() ? xt : enumerate_points(inst.y, inst.spec.p);
  SinglePrimeDim est = single_prime_dimension(xt, yt);
  out.dim = std::min({est.dim, expected - (kx == 1 && ky == 1 ? 1 : 0), inst.ambient});
  out.heuristic = true;
  return out;
}

bool constrained_pair_test(const JoinInstance& inst, Rng& rng) {
  Rng drng = rng.fork(701), trng = rng.fork(702);
  EjDimension dims = ej_dimension(inst, drng);
  int t = t_invariant(inst, trng);
  return dims.dim > inst.x.source_dim + inst.y.source_dim - t;
}

StrangeResult strange_pair_test(const JoinInstance& inst, Rng& rng) {
  auto shrink = [&](LinearSubspace l, const ParamVariety& v, int count, Rng& srng) {
    for (int i = 0; i < count && l.dim() >= 0; ++i) {
      TangentFrame f = smooth_frame(v, srng);
      l = intersect(l, f.tangent);
    }
    return l;
  };
  Rng srng = rng.fork(801);
  LinearSubspace l = smooth_frame(inst.x, srng).tangent;
  l = shrink(l, inst.x, 24, srng);
  l = shrink(l, inst.y, 25, srng);
  if (l.dim() < 0) return {};
  int first_dim = l.dim();
  l = shrink(l, inst.x, 25, srng);
  l = shrink(l, inst.y, 25, srng);
  if (l.dim() < 0 || l.dim() != first_dim) return {};
  // stabilized: verify on fresh points
  Rng vrng = rng.fork(802);
  for (int i = 0; i < 50; ++i) {
    TangentFrame fx = smooth_frame(inst.x, vrng);
    TangentFrame fy = smooth_frame(inst.y, vrng);
    if (!fx.tangent.contains_subspace(l) || !fy.tangent.contains_subspace(l)) return {};
  }
  StrangeResult out;
  out.is_strange = true;
  out.locus = l;
  return out;
}

ProjPoint ruled_join_point(const JoinInstance& inst, const Vec& x_param, const Vec& y_param,
                           const Fq& a, const Fq& b) {
  if (a.is_zero() && b.is_zero()) fail(Err::ZeroWeights, "(a, b) = (0, 0)");
  Vec coords;
  for (const auto& h : inst.x.components) coords.push_back(a * h.eval(x_param));
  for (const auto& h : inst.y.components) coords.push_back(b * h.eval(y_param));
  return ProjPoint(std::move(coords));
}

long degree_ej(const JoinInstance& inst, Rng& rng) {
  if (inst.x.source_dim != 1 || inst.y.source_dim != 1)
    fail(Err::ArityMismatch, "degree computation needs two curves");
  const int n = inst.ambient;
  Rng dims_rng = rng.fork(21);
  EjDimension dims = ej_dimension(inst, dims_rng);
  if (dims.dim < 3) fail(Err::JoinDefective, "join is defective; no 3-fold to slice");
  if (dims.dim >= n) return 1;  // EJ = P^n

  Rng census_rng = rng.fork(22);
  FiberCensus census = fiber_census(inst, census_rng);
  bool self = inst.self_join();
  long p_od = census.pair_count - (self ? census.distinct_x : 0);
  if (p_od < 1) fail(Err::NonIntegralRatio, "no off-diagonal pairs per point");

  const FieldSpec& spec = inst.spec;
  long value = 0;
  for (int trial = 0; trial < 2; ++trial) {
    Rng trng = rng.fork(static_cast<uint64_t>(trial) + 901);
    Error last(Err::NonIntegralRatio, "slice trial never ran");
    bool done = false;
    for (int retry = 0; retry < 4 && !done; ++retry) {
      try {
        Rng rrng = trng.fork(static_cast<uint64_t>(retry) + 31);
        Mat a = random_invertible(spec, 2, rrng);
        Mat b = self ? a : random_invertible(spec, 2, rrng);
        ParamVariety xr = reparametrize(inst.x, a);
        ParamVariety yr = reparametrize(inst.y, b);
        Spurious sp;
        if (!self) sp = intersection_spurious(xr, yr, rrng);
        LinearSubspace w = random_subspace(spec, n, 3, rrng);
        Mat cutting = null_space(w.basis());  // 3 linear forms vanishing on w
        std::vector<UniPoly> ls, lt;
        for (const auto& row : cutting) {
          ls.push_back(binform_from_hom(pull_back_linear(xr, row)).f);
          lt.push_back(binform_from_hom(pull_back_linear(yr, row)).f);
        }
        BivarSystem sys;
        sys.prov = BivarProvenance::Slice;
        for (size_t i = 0; i < ls.size(); ++i)
          for (size_t j = i + 1; j < ls.size(); ++j) {
            BiPoly g = st_product(ls[i], lt[j]) - st_product(ls[j], lt[i]);
            if (self && !g.is_zero()) g = divide_by_s_minus_t(g);
            if (!g.is_zero()) sys.gens.push_back(std::move(g));
          }
        if (sys.gens.size() < 2) fail(Err::ChartFailure, "degenerate slice system");
        SolutionCount sc = count_solutions(sys, rrng);
        long cnt = sc.P - sp.p;
        if (cnt <= 0 || cnt % p_od != 0)
          fail(Err::NonIntegralRatio, "slice count " + std::to_string(cnt) +
                                          " not a multiple of the per-point pair count");
        long deg = cnt / p_od;
        if (value == 0) value = deg;
        else if (deg != value)
          fail(Err::TrialDisagreement, "slice degree varied across trials");
        done = true;
      } catch (const Error& e) {
        if (e.code() == Err::NonIntegralRatio || e.code() == Err::ShearDisagreement ||
            e.code() == Err::ChartFailure) {
          last = e;
          continue;
        }
        throw;
      }
    }
    if (!done) throw last;
  }
  return value;
}

namespace {

Vec chart_value(const ParamVariety& v, const Fq& u) {
  Vec p{Fq::one(v.spec), u};
  Vec x;
  for (const auto& h : v.components) x.push_back(h.eval(p));
  return x;
}

Vec chart_derivative(const ParamVariety& v, const Fq& u) {
  Vec p{Fq::one(v.spec), u};
  Vec x;
  for (const auto& h : v.components) x.push_back(h.derivative(1).eval(p));
  return x;
}

Vec half(const Vec& v, bool second) {
  size_t h = v.size() / 2;
  return second ? Vec(v.begin() + static_cast<long>(h), v.end())
                : Vec(v.begin(), v.begin() + static_cast<long>(h));
}

Vec concat(const Vec& a, const Vec& b) {
  Vec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Vec zeros_like(const Vec& v) { return Vec(v.size(), Fq::zero(v[0].spec())); }

Vec scale_vec(const Vec& v, const Fq& c) {
  Vec r;
  for (const auto& x : v) r.push_back(x * c);
  return r;
}

Vec sub_vec(const Vec& a, const Vec& b) {
  Vec r;
  for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
  return r;
}

LinearSubspace span_rows(Mat rows, int ambient) { return LinearSubspace(std::move(rows), ambient); }

// Rows of the combined matrix whose first (or second) halves satisfy
// "lies in span(anchor)", projected to the other half.
LinearSubspace constrained_slice(const Mat& rows, const Vec& anchor, bool constrain_second,
                                 int ambient) {
  Mat ann = null_space(Mat{anchor});
  Mat cond;  // (#ann) x (#rows)
  for (const auto& d : ann) {
    Vec crow;
    for (const auto& r : rows) {
      Vec part = half(r, constrain_second);
      Fq dot = Fq::zero(anchor[0].spec());
      for (size_t i = 0; i < d.size(); ++i) dot = dot + d[i] * part[i];
      crow.push_back(dot);
    }
    cond.push_back(std::move(crow));
  }
  Mat kernel = null_space(cond);
  Mat out;
  for (const auto& c : kernel) {
    Vec v(rows[0].size(), Fq::zero(anchor[0].spec()));
    for (size_t k = 0; k < rows.size(); ++k)
      for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] + c[k] * rows[k][i];
    out.push_back(half(v, !constrain_second));
  }
  return span_rows(std::move(out), ambient);
}

}  // namespace

WTangentReport w_tangent_checks(const JoinInstance& inst, Rng& rng, bool swap_roles) {
  if (!inst.spec.is_rational()) fail(Err::InvalidInstance, "tangent checks run in characteristic 0");
  const ParamVariety& vx = swap_roles ? inst.y : inst.x;
  const ParamVariety& vy = swap_roles ? inst.x : inst.y;
  if (vx.source_dim != 1 || vy.source_dim != 1)
    fail(Err::ArityMismatch, "tangent checks need curves");
  const int n = inst.ambient;
  const FieldSpec& spec = inst.spec;
  WTangentReport rep{true, true, true, true, true, true, 0};
  const int points = 25;
  for (int attempt = 0; attempt < 8 * points && rep.points_checked < points; ++attempt) {
    Fq u = random_element(spec, rng, {}, 50);
    Fq t = random_element(spec, rng, {}, 50);
    Fq lam = random_element(spec, rng, {Fq::zero(spec), Fq::one(spec)}, 50);
    Vec x = chart_value(vx, u), y = chart_value(vy, t);
    ProjPoint px(x), py(y);
    if (px == py) continue;
    TangentFrame fx = tangent_space(vx, Vec{Fq::one(spec), u});
    TangentFrame fy = tangent_space(vy, Vec{Fq::one(spec), t});
    if (!frame_smooth(fx, vx) || !frame_smooth(fy, vy)) continue;
    if (fy.tangent.contains(px)) continue;  // needs x outside T_{Y,y}
    Vec xd = chart_derivative(vx, u), yd = chart_derivative(vy, t);
    Vec z = segment_point(x, y, lam, Fq::one(spec) - lam);

    // Jacobian of (s, t, lambda) -> (x(s), lambda x(s) + (1-lambda) y(t)),
    // plus the two cone scalings
    Mat rows{concat(x, zeros_like(x)),
             concat(zeros_like(x), z),
             concat(xd, scale_vec(xd, lam)),
             concat(zeros_like(x), scale_vec(yd, Fq::one(spec) - lam)),
             concat(zeros_like(x), sub_vec(x, y))};

    if (rank_of(rows) != 5) rep.rank_matches = false;

    Mat firsts, seconds;
    for (const auto& r : rows) {
      firsts.push_back(half(r, false));
      seconds.push_back(half(r, true));
    }
    LinearSubspace pr1 = span_rows(firsts, n);
    LinearSubspace pr2 = span_rows(seconds, n);
    if (!(pr1 == fx.tangent)) rep.pr1_is_tangent_x = false;

    LinearSubspace joint = span_of({fx.tangent, fy.tangent});
    if (!(pr1 == joint)) rep.item3_as_pr1 = false;
    if (!(pr2 == joint)) rep.item3_as_pr2 = false;

    // fiber over x: second halves of vectors whose first half is radial
    LinearSubspace v2 = constrained_slice(rows, x, false, n);
    Mat expect2 = fy.tangent.basis();
    expect2.push_back(x);
    if (!(v2 == span_rows(std::move(expect2), n))) rep.x_slice_matches = false;

    // fiber over z: first halves of vectors whose second half is radial
    LinearSubspace v1 = constrained_slice(rows, z, true, n);
    Mat expect1 = intersect(fx.tangent, fy.tangent).basis();
    expect1.push_back(x);
    if (!(v1 == span_rows(std::move(expect1), n))) rep.z_slice_matches = false;

    ++rep.points_checked;
  }
  if (rep.points_checked == 0)
    fail(Err::GeneralPositionUncertain, "no usable configuration for the tangent checks");
  if (!rep.pr1_is_tangent_x) fail(Err::CheckFailure, "first-factor projection is not T_X");
  if (!rep.x_slice_matches) fail(Err::CheckFailure, "fiber slice over x violated");
  if (!rep.z_slice_matches) fail(Err::CheckFailure, "fiber slice over z violated");
  if (!rep.rank_matches) fail(Err::CheckFailure, "local rank differs from dim W + 2");
  return rep;
}

bool union_nondegenerate(const JoinInstance& inst) {
  // span of the image = row space of the coefficient matrix (one row per
  // source monomial, entries the component coefficients)
  Mat rows;
  for (const ParamVariety* v : {&inst.x, &inst.y}) {
    std::set<HomPoly::Exponents> mons;
    for (const auto& h : v->components)
      for (const auto& [e, c] : h.terms()) mons.insert(e);
    for (const auto& e : mons) {
      Vec row;
      for (const auto& h : v->components) {
        auto it = h.terms().find(e);
        row.push_back(it == h.terms().end() ? Fq::zero(v->spec) : it->second);
      }
      rows.push_back(std::move(row));
    }
  }
  return rank_of(std::move(rows)) == inst.ambient + 1;
}

bool ballico_plane_test(const JoinInstance& inst, Rng& rng) {
  if (inst.x.source_dim != 1) fail(Err::ArityMismatch, "the test needs dim X = 1");
  if (inst.y.source_dim > 2) fail(Err::ArityMismatch, "dim Y must be at most 2");
  if (inst.y.source_dim > inst.ambient - 3)
    fail(Err::ArityMismatch, "needs dim Y <= n - 3");
  if (inst.self_join())
    fail(Err::ArityMismatch, "the plane criterion needs X and Y distinct");
  if (!union_nondegenerate(inst)) fail(Err::DegenerateForms, "X cup Y is degenerate");
  int value = -1;
  for (int trial = 0; trial < inst.trials; ++trial) {
    Rng trng = rng.fork(static_cast<uint64_t>(trial) + 1201);
    int count = -1;
    for (int retry = 0; retry < 8 && count < 0; ++retry) {
      ProjPoint pa = sample_point(inst.x, trng).point;
      ProjPoint pb = sample_point(inst.x, trng).point;
      ProjPoint pc = sample_point(inst.y, trng).point;
      LinearSubspace plane = span_of_points({pa, pb, pc});
      if (plane.dim() != 2) continue;
      count = plane_section_count(inst.y, plane, trng);
    }
    if (count < 0) fail(Err::GeneralPositionUncertain, "kept sampling collinear triples");
    int verdict = count == 1 ? 1 : 0;
    if (value == -1) value = verdict;
    else if (verdict != value)
      fail(Err::TrialDisagreement, "plane test varied across trials");
  }
  return value == 1;
}

bool terracini_inclusion_check(const JoinInstance& inst, Rng& rng) {
  if (inst.x.source_dim != 1 || inst.y.source_dim != 1)
    fail(Err::ArityMismatch, "inclusion check needs curves");
  const FieldSpec& spec = inst.spec;
  for (int attempt = 0; attempt < 32; ++attempt) {
    Fq u = random_element(spec, rng, {}, 50);
    Fq t = random_element(spec, rng, {}, 50);
    Fq lam = random_element(spec, rng, {Fq::zero(spec), Fq::one(spec)}, 50);
    Vec x = chart_value(inst.x, u), y = chart_value(inst.y, t);
    if (ProjPoint(x) == ProjPoint(y)) continue;
    TangentFrame fx = tangent_space(inst.x, Vec{Fq::one(spec), u});
    TangentFrame fy = tangent_space(inst.y, Vec{Fq::one(spec), t});
    if (!frame_smooth(fx, inst.x) || !frame_smooth(fy, inst.y)) continue;
    Vec xd = chart_derivative(inst.x, u), yd = chart_derivative(inst.y, t);
    Vec z = segment_point(x, y, lam, Fq::one(spec) - lam);
    // local Jacobian of (s, t, lambda) -> lambda x(s) + (1-lambda) y(t)
    Mat ej_rows{scale_vec(xd, lam), scale_vec(yd, Fq::one(spec) - lam), sub_vec(x, y), z};
    int r = rank_of(ej_rows);
    Mat stacked = ej_rows;
    LinearSubspace joint = span_of({fx.tangent, fy.tangent});
    for (const auto& row : joint.basis()) stacked.push_back(row);
    return rank_of(stacked) == r;
  }
  fail(Err::GeneralPositionUncertain, "no usable configuration for the inclusion check");
}

namespace {

template <typename F>
SectionOutcome run_section(const Rng& root, uint64_t salt, F&& body) {
  SectionOutcome out;
  Rng rng = root.fork(salt);
  out.seed = rng.seed();
  auto start = std::chrono::steady_clock::now();
  try {
    body(rng);
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.code_name();
    out.detail = e.what();
  } catch (const std::exception& e) {
    out.error = "InternalError";
    out.detail = e.what();
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

FiberCensus surrogate_census(const JoinInstance& inst, Rng& rng) {
  const uint64_t primes[2] = {2147483647ULL, 2147483629ULL};
  FiberCensus first;
  for (int i = 0; i < 2; ++i) {
    JoinInstance red = JoinInstance::create(reduce_mod_p(inst.x, primes[i]),
                                            reduce_mod_p(inst.y, primes[i]), inst.seed, inst.trials);
    Rng crng = rng.fork(static_cast<uint64_t>(i) + 1);
    FiberCensus c = fiber_census(red, crng);
    if (i == 0) first = c;
    else if (c.pair_count != first.pair_count || c.distinct_x != first.distinct_x ||
             c.distinct_y != first.distinct_y)
      fail(Err::TrialDisagreement, "surrogate primes disagree");
  }
  return first;
}

}  // namespace

JoinReport analyze(const JoinInstance& inst, const AnalyzeOptions& opts) {
  JoinReport rep;
  rep.seed = inst.seed;
  rep.trials = inst.trials;
  rep.expected_dim = inst.x.source_dim + inst.y.source_dim + 1;
  Rng root(inst.seed);
  bool curves = inst.x.source_dim == 1 && inst.y.source_dim == 1;
  bool exact_profile = inst.x.source_dim <= 1 && inst.y.source_dim <= 1;

  rep.validation = run_section(root, 1, [&](Rng& rng) {
    rep.validation_x = validate_variety(inst.x, rng);
    rep.validation_y = validate_variety(inst.y, rng);
  });

  rep.dims_outcome = run_section(root, 2, [&](Rng& rng) { rep.dims = ej_dimension(inst, rng); });

  if (exact_profile)
    rep.profile_outcome = run_section(root, 3, [&](Rng& rng) { rep.profile = joined_profile(inst, rng); });
  else {
    rep.profile_outcome.ok = true;
    rep.profile_outcome.detail = "skipped: exact profile needs source dimension <= 1";
  }

  rep.t_outcome = run_section(root, 4, [&](Rng& rng) { rep.t_value = t_invariant(inst, rng); });
  rep.strange_outcome =
      run_section(root, 5, [&](Rng& rng) { rep.strange = strange_pair_test(inst, rng); });
  rep.constrained_outcome =
      run_section(root, 6, [&](Rng& rng) { rep.constrained = constrained_pair_test(inst, rng); });

  if (exact_profile)
    rep.census_outcome = run_section(root, 7, [&](Rng& rng) {
      rep.census = opts.fast_surrogate && inst.spec.is_rational() ? surrogate_census(inst, rng)
                                                                  : fiber_census(inst, rng);
    });
  else {
    rep.census_outcome.detail = "skipped: exact census needs source dimension <= 1";
    rep.census_outcome.ok = true;
  }

  if (curves)
    rep.degree_outcome = run_section(root, 8, [&](Rng& rng) { rep.deg_ej = degree_ej(inst, rng); });
  else {
    rep.degree_outcome.ok = true;
    rep.degree_outcome.detail = "skipped: degree computation needs curves";
  }

  rep.ballico_applicable = inst.x.source_dim == 1 && inst.y.source_dim <= 2 &&
                           inst.y.source_dim <= inst.ambient - 3 && !inst.self_join() &&
                           union_nondegenerate(inst);
  if (rep.ballico_applicable)
    rep.ballico_outcome =
        run_section(root, 9, [&](Rng& rng) { rep.ballico = ballico_plane_test(inst, rng); });
  else {
    rep.ballico_outcome.ok = true;
    rep.ballico_outcome.detail = "skipped: preconditions not met";
  }

  if (curves)
    rep.terracini_outcome = run_section(root, 10, [&](Rng& rng) {
      rep.terracini_checks_total = opts.terracini_samples;
      for (int i = 0; i < opts.terracini_samples; ++i) {
        Rng srng = rng.fork(static_cast<uint64_t>(i) + 1);
        if (terracini_inclusion_check(inst, srng)) ++rep.terracini_checks_passed;
      }
      if (rep.terracini_checks_passed != rep.terracini_checks_total)
        fail(Err::CheckFailure, "terracini inclusion failed at a sampled configuration");
    });
  else {
    rep.terracini_outcome.ok = true;
    rep.terracini_outcome.detail = "skipped: inclusion spot-checks need curves";
  }

  if (curves && inst.spec.is_rational())
    rep.wchecks_outcome = run_section(root, 11, [&](Rng& rng) {
      Rng rx = rng.fork(1), ry = rng.fork(2);
      rep.wchecks_x = w_tangent_checks(inst, rx, false);
      rep.wchecks_y = w_tangent_checks(inst, ry, true);
    });
  else {
    rep.wchecks_outcome.ok = true;
    rep.wchecks_outcome.detail = "skipped: tangent checks need characteristic 0 curves";
  }

  return rep;
}

}  // namespace joindeg
