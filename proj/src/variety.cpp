#include "joindeg/variety.hpp"

#include <algorithm>

#include "joindeg/bivar.hpp"

namespace joindeg {

bool ParamVariety::same_components(const ParamVariety& o) const {
  if (source_dim != o.source_dim || ambient != o.ambient || components.size() != o.components.size())
    return false;
  for (size_t i = 0; i < components.size(); ++i)
    if (!(components[i] == o.components[i])) return false;
  return true;
}

ParamVariety make_variety(std::string label, int source_dim, int ambient,
                          const std::vector<std::string>& component_texts, const FieldSpec& spec) {
  if (source_dim < 0 || source_dim > 2) fail(Err::InvalidInstance, "source_dim must be 0, 1 or 2");
  if (static_cast<int>(component_texts.size()) != ambient + 1)
    fail(Err::InvalidInstance, "need exactly n+1 components");
  ParamVariety v;
  v.label = std::move(label);
  v.source_dim = source_dim;
  v.ambient = ambient;
  v.spec = spec;
  int common_deg = -1;
  for (const auto& text : component_texts) {
    HomPoly h = parse_hompoly(text, spec, source_dim + 1);
    if (!h.is_zero()) {
      if (common_deg < 0) common_deg = h.deg();
      if (h.deg() != common_deg) fail(Err::DegenerateForms, "components of unequal degree");
    }
    v.components.push_back(std::move(h));
  }
  if (common_deg < 0) fail(Err::DegenerateForms, "all components are zero");
  for (auto& h : v.components)
    if (h.is_zero()) h = HomPoly::zero(spec, source_dim + 1, common_deg);
  return v;
}

namespace {

Vec random_parameter(const ParamVariety& v, Rng& rng) {
  Vec p;
  p.push_back(Fq::one(v.spec));
  for (int i = 0; i < v.source_dim; ++i) p.push_back(random_element(v.spec, rng, {}, 50));
  return p;
}

// gcd of all components as binary forms (curves).
BinForm curve_component_gcd(const std::vector<HomPoly>& comps) {
  BinForm g{UniPoly(comps[0].spec()), 0};
  bool have = false;
  for (const auto& h : comps) {
    BinForm b = binform_from_hom(h);
    if (b.is_zero()) continue;
    g = have ? binform_gcd(g, b) : b;
    have = true;
  }
  if (!have) fail(Err::DegenerateForms, "all components vanish");
  return g;
}

}  // namespace

std::vector<UniPoly> affine_curve_components(const ParamVariety& v) {
  if (v.source_dim != 1) fail(Err::ArityMismatch, "affine chart needs a curve");
  std::vector<UniPoly> out;
  for (const auto& h : v.components) out.push_back(binform_from_hom(h).f);
  return out;
}

BiPoly ternary_to_affine(const HomPoly& h) {
  if (h.nvars() != 3) fail(Err::ArityMismatch, "ternary form expected");
  BiPoly out(h.spec());
  for (const auto& [e, c] : h.terms()) out.add_term(e[1], e[2], c);
  return out;
}

ValidationReport validate_variety(const ParamVariety& v, Rng& rng) {
  ValidationReport rep;
  const FieldSpec& spec = v.spec;

  // base points
  if (v.source_dim == 0) {
    bool nonzero = false;
    for (const auto& h : v.components)
      if (!h.is_zero()) nonzero = true;
    if (!nonzero) fail(Err::BasePointFound, "zero point");
    rep.basepoint_free = true;
  } else if (v.source_dim == 1) {
    BinForm g = curve_component_gcd(v.components);
    if (g.formal_deg > 0)
      fail(Err::BasePointFound, "components share the factor of degree " + std::to_string(g.formal_deg));
    rep.basepoint_free = true;
  } else {
    // surfaces: probabilistic certificate
    for (int trial = 0; trial < 1000; ++trial) {
      Vec p{Fq::one(spec), random_element(spec, rng, {}, 50), random_element(spec, rng, {}, 50)};
      bool all_zero = true;
      for (const auto& h : v.components)
        if (!h.eval(p).is_zero()) all_zero = false;
      if (all_zero) fail(Err::BasePointFound, "common zero at a sampled parameter");
    }
    // restrict to a few random parameter lines and check the binary gcd
    for (int trial = 0; trial < 5; ++trial) {
      Mat dirs;
      for (int r = 0; r < 2; ++r) {
        Vec row;
        for (int c = 0; c < 3; ++c) row.push_back(random_element(spec, rng, {}, 20));
        dirs.push_back(std::move(row));
      }
      if (rank_of(dirs) != 2) continue;
      std::vector<HomPoly> restricted;
      for (const auto& h : v.components) {
        // (a, b) -> a*dir0 + b*dir1
        HomPoly rh(spec, 2, h.deg());
        for (const auto& [e, c] : h.terms()) {
          HomPoly term(spec, 2, 0);
          term.add_term({0, 0}, c);
          for (int var = 0; var < 3; ++var) {
            HomPoly lin(spec, 2, 1);
            lin.add_term({1, 0}, dirs[0][static_cast<size_t>(var)]);
            lin.add_term({0, 1}, dirs[1][static_cast<size_t>(var)]);
            for (int k = 0; k < e[static_cast<size_t>(var)]; ++k) term = term * lin;
          }
          rh = rh + term;
        }
        restricted.push_back(std::move(rh));
      }
      BinForm g = curve_component_gcd(restricted);
      if (g.formal_deg > 0) fail(Err::BasePointFound, "common factor on a restricted parameter line");
    }
    rep.basepoint_free = true;
  }

  // generic injectivity via the 2x2 minor system at a random base parameter
  if (v.source_dim == 0) {
    rep.generically_injective = true;
    rep.injectivity_count = 1;
  } else {
    Vec p0 = random_parameter(v, rng);
    Vec x0;
    for (const auto& h : v.components) x0.push_back(h.eval(p0));
    if (v.source_dim == 1) {
      BinForm g{UniPoly(spec), 0};
      bool have = false;
      for (size_t i = 0; i < v.components.size(); ++i)
        for (size_t j = i + 1; j < v.components.size(); ++j) {
          HomPoly minor = v.components[i].scaled(x0[j]) - v.components[j].scaled(x0[i]);
          BinForm b = binform_from_hom(minor);
          if (b.is_zero()) continue;
          g = have ? binform_gcd(g, b) : b;
          have = true;
        }
      if (!have) fail(Err::DegenerateForms, "image is a single point");
      rep.injectivity_count = binform_distinct_roots(g);
    } else {
      BivarSystem sys;
      sys.prov = BivarProvenance::Other;
      for (size_t i = 0; i < v.components.size(); ++i)
        for (size_t j = i + 1; j < v.components.size(); ++j) {
          HomPoly minor = v.components[i].scaled(x0[j]) - v.components[j].scaled(x0[i]);
          if (minor.is_zero()) continue;
          sys.gens.push_back(ternary_to_affine(minor));
        }
      if (sys.gens.size() < 2) fail(Err::DegenerateForms, "degenerate minor system");
      rep.injectivity_count = static_cast<int>(count_solutions(sys, rng).P);
    }
    if (rep.injectivity_count != 1)
      fail(Err::NonBirationalParam,
           "parameter preimage count " + std::to_string(rep.injectivity_count) + " at a random point");
    rep.generically_injective = true;
  }

  // nondegeneracy: coefficient matrix rank n+1
  {
    std::map<HomPoly::Exponents, size_t> cols;
    for (const auto& h : v.components)
      for (const auto& [e, c] : h.terms())
        if (!cols.count(e)) cols.emplace(e, cols.size());
    Mat coeff;
    for (const auto& h : v.components) {
      Vec row(cols.size(), Fq::zero(spec));
      for (const auto& [e, c] : h.terms()) row[cols.at(e)] = c;
      coeff.push_back(std::move(row));
    }
    rep.nondegenerate = rank_of(coeff) == v.ambient + 1;
  }
  rep.linear = v.degree() == 1;
  return rep;
}

SampledPoint sample_point(const ParamVariety& v, Rng& rng) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Vec p = random_parameter(v, rng);
    Vec x;
    bool all_zero = true;
    for (const auto& h : v.components) {
      Fq val = h.eval(p);
      if (!val.is_zero()) all_zero = false;
      x.push_back(val);
    }
    if (all_zero) continue;  // impossible after validation, guarded anyway
    return SampledPoint{std::move(p), ProjPoint(std::move(x))};
  }
  fail(Err::DegenerateForms, "could not sample a point");
}

TangentFrame tangent_space(const ParamVariety& v, const Vec& parameter) {
  bool nonzero = false;
  for (const auto& c : parameter)
    if (!c.is_zero()) nonzero = true;
  if (!nonzero) fail(Err::ArityMismatch, "zero parameter");
  Mat jac;
  for (int i = 0; i <= v.source_dim; ++i) {
    Vec row;
    for (const auto& h : v.components) row.push_back(h.derivative(i).eval(parameter));
    jac.push_back(std::move(row));
  }
  Vec base;
  for (const auto& h : v.components) base.push_back(h.eval(parameter));
  int r = rank_of(jac);
  TangentFrame frame{parameter, ProjPoint(base), LinearSubspace(jac, v.ambient), r < v.source_dim + 1};
  // Euler: the base point lies in the Jacobian row span except when the
  // characteristic divides the degree; include it explicitly then.
  if (!frame.tangent.contains(frame.base)) {
    Mat rows = frame.tangent.basis();
    rows.push_back(frame.base.coords());
    frame.tangent = LinearSubspace(std::move(rows), v.ambient);
  }
  return frame;
}

HomPoly pull_back_linear(const ParamVariety& v, const Vec& coeffs) {
  if (coeffs.size() != v.components.size()) fail(Err::ArityMismatch, "linear form length");
  HomPoly acc = HomPoly::zero(v.spec, v.source_dim + 1, v.degree());
  for (size_t j = 0; j < coeffs.size(); ++j) acc = acc + v.components[j].scaled(coeffs[j]);
  return acc;
}

namespace {

struct CutResult {
  BinForm gcd;
  bool all_zero = false;
};

CutResult cut_curve_by(const ParamVariety& v, const Mat& forms) {
  BinForm g{UniPoly(v.spec), 0};
  bool have = false;
  for (const auto& row : forms) {
    HomPoly pb = pull_back_linear(v, row);
    BinForm b = binform_from_hom(pb);
    if (b.is_zero()) continue;
    g = have ? binform_gcd(g, b) : b;
    have = true;
  }
  if (!have) return {g, true};
  return {g, false};
}

}  // namespace

LineProfile line_intersection_profile(const ParamVariety& v, const ProjLine& l) {
  if (v.source_dim > 1) fail(Err::ArityMismatch, "profile needs a point or curve");
  if (l.ambient() != v.ambient) fail(Err::AmbientMismatch, "line in a different ambient");
  if (v.source_dim == 0) {
    Vec pt;
    for (const auto& h : v.components) pt.push_back(h.eval({Fq::one(v.spec)}));
    return LineProfile{l.contains(ProjPoint(pt)) ? 1 : 0, true};
  }
  Mat cutting = null_space(Mat{l.a().coords(), l.b().coords()});
  CutResult cut = cut_curve_by(v, cutting);
  if (cut.all_zero) fail(Err::LineInsideVariety, "curve lies inside the line");
  LineProfile prof;
  prof.count = binform_distinct_roots(cut.gcd);
  bool sf = binform_squarefree(cut.gcd);
  // second-basis certification: recombine the cutting forms
  Rng cert_rng(0xC0DEC0DEULL);
  Mat mix = cutting;
  if (cutting.size() > 1) {
    for (size_t i = 0; i + 1 < cutting.size(); ++i) {
      Fq c = random_nonzero(v.spec, cert_rng, 7);
      for (size_t j = 0; j < cutting[i].size(); ++j) mix[i][j] = cutting[i][j] + c * cutting[i + 1][j];
    }
  }
  CutResult cut2 = cut_curve_by(v, mix);
  prof.transversal = sf && !cut2.all_zero && binform_distinct_roots(cut2.gcd) == prof.count;
  return prof;
}

int plane_section_count(const ParamVariety& v, const LinearSubspace& plane, Rng& rng) {
  if (plane.dim() != 2) fail(Err::AmbientMismatch, "section needs a plane");
  if (plane.ambient() != v.ambient) fail(Err::AmbientMismatch, "plane in a different ambient");
  if (v.source_dim == 0) {
    Vec pt;
    for (const auto& h : v.components) pt.push_back(h.eval({Fq::one(v.spec)}));
    return plane.contains(ProjPoint(pt)) ? 1 : 0;
  }
  Mat cutting = null_space(plane.basis());
  if (v.source_dim == 1) {
    CutResult cut = cut_curve_by(v, cutting);
    if (cut.all_zero) fail(Err::PositiveDimensionalSection, "curve lies inside the plane");
    return binform_distinct_roots(cut.gcd);
  }
  // surfaces: random source reparametrization, then solve the affine system
  ParamVariety w = reparametrize(v, random_invertible(v.spec, 3, rng));
  BivarSystem sys;
  sys.prov = BivarProvenance::Slice;
  for (const auto& row : cutting) {
    HomPoly pb = pull_back_linear(w, row);
    if (pb.is_zero()) fail(Err::PositiveDimensionalSection, "surface satisfies a cutting form identically");
    sys.gens.push_back(ternary_to_affine(pb));
  }
  if (sys.gens.size() < 2) fail(Err::PositiveDimensionalSection, "not enough cutting forms");
  try {
    return static_cast<int>(count_solutions(sys, rng).P);
  } catch (const Error& e) {
    if (e.code() == Err::NotZeroDimensional)
      fail(Err::PositiveDimensionalSection, "section is positive-dimensional");
    throw;
  }
}

ParamVariety reparametrize(const ParamVariety& v, const Mat& source_change) {
  ParamVariety w = v;
  for (auto& h : w.components) h = h.substitute_linear(source_change);
  return w;
}

ParamVariety ambient_change(const ParamVariety& v, const Mat& m) {
  ParamVariety w = v;
  for (size_t i = 0; i < w.components.size(); ++i) {
    HomPoly acc = HomPoly::zero(v.spec, v.source_dim + 1, v.degree());
    for (size_t j = 0; j < v.components.size(); ++j) acc = acc + v.components[j].scaled(m[i][j]);
    w.components[i] = acc;
  }
  return w;
}

ParamVariety reduce_mod_p(const ParamVariety& v, uint64_t p) {
  if (!v.spec.is_rational()) {
    if (v.spec.p != p) fail(Err::FieldMismatch, "instance already lives in " + v.spec.str());
    return v;
  }
  FieldSpec fp = FieldSpec::Fp(p);
  ParamVariety w;
  w.source_dim = v.source_dim;
  w.ambient = v.ambient;
  w.label = v.label;
  w.spec = fp;
  for (const auto& h : v.components) {
    HomPoly r(fp, h.nvars(), h.deg());
    for (const auto& [e, c] : h.terms()) {
      const mpq_class& q = c.rat();
      mpz_class den = q.get_den();
      if (mpz_divisible_ui_p(den.get_mpz_t(), p))
        fail(Err::FieldMismatch, "prime " + std::to_string(p) + " divides a denominator");
      Fq num = Fq::from_mpz(fp, mpz_class(q.get_num()));
      Fq dd = Fq::from_mpz(fp, den);
      r.add_term(e, num / dd);
    }
    if (r.is_zero() && !h.is_zero())
      fail(Err::FieldMismatch, "component vanishes mod " + std::to_string(p));
    w.components.push_back(std::move(r));
  }
  return w;
}

}  // namespace joindeg
