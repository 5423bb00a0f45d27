#include "joindeg/bivar.hpp"

#include <algorithm>
#include <optional>

namespace joindeg {

namespace {

using Key = BiPoly::Key;  // (s-exp, t-exp)

// Pair-queue work cap: systems whose completion grinds past this are
// rejected instead of running unboundedly.
constexpr long kElimWorkCap = 2'000'000;

bool lex_less(const Key& a, const Key& b, LexOrder order) {
  if (order == LexOrder::TOverS) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  }
  if (a.first != b.first) return a.first < b.first;
  return a.second < b.second;
}

Key leading_monomial(const BiPoly& f, LexOrder order) {
  Key best{-1, -1};
  bool have = false;
  for (const auto& [k, c] : f.terms()) {
    if (!have || lex_less(best, k, order)) {
      best = k;
      have = true;
    }
  }
  return best;
}

Fq leading_coeff(const BiPoly& f, LexOrder order) {
  Key lm = leading_monomial(f, order);
  return f.terms().at(lm);
}

bool divides(const Key& a, const Key& b) { return a.first <= b.first && a.second <= b.second; }

Key lcm_key(const Key& a, const Key& b) {
  return {std::max(a.first, b.first), std::max(a.second, b.second)};
}

BiPoly times_monomial(const BiPoly& f, const Key& m, const Fq& c) {
  BiPoly r(f.spec());
  for (const auto& [k, v] : f.terms()) r.add_term(k.first + m.first, k.second + m.second, v * c);
  return r;
}

// Full reduction of f modulo basis.
BiPoly reduce(BiPoly f, const std::vector<BiPoly>& basis, LexOrder order) {
  BiPoly rem(f.spec());
  while (!f.is_zero()) {
    Key lm = leading_monomial(f, order);
    Fq lc = f.terms().at(lm);
    bool reduced = false;
    for (const auto& g : basis) {
      Key glm = leading_monomial(g, order);
      if (!divides(glm, lm)) continue;
      Key q{lm.first - glm.first, lm.second - glm.second};
      f = f - times_monomial(g, q, lc / g.terms().at(glm));
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(lm.first, lm.second, lc);
      BiPoly head(f.spec());
      head.add_term(lm.first, lm.second, lc);
      f = f - head;
    }
  }
  return rem;
}

BiPoly s_polynomial(const BiPoly& f, const BiPoly& g, LexOrder order) {
  Key lf = leading_monomial(f, order), lg = leading_monomial(g, order);
  Key l = lcm_key(lf, lg);
  Fq one = Fq::one(f.spec());
  BiPoly a = times_monomial(f, {l.first - lf.first, l.second - lf.second}, one / leading_coeff(f, order));
  BiPoly b = times_monomial(g, {l.first - lg.first, l.second - lg.second}, one / leading_coeff(g, order));
  return a - b;
}

std::vector<BiPoly> buchberger(std::vector<BiPoly> basis, LexOrder order) {
  basis.erase(std::remove_if(basis.begin(), basis.end(), [](const BiPoly& p) { return p.is_zero(); }),
              basis.end());
  if (basis.empty()) return basis;
  struct Pair {
    size_t i, j;
  };
  std::vector<Pair> pairs;
  auto push_pairs = [&](size_t upto) {
    for (size_t i = 0; i < upto; ++i) pairs.push_back({i, upto});
  };
  for (size_t j = 1; j < basis.size(); ++j) push_pairs(j);
  long work = 0;
  while (!pairs.empty()) {
    work += static_cast<long>(pairs.size()) + 1;
    if (work > kElimWorkCap) fail(Err::DegreeCapExceeded, "elimination work budget exceeded");
    // normal strategy: smallest lcm first
    size_t best = 0;
    Key best_l = lcm_key(leading_monomial(basis[pairs[0].i], order), leading_monomial(basis[pairs[0].j], order));
    for (size_t k = 1; k < pairs.size(); ++k) {
      Key l = lcm_key(leading_monomial(basis[pairs[k].i], order), leading_monomial(basis[pairs[k].j], order));
      if (lex_less(l, best_l, order)) {
        best = k;
        best_l = l;
      }
    }
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<long>(best));
    Key li = leading_monomial(basis[pr.i], order), lj = leading_monomial(basis[pr.j], order);
    // Buchberger 1: coprime leading monomials
    if (li.first + lj.first == best_l.first && li.second + lj.second == best_l.second) continue;
    // Buchberger 2 (chain): some other basis element divides the lcm and
    // both companion pairs were already handled (approximated by: divides
    // and is neither endpoint)
    bool chain = false;
    for (size_t k = 0; k < basis.size(); ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (divides(leading_monomial(basis[k], order), best_l)) {
        bool pending = false;
        for (const auto& q : pairs) {
          if ((q.i == std::min(pr.i, k) && q.j == std::max(pr.i, k)) ||
              (q.i == std::min(pr.j, k) && q.j == std::max(pr.j, k))) {
            pending = true;
            break;
          }
        }
        if (!pending) {
          chain = true;
          break;
        }
      }
    }
    if (chain) continue;
    BiPoly r = reduce(s_polynomial(basis[pr.i], basis[pr.j], order), basis, order);
    if (r.is_zero()) continue;
    basis.push_back(r);
    push_pairs(basis.size() - 1);
  }
  // minimalize: drop elements whose LT is divisible by another LT
  std::vector<BiPoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    Key li = leading_monomial(basis[i], order);
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      Key lj = leading_monomial(basis[j], order);
      if (divides(lj, li) && (lj != li || j < i)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // reduce each element against the others, normalize leading coeff to 1
  std::vector<BiPoly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<BiPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    BiPoly r = reduce(minimal[i], others, order);
    if (!r.is_zero()) reduced.push_back(r.scaled(leading_coeff(r, order).inv()));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const BiPoly& a, const BiPoly& b) {
    return lex_less(leading_monomial(a, order), leading_monomial(b, order), order);
  });
  return reduced;
}

std::optional<UniPoly> pure_smaller_var_poly(const std::vector<BiPoly>& gb, LexOrder order) {
  // smallest element purely in the smaller variable of the order
  for (const auto& g : gb) {
    bool pure = true;
    for (const auto& [k, c] : g.terms()) {
      int big = order == LexOrder::TOverS ? k.second : k.first;
      if (big != 0) {
        pure = false;
        break;
      }
    }
    if (pure) {
      std::vector<Fq> coeffs;
      for (const auto& [k, c] : g.terms()) {
        int e = order == LexOrder::TOverS ? k.first : k.second;
        if (static_cast<int>(coeffs.size()) <= e) coeffs.resize(static_cast<size_t>(e + 1), Fq::zero(g.spec()));
        coeffs[static_cast<size_t>(e)] = c;
      }
      return UniPoly(g.spec(), std::move(coeffs));
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<BiPoly> lex_groebner_2var(const BivarSystem& sys, LexOrder order) {
  if (sys.gens.size() < 2) fail(Err::NotZeroDimensional, "system needs at least 2 generators");
  for (const auto& g : sys.gens)
    if (g.is_zero()) fail(Err::NotZeroDimensional, "zero generator");
  return buchberger(sys.gens, order);
}

UniPoly eliminant(const BivarSystem& sys, KeepVar keep) {
  LexOrder order = keep == KeepVar::S ? LexOrder::TOverS : LexOrder::SOverT;
  auto gb = lex_groebner_2var(sys, order);
  if (gb.size() == 1 && gb[0].deg_s() == 0 && gb[0].deg_t() == 0) {
    // inconsistent system: eliminant 1, no solutions
    return UniPoly(sys.gens[0].spec(), {Fq::one(sys.gens[0].spec())});
  }
  auto p = pure_smaller_var_poly(gb, order);
  if (!p) fail(Err::NotZeroDimensional, "no univariate eliminant in the kept variable");
  return p->monic();
}

namespace {

// Coefficient of t^j, as a polynomial in s.
std::vector<UniPoly> coeffs_in_t(const BiPoly& f) {
  std::vector<std::vector<Fq>> cols(static_cast<size_t>(f.deg_t() + 1));
  for (const auto& [k, c] : f.terms()) {
    auto& col = cols[static_cast<size_t>(k.second)];
    if (static_cast<int>(col.size()) <= k.first) col.resize(static_cast<size_t>(k.first + 1), Fq::zero(f.spec()));
    col[static_cast<size_t>(k.first)] = c;
  }
  std::vector<UniPoly> out;
  for (auto& col : cols) out.emplace_back(f.spec(), std::move(col));
  return out;
}

// f * u(s) * t^shift
BiPoly shift_mul_s(const BiPoly& f, const UniPoly& u, int shift) {
  BiPoly out(f.spec());
  for (const auto& [k, c] : f.terms())
    for (int i = 0; i <= u.deg(); ++i) {
      Fq uc = u.coeff(i);
      if (!uc.is_zero()) out.add_term(k.first + i, k.second + shift, c * uc);
    }
  return out;
}

// gcd over s of the t-coefficients.
UniPoly content_t(const BiPoly& f) {
  UniPoly g(f.spec());
  for (const auto& c : coeffs_in_t(f)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : uni_gcd(g, c);
    if (g.deg() == 0) break;
  }
  return g;
}

// f with its t-content divided out (exact division coefficient-wise).
BiPoly primitive_part_t(const BiPoly& f, const UniPoly& content) {
  if (content.deg() == 0) return f.scaled(content.lead().inv());
  BiPoly out(f.spec());
  std::vector<UniPoly> cols = coeffs_in_t(f);
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].is_zero()) continue;
    auto [q, r] = cols[j].divrem(content);
    for (int i = 0; i <= q.deg(); ++i) {
      Fq c = q.coeff(i);
      if (!c.is_zero()) out.add_term(i, static_cast<int>(j), c);
    }
  }
  return out;
}

// Pseudo-remainder of f by g with respect to t (deg_t g >= 1).
BiPoly pseudo_rem_t(BiPoly f, const BiPoly& g) {
  const int dg = g.deg_t();
  const UniPoly lg = coeffs_in_t(g).back();
  while (!f.is_zero() && f.deg_t() >= dg) {
    const UniPoly lf = coeffs_in_t(f).back();
    f = shift_mul_s(f, lg, 0) - shift_mul_s(g, lf, f.deg_t() - dg);
  }
  return f;
}

// Primitive-part pseudo-remainder sequence; result normalized only up
// to a unit (all callers test divisibility structure, not scaling).
BiPoly bivar_gcd(const BiPoly& fin, const BiPoly& gin) {
  UniPoly cf = content_t(fin), cg = content_t(gin);
  UniPoly c = uni_gcd(cf, cg);
  BiPoly f = primitive_part_t(fin, cf), g = primitive_part_t(gin, cg);
  if (f.deg_t() < g.deg_t()) std::swap(f, g);
  BiPoly pp = BiPoly::constant(Fq::one(fin.spec()));
  while (g.deg_t() > 0) {
    BiPoly r = pseudo_rem_t(f, g);
    if (r.is_zero()) {
      pp = std::move(g);
      break;
    }
    f = std::move(g);
    g = primitive_part_t(r, content_t(r));
  }
  return shift_mul_s(pp, c, 0);
}

}  // namespace

bool is_zero_dimensional(const BivarSystem& sys) {
  if (sys.gens.size() < 2) fail(Err::NotZeroDimensional, "system needs at least 2 generators");
  for (const auto& g : sys.gens)
    if (g.is_zero()) fail(Err::NotZeroDimensional, "zero generator");
  // The affine zero set is finite iff the generators share no nonconstant
  // factor; fold the gcd across the list, stopping once it is constant.
  BiPoly acc = sys.gens[0];
  for (size_t i = 1; i < sys.gens.size(); ++i) {
    if (acc.deg_s() == 0 && acc.deg_t() == 0) return true;
    acc = bivar_gcd(acc, sys.gens[i]);
  }
  return acc.deg_s() == 0 && acc.deg_t() == 0;
}

SolutionCount count_solutions(const BivarSystem& sys, Rng& rng, int max_retries) {
  const FieldSpec spec = sys.gens.at(0).spec();
  UniPoly es = eliminant(sys, KeepVar::S);
  UniPoly et = eliminant(sys, KeepVar::T);
  SolutionCount out;
  out.S = es.deg() == 0 ? 0 : distinct_root_count(es);
  out.T = et.deg() == 0 ? 0 : distinct_root_count(et);
  if (out.S == 0 || out.T == 0) {
    out.P = 0;
    out.certified = true;
    return out;
  }

  auto sheared_count = [&](const Fq& lambda) -> long {
    // new coordinate s' = s + lambda t, i.e. substitute s = s' - lambda t
    BivarSystem sh;
    sh.prov = sys.prov;
    for (const auto& g : sys.gens) {
      BiPoly ng(spec);
      for (const auto& [k, c] : g.terms()) {
        // s^i -> (s' - lambda t)^i via repeated multiplication
        BiPoly term = BiPoly::constant(c);
        BiPoly rep(spec);
        rep.add_term(1, 0, Fq::one(spec));
        rep.add_term(0, 1, -lambda);
        for (int i = 0; i < k.first; ++i) term = term * rep;
        term = term * BiPoly::monomial(spec, 0, k.second, Fq::one(spec));
        ng = ng + term;
      }
      sh.gens.push_back(ng);
    }
    UniPoly e = eliminant(sh, KeepVar::S);
    return e.deg() == 0 ? 0 : distinct_root_count(e);
  };

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Fq l1 = random_nonzero(spec, rng, 50);
    Fq l2 = random_nonzero(spec, rng, 50);
    int guard = 0;
    while (l2 == l1 && guard++ < 64) l2 = random_nonzero(spec, rng, 50);
    if (l2 == l1) break;
    long p1 = sheared_count(l1);
    long p2 = sheared_count(l2);
    if (p1 == p2) {
      if (p1 < std::max(out.S, out.T) || p1 > out.S * out.T) continue;  // degenerate shear pair
      out.P = p1;
      out.shears = {l1, l2};
      out.certified = true;
      return out;
    }
  }
  fail(Err::ShearDisagreement, "independent shears never agreed");
}

}  // namespace joindeg
