#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "joindeg/bivar.hpp"

using namespace joindeg;

namespace {

BiPoly bp(const FieldSpec& spec, std::initializer_list<std::tuple<int, int, long>> terms) {
  BiPoly f(spec);
  for (const auto& [i, j, c] : terms) f.add_term(i, j, Fq::from_int(spec, c));
  return f;
}

// product of (s - a_i) as a BiPoly
BiPoly s_roots(const FieldSpec& spec, const std::vector<long>& roots) {
  BiPoly f = bp(spec, {{0, 0, 1}});
  for (long r : roots) f = f * bp(spec, {{1, 0, 1}, {0, 0, -r}});
  return f;
}

BiPoly t_roots(const FieldSpec& spec, const std::vector<long>& roots) {
  BiPoly f = bp(spec, {{0, 0, 1}});
  for (long r : roots) f = f * bp(spec, {{0, 1, 1}, {0, 0, -r}});
  return f;
}

}  // namespace

TEST_CASE("groebner basis on the worked pairs") {
  FieldSpec q = FieldSpec::Q();
  {
    BivarSystem sys{{bp(q, {{1, 0, 1}, {0, 0, -1}}), bp(q, {{0, 1, 1}, {0, 0, -2}})}};
    auto gb = lex_groebner_2var(sys, LexOrder::TOverS);
    CHECK(gb.size() == 2);  // already reduced: {s - 1, t - 2}
  }
  {
    // {s t - 1, s^2 - 1} under t > s contains s^2 - 1 and t - s
    BivarSystem sys{{bp(q, {{1, 1, 1}, {0, 0, -1}}), bp(q, {{2, 0, 1}, {0, 0, -1}})}};
    auto gb = lex_groebner_2var(sys, LexOrder::TOverS);
    bool has_s2 = false, has_ts = false;
    for (const auto& g : gb) {
      if (g == bp(q, {{2, 0, 1}, {0, 0, -1}})) has_s2 = true;
      if (g == bp(q, {{0, 1, 1}, {1, 0, -1}})) has_ts = true;
    }
    CHECK(has_s2);
    CHECK(has_ts);
  }
  {
    // inconsistent pair collapses to {1}
    BivarSystem sys{{bp(q, {{1, 0, 1}}), bp(q, {{1, 0, 1}, {0, 0, -1}})}};
    auto gb = lex_groebner_2var(sys, LexOrder::TOverS);
    REQUIRE(gb.size() == 1);
    CHECK(gb[0] == bp(q, {{0, 0, 1}}));
  }
  CHECK_THROWS_AS(lex_groebner_2var(BivarSystem{{bp(q, {{1, 0, 1}})}}, LexOrder::TOverS), Error);
}

TEST_CASE("eliminants per variable") {
  FieldSpec q = FieldSpec::Q();
  {
    BivarSystem sys{{bp(q, {{1, 0, 1}, {0, 0, -3}}), bp(q, {{0, 2, 1}, {0, 1, -1}})}};
    UniPoly e = eliminant(sys, KeepVar::S);
    CHECK(e == UniPoly(q, {Fq::from_int(q, -3), Fq::one(q)}));
  }
  {
    BivarSystem sys{{bp(q, {{2, 0, 1}, {0, 0, -1}}), bp(q, {{0, 1, 1}, {1, 0, -1}})}};
    UniPoly e = eliminant(sys, KeepVar::T);
    CHECK(e == UniPoly(q, {Fq::from_int(q, -1), Fq::zero(q), Fq::one(q)}));
  }
  {
    // empty solution set: eliminant 1
    BivarSystem sys{{bp(q, {{1, 0, 1}}), bp(q, {{1, 0, 1}, {0, 0, -1}})}};
    UniPoly e = eliminant(sys, KeepVar::S);
    CHECK(e.deg() == 0);
    CHECK(distinct_root_count(e) == 0);
  }
}

TEST_CASE("solution counting on the worked systems") {
  FieldSpec q = FieldSpec::Q();
  Rng rng(9);
  {
    BivarSystem sys{{bp(q, {{2, 0, 1}, {0, 0, -1}}), bp(q, {{0, 2, 1}, {0, 0, -1}})}};
    SolutionCount c = count_solutions(sys, rng);
    CHECK(c.P == 4);
    CHECK(c.S == 2);
    CHECK(c.T == 2);
    CHECK(c.certified);
    CHECK(c.shears.size() >= 2);
  }
  {
    BivarSystem sys{{bp(q, {{1, 0, 1}, {0, 0, -1}}), bp(q, {{0, 1, 1}, {0, 0, -1}})}};
    SolutionCount c = count_solutions(sys, rng);
    CHECK(c.P == 1);
    CHECK(c.S == 1);
    CHECK(c.T == 1);
  }
  {
    // P < S*T when solutions share no grid structure
    BivarSystem sys{{bp(q, {{2, 0, 1}, {0, 0, -1}}), bp(q, {{0, 1, 1}, {1, 0, -1}})}};
    SolutionCount c = count_solutions(sys, rng);
    CHECK(c.P == 2);
    CHECK(c.S == 2);
    CHECK(c.T == 2);
  }
}

TEST_CASE("count bounds hold on random product systems") {
  for (const FieldSpec& spec : {FieldSpec::Q(), FieldSpec::Fp(31)}) {
    Rng rng(10);
    for (int i = 0; i < 25; ++i) {
      std::vector<long> ra, rb;
      int na = 1 + static_cast<int>(rng.below(3)), nb = 1 + static_cast<int>(rng.below(3));
      for (int k = 0; k < na; ++k) ra.push_back(static_cast<long>(rng.below(7)));
      for (int k = 0; k < nb; ++k) rb.push_back(static_cast<long>(rng.below(7)));
      BivarSystem sys{{s_roots(spec, ra), t_roots(spec, rb)}};
      SolutionCount c = count_solutions(sys, rng);
      CHECK(c.P <= c.S * c.T);
      CHECK(c.P >= c.S);
      CHECK(c.P >= c.T);
    }
  }
}

TEST_CASE("well-separated grids count exactly") {
  // s-roots are multiples of 101, so no shear drawn from the sampling box
  // can identify two grid points and P = S * T exactly
  FieldSpec q = FieldSpec::Q();
  Rng rng(11);
  for (int i = 0; i < 25; ++i) {
    std::set<long> ra, rb;
    int na = 1 + static_cast<int>(rng.below(3)), nb = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < na; ++k) ra.insert(101 * static_cast<long>(rng.below(7)));
    for (int k = 0; k < nb; ++k) rb.insert(static_cast<long>(rng.below(7)));
    BivarSystem sys{{s_roots(q, {ra.begin(), ra.end()}), t_roots(q, {rb.begin(), rb.end()})}};
    SolutionCount c = count_solutions(sys, rng);
    CHECK(c.S == static_cast<long>(ra.size()));
    CHECK(c.T == static_cast<long>(rb.size()));
    CHECK(c.P == c.S * c.T);
    CHECK(c.certified);
  }
}

TEST_CASE("shear certification replays identically") {
  FieldSpec q = FieldSpec::Q();
  BivarSystem sys{{s_roots(q, {0, 1, 2}), bp(q, {{0, 1, 1}, {1, 0, -1}})}};  // t = s on 3 values
  Rng a(77), b(77);
  SolutionCount ca = count_solutions(sys, a), cb = count_solutions(sys, b);
  CHECK(ca.P == 3);
  CHECK(ca.S == 3);
  CHECK(ca.T == 3);
  CHECK(ca.P == cb.P);
  CHECK(ca.shears == cb.shears);
}

TEST_CASE("exhaustive finite-field agreement") {
  // over a tiny field the certified count must match brute force, or the
  // shears must refuse to certify with the named error
  FieldSpec f11 = FieldSpec::Fp(11);
  Rng rng(12);
  int certified = 0;
  for (int i = 0; i < 10; ++i) {
    std::vector<long> ra{1, 4, 7}, rb{2, 9};
    BivarSystem sys{{s_roots(f11, ra), t_roots(f11, rb)}};
    long brute = 0;
    for (uint64_t s = 0; s < 11; ++s)
      for (uint64_t t = 0; t < 11; ++t) {
        bool all = true;
        for (const auto& g : sys.gens)
          if (!g.eval(Fq::from_residue(f11, s), Fq::from_residue(f11, t)).is_zero()) all = false;
        if (all) ++brute;
      }
    CHECK(brute == 6);
    try {
      SolutionCount c = count_solutions(sys, rng);
      CHECK(c.S == 3);
      CHECK(c.T == 2);
      CHECK(c.P >= std::max(c.S, c.T));
      CHECK(c.P <= brute);  // a shear can only merge grid points
      ++certified;
    } catch (const Error& e) {
      CHECK(e.code() == Err::ShearDisagreement);
    }
  }
  CHECK(certified > 0);
}

TEST_CASE("finiteness detection via the gcd fold") {
  FieldSpec q = FieldSpec::Q();
  CHECK(is_zero_dimensional(BivarSystem{{s_roots(q, {1, 2}), t_roots(q, {3})}}));
  // shared line s = 0 forces a positive-dimensional set
  BiPoly s = bp(q, {{1, 0, 1}});
  CHECK_FALSE(is_zero_dimensional(BivarSystem{{s * s_roots(q, {1}), s * t_roots(q, {2})}}));
  // shared factor hidden behind different cofactors
  BiPoly mix = bp(q, {{1, 1, 1}, {0, 0, -1}});  // st - 1
  CHECK_FALSE(is_zero_dimensional(BivarSystem{{mix * s, mix * t_roots(q, {5})}}));
  // three generators whose pairwise gcds are nontrivial but total gcd is 1
  BiPoly t = bp(q, {{0, 1, 1}});
  CHECK(is_zero_dimensional(BivarSystem{{s * t, s * s_roots(q, {1}), t * t_roots(q, {1})}}));
  // inconsistent system is (vacuously) finite
  CHECK(is_zero_dimensional(BivarSystem{{bp(q, {{0, 0, 1}}), s}}));
  CHECK_THROWS_AS(is_zero_dimensional(BivarSystem{{s}}), Error);
}

TEST_CASE("oversized eliminations fail fast with a named budget error") {
  // dense random pair heavy enough to blow past the pair-queue budget
  FieldSpec f5 = FieldSpec::Fp(5);
  Rng rng(13);
  BiPoly f(f5), g(f5);
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) {
      f.add_term(i, j, Fq::from_residue(f5, rng.below(5)));
      g.add_term(i, j, Fq::from_residue(f5, rng.below(5)));
    }
  BivarSystem sys{{f, g}};
  bool budgeted = false;
  try {
    lex_groebner_2var(sys, LexOrder::TOverS);
  } catch (const Error& e) {
    CHECK(e.code() == Err::DegreeCapExceeded);
    budgeted = true;
  }
  CHECK(budgeted);
}
