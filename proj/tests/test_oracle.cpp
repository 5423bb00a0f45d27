#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "joindeg/oracle.hpp"

using namespace joindeg;

namespace {

ParamVariety line01(int ambient, const FieldSpec& spec) {
  std::vector<std::string> comps{"s0", "s1"};
  for (int i = 2; i <= ambient; ++i) comps.push_back("0");
  return make_variety("L1", 1, ambient, comps, spec);
}

ParamVariety line23(const FieldSpec& spec) {
  return make_variety("L2", 1, 3, {"0", "0", "s0", "s1"}, spec);
}

ParamVariety twisted_cubic(const FieldSpec& spec) {
  return make_variety("tc", 1, 3, {"s0^3", "s0^2*s1", "s0*s1^2", "s1^3"}, spec);
}

}  // namespace

TEST_CASE("point tables have projective-line cardinality") {
  FieldSpec f3 = FieldSpec::Fp(3);
  PointTable lt = enumerate_points(line01(3, f3), 3);
  CHECK(lt.size() == 4);  // |P^1(F_3)|
  for (const auto& params : lt.parameters) CHECK(params.size() == 1);

  FieldSpec f5 = FieldSpec::Fp(5);
  PointTable tc = enumerate_points(twisted_cubic(f5), 5);
  CHECK(tc.size() == 6);

  FieldSpec f2 = FieldSpec::Fp(2);
  PointTable cn = enumerate_points(make_variety("c", 1, 2, {"s0^2", "s0*s1", "s1^2"}, f2), 2);
  CHECK(cn.size() == 3);
  CHECK(cn.contains(ProjPoint(Vec{Fq::one(f2), Fq::one(f2), Fq::one(f2)})));
}

TEST_CASE("enumeration guards") {
  FieldSpec q = FieldSpec::Q();
  CHECK_THROWS_AS(enumerate_points(line01(3, q), 31), Error);  // rational varieties
  FieldSpec f7 = FieldSpec::Fp(7);
  CHECK_THROWS_AS(enumerate_points(line01(3, f7), 11), Error);  // prime mismatch
  CHECK_THROWS_AS(FieldSpec::Fp(4), Error);                     // composite modulus
  ParamVariety big = reduce_mod_p(line01(3, q), 103);
  CHECK_THROWS_AS(enumerate_points(big, 103), Error);  // above the prime cap
}

TEST_CASE("brute-force census of the twisted cubic secants") {
  FieldSpec q = FieldSpec::Q();
  ParamVariety tc = reduce_mod_p(twisted_cubic(q), 31);
  PointTable t = enumerate_points(tc, 31);
  CHECK(t.size() == 32);
  Rng rng(55);
  for (int i = 0; i < 5; ++i) {
    ProjPoint z = sample_oracle_z(t, t, rng);
    OracleCensus c = oracle_census(t, t, z);
    CHECK(c.z_general);
    CHECK(c.b == 1);  // one secant through a general point of P^3
    REQUIRE(c.profiles.size() == 1);
    CHECK(c.profiles[0] == std::pair<long, long>{2, 2});
    CHECK(c.fiber_size == 4);
  }
}

TEST_CASE("growth fit recovers the join dimension of skew lines") {
  FieldSpec q = FieldSpec::Q();
  ParamVariety x = line01(3, q), y = line23(q);
  CHECK(oracle_dimension(x, y, {11, 31}) == 3);
  CHECK_THROWS_AS(oracle_dimension(x, y, {31}), Error);  // needs >= 2 primes
}

TEST_CASE("single-prime fallback on the char-2 conic") {
  FieldSpec f2 = FieldSpec::Fp(2);
  PointTable t = enumerate_points(make_variety("c", 1, 2, {"s0^2", "s0*s1", "s1^2"}, f2), 2);
  std::set<ProjPoint> cov = covered_points(t, t);
  CHECK(cov.size() == 6);  // the secant lines miss one point of P^2
  SinglePrimeDim d = single_prime_dimension(t, t);
  CHECK(d.covered == 6);
  CHECK(d.dim == 2);
  CHECK(d.span_dim == 2);
}

TEST_CASE("slice degree of the join of two disjoint conics") {
  FieldSpec q = FieldSpec::Q();
  ParamVariety c1 =
      reduce_mod_p(make_variety("c1", 1, 4, {"s0^2", "s0*s1", "s1^2", "0", "0"}, q), 31);
  ParamVariety c2 = reduce_mod_p(
      make_variety("c2", 1, 4, {"0", "0", "s0^2", "s0*s1", "s0^2 + s1^2"}, q), 31);
  PointTable t1 = enumerate_points(c1, 31), t2 = enumerate_points(c2, 31);
  Rng rng(77);
  CHECK(oracle_degree_slice(t1, t2, 3, 12, rng) == 4);
  Rng r2(78);
  CHECK_THROWS_AS(oracle_degree_slice(t1, t2, 3, 0, r2), Error);   // trials
  Rng r3(79);
  CHECK_THROWS_AS(oracle_degree_slice(t1, t2, 9, 3, r3), Error);   // codimension range
}

TEST_CASE("pair budgets abort oversized loops") {
  FieldSpec q = FieldSpec::Q();
  ParamVariety l = reduce_mod_p(line01(3, q), 31);
  PointTable t = enumerate_points(l, 31);
  CHECK_THROWS_AS(covered_points(t, t, 10), Error);
  try {
    covered_points(t, t, 10);
  } catch (const Error& e) {
    CHECK(e.code() == Err::EnumerationBudgetExceeded);
  }
}
