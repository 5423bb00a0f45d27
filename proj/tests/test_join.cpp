#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "joindeg/join.hpp"

using namespace joindeg;

namespace {

JoinInstance skew_lines(const FieldSpec& spec) {
  ParamVariety x = make_variety("L1", 1, 3, {"s0", "s1", "0", "0"}, spec);
  ParamVariety y = make_variety("L2", 1, 3, {"0", "0", "s0", "s1"}, spec);
  return JoinInstance::create(std::move(x), std::move(y), 2026, 3);
}

JoinInstance tc_secant(const FieldSpec& spec) {
  ParamVariety x = make_variety("tc", 1, 3, {"s0^3", "s0^2*s1", "s0*s1^2", "s1^3"}, spec);
  return JoinInstance::create(x, x, 404, 3);
}

JoinInstance char2_conic() {
  FieldSpec f2 = FieldSpec::Fp(2);
  ParamVariety x = make_variety("conic2", 1, 2, {"s0^2", "s0*s1", "s1^2"}, f2);
  return JoinInstance::create(x, x, 7, 3);
}

JoinInstance char5_strange() {
  FieldSpec f5 = FieldSpec::Fp(5);
  ParamVariety x =
      make_variety("strange5", 1, 3, {"s0^10", "s0^9*s1", "s0^5*s1^5", "s1^10"}, f5);
  return JoinInstance::create(x, x, 5, 3);
}

}  // namespace

TEST_CASE("census combiner recovers the worked degree bookkeeping") {
  FiberCensus c = FiberCensus::combine(3, 2, 12, 6, 4);
  CHECK(c.b == 2);
  CHECK(c.deg_beta == 2);
  CHECK(c.deg_alpha_x == 6);
  CHECK(c.deg_alpha_y == 4);
  CHECK(c.deg_pi == 12);
  CHECK(c.pair_count == c.m_x * c.m_y * c.b);
  CHECK(c.distinct_x == c.m_x * c.b);
  CHECK(c.distinct_y == c.m_y * c.b);
  // inconsistent counts are rejected, never rounded
  CHECK_THROWS_AS(FiberCensus::combine(3, 2, 11, 6, 4), Error);
  CHECK_THROWS_AS(FiberCensus::combine(2, 2, 4, 2, 3), Error);
}

TEST_CASE("skew lines: every invariant is 1") {
  JoinInstance inst = skew_lines(FieldSpec::Q());
  Rng rng(1);
  Rng r1 = rng.fork(1);
  CHECK(joined_profile(inst, r1) == std::pair<int, int>{1, 1});
  Rng r2 = rng.fork(2);
  FiberCensus c = fiber_census(inst, r2);
  CHECK(c.pair_count == 1);
  CHECK(c.b == 1);
  CHECK(c.deg_pi == 1);
  Rng r3 = rng.fork(3);
  CHECK(t_invariant(inst, r3) == -1);
  Rng r4 = rng.fork(4);
  CHECK_FALSE(strange_pair_test(inst, r4).is_strange);
  Rng r5 = rng.fork(5);
  CHECK_FALSE(constrained_pair_test(inst, r5));
  Rng r6 = rng.fork(6);
  EjDimension d = ej_dimension(inst, r6);
  CHECK(d.dim == 3);
  CHECK(d.method == DimMethod::Terracini);
  Rng r7 = rng.fork(7);
  CHECK(degree_ej(inst, r7) == 1);
}

TEST_CASE("twisted cubic self-join census") {
  JoinInstance inst = tc_secant(FieldSpec::Q());
  Rng rng(2);
  Rng r1 = rng.fork(1);
  CHECK(joined_profile(inst, r1) == std::pair<int, int>{2, 2});
  Rng r2 = rng.fork(2);
  FiberCensus c = fiber_census(inst, r2);
  CHECK(c.pair_count == 4);
  CHECK(c.distinct_x == 2);
  CHECK(c.distinct_y == 2);
  CHECK(c.b == 1);
  CHECK(c.deg_pi == 4);
  CHECK(c.deg_beta == 1);
  Rng r3 = rng.fork(3);
  CHECK(degree_ej(inst, r3) == 1);  // the secant variety fills P^3
  Rng r4 = rng.fork(4);
  CHECK(t_invariant(inst, r4) == -1);
}

TEST_CASE("collinearity systems certify solvable fibers") {
  JoinInstance inst = tc_secant(FieldSpec::Q());
  Rng rng(3);
  JoinLineSample s = sample_join_line(inst, rng);
  CHECK(s.certified);
  CHECK(s.line.contains(s.x));
  CHECK(s.line.contains(s.y));
  Fq a = Fq::from_int(inst.spec, 2), b = Fq::from_int(inst.spec, 3);
  Vec zc;
  for (size_t i = 0; i < s.x.coords().size(); ++i)
    zc.push_back(a * s.x.coords()[i] + b * s.y.coords()[i]);
  ProjPoint z(std::move(zc));
  CollinearitySetup setup = collinearity_system(inst, z, rng);
  CHECK(setup.diagonal_removed);  // self-join: the diagonal factor is divided out
  CHECK(setup.sys.gens.size() >= 2);
  CHECK(is_zero_dimensional(setup.sys));
}

TEST_CASE("ruled join points project onto the join line") {
  JoinInstance inst = skew_lines(FieldSpec::Q());
  Rng rng(4);
  JoinLineSample s = sample_join_line(inst, rng);
  Fq a = Fq::from_int(inst.spec, 1), b = Fq::from_int(inst.spec, 4);
  ProjPoint q = ruled_join_point(inst, s.x_param, s.y_param, a, b);
  CHECK(q.ambient() == 2 * inst.ambient + 1);
  ProjPoint img = ruled_projection(q);
  CHECK(s.line.contains(img));
}

TEST_CASE("char-2 conic: strange, defective, unconstrained") {
  JoinInstance inst = char2_conic();
  Rng rng(5);
  Rng r1 = rng.fork(1);
  StrangeResult s = strange_pair_test(inst, r1);
  REQUIRE(s.is_strange);
  REQUIRE(s.locus.has_value());
  FieldSpec f2 = inst.spec;
  CHECK(s.locus->contains(ProjPoint(Vec{Fq::zero(f2), Fq::one(f2), Fq::zero(f2)})));
  Rng r2 = rng.fork(2);
  CHECK(t_invariant(inst, r2) == 0);
  Rng r3 = rng.fork(3);
  CHECK_FALSE(constrained_pair_test(inst, r3));
  Rng r4 = rng.fork(4);
  CHECK_THROWS_AS(fiber_census(inst, r4), Error);
  Rng r5 = rng.fork(5);
  EjDimension d = ej_dimension(inst, r5);
  CHECK(d.dim == 2);
  CHECK(d.terracini_dim == 2);
}

TEST_CASE("char-5 strange curve: inseparability shows as a constrained pair") {
  JoinInstance inst = char5_strange();
  Rng rng(6);
  Rng r1 = rng.fork(1);
  EjDimension d = ej_dimension(inst, r1);
  CHECK(d.dim == 3);
  CHECK(d.method == DimMethod::Oracle);
  CHECK(d.terracini_dim == 2);
  CHECK_FALSE(d.heuristic);
  Rng r2 = rng.fork(2);
  CHECK(t_invariant(inst, r2) == 0);
  Rng r3 = rng.fork(3);
  CHECK(constrained_pair_test(inst, r3));  // 3 > 1 + 1 - 0
  Rng r4 = rng.fork(4);
  CHECK(strange_pair_test(inst, r4).is_strange);
}

TEST_CASE("terracini spans and inclusion checks") {
  JoinInstance inst = tc_secant(FieldSpec::Q());
  Rng rng(7);
  JoinLineSample s = sample_join_line(inst, rng);
  TerraciniSpan span = terracini_span(inst, s.x_param, s.y_param);
  CHECK(span.dim == 3);
  CHECK(span.span.contains(s.x));
  CHECK(span.span.contains(s.y));
  for (int i = 0; i < 20; ++i) {
    Rng ri = rng.fork(static_cast<uint64_t>(i) + 100);
    CHECK(terracini_inclusion_check(inst, ri));
  }
}

TEST_CASE("w-tangent checks pass on both factors") {
  JoinInstance inst = tc_secant(FieldSpec::Q());
  Rng rng(8);
  Rng r1 = rng.fork(1);
  WTangentReport rep = w_tangent_checks(inst, r1);
  CHECK(rep.pr1_is_tangent_x);
  CHECK(rep.x_slice_matches);
  CHECK(rep.z_slice_matches);
  CHECK(rep.rank_matches);
  CHECK(rep.points_checked > 0);
  Rng r2 = rng.fork(2);
  WTangentReport swapped = w_tangent_checks(inst, r2, true);
  CHECK(swapped.pr1_is_tangent_x);
}

TEST_CASE("plane test applicability") {
  FieldSpec q = FieldSpec::Q();
  // nondegenerate curve x point pair: plane through two curve points and
  // the point meets the point factor only once
  ParamVariety x = make_variety("tc", 1, 3, {"s0^3", "s0^2*s1", "s0*s1^2", "s1^3"}, q);
  ParamVariety y = make_variety("pt", 0, 3, {"1", "1", "2", "5"}, q);
  JoinInstance inst = JoinInstance::create(x, y, 31337, 3);
  CHECK(union_nondegenerate(inst));
  Rng rng(9);
  CHECK(ballico_plane_test(inst, rng));

  // self-joins are outside the criterion's hypotheses
  JoinInstance self = tc_secant(q);
  Rng r2(10);
  CHECK_THROWS_AS(ballico_plane_test(self, r2), Error);

  // degenerate union: both lines inside a hyperplane of P^4
  ParamVariety l1 = make_variety("L1", 1, 4, {"s0", "s1", "0", "0", "0"}, q);
  ParamVariety l2 = make_variety("L2", 1, 4, {"0", "0", "s0", "s1", "s0 + s1"}, q);
  JoinInstance deg = JoinInstance::create(l1, l2, 55, 3);
  CHECK_FALSE(union_nondegenerate(deg));
  Rng r3(11);
  CHECK_THROWS_AS(ballico_plane_test(deg, r3), Error);
}

TEST_CASE("full analysis replays bit for bit") {
  JoinInstance inst = skew_lines(FieldSpec::Q());
  JoinReport a = analyze(inst), b = analyze(inst);
  CHECK(a.census.pair_count == b.census.pair_count);
  CHECK(a.dims.dim == b.dims.dim);
  CHECK(a.t_value == b.t_value);
  CHECK(a.deg_ej == b.deg_ej);
  CHECK(a.terracini_checks_passed == a.terracini_checks_total);
  CHECK(a.census_outcome.seed == b.census_outcome.seed);
  for (const SectionOutcome* o : {&a.validation, &a.dims_outcome, &a.profile_outcome, &a.t_outcome,
                                  &a.strange_outcome, &a.constrained_outcome, &a.census_outcome,
                                  &a.degree_outcome, &a.terracini_outcome, &a.wchecks_outcome})
    CHECK(o->ok);
}

TEST_CASE("instance creation guards") {
  FieldSpec q = FieldSpec::Q();
  ParamVariety a = make_variety("a", 1, 3, {"s0", "s1", "0", "0"}, q);
  ParamVariety b2 = make_variety("b", 1, 2, {"s0", "s1", "0"}, q);
  CHECK_THROWS_AS(JoinInstance::create(a, b2, 1, 3), Error);       // ambient mismatch
  CHECK_THROWS_AS(JoinInstance::create(a, a, 1, 3), Error);        // linear self-join
  ParamVariety fp = make_variety("c", 1, 3, {"s0", "s1", "0", "0"}, FieldSpec::Fp(7));
  CHECK_THROWS_AS(JoinInstance::create(a, fp, 1, 3), Error);       // field mismatch
  CHECK_THROWS_AS(JoinInstance::create(a, reduce_mod_p(a, 7), 1, 0), Error);  // trials
}
