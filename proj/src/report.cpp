#include "joindeg/report.hpp"

#include <fstream>

namespace joindeg {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      fail(Err::InvalidInstance, "unknown key \"" + it.key() + "\" in " + where);
  }
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail(Err::InvalidInstance, "missing key \"" + key + "\" in " + where);
  return obj.at(key);
}

FieldSpec parse_field(const json& f) {
  if (f.is_string()) {
    if (f.get<std::string>() == "Q") return FieldSpec::Q();
    fail(Err::InvalidInstance, "field must be \"Q\" or {\"p\": prime}");
  }
  if (f.is_object()) {
    reject_unknown(f, {"p"}, "field");
    const json& p = need(f, "p", "field");
    if (!p.is_number_unsigned()) fail(Err::InvalidInstance, "field prime must be a positive integer");
    return FieldSpec::Fp(p.get<uint64_t>());
  }
  fail(Err::InvalidInstance, "field must be \"Q\" or {\"p\": prime}");
}

ParamVariety parse_member(const json& obj, const std::string& name, int ambient,
                          const FieldSpec& spec) {
  if (!obj.is_object()) fail(Err::InvalidInstance, name + " must be an object");
  reject_unknown(obj, {"label", "source_dim", "components"}, name);
  const json& sd = need(obj, "source_dim", name);
  if (!sd.is_number_integer()) fail(Err::InvalidInstance, name + ".source_dim must be an integer");
  const json& comps = need(obj, "components", name);
  if (!comps.is_array()) fail(Err::InvalidInstance, name + ".components must be an array");
  if (static_cast<int>(comps.size()) != ambient + 1)
    fail(Err::InvalidInstance, name + " needs ambient+1 components");
  std::vector<std::string> texts;
  for (const auto& c : comps) {
    if (!c.is_string()) fail(Err::InvalidInstance, name + ".components entries must be strings");
    texts.push_back(c.get<std::string>());
  }
  std::string label = obj.value("label", name);
  return make_variety(label, sd.get<int>(), ambient, texts, spec);
}

}  // namespace

LoadedInstance parse_instance(const json& doc) {
  if (!doc.is_object()) fail(Err::InvalidInstance, "instance document must be an object");
  reject_unknown(doc, {"schema", "ambient", "field", "X", "Y", "seed", "trials", "oracle", "label"},
                 "instance");
  if (need(doc, "schema", "instance") != kSchemaVersion)
    fail(Err::InvalidInstance, "unsupported schema version");
  const json& amb = need(doc, "ambient", "instance");
  if (!amb.is_number_integer() || amb.get<int>() < 1)
    fail(Err::InvalidInstance, "ambient must be a positive integer");
  int ambient = amb.get<int>();
  FieldSpec spec = parse_field(need(doc, "field", "instance"));
  ParamVariety x = parse_member(need(doc, "X", "instance"), "X", ambient, spec);
  ParamVariety y = parse_member(need(doc, "Y", "instance"), "Y", ambient, spec);
  const json& seed = need(doc, "seed", "instance");
  if (!seed.is_number_integer() && !seed.is_number_unsigned())
    fail(Err::InvalidInstance, "seed must be an integer");
  int trials = 3;
  if (doc.contains("trials")) {
    if (!doc.at("trials").is_number_integer()) fail(Err::InvalidInstance, "trials must be an integer");
    trials = doc.at("trials").get<int>();
  }
  LoadedInstance li{JoinInstance::create(std::move(x), std::move(y), seed.get<uint64_t>(), trials),
                    doc.value("label", ""), {}};
  if (doc.contains("oracle")) {
    const json& o = doc.at("oracle");
    reject_unknown(o, {"primes", "budget"}, "oracle");
    if (o.contains("primes")) {
      for (const auto& p : o.at("primes")) {
        if (!p.is_number_unsigned()) fail(Err::InvalidInstance, "oracle primes must be integers");
        li.oracle.primes.push_back(p.get<uint64_t>());
      }
    }
    if (o.contains("budget")) li.oracle.budget = o.at("budget").get<long>();
  }
  if (li.oracle.primes.empty())
    li.oracle.primes = {li.inst.spec.is_rational() ? 31 : li.inst.spec.p};
  return li;
}

LoadedInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::InvalidInstance, "cannot open instance file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(Err::InvalidInstance, std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

namespace {

json outcome_json(const SectionOutcome& o) {
  json j{{"ok", o.ok}, {"seed", o.seed}, {"wall_ms", o.wall_ms}};
  if (!o.ok) {
    j["error"] = o.error;
    j["detail"] = o.detail;
  } else if (!o.detail.empty()) {
    j["detail"] = o.detail;
  }
  return j;
}

json subspace_json(const LinearSubspace& l) {
  json rows = json::array();
  for (const auto& r : l.basis()) {
    json row = json::array();
    for (const auto& c : r) row.push_back(c.str());
    rows.push_back(row);
  }
  return json{{"dim", l.dim()}, {"basis", rows}};
}

json census_json(const FiberCensus& c) {
  return json{{"P", c.pair_count},       {"S", c.distinct_x},
              {"T", c.distinct_y},       {"m_X", c.m_x},
              {"m_Y", c.m_y},            {"b", c.b},
              {"deg_beta", c.deg_beta},  {"deg_alpha_X", c.deg_alpha_x},
              {"deg_alpha_Y", c.deg_alpha_y}, {"deg_pi", c.deg_pi}};
}

json wchecks_json(const WTangentReport& w) {
  return json{{"pr1_is_tangent", w.pr1_is_tangent_x},
              {"x_slice_matches", w.x_slice_matches},
              {"z_slice_matches", w.z_slice_matches},
              {"rank_matches", w.rank_matches},
              {"item3_as_pr1", w.item3_as_pr1},
              {"item3_as_pr2", w.item3_as_pr2},
              {"points_checked", w.points_checked}};
}

}  // namespace

json report_to_json(const LoadedInstance& li, const JoinReport& rep) {
  json j;
  j["schema"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["label"] = li.label;
  j["field"] = li.inst.spec.str();
  j["ambient"] = li.inst.ambient;
  j["seed"] = rep.seed;
  j["trials"] = rep.trials;

  j["validation"] = outcome_json(rep.validation);
  if (rep.validation.ok) {
    j["validation"]["X"] = json{{"basepoint_free", rep.validation_x.basepoint_free},
                                {"generically_injective", rep.validation_x.generically_injective},
                                {"nondegenerate", rep.validation_x.nondegenerate},
                                {"linear", rep.validation_x.linear}};
    j["validation"]["Y"] = json{{"basepoint_free", rep.validation_y.basepoint_free},
                                {"generically_injective", rep.validation_y.generically_injective},
                                {"nondegenerate", rep.validation_y.nondegenerate},
                                {"linear", rep.validation_y.linear}};
  }

  j["dimension"] = outcome_json(rep.dims_outcome);
  j["dimension"]["expected"] = rep.expected_dim;
  if (rep.dims_outcome.ok) {
    j["dimension"]["dim_ej"] = rep.dims.dim;
    j["dimension"]["method"] = rep.dims.method == DimMethod::Terracini ? "terracini" : "oracle";
    j["dimension"]["terracini_dim"] = rep.dims.terracini_dim;
    j["dimension"]["heuristic"] = rep.dims.heuristic;
  }

  j["profile"] = outcome_json(rep.profile_outcome);
  if (rep.profile_outcome.ok && rep.profile.first > 0)
    j["profile"]["m"] = json::array({rep.profile.first, rep.profile.second});

  j["t_invariant"] = outcome_json(rep.t_outcome);
  if (rep.t_outcome.ok) j["t_invariant"]["t"] = rep.t_value;

  j["strange"] = outcome_json(rep.strange_outcome);
  if (rep.strange_outcome.ok) {
    j["strange"]["is_strange"] = rep.strange.is_strange;
    if (rep.strange.locus) j["strange"]["locus"] = subspace_json(*rep.strange.locus);
  }

  j["constrained"] = outcome_json(rep.constrained_outcome);
  if (rep.constrained_outcome.ok) j["constrained"]["is_constrained"] = rep.constrained;

  j["census"] = outcome_json(rep.census_outcome);
  if (rep.census_outcome.ok && rep.census.pair_count > 0)
    j["census"]["values"] = census_json(rep.census);

  j["degree"] = outcome_json(rep.degree_outcome);
  if (rep.degree_outcome.ok && rep.deg_ej > 0) j["degree"]["deg_ej"] = rep.deg_ej;

  j["ballico"] = outcome_json(rep.ballico_outcome);
  j["ballico"]["applicable"] = rep.ballico_applicable;
  if (rep.ballico_outcome.ok && rep.ballico_applicable) j["ballico"]["unique_point"] = rep.ballico;

  j["terracini_inclusion"] = outcome_json(rep.terracini_outcome);
  j["terracini_inclusion"]["passed"] = rep.terracini_checks_passed;
  j["terracini_inclusion"]["total"] = rep.terracini_checks_total;

  j["w_tangent"] = outcome_json(rep.wchecks_outcome);
  if (rep.wchecks_outcome.ok && rep.wchecks_x.points_checked > 0) {
    j["w_tangent"]["W_X"] = wchecks_json(rep.wchecks_x);
    j["w_tangent"]["W_Y"] = wchecks_json(rep.wchecks_y);
  }
  return j;
}

OracleRun run_oracle(const LoadedInstance& li, uint64_t prime, long budget, int z_samples) {
  const JoinInstance& inst = li.inst;
  ParamVariety x = inst.spec.is_rational() ? reduce_mod_p(inst.x, prime) : inst.x;
  ParamVariety y = inst.spec.is_rational() ? reduce_mod_p(inst.y, prime) : inst.y;
  if (!x.spec.is_rational() && x.spec.p != prime)
    fail(Err::FieldMismatch, "instance lives over a different prime");
  OracleRun run;
  run.prime = prime;
  PointTable xt = enumerate_points(x, prime);
  PointTable yt = inst.self_join() ? xt : enumerate_points(y, prime);
  run.x_points = xt.size();
  run.y_points = yt.size();
  Rng rng(inst.seed);
  Rng zrng = rng.fork(41);
  for (int i = 0; i < z_samples; ++i) {
    ProjPoint z = sample_oracle_z(xt, yt, zrng);
    run.censuses.push_back(oracle_census(xt, yt, z));
  }
  run.dimension = single_prime_dimension(xt, yt, budget);
  if (run.dimension.dim >= inst.ambient)
    run.degree_slice = 1;  // the join fills the ambient space
  else if (run.dimension.dim >= 1) {
    Rng srng = rng.fork(42);
    run.degree_slice = oracle_degree_slice(xt, yt, run.dimension.dim, 200, srng, budget);
  }
  return run;
}

json oracle_to_json(const OracleRun& run) {
  json censuses = json::array();
  for (const auto& c : run.censuses) {
    json profiles = json::array();
    for (const auto& [mx, my] : c.profiles) profiles.push_back(json::array({mx, my}));
    censuses.push_back(json{{"b", c.b},
                            {"fiber_size", c.fiber_size},
                            {"profiles", profiles},
                            {"z_general", c.z_general}});
  }
  return json{{"prime", run.prime},
              {"x_points", run.x_points},
              {"y_points", run.y_points},
              {"censuses", censuses},
              {"dimension",
               json{{"dim", run.dimension.dim},
                    {"span_dim", run.dimension.span_dim},
                    {"covered", run.dimension.covered},
                    {"heuristic", true}}},
              {"degree_slice", run.degree_slice}};
}

CrosscheckResult crosscheck(const LoadedInstance& li) {
  const JoinInstance& inst = li.inst;
  if (inst.x.source_dim != 1 || inst.y.source_dim != 1)
    fail(Err::ArityMismatch, "crosscheck needs a curve-by-curve instance");
  CrosscheckResult res;
  res.prime = inst.spec.is_rational() ? li.oracle.primes.at(0) : inst.spec.p;
  ParamVariety x = inst.spec.is_rational() ? reduce_mod_p(inst.x, res.prime) : inst.x;
  ParamVariety y = inst.spec.is_rational() ? reduce_mod_p(inst.y, res.prime) : inst.y;
  JoinInstance red = JoinInstance::create(x, y, inst.seed, inst.trials);
  Rng rng(inst.seed);

  PointTable xt = enumerate_points(red.x, res.prime);
  PointTable yt = red.self_join() ? xt : enumerate_points(red.y, res.prime);

  bool exact_defective = false;
  FiberCensus census;
  try {
    Rng crng = rng.fork(51);
    census = fiber_census(red, crng);
  } catch (const Error& e) {
    if (e.code() != Err::JoinDefective) throw;
    exact_defective = true;
  }
  SinglePrimeDim dim = single_prime_dimension(xt, yt, li.oracle.budget);
  bool oracle_defective = dim.dim < red.x.source_dim + red.y.source_dim + 1;
  if (exact_defective || oracle_defective) {
    res.both_defective = exact_defective && oracle_defective;
    res.agree = res.both_defective;
    res.detail = json{{"exact_defective", exact_defective},
                      {"oracle_defective", oracle_defective},
                      {"oracle_dim", dim.dim}};
    return res;
  }

  // The oracle sees only the F_p-rational part of each fiber, so per z it
  // can undercount the closure census; every z must be dominated (oracle
  // <= exact componentwise) and at least one z must match it exactly.
  Rng zrng = rng.fork(52);
  json points = json::array();
  bool all_dominated = true;
  int exact_hits = 0;
  for (int sample = 0; sample < li.oracle.z_samples; ++sample) {
    // small fields contain non-general rational z; retry a few candidates
    bool matched = false;
    json last;
    for (int attempt = 0; attempt < 4 && !matched; ++attempt) {
      ProjPoint z = sample_oracle_z(xt, yt, zrng);
      OracleCensus oc = oracle_census(xt, yt, z);
      long s_sum = 0, t_sum = 0;
      bool profiles_dominated = true;
      for (const auto& [mx, my] : oc.profiles) {
        s_sum += mx;
        t_sum += my;
        if (mx > census.m_x || my > census.m_y) profiles_dominated = false;
      }
      bool dominated = oc.z_general && profiles_dominated && oc.b <= census.b &&
                       oc.fiber_size <= census.pair_count && s_sum <= census.distinct_x &&
                       t_sum <= census.distinct_y;
      bool equal = dominated && oc.b == census.b && oc.fiber_size == census.pair_count &&
                   s_sum == census.distinct_x && t_sum == census.distinct_y;
      last = json{{"z", z.str()},
                  {"prime", res.prime},
                  {"oracle", json{{"b", oc.b}, {"fiber", oc.fiber_size}, {"S", s_sum}, {"T", t_sum}}},
                  {"exact", json{{"b", census.b},
                                 {"fiber", census.pair_count},
                                 {"S", census.distinct_x},
                                 {"T", census.distinct_y}}},
                  {"status", equal ? "AGREE" : dominated ? "RATIONAL-SUBSET" : "DISAGREE"}};
      matched = dominated;
      if (equal) ++exact_hits;
    }
    if (!matched) all_dominated = false;
    points.push_back(last);
  }
  res.agree = all_dominated && exact_hits >= 1;
  res.detail =
      json{{"points", points}, {"exact_matches", exact_hits}, {"exact", census_json(census)}};
  return res;
}

json crosscheck_to_json(const LoadedInstance& li, const CrosscheckResult& res) {
  return json{{"schema", kSchemaVersion},
              {"tool_version", kToolVersion},
              {"label", li.label},
              {"seed", li.inst.seed},
              {"prime", res.prime},
              {"agree", res.agree},
              {"both_defective", res.both_defective},
              {"detail", res.detail}};
}

}  // namespace joindeg
