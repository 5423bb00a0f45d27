#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "joindeg/report.hpp"

namespace {

using joindeg::Err;
using joindeg::Error;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSection = 2;
constexpr int kExitDisagree = 3;

void write_out(const nlohmann::json& doc, const std::string& json_out) {
  std::string text = doc.dump(2);
  if (json_out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(json_out);
    if (!out) throw Error(Err::InvalidInstance, "cannot write " + json_out);
    out << text << "\n";
  }
}

joindeg::LoadedInstance load_with_overrides(const std::string& path, long long seed_flag,
                                            bool seed_set, int trials_flag,
                                            const std::string& field_override) {
  joindeg::LoadedInstance li = joindeg::load_instance_file(path);
  uint64_t seed = li.inst.seed;
  if (const char* env = std::getenv("JOINDEG_SEED")) seed = std::strtoull(env, nullptr, 10);
  if (seed_set) seed = static_cast<uint64_t>(seed_flag);
  int trials = trials_flag > 0 ? trials_flag : li.inst.trials;
  joindeg::ParamVariety x = li.inst.x, y = li.inst.y;
  if (!field_override.empty() && field_override != "Q") {
    uint64_t p = std::strtoull(field_override.c_str(), nullptr, 10);
    x = joindeg::reduce_mod_p(x, p);
    y = joindeg::reduce_mod_p(y, p);
  } else if (field_override == "Q" && !li.inst.spec.is_rational()) {
    throw Error(Err::FieldMismatch, "cannot lift a finite-field instance to Q");
  }
  li.inst = joindeg::JoinInstance::create(std::move(x), std::move(y), seed, trials);
  return li;
}

bool any_section_failed(const joindeg::JoinReport& rep) {
  for (const auto* o :
       {&rep.validation, &rep.dims_outcome, &rep.profile_outcome, &rep.t_outcome,
        &rep.strange_outcome, &rep.constrained_outcome, &rep.census_outcome, &rep.degree_outcome,
        &rep.ballico_outcome, &rep.terracini_outcome, &rep.wchecks_outcome})
    if (!o->ok) return true;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"join invariants of parametrized projective varieties"};
  app.require_subcommand(1);

  std::string path, json_out, field_override;
  long long seed_flag = 0;
  int trials_flag = 0;

  auto* analyze = app.add_subcommand("analyze", "full exact analysis of an instance");
  analyze->add_option("file", path, "instance JSON file")->required();
  auto* seed_opt = analyze->add_option("--seed", seed_flag, "override the instance seed");
  analyze->add_option("--trials", trials_flag, "override the certification trial count");
  analyze->add_option("--field-override", field_override, "Q or a prime to reduce mod");
  analyze->add_option("--json-out", json_out, "write the report here instead of stdout");

  uint64_t prime = 0;
  long budget = joindeg::kOraclePairBudget;
  int z_points = 5;
  auto* oracle = app.add_subcommand("oracle", "brute-force finite-field verification");
  oracle->add_option("file", path, "instance JSON file")->required();
  oracle->add_option("--prime", prime, "prime field to enumerate over")->required();
  oracle->add_option("--budget", budget, "pair-test budget");
  oracle->add_option("--points", z_points, "number of census points");
  oracle->add_option("--json-out", json_out, "write the report here instead of stdout");

  auto* cross = app.add_subcommand("crosscheck", "exact census vs brute-force census");
  cross->add_option("file", path, "instance JSON file")->required();
  cross->add_option("--json-out", json_out, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      joindeg::LoadedInstance li =
          load_with_overrides(path, seed_flag, seed_opt->count() > 0, trials_flag, field_override);
      joindeg::JoinReport rep = joindeg::analyze(li.inst);
      write_out(joindeg::report_to_json(li, rep), json_out);
      return any_section_failed(rep) ? kExitSection : kExitOk;
    }
    if (oracle->parsed()) {
      joindeg::LoadedInstance li = joindeg::load_instance_file(path);
      try {
        joindeg::OracleRun run = joindeg::run_oracle(li, prime, budget, z_points);
        write_out(joindeg::oracle_to_json(run), json_out);
        return kExitOk;
      } catch (const Error& e) {
        if (e.code() == Err::FieldMismatch || e.code() == Err::EnumerationBudgetExceeded) {
          std::cerr << e.what() << "\n";
          return kExitSection;
        }
        throw;
      }
    }
    // crosscheck
    joindeg::LoadedInstance li = joindeg::load_instance_file(path);
    try {
      joindeg::CrosscheckResult res = joindeg::crosscheck(li);
      write_out(joindeg::crosscheck_to_json(li, res), json_out);
      return res.agree ? kExitOk : kExitDisagree;
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kExitSection;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
}
