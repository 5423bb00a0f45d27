#pragma once

#include <json.hpp>

#include "joindeg/join.hpp"
#include "joindeg/oracle.hpp"

namespace joindeg {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct OracleOptions {
  std::vector<uint64_t> primes;  // defaults to {31} for rational instances
  long budget = kOraclePairBudget;
  int z_samples = 5;
};

struct LoadedInstance {
  JoinInstance inst;
  std::string label;
  OracleOptions oracle;
};

// Parses and schema-validates an instance document; unknown keys are
// rejected with the offending key named.
LoadedInstance parse_instance(const nlohmann::json& doc);
LoadedInstance load_instance_file(const std::string& path);

nlohmann::json report_to_json(const LoadedInstance& li, const JoinReport& rep);

struct OracleRun {
  uint64_t prime = 0;
  long x_points = 0, y_points = 0;
  std::vector<OracleCensus> censuses;
  SinglePrimeDim dimension;
  long degree_slice = -1;  // -1 when skipped (EJ fills the ambient)
};

// Full oracle pass at one prime: tables, censuses at sampled z,
// dimension estimate, slice degree.
OracleRun run_oracle(const LoadedInstance& li, uint64_t prime, long budget, int z_samples);

nlohmann::json oracle_to_json(const OracleRun& run);

struct CrosscheckResult {
  uint64_t prime = 0;
  bool agree = false;
  bool both_defective = false;
  nlohmann::json detail;  // per-quantity AGREE/DISAGREE plus failing data
};

// Exact census vs brute-force census over the same prime field.
CrosscheckResult crosscheck(const LoadedInstance& li);

nlohmann::json crosscheck_to_json(const LoadedInstance& li, const CrosscheckResult& res);

}  // namespace joindeg
