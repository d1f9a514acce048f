#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qubitizer::cli {

enum class Query { HS, BE, Measure, Walk };

struct JobConfig {
  std::string spec_path;
  Query query = Query::BE;
  double t = 1.0;
  std::size_t steps = 1;
  int order = 1;
  std::string variant;
  std::optional<double> tol;  // override of every default tolerance
  std::size_t shots = 0;
  std::uint64_t seed = 20240611;
  std::string out;
  std::string report;
  std::size_t sweep = 0;
  std::vector<std::vector<std::size_t>> groups;
};

inline constexpr std::size_t kVerifyQubitBudget = 10;

/// Exit code of a job and the report it produced.
struct JobResult {
  int exit_code = 0;
  nlohmann::json report;
};

Query parse_query(const std::string& name);
/// "0,1;2,3" -> {{0, 1}, {2, 3}}. Throws kInvalidSpec.
std::vector<std::vector<std::size_t>> parse_groups(const std::string& text);

JobResult cmd_build(const JobConfig& cfg);
JobResult cmd_verify(const JobConfig& cfg);
JobResult cmd_count(const JobConfig& cfg);
JobResult cmd_bounds(const JobConfig& cfg);

}  // namespace qubitizer::cli
