#pragma once

// Command-line front end. Exit codes: 0 success or all checks passed,
// 1 a verification failed, 2 bad input.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace exchkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInput = 2;

struct GenOptions {
  std::uint64_t seed = 1;
  int c = 2;
  int n = 4;
  double r_min = 0.5;
  std::string out;
};

struct VerifyOptions {
  std::string instance;  // empty: run a sweep
  std::uint64_t seed = 1;
  int instances = 200;
  std::optional<int> c;
  int n_max = 7;
  std::optional<double> r_min;
  std::vector<int> k_list;
  std::string out;  // empty: stdout
};

struct SampleOptions {
  std::string instance;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::string urn;  // "n_0,n_1,..."; empty samples the full instance law
  std::string out;
};

struct ProjectOptions {
  std::string instance;
  int k = 2;
  int grid = 100;
  std::string out;
};

struct AsymptoticsOptions {
  std::string family = "exchangeable";
  int k = 2;
  int n_min = 0;  // 0: start at k
  int n_max = 10;
  double alpha = 1.0;
  double beta = 1.0;
  std::string out;
};

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& instance_path, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err);
int cmd_project(const ProjectOptions& opts, std::ostream& out, std::ostream& err);
int cmd_asymptotics(const AsymptoticsOptions& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace exchkit::cli
