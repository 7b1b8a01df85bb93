#pragma once

// Instance files and report serialization.
//
// Instance JSON, format_version "1":
//   {
//     "format_version": "1",
//     "c": <int>, "n": <int>, "seed": <uint64, optional>,
//     "lambda": [[c positive numbers] x n],
//     "g": [c^n positive numbers, base-c index with x_1 most significant]
//   }
// Doubles are written in shortest round-trip form.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "exchkit/bounds.hpp"

namespace exchkit {

/// Raw file contents; g is not required to be symmetric here so that
/// asymmetric inputs can be diagnosed.
struct InstanceFile {
  int c = 0;
  int n = 0;
  std::vector<std::vector<double>> lambda;
  std::vector<double> g;
  std::optional<std::uint64_t> seed;
};

InstanceFile to_instance_file(const Instance& instance);
/// Validates g (symmetry, positivity) and builds the model.
Instance to_instance(const InstanceFile& file);

std::string format_double(double value);
std::string serialize_instance(const InstanceFile& file);
InstanceFile parse_instance(const std::string& text);

InstanceFile read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

inline constexpr const char* kReportCsvHeader =
    "seed,c,n,k,tv_exact,bound_general,bound_finite,prod_r_k,prod_r_n,pass_general,pass_finite";

void write_report_csv(std::ostream& out, const std::vector<BoundReport>& reports);

}  // namespace exchkit
