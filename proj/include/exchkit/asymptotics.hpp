#pragma once

// Weight-ratio sequences r_1, r_2, ... on the binary alphabet and the
// behaviour of the finite approximations as the sequence length grows.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exchkit/bounds.hpp"
#include "exchkit/core.hpp"

namespace exchkit {

enum class SequenceFamily {
  constant,           // r_i = a
  power_deficit,      // r_i = 1 - a * i^(-p)
  geometric_deficit,  // r_i = 1 - a * b^(-i)
  geometric,          // r_i = a^i
  power,              // r_i = i^(-p)
};

struct WeightSequenceSpec {
  SequenceFamily family = SequenceFamily::constant;
  double a = 1.0;
  double p = 1.0;  // exponent for the power families
  double b = 2.0;  // base for geometric_deficit

  /// Parses "name" or "name:key=value,...", e.g. "geometric_deficit:a=1,b=2".
  /// Also accepts "exchangeable" (constant 1) and "harmonic" (power, p = 1).
  static WeightSequenceSpec parse(std::string_view text);

  double ratio(int i) const;  // i >= 1
  /// lambda_i = (1, r_i) on {0, 1}.
  WeightFunction weight(int i) const;
  WeightProfile profile(int n) const;
  std::string name() const;
};

struct SequenceClassification {
  int truncation = 0;
  double sum_one_minus_r = 0.0;
  double sum_r = 0.0;
  double prod_r = 0.0;
  bool summable_deficit = false;         // sum (1 - r_i) < infinity
  bool divergent_ratio_sum = false;      // sum r_i = infinity
  bool binary_mixing_divergent = false;  // sum min/max = infinity on {0, 1}
  /// prod_{i>=1} r_i when it has a closed form (or a geometrically
  /// convergent evaluation).
  std::optional<double> prod_limit;
};

SequenceClassification classify_weight_sequence(const WeightSequenceSpec& spec, int truncation);

/// Beta-binomial exchangeable core on {0,1}^n, tilted by lambda_i = (1, r_i).
Instance tilted_polya_family(const WeightSequenceSpec& spec, double alpha, double beta, int n);

struct DecayPoint {
  int n = 0;
  double tv_exact = 0.0;
  double bound_general = 0.0;
  double prod_r_k = 0.0;
};

/// TV(P_k, Q_{n,k}) and the general bound for each n, with P from the tilted
/// family at that n. Requires k <= 3, k <= n <= 10.
std::vector<DecayPoint> tv_decay_experiment(const WeightSequenceSpec& spec, int k,
                                            const std::vector<int>& n_list,
                                            double alpha = 1.0, double beta = 1.0);

}  // namespace exchkit
