#include "exchkit/asymptotics.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>

namespace exchkit {

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("bad number in family parameters: " + std::string(s));
  }
  return v;
}

}  // namespace

WeightSequenceSpec WeightSequenceSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  WeightSequenceSpec spec;
  if (name == "constant" || name == "exchangeable") {
    spec.family = SequenceFamily::constant;
  } else if (name == "power_deficit") {
    spec.family = SequenceFamily::power_deficit;
    spec.a = 0.5;
    spec.p = 2.0;
  } else if (name == "geometric_deficit") {
    spec.family = SequenceFamily::geometric_deficit;
  } else if (name == "geometric") {
    spec.family = SequenceFamily::geometric;
    spec.a = 0.5;
  } else if (name == "power" || name == "harmonic") {
    spec.family = SequenceFamily::power;
  } else {
    throw InputError("unknown weight sequence family: " + std::string(name));
  }
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw InputError("family parameter needs key=value");
      const std::string_view key = item.substr(0, eq);
      const double value = parse_number(item.substr(eq + 1));
      if (key == "a") {
        spec.a = value;
      } else if (key == "p") {
        spec.p = value;
      } else if (key == "b") {
        spec.b = value;
      } else {
        throw InputError("unknown family parameter: " + std::string(key));
      }
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }

  switch (spec.family) {
    case SequenceFamily::constant:
    case SequenceFamily::geometric:
      if (!(spec.a > 0.0 && spec.a <= 1.0)) throw InputError("family needs 0 < a <= 1");
      break;
    case SequenceFamily::power_deficit:
      if (!(spec.a >= 0.0 && spec.a < 1.0 && spec.p > 0.0)) throw InputError("power_deficit needs 0 <= a < 1, p > 0");
      break;
    case SequenceFamily::geometric_deficit:
      if (!(spec.b > 1.0 && spec.a >= 0.0 && spec.a < spec.b)) throw InputError("geometric_deficit needs b > 1, 0 <= a < b");
      break;
    case SequenceFamily::power:
      if (!(spec.p >= 0.0)) throw InputError("power needs p >= 0");
      break;
  }
  return spec;
}

double WeightSequenceSpec::ratio(int i) const {
  if (i < 1) throw InputError("sequence index starts at 1");
  const double x = static_cast<double>(i);
  switch (family) {
    case SequenceFamily::constant: return a;
    case SequenceFamily::power_deficit: return 1.0 - a * std::pow(x, -p);
    case SequenceFamily::geometric_deficit: return 1.0 - a * std::pow(b, -x);
    case SequenceFamily::geometric: return std::pow(a, x);
    case SequenceFamily::power: return std::pow(x, -p);
  }
  return 1.0;
}

WeightFunction WeightSequenceSpec::weight(int i) const {
  return WeightFunction({1.0, ratio(i)});
}

WeightProfile WeightSequenceSpec::profile(int n) const {
  std::vector<WeightFunction> entries;
  for (int i = 1; i <= n; ++i) entries.push_back(weight(i));
  return WeightProfile(std::move(entries));
}

std::string WeightSequenceSpec::name() const {
  auto num = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  switch (family) {
    case SequenceFamily::constant: return "constant:a=" + num(a);
    case SequenceFamily::power_deficit: return "power_deficit:a=" + num(a) + ",p=" + num(p);
    case SequenceFamily::geometric_deficit: return "geometric_deficit:a=" + num(a) + ",b=" + num(b);
    case SequenceFamily::geometric: return "geometric:a=" + num(a);
    case SequenceFamily::power: return "power:p=" + num(p);
  }
  return "unknown";
}

SequenceClassification classify_weight_sequence(const WeightSequenceSpec& spec, int truncation) {
  if (truncation < 1) throw InputError("truncation must be at least 1");
  SequenceClassification out;
  out.truncation = truncation;
  long double deficit = 0.0L;
  long double total = 0.0L;
  long double log_prod = 0.0L;
  for (int i = 1; i <= truncation; ++i) {
    const double r = spec.ratio(i);
    deficit += 1.0L - r;
    total += r;
    log_prod += std::log(static_cast<long double>(r));
  }
  out.sum_one_minus_r = static_cast<double>(deficit);
  out.sum_r = static_cast<double>(total);
  out.prod_r = static_cast<double>(std::exp(log_prod));

  const double a = spec.a;
  switch (spec.family) {
    case SequenceFamily::constant:
      out.summable_deficit = a == 1.0;
      out.divergent_ratio_sum = true;
      break;
    case SequenceFamily::power_deficit:
      out.summable_deficit = a == 0.0 || spec.p > 1.0;
      out.divergent_ratio_sum = true;
      break;
    case SequenceFamily::geometric_deficit:
      out.summable_deficit = true;
      out.divergent_ratio_sum = true;
      break;
    case SequenceFamily::geometric:
      out.summable_deficit = a == 1.0;
      out.divergent_ratio_sum = a == 1.0;
      break;
    case SequenceFamily::power:
      out.summable_deficit = spec.p == 0.0;
      out.divergent_ratio_sum = spec.p <= 1.0;
      break;
  }
  // min/max of (1, r_i) is r_i itself.
  out.binary_mixing_divergent = out.divergent_ratio_sum;

  if (!out.summable_deficit) {
    out.prod_limit = 0.0;
  } else if (spec.family == SequenceFamily::geometric_deficit) {
    long double prod = 1.0L;
    for (int i = 1; i < 4096; ++i) {
      const long double term = spec.a * std::pow(static_cast<long double>(spec.b), -static_cast<long double>(i));
      if (term < 1e-21L) break;
      prod *= 1.0L - term;
    }
    out.prod_limit = static_cast<double>(prod);
  } else if (spec.family == SequenceFamily::power_deficit) {
    if (a == 0.0) {
      out.prod_limit = 1.0;
    } else if (spec.p == 2.0) {
      // prod (1 - a / i^2) = sin(pi sqrt a) / (pi sqrt a)
      const double s = std::numbers::pi * std::sqrt(a);
      out.prod_limit = std::sin(s) / s;
    }
  } else {
    out.prod_limit = 1.0;
  }
  return out;
}

Instance tilted_polya_family(const WeightSequenceSpec& spec, double alpha, double beta, int n) {
  if (!(alpha > 0.0 && beta > 0.0)) throw InputError("beta-binomial parameters must be positive");
  if (n < 1 || n > 12) throw InputError("tilted_polya_family needs 1 <= n <= 12");
  const std::size_t cells = cell_count(2, n);
  const double log_b0 = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
  std::vector<double> g(cells);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const int ones = std::popcount(idx);
    const double log_b = std::lgamma(alpha + ones) + std::lgamma(beta + n - ones) - std::lgamma(alpha + beta + n);
    g[idx] = std::exp(log_b - log_b0);
  }
  return make_instance(spec.profile(n), SymmetricKernel(2, n, std::move(g)));
}

std::vector<DecayPoint> tv_decay_experiment(const WeightSequenceSpec& spec, int k,
                                            const std::vector<int>& n_list, double alpha, double beta) {
  if (k < 1 || k > 3) throw InputError("tv_decay_experiment needs 1 <= k <= 3");
  std::vector<DecayPoint> out;
  for (int n : n_list) {
    if (n < k || n > 10) throw InputError("tv_decay_experiment needs k <= n <= 10");
    const Instance inst = tilted_polya_family(spec, alpha, beta, n);
    const BoundReport rep = Certifier(inst).report(k);
    out.push_back({n, rep.tv_exact, rep.bound_general, rep.prod_r_k});
  }
  return out;
}

}  // namespace exchkit
