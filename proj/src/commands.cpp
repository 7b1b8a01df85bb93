#include "exchkit/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "exchkit/asymptotics.hpp"
#include "exchkit/bounds.hpp"
#include "exchkit/decompose.hpp"
#include "exchkit/extremal.hpp"
#include "exchkit/instance_io.hpp"
#include "exchkit/rng.hpp"

namespace exchkit::cli {

namespace {

using nlohmann::ordered_json;

// Writes to the file at `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
  } else {
    write_text_file(path, text);
  }
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) throw InputError("bad urn count: " + std::string(item));
    out.push_back(v);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  return out;
}

std::string tuple_label(std::size_t index, int c, int k) {
  std::string s;
  for (int v : decode_tuple(index, c, k)) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

}  // namespace

int cmd_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  const Instance inst = random_instance(opts.seed, opts.c, opts.n, opts.r_min);
  emit(opts.out, serialize_instance(to_instance_file(inst)), out);
  if (!opts.out.empty()) err << "wrote instance c=" << inst.c << " n=" << inst.n << " to " << opts.out << '\n';
  return kExitOk;
}

int cmd_check(const std::string& instance_path, std::ostream& out, std::ostream& err) {
  const InstanceFile file = read_instance_file(instance_path);
  const WeightProfile lambda = WeightProfile::from_rows(file.lambda);
  std::vector<double> f(file.g.size());
  double total = 0.0;
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (!(file.g[idx] > 0.0)) throw InputError("g must be strictly positive");
    double tilt = 1.0;
    const std::vector<int> x = decode_tuple(idx, file.c, file.n);
    for (int i = 0; i < file.n; ++i) tilt *= lambda[i][x[static_cast<std::size_t>(i)]];
    f[idx] = tilt * file.g[idx];
    total += f[idx];
  }
  for (double& v : f) v /= total;
  if (auto bad = find_symmetry_violation(f, file.c, file.n, lambda)) {
    std::vector<int> swapped = bad->tuple;
    std::swap(swapped[static_cast<std::size_t>(bad->position)], swapped[static_cast<std::size_t>(bad->position + 1)]);
    auto show = [](const std::vector<int>& x) {
      std::string s = "(";
      for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
      return s + ")";
    };
    err << "not lambda-exchangeable: transposition (" << bad->position + 1 << ' ' << bad->position + 2
        << ") maps " << show(bad->tuple) << " to " << show(swapped) << " but f/prod(lambda) changes from "
        << format_double(bad->value) << " to " << format_double(bad->swapped_value) << '\n';
    return kExitFailed;
  }
  out << "ok: lambda-exchangeable (c=" << file.c << ", n=" << file.n << ")\n";
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<BoundReport> reports;
  if (!opts.instance.empty()) {
    const Instance inst = to_instance(read_instance_file(opts.instance));
    const Certifier cert(inst);
    if (opts.k_list.empty()) {
      reports = cert.report_all();
    } else {
      for (int k : opts.k_list) reports.push_back(cert.report(k));
    }
  } else {
    SweepConfig config;
    config.master_seed = opts.seed;
    config.instances = opts.instances;
    config.n_max = opts.n_max;
    if (opts.c) config.alphabet_sizes = {*opts.c};
    if (opts.r_min) config.r_mins = {*opts.r_min};
    config.k_list = opts.k_list;
    reports = run_sweep(config);
  }
  std::ostringstream csv;
  write_report_csv(csv, reports);
  emit(opts.out, csv.str(), out);

  const auto general_fail = std::count_if(reports.begin(), reports.end(), [](const BoundReport& r) { return !r.pass_general; });
  const auto finite_fail = std::count_if(reports.begin(), reports.end(), [](const BoundReport& r) { return !r.pass_finite; });
  err << reports.size() << " rows; general-bound violations: " << general_fail
      << "; finite-bound violations: " << finite_fail << '\n';
  return (general_fail == 0 && finite_fail == 0) ? kExitOk : kExitFailed;
}

int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err) {
  const Instance inst = to_instance(read_instance_file(opts.instance));
  if (opts.samples == 0) throw InputError("--samples must be positive");
  std::optional<TupleDistribution> exact;
  TupleSamples samples;
  ordered_json report;
  if (!opts.urn.empty()) {
    const Urn urn(parse_counts(opts.urn));
    exact = urn_conditional(inst.lambda, urn, inst.n);
    samples = sample_urn_conditional(inst.lambda, urn, opts.seed, opts.samples);
    report["urn"] = urn.counts();
  } else {
    // Draw the urn from the mixture weights, then the arrangement given the urn.
    const UrnMixture mix = decompose(inst.p, inst.lambda);
    Rng picker(derive_seed(opts.seed, 0));
    std::vector<std::size_t> choice(opts.samples);
    std::vector<std::size_t> per_atom(mix.size(), 0);
    for (auto& a : choice) {
      const double u = picker.uniform();
      double acc = 0.0;
      a = mix.size() - 1;
      for (std::size_t i = 0; i < mix.size(); ++i) {
        acc += mix.atoms()[i].weight;
        if (u < acc) {
          a = i;
          break;
        }
      }
      ++per_atom[a];
    }
    std::vector<TupleSamples> streams;
    for (std::size_t i = 0; i < mix.size(); ++i) {
      streams.push_back(sample_urn_conditional(inst.lambda, mix.atoms()[i].urn, derive_seed(opts.seed, i + 1), per_atom[i]));
    }
    std::vector<std::size_t> cursor(mix.size(), 0);
    samples.length = inst.n;
    samples.values.reserve(opts.samples * static_cast<std::size_t>(inst.n));
    for (std::size_t a : choice) {
      const auto row = streams[a][cursor[a]++];
      samples.values.insert(samples.values.end(), row.begin(), row.end());
    }
    exact = inst.p;
    report["urn"] = "mixture";
  }

  const std::vector<std::uint64_t> counts = tuple_counts(samples, inst.c);
  std::vector<double> freq(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) freq[i] = static_cast<double>(counts[i]) / opts.samples;
  const TupleDistribution empirical(inst.n, inst.c, freq);
  const GoodnessOfFit fit = chi_square_gof(counts, *exact);

  report["draws"] = opts.samples;
  report["seed"] = opts.seed;
  report["tv_empirical"] = tv_distance(empirical, *exact);
  report["chi_square"] = fit.statistic;
  report["degrees_of_freedom"] = fit.degrees_of_freedom;
  report["critical_value_999"] = fit.critical_value;
  report["p_value"] = fit.p_value;
  report["accepted"] = fit.accepted;
  ordered_json cells = ordered_json::array();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if ((*exact)[i] == 0.0 && counts[i] == 0) continue;
    cells.push_back({{"tuple", tuple_label(i, inst.c, inst.n)}, {"exact", (*exact)[i]}, {"frequency", freq[i]}});
  }
  report["cells"] = cells;

  if (!opts.out.empty()) {
    std::ostringstream csv;
    for (int i = 1; i <= inst.n; ++i) csv << (i > 1 ? "," : "") << 'x' << i;
    csv << "\r\n";
    for (std::size_t d = 0; d < samples.count(); ++d) {
      const auto row = samples[d];
      for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
      csv << "\r\n";
    }
    write_text_file(opts.out, csv.str());
    err << "wrote " << samples.count() << " draws to " << opts.out << '\n';
  }
  out << report.dump(2) << '\n';
  return kExitOk;
}

int cmd_project(const ProjectOptions& opts, std::ostream& out, std::ostream& err) {
  const Instance inst = to_instance(read_instance_file(opts.instance));
  if (opts.k < 1 || opts.k > inst.n) throw InputError("--k must lie in [1, n]");
  const Certifier cert(inst);
  const TupleDistribution pk = marginal(inst.p, opts.k);
  const double tv_constructed = tv_distance(pk, cert.approximant(opts.k));
  const auto grid = merge_grids(simplex_grid(inst.c, opts.grid), urn_grid(cert.mixture()));
  const Projection proj = lp_project(pk, inst.lambda, grid);

  ordered_json report;
  report["k"] = opts.k;
  report["grid_resolution"] = opts.grid;
  report["grid_atoms"] = grid.size();
  report["value"] = proj.value;
  report["tv_constructed"] = tv_constructed;
  report["bound_general"] = bound_general(inst.n, opts.k, inst.lambda.ratios());
  ordered_json atoms = ordered_json::array();
  for (std::size_t m = 0; m < grid.size(); ++m) {
    if (proj.weights[m] > 1e-12) atoms.push_back({{"base_measure", grid[m]}, {"weight", proj.weights[m]}});
  }
  report["mixture"] = atoms;
  emit(opts.out, report.dump(2) + "\n", out);
  const bool sound = proj.value <= tv_constructed + 1e-8;
  if (!sound) err << "projection exceeds the constructed approximant's distance\n";
  return sound ? kExitOk : kExitFailed;
}

int cmd_asymptotics(const AsymptoticsOptions& opts, std::ostream& out, std::ostream& err) {
  const WeightSequenceSpec spec = WeightSequenceSpec::parse(opts.family);
  const int start = opts.n_min > 0 ? opts.n_min : opts.k;
  std::vector<int> ns;
  for (int n = start; n <= opts.n_max; ++n) ns.push_back(n);
  if (ns.empty()) throw InputError("empty n range");
  const auto curve = tv_decay_experiment(spec, opts.k, ns, opts.alpha, opts.beta);

  std::ostringstream csv;
  csv << "n,tv_exact,bound_general,prod_r_k\r\n";
  bool ok = true;
  for (const auto& pt : curve) {
    csv << pt.n << ',' << format_double(pt.tv_exact) << ',' << format_double(pt.bound_general) << ','
        << format_double(pt.prod_r_k) << "\r\n";
    ok = ok && pt.tv_exact <= pt.bound_general + kAbsTol;
  }
  emit(opts.out, csv.str(), out);

  const SequenceClassification cls = classify_weight_sequence(spec, 1000000);
  err << spec.name() << ": sum(1-r)=" << format_double(cls.sum_one_minus_r) << " sum(r)=" << format_double(cls.sum_r)
      << " prod(r)=" << format_double(cls.prod_r) << " (N=" << cls.truncation << "); summable_deficit="
      << (cls.summable_deficit ? "yes" : "no") << " divergent_ratio_sum=" << (cls.divergent_ratio_sum ? "yes" : "no")
      << " binary_mixing_divergent=" << (cls.binary_mixing_divergent ? "yes" : "no") << '\n';
  return ok ? kExitOk : kExitFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exchkit: exact computations for weighted exchangeable sequences"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random lambda-exchangeable instance");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--c", gen.c, "Alphabet size")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Sequence length")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--r-min", gen.r_min, "Smallest weight ratio, in (0, 1]");
  gen_cmd->add_option("--out", gen.out, "Output JSON path (default stdout)");

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "Test an instance file for lambda-exchangeability");
  check_cmd->add_option("instance,--instance", check_path, "Instance JSON")->required();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Certify the approximation bounds");
  verify_cmd->add_option("instance,--instance", verify.instance, "Instance JSON (omit for a seeded sweep)");
  verify_cmd->add_option("--seed", verify.seed, "Master seed of the sweep");
  verify_cmd->add_option("--instances", verify.instances, "Number of sweep instances");
  verify_cmd->add_option("--c", verify.c, "Restrict the sweep to one alphabet size");
  verify_cmd->add_option("--n-max", verify.n_max, "Largest sequence length in the sweep");
  verify_cmd->add_option("--r-min", verify.r_min, "Restrict the sweep to one ratio floor");
  verify_cmd->add_option("--k", verify.k_list, "Marginal orders to report (repeatable; default all)");
  verify_cmd->add_option("--out", verify.out, "Output CSV path (default stdout)");

  SampleOptions sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw exact samples and test them against the exact law");
  sample_cmd->add_option("instance,--instance", sample.instance, "Instance JSON")->required();
  sample_cmd->add_option("--samples", sample.samples, "Number of draws");
  sample_cmd->add_option("--seed", sample.seed, "Random seed");
  sample_cmd->add_option("--urn", sample.urn, "Fix the urn, as comma-separated counts");
  sample_cmd->add_option("--out", sample.out, "Write the draws as CSV");

  ProjectOptions project;
  auto* project_cmd = app.add_subcommand("project", "Closest weighted i.i.d. mixture by linear programming");
  project_cmd->add_option("instance,--instance", project.instance, "Instance JSON")->required();
  project_cmd->add_option("--k", project.k, "Marginal order");
  project_cmd->add_option("--grid", project.grid, "Base-measure grid resolution")->check(CLI::PositiveNumber);
  project_cmd->add_option("--out", project.out, "Output JSON path (default stdout)");

  AsymptoticsOptions asym;
  auto* asym_cmd = app.add_subcommand("asymptotics", "TV decay along a weight-ratio sequence family");
  asym_cmd->add_option("--family", asym.family, "Family, e.g. exchangeable, geometric_deficit:a=1,b=2, harmonic");
  asym_cmd->add_option("--k", asym.k, "Marginal order (1..3)");
  asym_cmd->add_option("--n-min", asym.n_min, "First sequence length (default k)");
  asym_cmd->add_option("--n-max", asym.n_max, "Last sequence length (<= 10)");
  asym_cmd->add_option("--alpha", asym.alpha, "Beta-binomial alpha");
  asym_cmd->add_option("--beta", asym.beta, "Beta-binomial beta");
  asym_cmd->add_option("--out", asym.out, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out, err);
    if (*check_cmd) return cmd_check(check_path, out, err);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*sample_cmd) return cmd_sample(sample, out, err);
    if (*project_cmd) return cmd_project(project, out, err);
    if (*asym_cmd) return cmd_asymptotics(asym, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const FalsificationError& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitInput;
}

}  // namespace exchkit::cli
