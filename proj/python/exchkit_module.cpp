#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exchkit/asymptotics.hpp"
#include "exchkit/bounds.hpp"
#include "exchkit/decompose.hpp"
#include "exchkit/extremal.hpp"
#include "exchkit/instance_io.hpp"
#include "exchkit/permanent.hpp"

namespace py = pybind11;
using namespace exchkit;

namespace {

WeightProfile profile_of(const std::vector<std::vector<double>>& rows) { return WeightProfile::from_rows(rows); }

std::vector<std::vector<double>> rows_of(const WeightProfile& lambda) {
  std::vector<std::vector<double>> out;
  for (const auto& w : lambda.entries()) out.push_back(w.values());
  return out;
}

py::dict report_dict(const BoundReport& r) {
  py::dict d;
  d["seed"] = r.seed;
  d["c"] = r.c;
  d["n"] = r.n;
  d["k"] = r.k;
  d["tv_exact"] = r.tv_exact;
  d["bound_general"] = r.bound_general;
  d["bound_finite"] = r.bound_finite;
  d["prod_r_k"] = r.prod_r_k;
  d["prod_r_n"] = r.prod_r_n;
  d["pass_general"] = r.pass_general;
  d["pass_finite"] = r.pass_finite;
  d["urn_max_tv"] = r.urn_max_tv;
  d["urn_max_bound"] = r.urn_max_bound;
  d["urn_reduction_ok"] = r.urn_reduction_ok;
  d["estpq_ok"] = r.estpq_ok;
  d["mean_identity_ok"] = r.mean_identity_ok;
  return d;
}

Instance instance_from_json(const std::string& text) { return to_instance(parse_instance(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations for weighted exchangeable sequences on finite alphabets";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<FalsificationError>(m, "FalsificationError", PyExc_RuntimeError);

  py::class_<TupleDistribution>(m, "TupleDistribution")
      .def(py::init<int, int, std::vector<double>>(), py::arg("k"), py::arg("c"), py::arg("probs"))
      .def_property_readonly("k", &TupleDistribution::k)
      .def_property_readonly("c", &TupleDistribution::c)
      .def_property_readonly("probs", &TupleDistribution::probs)
      .def("at", [](const TupleDistribution& d, const std::vector<int>& x) { return d.at(x); })
      .def("__len__", &TupleDistribution::size)
      .def("__getitem__", [](const TupleDistribution& d, std::size_t i) {
        if (i >= d.size()) throw py::index_error();
        return d[i];
      });

  m.def("encode_tuple", [](const std::vector<int>& x, int c) { return encode_tuple(x, c); });
  m.def("decode_tuple", &decode_tuple, py::arg("index"), py::arg("c"), py::arg("k"));
  m.def("tv_distance", &tv_distance);
  m.def("marginal", &marginal, py::arg("p"), py::arg("k"));
  m.def(
      "build_model",
      [](const std::vector<std::vector<double>>& lambda, const std::vector<double>& g) {
        const WeightProfile prof = profile_of(lambda);
        return build_model(prof, SymmetricKernel(prof.c(), prof.n(), g));
      },
      py::arg("lambda_rows"), py::arg("g"));
  m.def(
      "is_weighted_exchangeable",
      [](const TupleDistribution& f, const std::vector<std::vector<double>>& lambda) {
        return is_weighted_exchangeable(f, profile_of(lambda));
      },
      py::arg("f"), py::arg("lambda_rows"));

  m.def(
      "permanent",
      [](const std::vector<std::vector<double>>& rows) {
        const int n = static_cast<int>(rows.size());
        std::vector<double> flat;
        for (const auto& r : rows) {
          if (static_cast<int>(r.size()) != n) throw InputError("permanent: matrix must be square");
          flat.insert(flat.end(), r.begin(), r.end());
        }
        return permanent_ryser(WeightMatrix(n, n, flat)).to_double();
      },
      py::arg("matrix"), "Permanent of a square matrix with positive entries.");

  m.def(
      "urn_conditional",
      [](const std::vector<std::vector<double>>& lambda, const std::vector<int>& counts, int k) {
        return urn_conditional(profile_of(lambda), Urn(counts), k);
      },
      py::arg("lambda_rows"), py::arg("counts"), py::arg("k"));
  m.def(
      "urn_weighted_iid",
      [](const std::vector<std::vector<double>>& lambda, const std::vector<int>& counts, int k) {
        return urn_weighted_iid(profile_of(lambda), Urn(counts), k);
      },
      py::arg("lambda_rows"), py::arg("counts"), py::arg("k"));
  m.def(
      "sample_urn_conditional",
      [](const std::vector<std::vector<double>>& lambda, const std::vector<int>& counts, std::uint64_t seed,
         std::size_t draws) {
        const TupleSamples s = sample_urn_conditional(profile_of(lambda), Urn(counts), seed, draws);
        std::vector<std::vector<int>> out;
        out.reserve(s.count());
        for (std::size_t i = 0; i < s.count(); ++i) out.emplace_back(s[i].begin(), s[i].end());
        return out;
      },
      py::arg("lambda_rows"), py::arg("counts"), py::arg("seed"), py::arg("draws"));

  m.def(
      "decompose",
      [](const TupleDistribution& p, const std::vector<std::vector<double>>& lambda) {
        std::vector<std::pair<std::vector<int>, double>> out;
        const UrnMixture mix = decompose(p, profile_of(lambda));
        for (const auto& a : mix.atoms()) out.emplace_back(a.urn.counts(), a.weight);
        return out;
      },
      py::arg("p"), py::arg("lambda_rows"), "List of (urn counts, weight).");

  m.def("bound_general", [](int n, int k, const std::vector<double>& r) { return bound_general(n, k, r); });
  m.def("bound_finite", [](int c, int n, int k, const std::vector<double>& r) { return bound_finite(c, n, k, r); });
  m.def("freedman_gap", [](int n, int k) {
    const FreedmanGap f = freedman_gap(n, k);
    return py::make_tuple(f.gap, f.df_bound, f.ok);
  });

  py::class_<Instance>(m, "Instance")
      .def_readonly("c", &Instance::c)
      .def_readonly("n", &Instance::n)
      .def_readonly("seed", &Instance::seed)
      .def_readonly("p", &Instance::p)
      .def_property_readonly("lambda_rows", [](const Instance& i) { return rows_of(i.lambda); })
      .def("to_json", [](const Instance& i) { return serialize_instance(to_instance_file(i)); })
      .def_static("from_json", &instance_from_json);

  m.def("random_instance", &random_instance, py::arg("seed"), py::arg("c"), py::arg("n"), py::arg("r_min"));
  m.def(
      "verify",
      [](const Instance& inst) {
        py::list out;
        for (const auto& r : Certifier(inst).report_all()) out.append(report_dict(r));
        return out;
      },
      py::arg("instance"), "Bound reports for every k in 1..n.");
  m.def(
      "lp_project",
      [](const Instance& inst, int k, int grid) {
        const Certifier cert(inst);
        const auto atoms = merge_grids(simplex_grid(inst.c, grid), urn_grid(cert.mixture()));
        return lp_project(marginal(inst.p, k), inst.lambda, atoms).value;
      },
      py::arg("instance"), py::arg("k"), py::arg("grid") = 100);
  m.def(
      "tv_decay",
      [](const std::string& family, int k, const std::vector<int>& ns, double alpha, double beta) {
        std::vector<std::tuple<int, double, double>> out;
        for (const auto& pt : tv_decay_experiment(WeightSequenceSpec::parse(family), k, ns, alpha, beta)) {
          out.emplace_back(pt.n, pt.tv_exact, pt.bound_general);
        }
        return out;
      },
      py::arg("family"), py::arg("k"), py::arg("ns"), py::arg("alpha") = 1.0, py::arg("beta") = 1.0,
      "List of (n, tv_exact, bound_general).");
}
