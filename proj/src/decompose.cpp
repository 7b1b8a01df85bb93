#include "exchkit/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "exchkit/extremal.hpp"

namespace exchkit {

UrnMixture::UrnMixture(std::vector<UrnAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw InputError("mixture needs at least one atom");
  std::set<Urn> seen;
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (atom.urn.c() != atoms_.front().urn.c() || atom.urn.n() != atoms_.front().urn.n()) {
      throw InputError("mixture atoms must share the alphabet and urn size");
    }
    if (!(atom.weight >= 0.0) || !std::isfinite(atom.weight)) {
      throw InputError("mixture weights must be nonnegative");
    }
    if (!seen.insert(atom.urn).second) throw InputError("mixture atoms must be distinct urns");
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > kMassTol) throw InputError("mixture weights must sum to 1");
}

double UrnMixture::weight_of(const Urn& urn) const {
  for (const auto& atom : atoms_) {
    if (atom.urn == urn) return atom.weight;
  }
  return 0.0;
}

std::vector<Urn> enumerate_urns(int c, int n) {
  if (c < 1 || n < 1) throw InputError("enumerate_urns: need c >= 1 and n >= 1");
  std::vector<Urn> out;
  std::vector<int> counts(static_cast<std::size_t>(c), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == c - 1) {
      counts[static_cast<std::size_t>(pos)] = left;
      out.emplace_back(counts);
      return;
    }
    for (int v = left; v >= 0; --v) {
      counts[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

namespace {

// Urn position (in enumerate_urns order) of every tuple index of X^n.
struct TypeClasses {
  std::vector<Urn> urns;
  std::vector<std::size_t> class_of;  // per tuple index

  TypeClasses(int c, int n) : urns(enumerate_urns(c, n)) {
    std::map<std::vector<int>, std::size_t> position;
    for (std::size_t u = 0; u < urns.size(); ++u) position.emplace(urns[u].counts(), u);
    const std::size_t cells = cell_count(c, n);
    class_of.resize(cells);
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    std::vector<int> counts(static_cast<std::size_t>(c), 0);
    counts[0] = n;
    for (std::size_t idx = 0; idx < cells; ++idx) {
      class_of[idx] = position.at(counts);
      for (int i = n - 1; i >= 0; --i) {
        auto& xi = x[static_cast<std::size_t>(i)];
        --counts[static_cast<std::size_t>(xi)];
        if (++xi < c) {
          ++counts[static_cast<std::size_t>(xi)];
          break;
        }
        xi = 0;
        ++counts[0];
      }
    }
  }
};

void check_shape(const UrnMixture& mix, const WeightProfile& lambda) {
  if (mix.c() != lambda.c() || mix.n() != lambda.n()) {
    throw InputError("mixture and weight profile shapes differ");
  }
}

}  // namespace

UrnMixture decompose(const TupleDistribution& p, const WeightProfile& lambda, double tol) {
  const int n = p.k();
  const int c = p.c();
  if (lambda.n() != n || lambda.c() != c) throw InputError("decompose: shape mismatch");
  if (n > kMaxUrnSize) throw InputError("decompose is limited to n <= 12");
  if (auto bad = find_symmetry_violation(p.probs(), c, n, lambda)) {
    throw InputError("decompose: input is not lambda-exchangeable (positions " +
                     std::to_string(bad->position + 1) + "," + std::to_string(bad->position + 2) + ")");
  }

  const TypeClasses classes(c, n);
  std::vector<double> weight(classes.urns.size(), 0.0);
  for (std::size_t idx = 0; idx < p.size(); ++idx) weight[classes.class_of[idx]] += p[idx];

  std::vector<ExtremeLaw> laws;
  std::vector<std::ptrdiff_t> law_of(classes.urns.size(), -1);
  for (std::size_t u = 0; u < classes.urns.size(); ++u) {
    if (weight[u] > 0.0) {
      law_of[u] = static_cast<std::ptrdiff_t>(laws.size());
      laws.emplace_back(lambda, classes.urns[u]);
    }
  }

  // Conditionals are compared directly when the class carries real mass;
  // for vanishing classes only the joint mass is meaningful.
  constexpr double kConditionalFloor = 1e-12;
  double worst = 0.0;
  for (std::size_t idx = 0; idx < p.size(); ++idx) {
    const std::size_t u = classes.class_of[idx];
    if (law_of[u] < 0) continue;
    const std::vector<int> x = decode_tuple(idx, c, n);
    const double expected = laws[static_cast<std::size_t>(law_of[u])].probability(x);
    const double w = weight[u];
    const double err = w >= kConditionalFloor ? std::abs(p[idx] / w - expected)
                                              : std::abs(p[idx] - w * expected);
    worst = std::max(worst, err);
    if (err > tol) {
      throw FalsificationError("decompose: conditional law on the type class of urn " +
                               to_string(classes.urns[u]) +
                               " differs from the extreme point by " + std::to_string(err));
    }
  }

  double total = 0.0;
  for (std::size_t u = 0; u < weight.size(); ++u) total += weight[u];
  std::vector<UrnAtom> atoms;
  for (std::size_t u = 0; u < classes.urns.size(); ++u) {
    if (weight[u] > 0.0) atoms.push_back({classes.urns[u], weight[u] / total});
  }
  UrnMixture mix(std::move(atoms));
  mix.max_conditional_error = worst;
  return mix;
}

TupleDistribution reconstruct(const UrnMixture& mix, const WeightProfile& lambda) {
  check_shape(mix, lambda);
  const int n = mix.n();
  const int c = mix.c();
  const TypeClasses classes(c, n);
  std::vector<std::ptrdiff_t> atom_of(classes.urns.size(), -1);
  std::vector<ExtremeLaw> laws;
  for (std::size_t a = 0; a < mix.size(); ++a) {
    const auto it = std::find(classes.urns.begin(), classes.urns.end(), mix.atoms()[a].urn);
    atom_of[static_cast<std::size_t>(it - classes.urns.begin())] = static_cast<std::ptrdiff_t>(a);
    laws.emplace_back(lambda, mix.atoms()[a].urn);
  }
  std::vector<double> probs(classes.class_of.size(), 0.0);
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    const std::ptrdiff_t a = atom_of[classes.class_of[idx]];
    if (a < 0) continue;
    const auto ua = static_cast<std::size_t>(a);
    probs[idx] = mix.atoms()[ua].weight * laws[ua].probability(decode_tuple(idx, c, n));
  }
  return TupleDistribution(n, c, std::move(probs));
}

TupleDistribution weighted_iid_mixture(const UrnMixture& mix, const WeightProfile& lambda, int k) {
  check_shape(mix, lambda);
  std::vector<double> probs(cell_count(mix.c(), k), 0.0);
  for (const auto& atom : mix.atoms()) {
    if (atom.weight == 0.0) continue;
    const TupleDistribution q = urn_weighted_iid(lambda, atom.urn, k);
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] += atom.weight * q[i];
  }
  return TupleDistribution(k, mix.c(), std::move(probs));
}

TupleDistribution build_Q(const TupleDistribution& p, const WeightProfile& lambda) {
  return weighted_iid_mixture(decompose(p, lambda), lambda, p.k());
}

}  // namespace exchkit
