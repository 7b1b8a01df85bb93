#pragma once

// Mixture-of-extreme-points decomposition of lambda-exchangeable laws.

#include <vector>

#include "exchkit/core.hpp"

namespace exchkit {

struct UrnAtom {
  Urn urn;
  double weight;
};

class UrnMixture {
 public:
  explicit UrnMixture(std::vector<UrnAtom> atoms);

  const std::vector<UrnAtom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  int c() const { return atoms_.front().urn.c(); }
  int n() const { return atoms_.front().urn.n(); }

  /// Weight of the given urn, 0 when absent.
  double weight_of(const Urn& urn) const;

  /// Largest |P(x)/w_U - P_{U,n}(x)| found while decomposing (0 if built directly).
  double max_conditional_error = 0.0;

 private:
  std::vector<UrnAtom> atoms_;
};

/// Weak compositions of n into c parts in descending lexicographic order:
/// (n,0,..,0) first, (0,..,0,n) last.
std::vector<Urn> enumerate_urns(int c, int n);

/// w_U = P(type class of U) for each urn with positive mass, after checking
/// that the conditional law on every class matches the extreme point of that
/// urn within `tol`. Throws InputError when P is not lambda-exchangeable and
/// FalsificationError on a conditional mismatch.
UrnMixture decompose(const TupleDistribution& p, const WeightProfile& lambda,
                     double tol = kMassTol);

/// sum_U w_U * P_{U,n}.
TupleDistribution reconstruct(const UrnMixture& mix, const WeightProfile& lambda);

/// sum_U w_U * Q_{U,k}: the mixture of weighted i.i.d. laws with base measures
/// given by the urn empirical measures.
TupleDistribution weighted_iid_mixture(const UrnMixture& mix, const WeightProfile& lambda, int k);

/// Q_n for a lambda-exchangeable P: weighted_iid_mixture(decompose(P), lambda, n).
TupleDistribution build_Q(const TupleDistribution& p, const WeightProfile& lambda);

}  // namespace exchkit
