#pragma once

#include <cstdint>
#include <vector>

#include "icis/germ.hpp"

namespace icis {

/// d = dimension of the base germ, r = ambient free rank; the Hilbert polynomial has degree D.
struct ModuleContext {
  std::size_t d = 0;
  std::size_t r = 1;
  std::size_t D() const { return d + r - 1; }

  template <class K>
  static ModuleContext of(const IcisGerm<K>& g) {
    return {g.dim(), g.k() + 1};
  }
};

struct BrOptions {
  SbOptions sb;
  int n_max = 12;
};

/// c_n = dim Sym_n(E) / O[M]_n for n = 1, 2, ... computed incrementally: the degree-n piece
/// is generated by the products of M's generators with a generating set of degree n - 1.
template <class K>
class GradedColengths {
 public:
  GradedColengths(Submodule<K> m, const SbOptions& opts = {});

  // c_n for the next n (starting at 1).
  std::uint64_t next();
  int degree() const { return n_; }

 private:
  Submodule<K> m_;
  SbOptions opts_;
  int noether_ = 0;
  int piece_bound_ = 0;  // T with m^T Sym_n inside O[M]_n for the last n
  int n_ = 0;
  // Generators of O[M]_n as coefficient maps over the degree-n multi-indices of e_1..e_r.
  std::vector<std::vector<std::pair<std::vector<int>, Polynomial<K>>>> current_;
};

/// c_n alone, for a single degree.
template <class K>
std::uint64_t graded_colength(const Submodule<K>& m, int n, const SbOptions& opts = {});

struct HilbertResult {
  std::uint64_t e = 0;
  std::vector<std::uint64_t> colengths;  // c_0, c_1, ...
  std::vector<std::int64_t> differences;  // D-th differences, aligned with colengths from index D
};

/// e(M) as the stable D-th difference of n -> c_n; three equal consecutive values required.
template <class K>
HilbertResult br_multiplicity_hilbert(const Submodule<K>& m, const ModuleContext& ctx, const BrOptions& opts = {});

/// e(M) as the colength of the maximal minors of the generator matrix; needs d + r - 1 generators.
template <class K>
std::uint64_t br_multiplicity_minors(const Submodule<K>& m, const ModuleContext& ctx, const SbOptions& opts = {});

template <class K>
Submodule<K> ideal_times_module(const std::vector<Polynomial<K>>& ideal, const Submodule<K>& m);

/// The maximal ideal of the ring's variables.
template <class K>
std::vector<Polynomial<K>> maximal_ideal(const RingPtr<K>& ring);

/// m(Pi^i): colength of equations + maximal minors of Jac(equations, f, l_1..l_i) + (l_1..l_i)
/// for random linear forms l; the top index gives mult(X).
template <class K>
std::uint64_t polar_multiplicity(const IcisGerm<K>& g, std::size_t i, Rng& rng, const GermOptions& opts = {});

template <class K>
HilbertResult e_mM_direct(const IcisGerm<K>& g, const BrOptions& opts = {});

/// sum_{i=0}^{d} C(upper, i) (mu_i(X) + mu_i(Z)).
std::uint64_t polar_sum(const SectionalSequence& s, std::size_t upper);

std::uint64_t binomial(std::size_t n, std::size_t k);

}  // namespace icis
