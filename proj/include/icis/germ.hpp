#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icis/random.hpp"
#include "icis/standard_basis.hpp"

namespace icis {

template <class K>
using Matrix = std::vector<std::vector<Polynomial<K>>>;

/// A germ in the x-variables only: X = V(equations) and optionally a function on it.
template <class K>
struct IcisGerm {
  RingPtr<K> ring;
  std::vector<Polynomial<K>> equations;
  std::optional<Polynomial<K>> function;

  std::size_t a() const { return ring->nvars(); }
  std::size_t k() const { return equations.size(); }
  std::size_t dim() const { return a() - k(); }
  const Polynomial<K>& f() const {
    if (!function) throw Error(ErrorCode::Precondition, "germ has no function");
    return *function;
  }
};

/// Family over parameter space: the ring lists the a x-variables first, then the b parameters.
template <class K>
struct FamilyGerm {
  RingPtr<K> ring;
  std::size_t a = 0;
  std::size_t b = 0;
  std::vector<Polynomial<K>> equations;
  Polynomial<K> function;

  std::size_t k() const { return equations.size(); }
  // Throws Semantic when k >= a or some equation or f has a nonzero restriction to x = 0.
  void validate() const;
};

/// Jacobian module of (equations; f) with respect to the x-variables; extra columns are
/// the parameter derivatives when the germ is a family.
template <class K>
struct JacobianModule {
  RingPtr<K> ring;
  Matrix<K> matrix;  // (k+1) x a
  std::vector<ModuleVector<K>> columns;
  std::vector<ModuleVector<K>> extra;
  std::vector<Polynomial<K>> equations;

  std::size_t rank() const { return matrix.size(); }
  Submodule<K> module() const { return Submodule<K>{ring, rank(), columns, equations}; }
};

template <class K>
Polynomial<K> determinant(const Matrix<K>& m);

/// All nonzero maximal minors (size = row count), columns chosen in lexicographic order.
template <class K>
std::vector<Polynomial<K>> maximal_minors(const Matrix<K>& m);

/// Rows are the gradients of fs with respect to the listed variables.
template <class K>
Matrix<K> jacobian_matrix(const std::vector<Polynomial<K>>& fs, const std::vector<std::size_t>& vars);

template <class K>
JacobianModule<K> jacobian_module(const IcisGerm<K>& g);

template <class K>
JacobianModule<K> jacobian_module(const FamilyGerm<K>& g);

/// Maximal minors of the Jacobian matrix, with the equations as ring equations.
template <class K>
Submodule<K> minors_ideal(const JacobianModule<K>& jm);

struct GermOptions {
  SbOptions sb;
  int retries = 6;
};

template <class K>
std::uint64_t milnor_icis(const IcisGerm<K>& g, Rng& rng, const GermOptions& opts = {});

/// (mu(X), mu(Z)) with Z = X cut by f = 0.
template <class K>
std::pair<std::uint64_t, std::uint64_t> milnor_pair(const IcisGerm<K>& g, Rng& rng, const GermOptions& opts = {});

template <class K>
std::uint64_t multiplicity_at_origin(const IcisGerm<K>& g, Rng& rng, const GermOptions& opts = {});

/// Restriction to a random linear subspace of codimension i through 0. The subspace is the
/// graph of a random linear map from the first a - i coordinates to the last i.
template <class K>
IcisGerm<K> linear_section(const IcisGerm<K>& g, std::size_t i, Rng& rng);

/// (mu_i(X), mu_i(Z)), including the conventions at the top indices.
template <class K>
std::pair<std::uint64_t, std::uint64_t> sectional_milnor(const IcisGerm<K>& g, std::size_t i, Rng& rng,
                                                         const GermOptions& opts = {});

struct SectionalSequence {
  std::vector<std::uint64_t> mu_X;
  std::vector<std::uint64_t> mu_Z;
};

template <class K>
SectionalSequence sectional_sequence(const IcisGerm<K>& g, Rng& rng, const GermOptions& opts = {});

/// Random invertible k x k recombination of the equations.
template <class K>
std::vector<Polynomial<K>> recombine(const std::vector<Polynomial<K>>& eqs, Rng& rng);

/// Random linear form sum c_i x_i with nonzero rational coefficients.
template <class K>
Polynomial<K> random_linear_form(const RingPtr<K>& ring, Rng& rng);

/// Runs draw on fresh child streams until two consecutive results agree. A draw that
/// throws NotIsolated or NotIcis counts as a degenerate draw and is retried.
template <class T, class F>
T agreeing_draws(Rng& rng, int retries, const char* what, F&& draw) {
  T prev{};
  bool have_prev = false;
  std::optional<Error> last_error;
  for (int attempt = 0; attempt < retries + 2; ++attempt) {
    Rng child = rng.split();
    try {
      T cur = draw(child);
      if (have_prev && prev == cur) return cur;
      prev = std::move(cur);
      have_prev = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotIsolated && e.code() != ErrorCode::NotIcis) throw;
      last_error = e;
      have_prev = false;
    }
  }
  if (last_error && !have_prev) throw *last_error;
  throw Error(ErrorCode::Genericity, std::string(what) + ": random draws never agreed");
}

}  // namespace icis
