#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icis/module.hpp"

namespace icis {

/// Dimension of a quotient module; nullopt-like INFINITE state when the quotient is infinite.
class Colength {
 public:
  Colength() = default;
  static Colength infinite() { return Colength(); }
  static Colength finite(std::uint64_t n) {
    Colength c;
    c.value_ = n;
    return c;
  }

  bool is_finite() const { return value_.has_value(); }
  std::uint64_t value() const {
    if (!value_) throw Error(ErrorCode::Infinite, "colength is infinite");
    return *value_;
  }
  std::string str() const { return value_ ? std::to_string(*value_) : "INFINITE"; }
  bool operator==(const Colength&) const = default;

 private:
  std::optional<std::uint64_t> value_;
};

struct SbOptions {
  std::size_t max_pairs = 2'000'000;
  std::size_t max_basis = 200'000;
  std::size_t max_terms = 50'000'000;
  // Truncate once the leading module is Artinian (local orders only).
  bool highest_corner = true;
  // Extra degrees kept above a detected corner. With slack 1 everything discarded lies in
  // m times the module, so the inputs marked essential still generate it (Nakayama).
  int corner_slack = 0;
  // Known degree bounds N_c with m^{N_c} e_c contained in the module; empty when unknown.
  // The engine truncates all components at the largest of them.
  std::vector<int> noether;
  // colength() first tries truncations at growing degree while the truncated space has at
  // most this many monomials; 0 disables it.
  double deepening_limit = 60000;
};

struct LeadingTerm {
  std::size_t component;
  Monomial monomial;
  bool operator==(const LeadingTerm&) const = default;
};

/// Result of a standard basis (local order) or Groebner basis (global order) computation.
template <class K>
class StandardBasis {
 public:
  StandardBasis(RingPtr<K> ring, std::size_t rank, TermOrder order, std::vector<ModuleVector<K>> elements,
                std::vector<LeadingTerm> leading, std::vector<int> truncation)
      : ring_(std::move(ring)),
        rank_(rank),
        order_(std::move(order)),
        elements_(std::move(elements)),
        leading_(std::move(leading)),
        truncation_(std::move(truncation)) {}

  const RingPtr<K>& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const TermOrder& order() const { return order_; }
  const std::vector<ModuleVector<K>>& elements() const { return elements_; }
  // Minimal generators of the leading module.
  const std::vector<LeadingTerm>& leading_module() const { return leading_; }
  // Per-component degree N_c with every monomial of degree >= N_c in the leading module,
  // or -1 when no truncation took place.
  const std::vector<int>& truncation() const { return truncation_; }

  // Indices of input generators that were not redundant when processed; they generate the module.
  const std::vector<std::size_t>& essential_generators() const { return essential_; }
  void set_essential_generators(std::vector<std::size_t> idx) { essential_ = std::move(idx); }

  // Smallest N found with m^N E inside the module (all components), if the quotient is finite.
  std::optional<int> noether_bound() const;

  bool contains_unit() const {
    for (const auto& lt : leading_)
      if (lt.monomial.is_one()) return true;
    return false;
  }

 private:
  RingPtr<K> ring_;
  std::size_t rank_;
  TermOrder order_;
  std::vector<ModuleVector<K>> elements_;
  std::vector<LeadingTerm> leading_;
  std::vector<int> truncation_;
  std::vector<std::size_t> essential_;
};

std::optional<int> noether_bound(const std::vector<LeadingTerm>& leading, std::size_t nvars, std::size_t rank,
                                 const std::vector<int>& truncation);

template <class K>
std::optional<int> StandardBasis<K>::noether_bound() const {
  return icis::noether_bound(leading_, ring_->nvars(), rank_, truncation_);
}

/// Leading term of a module vector under the term-over-position order built on ord.
template <class K>
std::optional<LeadingTerm> leading_term(const ModuleVector<K>& v, const TermOrder& ord);

/// Mora normal form (local orders) or top-reducing division (global orders).
/// For local orders the result is a weak normal form: unit * v = sum(q_i * b_i) + result.
template <class K>
struct NormalForm {
  ModuleVector<K> remainder;
  Polynomial<K> unit;
  std::vector<Polynomial<K>> cofactors;
};

template <class K>
NormalForm<K> normal_form(const ModuleVector<K>& v, const std::vector<ModuleVector<K>>& basis, const TermOrder& ord);

template <class K>
StandardBasis<K> standard_basis(const Submodule<K>& m, const TermOrder& ord, const SbOptions& opts = {});

/// Counts standard monomials (component, monomial) outside the leading module.
Colength count_standard_monomials(const std::vector<LeadingTerm>& leading, std::size_t nvars, std::size_t rank,
                                  const std::vector<int>& truncation = {});

template <class K>
Colength colength(const StandardBasis<K>& sb);

template <class K>
Colength colength(const Submodule<K>& m, const TermOrder& ord = TermOrder::local(), const SbOptions& opts = {});

/// Smallest N with m^N E inside the module in the local ring, or nullopt when the quotient is infinite.
template <class K>
std::optional<int> noether_degree(const Submodule<K>& m, const SbOptions& opts = {});

template <class K>
bool is_zero_dimensional(const Submodule<K>& m, const TermOrder& ord = TermOrder::local(), const SbOptions& opts = {});

/// g vanishes on the zero set of the ideal (Rabinowitsch: 1 in ideal + (1 - w g)).
template <class K>
bool radical_membership(const Polynomial<K>& g, const Submodule<K>& ideal, const SbOptions& opts = {});

/// Same question for the germs at the origin: g vanishes on every component of V(ideal)
/// through 0. Decided by eliminating w from ideal + (1 - w g) and asking whether the
/// elimination ideal contains an element not vanishing at 0.
template <class K>
bool local_radical_membership(const Polynomial<K>& g, const Submodule<K>& ideal, const SbOptions& opts = {});

}  // namespace icis
