#pragma once

#include <string>
#include <vector>

#include "icis/polynomial.hpp"

namespace icis {

/// Element of a free module O^r: a tuple of polynomials. An ideal element is the r = 1 case.
template <class K>
class ModuleVector {
 public:
  ModuleVector() = default;
  ModuleVector(const RingPtr<K>& ring, std::size_t rank) : comps_(rank, Polynomial<K>(ring)) {
    if (rank == 0) throw Error(ErrorCode::Precondition, "module vectors need rank >= 1");
  }
  explicit ModuleVector(std::vector<Polynomial<K>> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw Error(ErrorCode::Precondition, "module vectors need rank >= 1");
  }
  static ModuleVector unit(const RingPtr<K>& ring, std::size_t rank, std::size_t c, const Polynomial<K>& p) {
    ModuleVector v(ring, rank);
    v.comps_.at(c) = p;
    return v;
  }

  std::size_t rank() const { return comps_.size(); }
  const RingPtr<K>& ring() const { return comps_.front().ring(); }
  const Polynomial<K>& operator[](std::size_t i) const { return comps_[i]; }
  Polynomial<K>& operator[](std::size_t i) { return comps_[i]; }
  const std::vector<Polynomial<K>>& components() const { return comps_; }

  bool is_zero() const {
    for (const auto& p : comps_)
      if (!p.is_zero()) return false;
    return true;
  }

  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) {
    check_rank(a, b);
    for (std::size_t i = 0; i < a.rank(); ++i) a.comps_[i] += b.comps_[i];
    return a;
  }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) {
    check_rank(a, b);
    for (std::size_t i = 0; i < a.rank(); ++i) a.comps_[i] -= b.comps_[i];
    return a;
  }
  friend ModuleVector operator*(const Polynomial<K>& p, ModuleVector v) {
    for (auto& c : v.comps_) c = p * c;
    return v;
  }
  friend bool operator==(const ModuleVector& a, const ModuleVector& b) { return a.comps_ == b.comps_; }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (i) out += ", ";
      out += comps_[i].str();
    }
    return out + ")";
  }

 private:
  static void check_rank(const ModuleVector& a, const ModuleVector& b) {
    if (a.rank() != b.rank()) throw Error(ErrorCode::RingMismatch, "module vectors of different rank");
  }

  std::vector<Polynomial<K>> comps_;
};

/// Submodule of O_X^r given by generators; O_X = O/(ring_equations) is realized by folding
/// ring_equations * e_c into every computation.
template <class K>
struct Submodule {
  RingPtr<K> ring;
  std::size_t rank = 1;
  std::vector<ModuleVector<K>> generators;
  std::vector<Polynomial<K>> ring_equations;

  static Submodule ideal(const RingPtr<K>& ring, const std::vector<Polynomial<K>>& gens,
                         std::vector<Polynomial<K>> equations = {}) {
    Submodule m{ring, 1, {}, std::move(equations)};
    for (const auto& g : gens) m.generators.push_back(ModuleVector<K>({g}));
    return m;
  }

  void validate() const {
    if (rank == 0) throw Error(ErrorCode::Precondition, "submodule rank must be >= 1");
    for (const auto& g : generators) {
      if (g.rank() != rank) throw Error(ErrorCode::RingMismatch, "generator rank differs from ambient rank");
      if (!Polynomial<K>::same_ring(g.ring(), ring)) throw Error(ErrorCode::RingMismatch, "generator ring differs");
    }
    for (const auto& e : ring_equations)
      if (!Polynomial<K>::same_ring(e.ring(), ring)) throw Error(ErrorCode::RingMismatch, "equation ring differs");
  }
};

}  // namespace icis
