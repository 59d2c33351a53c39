#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "icis/error.hpp"

namespace icis {

inline constexpr std::size_t kMaxVars = 24;

/// Dense exponent vector with a cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) throw Error(ErrorCode::Resource, "too many variables: " + std::to_string(nvars));
  }
  Monomial(std::initializer_list<int> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (int e : exps) set(i++, e);
  }
  static Monomial variable(std::size_t nvars, std::size_t v, int power = 1) {
    Monomial m(nvars);
    m.set(v, power);
    return m;
  }

  std::size_t nvars() const { return n_; }
  int operator[](std::size_t i) const { return e_[i]; }
  int degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, int e) {
    if (e < 0 || e > 0xffff) throw Error(ErrorCode::Resource, "exponent out of range");
    deg_ += e - e_[i];
    e_[i] = static_cast<std::uint16_t>(e);
  }

  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }
  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (e_[i] && o.e_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      unsigned s = static_cast<unsigned>(a.e_[i]) + b.e_[i];
      if (s > 0xffff) throw Error(ErrorCode::Resource, "exponent overflow");
      r.e_[i] = static_cast<std::uint16_t>(s);
    }
    r.deg_ = a.deg_ + b.deg_;
    return r;
  }
  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
    r.deg_ = a.deg_ - b.deg_;
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    r.deg_ = 0;
    for (std::size_t i = 0; i < a.n_; ++i) r.deg_ += r.e_[i];
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.n_ == b.n_ && a.deg_ == b.deg_ && std::equal(a.e_.begin(), a.e_.begin() + a.n_, b.e_.begin());
  }

  // Graded reverse lexicographic comparison; the reference order for canonical storage.
  friend std::strong_ordering grevlex(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ <=> b.deg_;
    for (std::size_t i = a.n_; i-- > 0;) {
      if (a.e_[i] != b.e_[i]) return b.e_[i] <=> a.e_[i];
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = n_;
    for (std::size_t i = 0; i < n_; ++i) h = h * 1000003u ^ e_[i];
    return h;
  }

  std::string str(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!e_[i]) continue;
      if (!out.empty()) out += '*';
      out += names.at(i);
      if (e_[i] > 1) out += '^' + std::to_string(e_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::int32_t deg_ = 0;
  std::uint8_t n_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Monomial orderings. The local order is anti-graded: lower total degree ranks higher,
/// so 1 is the largest monomial; ties use reverse lex on the (permuted) variables.
class TermOrder {
 public:
  enum class Kind { GlobalGrevlex, LocalDegRevlex };

  TermOrder() = default;
  explicit TermOrder(Kind kind, std::vector<std::size_t> priority = {})
      : kind_(kind), priority_(std::move(priority)) {}

  static TermOrder global() { return TermOrder(Kind::GlobalGrevlex); }
  // Global order eliminating the first `block` variables (block degree first, then grevlex).
  static TermOrder global_elimination(std::size_t block) {
    TermOrder o(Kind::GlobalGrevlex);
    o.block_ = block;
    return o;
  }
  static TermOrder local() { return TermOrder(Kind::LocalDegRevlex); }

  Kind kind() const { return kind_; }
  bool is_local() const { return kind_ == Kind::LocalDegRevlex; }
  const std::vector<std::size_t>& priority() const { return priority_; }
  std::size_t block() const { return block_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (block_ > 0) {
      int da = 0;
      int db = 0;
      for (std::size_t i = 0; i < block_; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da <=> db;
    }
    if (a.degree() != b.degree()) {
      return is_local() ? b.degree() <=> a.degree() : a.degree() <=> b.degree();
    }
    std::size_t n = a.nvars();
    // priority_[0] is the most significant variable; reverse lex scans from the least.
    for (std::size_t k = n; k-- > 0;) {
      std::size_t i = priority_.empty() ? k : priority_[k];
      if (a[i] != b[i]) return b[i] <=> a[i];
    }
    return std::strong_ordering::equal;
  }

  bool operator==(const TermOrder&) const = default;

 private:
  Kind kind_ = Kind::GlobalGrevlex;
  std::vector<std::size_t> priority_;
  std::size_t block_ = 0;
};

}  // namespace icis
