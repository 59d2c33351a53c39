#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "icis/error.hpp"

namespace icis {

class Rational;

// Coefficient domains build scalars of their field from exact rationals.
struct RationalDomain {
  Rational from(const Rational& q) const;
  std::string name() const { return "q"; }
  bool operator==(const RationalDomain&) const = default;
};

/// Exact rational in lowest terms with positive denominator.
class Rational {
 public:
  using Domain = RationalDomain;

  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw Error(ErrorCode::Semantic, "zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "n" or "n/d" with optional sign.
  static Rational parse(std::string_view text) {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0) {
      throw Error(ErrorCode::Syntax, "bad rational literal '" + std::string(text) + "'");
    }
    if (q.get_den() == 0) throw Error(ErrorCode::Semantic, "zero denominator");
    q.canonicalize();
    return Rational(std::move(q));
  }

  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational inv() const {
    if (is_zero()) throw Error(ErrorCode::Semantic, "division by zero");
    return Rational(mpq_class(1) / q_);
  }
  Rational scaled(std::int64_t n) const { return Rational(q_ * mpq_class(static_cast<long>(n))); }

  std::string str() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::Semantic, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_;
};

inline Rational RationalDomain::from(const Rational& q) const { return q; }

class ModP;

struct ModPDomain {
  std::uint64_t p = 0;
  ModP from(const Rational& q) const;
  std::string name() const { return "fp:" + std::to_string(p); }
  bool operator==(const ModPDomain&) const = default;
};

/// Residue modulo a word-size prime; the modulus travels with the value.
class ModP {
 public:
  using Domain = ModPDomain;

  ModP() = default;
  ModP(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t prime() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  ModP inv() const {
    if (v_ == 0) throw Error(ErrorCode::Semantic, "division by zero mod p");
    return pow(p_ - 2);
  }
  ModP pow(std::uint64_t e) const {
    ModP base = *this;
    ModP acc(1, p_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
  ModP scaled(std::int64_t n) const {
    auto m = static_cast<std::int64_t>(p_);
    std::int64_t r = n % m;
    if (r < 0) r += m;
    return *this * ModP(static_cast<std::uint64_t>(r), p_);
  }

  std::string str() const { return std::to_string(v_); }

  ModP& operator+=(const ModP& o) {
    sync(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    sync(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    sync(o);
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inv(); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a) { return ModP(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }

 private:
  void sync(const ModP& o) {
    if (p_ == 0) p_ = o.p_;
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

inline ModP ModPDomain::from(const Rational& q) const {
  auto reduce = [this](const mpz_class& z) {
    mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    return ModP(r.get_ui(), p);
  };
  ModP den = reduce(q.den());
  if (den.is_zero()) {
    throw Error(ErrorCode::Semantic, "denominator " + q.den().get_str() + " vanishes mod " + std::to_string(p));
  }
  return reduce(q.num()) / den;
}

bool is_prime(std::uint64_t n);

// Smallest accepted modulus for prime-field mode.
inline constexpr std::uint64_t kMinPrime = (1ULL << 30);

// Default primes used for exactness cross-checks.
inline constexpr std::uint64_t kPrimeA = 2147483647ULL;  // 2^31 - 1
inline constexpr std::uint64_t kPrimeB = 4294967291ULL;  // largest prime below 2^32

}  // namespace icis
