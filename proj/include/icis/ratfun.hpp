#pragma once

#include <string>
#include <utility>

#include "icis/polynomial.hpp"

namespace icis {

template <class K>
class RatFun;

template <class K>
struct RatFunDomain {
  RingPtr<K> params;
  RatFun<K> from(const Rational& q) const;
  std::string name() const { return "frac(" + params->domain.name() + ")"; }
  bool operator==(const RatFunDomain& o) const { return Polynomial<K>::same_ring(params, o.params); }
};

namespace detail {

// Division with remainder of univariate polynomials (single-variable ring).
template <class K>
std::pair<Polynomial<K>, Polynomial<K>> divmod_univariate(Polynomial<K> a, const Polynomial<K>& b) {
  const auto& ring = a.ring();
  Polynomial<K> q(ring);
  if (b.is_zero()) throw Error(ErrorCode::Semantic, "division by zero polynomial");
  const auto& lead = b.terms().front();
  K lead_inv = lead.c.inv();
  while (!a.is_zero() && a.terms().front().m.degree() >= lead.m.degree()) {
    const auto& t = a.terms().front();
    Monomial shift = t.m / lead.m;
    K c = t.c * lead_inv;
    q += Polynomial<K>::monomial(ring, shift, c);
    a -= c * b.times_monomial(shift);
  }
  return {std::move(q), std::move(a)};
}

template <class K>
Polynomial<K> gcd_univariate(Polynomial<K> a, Polynomial<K> b) {
  while (!b.is_zero()) {
    auto r = divmod_univariate(std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Exact quotient p / q when q divides p (single-divisor division has zero remainder iff q | p).
template <class K>
std::optional<Polynomial<K>> exact_quotient(Polynomial<K> p, const Polynomial<K>& q) {
  const auto& ring = p.ring();
  Polynomial<K> quot(ring);
  const auto& lead = q.terms().front();
  K lead_inv = lead.c.inv();
  while (!p.is_zero()) {
    const auto& t = p.terms().front();
    if (!lead.m.divides(t.m)) return std::nullopt;
    Monomial shift = t.m / lead.m;
    K c = t.c * lead_inv;
    quot += Polynomial<K>::monomial(ring, shift, c);
    p -= c * q.times_monomial(shift);
  }
  return quot;
}

}  // namespace detail

/// Element of the rational-function field over K in the parameter ring.
/// Single-parameter fields are kept gcd-reduced with monic denominator; with several
/// parameters only exact cancellation and scalar normalization are applied.
template <class K>
class RatFun {
 public:
  using Domain = RatFunDomain<K>;

  RatFun() = default;
  RatFun(Polynomial<K> num, Polynomial<K> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::Semantic, "zero denominator in rational function");
    reduce();
  }
  explicit RatFun(Polynomial<K> num) : num_(std::move(num)), den_(Polynomial<K>::one(num_.ring())) {}

  const Polynomial<K>& num() const { return num_; }
  const Polynomial<K>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return !num_.is_zero() && num_ == den_; }

  RatFun inv() const {
    if (is_zero()) throw Error(ErrorCode::Semantic, "division by zero rational function");
    return RatFun(den_, num_);
  }
  RatFun scaled(std::int64_t n) const {
    RatFun r = *this;
    r.num_ = num_.ring()->domain.from(Rational(static_cast<long>(n))) * num_;
    if (r.num_.is_zero()) r.den_ = Polynomial<K>::one(num_.ring());
    return r;
  }

  std::string str() const {
    if (den_.is_constant() && den_.terms().front().c.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

  RatFun& operator+=(const RatFun& o) { return *this = add(*this, o, false); }
  RatFun& operator-=(const RatFun& o) { return *this = add(*this, o, true); }
  RatFun& operator*=(const RatFun& o) {
    if (is_zero() || o.is_zero()) return *this = zero_like();
    if (den_is_one() && o.den_is_one()) {
      num_ = num_ * o.num_;
      return *this;
    }
    return *this = RatFun(num_ * o.num_, den_ * o.den_);
  }
  RatFun& operator/=(const RatFun& o) { return *this *= o.inv(); }

  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
  friend RatFun operator-(const RatFun& a) {
    RatFun r = a;
    r.num_ = -a.num_;
    return r;
  }
  friend bool operator==(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  /// Evaluates at a parameter point; throws if the denominator vanishes there.
  K evaluate(const std::vector<K>& point) const {
    K n = eval_poly(num_, point);
    K d = eval_poly(den_, point);
    if (d.is_zero()) throw Error(ErrorCode::Semantic, "pole of rational coefficient at sample point");
    return n / d;
  }

 private:
  static K eval_poly(const Polynomial<K>& p, const std::vector<K>& point) {
    K acc = p.ring()->domain.from(Rational(0));
    for (const auto& t : p.terms()) {
      K v = t.c;
      for (std::size_t i = 0; i < point.size(); ++i)
        for (int e = 0; e < t.m[i]; ++e) v *= point[i];
      acc += v;
    }
    return acc;
  }

  bool den_is_one() const { return den_.is_constant() && den_.terms().front().c.is_one(); }
  RatFun zero_like() const {
    RatFun r;
    r.num_ = Polynomial<K>(num_.ring());
    r.den_ = Polynomial<K>::one(num_.ring());
    return r;
  }

  static RatFun add(const RatFun& a, const RatFun& b, bool subtract) {
    if (a.den_ == b.den_) {
      RatFun r;
      r.num_ = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      r.den_ = a.den_;
      if (!a.den_is_one()) r.reduce();
      else if (r.num_.is_zero()) r.den_ = Polynomial<K>::one(a.num_.ring());
      return r;
    }
    Polynomial<K> n = subtract ? a.num_ * b.den_ - b.num_ * a.den_ : a.num_ * b.den_ + b.num_ * a.den_;
    return RatFun(std::move(n), a.den_ * b.den_);
  }

  void reduce() {
    const auto& ring = num_.ring();
    if (num_.is_zero()) {
      den_ = Polynomial<K>::one(ring);
      return;
    }
    if (!den_.is_constant()) {
      if (ring->nvars() == 1) {
        Polynomial<K> g = detail::gcd_univariate(num_, den_);
        if (!g.is_constant()) {
          num_ = *detail::exact_quotient(num_, g);
          den_ = *detail::exact_quotient(den_, g);
        }
      } else if (auto q = detail::exact_quotient(num_, den_)) {
        num_ = std::move(*q);
        den_ = Polynomial<K>::one(ring);
      } else {
        // Cancel the common monomial factor.
        Monomial common = num_.terms().front().m;
        auto shrink = [&common](const Polynomial<K>& p) {
          for (const auto& t : p.terms())
            for (std::size_t i = 0; i < common.nvars(); ++i)
              if (t.m[i] < common[i]) common.set(i, t.m[i]);
        };
        shrink(num_);
        shrink(den_);
        if (!common.is_one()) {
          num_ = *detail::exact_quotient(num_, Polynomial<K>::monomial(ring, common, ring->domain.from(Rational(1))));
          den_ = *detail::exact_quotient(den_, Polynomial<K>::monomial(ring, common, ring->domain.from(Rational(1))));
        }
      }
    }
    K lead = den_.terms().front().c;
    if (!lead.is_one()) {
      K inv = lead.inv();
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  Polynomial<K> num_;
  Polynomial<K> den_;
};

template <class K>
RatFun<K> RatFunDomain<K>::from(const Rational& q) const {
  return RatFun<K>(Polynomial<K>::from_rational(params, q));
}

}  // namespace icis
