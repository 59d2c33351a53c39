#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "icis/error.hpp"
#include "icis/monomial.hpp"
#include "icis/scalar.hpp"

namespace icis {

/// Polynomial ring context: variable names plus the coefficient domain.
template <class K>
struct Ring {
  std::vector<std::string> names;
  typename K::Domain domain{};

  std::size_t nvars() const { return names.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }
  bool operator==(const Ring& o) const { return names == o.names && domain == o.domain; }
};

template <class K>
using RingPtr = std::shared_ptr<const Ring<K>>;

template <class K>
RingPtr<K> make_ring(std::vector<std::string> names, typename K::Domain domain = {}) {
  if (names.size() > kMaxVars) throw Error(ErrorCode::Resource, "too many variables");
  return std::make_shared<const Ring<K>>(Ring<K>{std::move(names), std::move(domain)});
}

template <class K>
struct Term {
  Monomial m;
  K c;
  bool operator==(const Term&) const = default;
};

/// Exact multivariate polynomial: a finite map monomial -> nonzero coefficient, stored
/// as a vector sorted by descending graded reverse lex order.
template <class K>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr<K> ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr<K> ring, const K& c) {
    Polynomial p(ring);
    if (!c.is_zero()) p.terms_.push_back({Monomial(p.ring_->nvars()), c});
    return p;
  }
  static Polynomial from_rational(RingPtr<K> ring, const Rational& q) {
    auto c = ring->domain.from(q);
    return constant(std::move(ring), c);
  }
  static Polynomial one(RingPtr<K> ring) { return from_rational(ring, Rational(1)); }
  static Polynomial variable(RingPtr<K> ring, std::size_t v, int power = 1) {
    Polynomial p(ring);
    if (v >= p.ring_->nvars()) throw Error(ErrorCode::UnknownVariable, "variable index " + std::to_string(v));
    p.terms_.push_back({Monomial::variable(p.ring_->nvars(), v, power), ring->domain.from(Rational(1))});
    return p;
  }
  static Polynomial monomial(RingPtr<K> ring, const Monomial& m, const K& c) {
    Polynomial p(ring);
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }
  // Builds from arbitrary (possibly repeated, unsorted) terms.
  static Polynomial from_terms(RingPtr<K> ring, std::vector<Term<K>> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Term<K>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.m.degree());
    return d;
  }
  // Lowest total degree of a term (the order of the germ at 0); -1 for zero.
  int order() const {
    if (terms_.empty()) return -1;
    int d = terms_.front().m.degree();
    for (const auto& t : terms_) d = std::min(d, t.m.degree());
    return d;
  }
  K constant_term() const {
    for (const auto& t : terms_)
      if (t.m.is_one()) return t.c;
    return ring_->domain.from(Rational(0));
  }
  K coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.m == m) return t.c;
    return ring_->domain.from(Rational(0));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = combine(*this, o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = combine(*this, o, true); }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r = a;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_ ? a.ring_ : b.ring_);
    std::unordered_map<Monomial, K, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        Monomial m = s.m * t.m;
        auto [it, inserted] = acc.try_emplace(m, s.c * t.c);
        if (!inserted) it->second += s.c * t.c;
      }
    }
    Polynomial r(a.ring_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) r.terms_.push_back({m, std::move(c)});
    r.sort_terms();
    return r;
  }
  friend Polynomial operator*(const K& c, const Polynomial& p) {
    Polynomial r(p.ring_);
    if (c.is_zero()) return r;
    r.terms_.reserve(p.size());
    for (const auto& t : p.terms_) r.terms_.push_back({t.m, c * t.c});
    return r;
  }
  Polynomial times_monomial(const Monomial& m) const {
    Polynomial r(ring_);
    r.terms_.reserve(size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c});
    return r;  // multiplication by a monomial preserves the order
  }
  Polynomial pow(unsigned e) const {
    Polynomial acc = one(ring_);
    Polynomial base = *this;
    while (e) {
      if (e & 1) acc *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Formal partial derivative with respect to variable v.
  Polynomial derivative(std::size_t v) const {
    if (v >= ring_->nvars()) throw Error(ErrorCode::RingMismatch, "no variable with index " + std::to_string(v));
    std::vector<Term<K>> out;
    for (const auto& t : terms_) {
      int e = t.m[v];
      if (e == 0) continue;
      Monomial m = t.m;
      m.set(v, e - 1);
      out.push_back({m, t.c.scaled(e)});
    }
    return from_terms(ring_, std::move(out));
  }

  /// Substitutes images[i] (all in one target ring) for variable i.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != ring_->nvars()) throw Error(ErrorCode::RingMismatch, "substitution arity");
    if (images.empty()) return *this;
    const RingPtr<K>& target = images.front().ring_;
    for (const auto& im : images)
      if (!same_ring(im.ring_, target)) throw Error(ErrorCode::RingMismatch, "substitution images differ in ring");
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power_of = [&](std::size_t i, int e) -> const Polynomial& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(one(target));
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
      return cache[static_cast<std::size_t>(e)];
    };
    std::vector<Term<K>> acc;
    for (const auto& t : terms_) {
      Polynomial prod = constant(target, t.c);
      for (std::size_t i = 0; i < images.size() && !prod.is_zero(); ++i)
        if (t.m[i]) prod = prod * power_of(i, t.m[i]);
      acc.insert(acc.end(), prod.terms_.begin(), prod.terms_.end());
    }
    return from_terms(target, std::move(acc));
  }
  // Replaces variable v by a polynomial of the same ring.
  Polynomial substitute(std::size_t v, const Polynomial& image) const {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) images.push_back(i == v ? image : variable(ring_, i));
    return substitute(images);
  }

  /// Keeps only terms of total degree < bound.
  Polynomial truncated(int bound) const {
    Polynomial r(ring_);
    for (const auto& t : terms_)
      if (t.m.degree() < bound) r.terms_.push_back(t);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      std::string c = t.c.str();
      bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      if (c.find(' ') != std::string::npos) c = "(" + c + ")";
      if (t.m.is_one()) {
        out += c;
      } else if (c == "1") {
        out += t.m.str(ring_->names);
      } else {
        out += c + "*" + t.m.str(ring_->names);
      }
    }
    return out;
  }

  static bool same_ring(const RingPtr<K>& a, const RingPtr<K>& b) {
    return a == b || (a && b && *a == *b);
  }

 private:
  static void check_ring(const Polynomial& a, const Polynomial& b) {
    if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_)) throw Error(ErrorCode::RingMismatch, "operands in different rings");
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_ring(a, b);
    Polynomial r(a.ring_ ? a.ring_ : b.ring_);
    r.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      std::strong_ordering c = std::strong_ordering::greater;
      if (i == a.terms_.end()) c = std::strong_ordering::less;
      else if (j != b.terms_.end()) c = grevlex(i->m, j->m);
      if (c == std::strong_ordering::greater) {
        r.terms_.push_back(*i++);
      } else if (c == std::strong_ordering::less) {
        r.terms_.push_back({j->m, subtract ? -j->c : j->c});
        ++j;
      } else {
        K s = subtract ? i->c - j->c : i->c + j->c;
        if (!s.is_zero()) r.terms_.push_back({i->m, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term<K>& x, const Term<K>& y) { return grevlex(x.m, y.m) == std::strong_ordering::greater; });
  }
  void normalize() {
    sort_terms();
    std::vector<Term<K>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().m == t.m) {
        out.back().c += t.c;
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [](const Term<K>& t) { return t.c.is_zero(); });
    terms_ = std::move(out);
  }

  RingPtr<K> ring_;
  std::vector<Term<K>> terms_;
};

/// Converts coefficients (and optionally re-indexes variables) into another ring.
/// var_map[i] gives the target index of source variable i.
template <class K2, class K1, class F>
Polynomial<K2> map_polynomial(const Polynomial<K1>& p, const RingPtr<K2>& target, const std::vector<std::size_t>& var_map,
                              F&& coeff) {
  std::vector<Term<K2>> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < t.m.nvars(); ++i)
      if (t.m[i]) m.set(var_map.at(i), t.m[i]);
    auto c = coeff(t.c);
    if (!c.is_zero()) out.push_back({m, std::move(c)});
  }
  return Polynomial<K2>::from_terms(target, std::move(out));
}

}  // namespace icis
