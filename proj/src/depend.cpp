#include "icis/depend.hpp"

#include <algorithm>
#include <map>

#include "icis/parallel.hpp"

namespace icis {

namespace {

Series mul(const Series& a, const Series& b, std::size_t prec) {
  Series out(prec);
  for (std::size_t i = 0; i < a.size() && i < prec; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < prec; ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

void add_to(Series& a, const Series& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

Series resized(Series s, std::size_t prec) {
  s.resize(prec);
  return s;
}

// Pullback to precision prec, with every variable except `skip` substituted; the result is
// grouped by the power of `skip` (all in slot 0 when skip is out of range).
std::vector<Series> pullback_grouped(const Polynomial<Rational>& p, const std::vector<Series>& comps,
                                     std::size_t prec, std::size_t skip) {
  std::size_t n = comps.size();
  std::vector<std::vector<Series>> powers(n);
  auto power = [&](std::size_t v, int e) -> const Series& {
    auto& cache = powers[v];
    if (cache.empty()) {
      Series one(prec);
      one[0] = Rational(1);
      cache.push_back(one);
    }
    while (static_cast<int>(cache.size()) <= e) cache.push_back(mul(cache.back(), comps[v], prec));
    return cache[static_cast<std::size_t>(e)];
  };
  std::vector<Series> out;
  for (const auto& t : p.terms()) {
    Series s(prec);
    s[0] = t.c;
    int k = 0;
    for (std::size_t v = 0; v < n; ++v) {
      int e = t.m[v];
      if (e == 0) continue;
      if (v == skip) {
        k = e;
        continue;
      }
      s = mul(s, power(v, e), prec);
    }
    if (out.size() <= static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k) + 1, Series(prec));
    add_to(out[static_cast<std::size_t>(k)], s);
  }
  if (out.empty()) out.push_back(Series(prec));
  return out;
}

int val(const Series& s, std::size_t limit) {
  for (std::size_t i = 0; i < s.size() && i < limit; ++i)
    if (!s[i].is_zero()) return static_cast<int>(i);
  return -1;
}

// Integer divisors of |v| (v != 0), or empty when v is too large to factor by trial division.
std::vector<mpz_class> divisors(mpz_class v) {
  v = abs(v);
  std::vector<mpz_class> out;
  if (v > mpz_class("1000000000000")) return out;
  for (mpz_class d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  return out;
}

// Nonzero rational roots of sum coeffs[k] X^k that are simple.
std::vector<Rational> simple_rational_roots(const std::vector<Rational>& coeffs) {
  std::size_t lo = 0;
  while (lo < coeffs.size() && coeffs[lo].is_zero()) ++lo;
  std::size_t hi = coeffs.size();
  while (hi > lo && coeffs[hi - 1].is_zero()) --hi;
  if (hi - lo < 2) return {};
  mpz_class den = 1;
  for (const auto& c : coeffs) den = lcm(den, c.den());
  std::vector<mpz_class> ints;
  for (const auto& c : coeffs) ints.push_back(mpz_class(c.value() * den));
  auto ps = divisors(ints[lo]);
  auto qs = divisors(ints[hi - 1]);
  std::vector<Rational> roots;
  std::vector<Rational> deriv;
  for (std::size_t k = 1; k < coeffs.size(); ++k) deriv.push_back(coeffs[k].scaled(static_cast<std::int64_t>(k)));
  auto horner = [](const std::vector<Rational>& cs, const Rational& x) {
    Rational acc(0);
    for (std::size_t k = cs.size(); k-- > 0;) acc = acc * x + cs[k];
    return acc;
  };
  for (const auto& p : ps)
    for (const auto& q : qs)
      for (int sign : {1, -1}) {
        Rational x(mpq_class(sign * p, q));
        if (std::find(roots.begin(), roots.end(), x) != roots.end()) continue;
        if (horner(coeffs, x).is_zero() && !horner(deriv, x).is_zero()) roots.push_back(x);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool on_variety(const std::vector<Polynomial<Rational>>& eqs, const std::vector<Series>& comps, std::size_t prec) {
  for (const auto& e : eqs)
    if (val(pullback_grouped(e, comps, prec, comps.size())[0], prec) >= 0) return false;
  return true;
}

// Solutions x_v(u) with x_v(0) = 0 of eq(comps with x_v free) = 0, via Newton polygon edges of
// integer slope with simple rational roots, then Hensel lifting to precision prec.
std::vector<Series> solve_branches(const Polynomial<Rational>& eq, std::vector<Series> comps, std::size_t v,
                                   std::size_t prec, std::vector<std::string>& notices) {
  std::size_t wide = 3 * prec;
  auto A = pullback_grouped(eq, comps, wide, v);
  std::vector<Series> out;
  std::size_t degree = A.size() - 1;
  std::vector<int> vals;
  for (const auto& a : A) vals.push_back(val(a, wide));
  if (vals[0] < 0) out.push_back(Series(prec));  // x_v = 0 is a solution to this order
  if (degree == 0) return out;
  // Lower convex hull of the points (k, val A_k).
  std::vector<std::pair<int, int>> pts;
  for (std::size_t k = 0; k <= degree; ++k)
    if (vals[k] >= 0) pts.emplace_back(static_cast<int>(k), vals[k]);
  std::vector<std::pair<int, int>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull[hull.size() - 1];
      long cross = static_cast<long>(x2 - x1) * (p.second - y1) - static_cast<long>(y2 - y1) * (p.first - x1);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    auto [k1, v1] = hull[e];
    auto [k2, v2] = hull[e + 1];
    if (v2 >= v1) break;  // only negative slopes give roots of positive valuation
    if ((v1 - v2) % (k2 - k1) != 0) {
      notices.push_back("skipped a branch of fractional order");
      continue;
    }
    int q = (v1 - v2) / (k2 - k1);
    int m = v1 + q * k1;
    if (static_cast<std::size_t>(m) + prec > wide) {
      notices.push_back("skipped a branch beyond working precision");
      continue;
    }
    std::vector<Rational> edge(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k)
      if (vals[k] >= 0 && vals[k] + q * static_cast<int>(k) == m) edge[k] = A[k][static_cast<std::size_t>(vals[k])];
    auto roots = simple_rational_roots(edge);
    if (roots.empty()) notices.push_back("edge without simple rational root skipped");
    for (const auto& c : roots) {
      // G(u, Y) = u^-m F(u, u^q (c + Y)) as a polynomial in Y with series coefficients.
      std::vector<Series> G(degree + 1, Series(prec));
      for (std::size_t k = 0; k <= degree; ++k) {
        if (vals[k] < 0) continue;
        // u^{qk} A_k(u) shifted down by m.
        Series shifted(prec);
        for (std::size_t i = 0; i < prec; ++i) {
          long src = static_cast<long>(i) + m - q * static_cast<long>(k);
          if (src >= 0 && static_cast<std::size_t>(src) < wide) shifted[i] = A[k][static_cast<std::size_t>(src)];
        }
        // (c + Y)^k = sum_j C(k, j) c^(k-j) Y^j
        Rational binom(1);
        for (std::size_t j = 0; j <= k; ++j) {
          Rational cp(1);
          for (std::size_t t = 0; t < k - j; ++t) cp *= c;
          Rational coef = binom * cp;
          for (std::size_t i = 0; i < prec; ++i)
            if (!shifted[i].is_zero()) G[j][i] += coef * shifted[i];
          binom = binom.scaled(static_cast<std::int64_t>(k - j)) / Rational(static_cast<long>(j + 1));
        }
      }
      Rational slope = G.size() > 1 ? G[1][0] : Rational(0);
      if (slope.is_zero()) continue;
      Series Y(prec);
      for (std::size_t it = 0; it < prec; ++it) {
        // residual G(u, Y)
        Series r(prec);
        Series Yp(prec);
        Yp[0] = Rational(1);
        for (std::size_t j = 0; j < G.size(); ++j) {
          add_to(r, mul(G[j], Yp, prec));
          Yp = mul(Yp, Y, prec);
        }
        int rv = val(r, prec);
        if (rv < 0) break;
        for (std::size_t i = 0; i < prec; ++i) Y[i] -= r[i] / slope;
      }
      Series x(prec);
      for (std::size_t i = 0; i + static_cast<std::size_t>(q) < prec; ++i)
        x[i + static_cast<std::size_t>(q)] = (i == 0 ? c : Rational(0)) + Y[i];
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

std::string TestPath::str(const std::vector<std::string>& names) const {
  std::string out = "(";
  for (std::size_t v = 0; v < components.size(); ++v) {
    if (v) out += ", ";
    if (v < names.size()) out += names[v] + " = ";
    std::string s;
    for (std::size_t i = 0; i < components[v].size(); ++i) {
      const auto& c = components[v][i];
      if (c.is_zero()) continue;
      if (!s.empty()) s += c.sign() > 0 ? " + " : " - ";
      else if (c.sign() < 0) s += "-";
      Rational a = c.sign() < 0 ? -c : c;
      bool unit = a.is_one();
      if (!unit || i == 0) s += a.str();
      if (i > 0) s += (unit ? "" : "*") + std::string("u") + (i > 1 ? "^" + std::to_string(i) : "");
    }
    out += s.empty() ? "0" : s;
  }
  return out + ")";
}

int valuation(const Series& s) { return val(s, s.size()); }

Series pullback(const Polynomial<Rational>& p, const TestPath& path) {
  if (p.ring()->nvars() != path.components.size())
    throw Error(ErrorCode::RingMismatch, "path has the wrong number of components");
  auto prec = static_cast<std::size_t>(path.N + 1);
  return pullback_grouped(p, path.components, prec, path.components.size())[0];
}

std::vector<Series> pullback(const ModuleVector<Rational>& v, const TestPath& path) {
  std::vector<Series> out;
  for (std::size_t c = 0; c < v.rank(); ++c) out.push_back(pullback(v[c], path));
  return out;
}

MembershipResult membership_over_series(std::vector<Series> g, std::vector<std::vector<Series>> gens, int N,
                                        int safety) {
  auto P = static_cast<std::size_t>(N + 1);
  for (auto& s : g) s = resized(std::move(s), P);
  for (auto& v : gens)
    for (auto& s : v) s = resized(std::move(s), P);
  std::size_t r = g.size();
  std::vector<bool> row_alive(r, true);
  std::vector<bool> gen_alive(gens.size(), true);
  MembershipResult res;
  auto trusted = static_cast<int>(P) - safety;
  bool first = true;
  for (;;) {
    int vg = -1;
    for (std::size_t i = 0; i < r; ++i) {
      if (!row_alive[i]) continue;
      int v = val(g[i], P);
      if (v >= 0 && (vg < 0 || v < vg)) vg = v;
    }
    // Minimal valuation over the remaining module entries.
    int vm = -1;
    std::size_t pj = 0, pi = 0;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (!gen_alive[j]) continue;
      for (std::size_t i = 0; i < r; ++i) {
        if (!row_alive[i]) continue;
        int v = val(gens[j][i], P);
        if (v >= 0 && (vm < 0 || v < vm)) {
          vm = v;
          pj = j;
          pi = i;
        }
      }
    }
    if (vg < 0) {
      // Nothing to compare when g and the whole module pulled back to 0.
      bool blind = first && vm < 0;
      res.verdict = blind ? MemberVerdict::Inconclusive : MemberVerdict::MemberToOrder;
      res.order = N - safety;
      return res;
    }
    first = false;
    if (vm < 0 || vg < vm) {
      if (vg >= trusted) {
        res.verdict = MemberVerdict::Inconclusive;
        res.g_valuation = vg;
        return res;
      }
      res.verdict = MemberVerdict::Witness;
      res.g_valuation = vg;
      res.module_valuation = vm;
      res.gap_exact = vm >= 0;
      res.gap = (vm >= 0 ? vm : static_cast<int>(P)) - vg;
      return res;
    }
    res.module_valuation = vm;
    // Pivot entry u^vm * unit: clear row pi from g and from the other generators.
    const auto& piv = gens[pj][pi];
    auto lead = static_cast<std::size_t>(vm);
    Series unit(P - lead);
    for (std::size_t i = lead; i < P; ++i) unit[i - lead] = piv[i];
    // Inverse of the unit to precision P - vm.
    Series inv(P - lead);
    inv[0] = unit[0].inv();
    for (std::size_t i = 1; i < inv.size(); ++i) {
      Rational acc(0);
      for (std::size_t j = 1; j <= i; ++j) acc += unit[j] * inv[i - j];
      inv[i] = -acc * inv[0];
    }
    auto eliminate = [&](std::vector<Series>& target) {
      const auto& t = target[pi];
      // q = (t / u^vm) * inv; entries of t below u^vm are zero since vm is minimal.
      Series shifted(P - lead);
      for (std::size_t i = lead; i < P; ++i) shifted[i - lead] = t[i];
      Series q = mul(shifted, inv, P - lead);
      if (val(q, q.size()) < 0) return;
      for (std::size_t i = 0; i < r; ++i) {
        if (!row_alive[i]) continue;
        auto prod = mul(q, gens[pj][i], P);
        for (std::size_t k = 0; k < P; ++k) target[i][k] -= prod[k];
      }
    };
    eliminate(g);
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (gen_alive[j] && j != pj) eliminate(gens[j]);
    gen_alive[pj] = false;
    row_alive[pi] = false;
  }
}

const char* to_string(DependVerdict v) {
  switch (v) {
    case DependVerdict::DependentToOrder: return "DEPENDENT_TO_ORDER";
    case DependVerdict::Witness: return "WITNESS";
    case DependVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(MemberVerdict v) {
  switch (v) {
    case MemberVerdict::MemberToOrder: return "MEMBER_TO_ORDER";
    case MemberVerdict::Witness: return "WITNESS";
    case MemberVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

DependenceReport curve_criterion(const ModuleVector<Rational>& g, const Submodule<Rational>& m,
                                 const std::vector<TestPath>& paths, const DependOptions& opts) {
  m.validate();
  if (g.rank() != m.rank) throw Error(ErrorCode::RingMismatch, "element rank differs from module rank");
  std::size_t n = m.ring->nvars();
  for (const auto& p : paths) {
    if (p.components.size() != n) throw Error(ErrorCode::InvalidPath, "path has the wrong number of components");
    for (const auto& s : p.components)
      if (!s.empty() && !s[0].is_zero()) throw Error(ErrorCode::InvalidPath, "path does not start at 0");
    if (!on_variety(m.ring_equations, p.components, static_cast<std::size_t>(p.N + 1)))
      throw Error(ErrorCode::InvalidPath, "path does not lie on X to order " + std::to_string(p.N));
  }
  DependenceReport rep;
  rep.per_path.resize(paths.size());
  parallel_for(paths.size(), [&](std::size_t k) {
    TestPath p = paths[k];
    p.N = std::min(p.N, opts.N);
    std::vector<std::vector<Series>> gens;
    for (const auto& v : m.generators) gens.push_back(pullback(v, p));
    rep.per_path[k] = membership_over_series(pullback(g, p), std::move(gens), p.N, opts.safety);
  });
  bool any_member = false;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto& r = rep.per_path[k];
    if (r.verdict == MemberVerdict::Witness && !rep.witness_path) rep.witness_path = k;
    if (r.verdict == MemberVerdict::MemberToOrder) any_member = true;
  }
  rep.order = opts.N - opts.safety;
  if (rep.witness_path)
    rep.verdict = DependVerdict::Witness;
  else
    rep.verdict = any_member ? DependVerdict::DependentToOrder : DependVerdict::Inconclusive;
  return rep;
}

PathSample default_paths(const RingPtr<Rational>& ring, const std::vector<Polynomial<Rational>>& equations,
                         int budget, Rng& rng, const DependOptions& opts, std::optional<std::size_t> solve_for) {
  PathSample out;
  if (budget <= 0) {
    out.notices.push_back("path budget is 0: no paths");
    return out;
  }
  std::size_t n = ring->nvars();
  auto prec = static_cast<std::size_t>(opts.N + 1);
  bool lifting = equations.size() == 1 && solve_for && *solve_for < n;
  if (equations.size() > 1) out.notices.push_back("more than one equation: only monomial paths lying on X are kept");
  Rng small(rng.next(), 5);
  std::vector<int> e(n, 0);
  std::size_t dropped = 0;
  for (;;) {
    // Next exponent vector in {0..budget}^n, skipping the solved coordinate.
    std::size_t pos = 0;
    while (pos < n) {
      if (lifting && pos == *solve_for) {
        ++pos;
        continue;
      }
      if (e[pos] < budget) {
        ++e[pos];
        break;
      }
      e[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
    std::vector<Series> comps(n, Series(prec));
    for (std::size_t v = 0; v < n; ++v)
      if (e[v] > 0 && static_cast<std::size_t>(e[v]) < prec) comps[v][static_cast<std::size_t>(e[v])] = small.rational();
    if (lifting) {
      for (auto& x : solve_branches(equations[0], comps, *solve_for, prec, out.notices)) {
        auto c = comps;
        c[*solve_for] = x;
        bool nonzero = false;
        for (const auto& s : c)
          if (val(s, prec) >= 0) nonzero = true;
        if (nonzero && on_variety(equations, c, prec)) out.paths.push_back(TestPath{c, opts.N});
      }
    } else if (on_variety(equations, comps, prec)) {
      out.paths.push_back(TestPath{comps, opts.N});
    } else {
      ++dropped;
    }
  }
  if (dropped) out.notices.push_back(std::to_string(dropped) + " monomial paths off X dropped");
  std::sort(out.notices.begin(), out.notices.end());
  out.notices.erase(std::unique(out.notices.begin(), out.notices.end()), out.notices.end());
  return out;
}

}  // namespace icis
