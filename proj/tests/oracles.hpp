#pragma once

// Independent reference computations for the test suites. Nothing here touches the
// standard-basis engine: colengths come from dense linear algebra on truncated rings,
// multiplicities and Milnor numbers from Newton polygons and weights.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "icis/polynomial.hpp"

namespace oracle {

using Exps = std::vector<int>;

inline std::vector<Exps> monomials_below(std::size_t nvars, int bound) {
  std::vector<Exps> out;
  Exps cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == nvars) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  if (bound > 0) rec(rec, 0, bound - 1);
  return out;
}

inline std::size_t rank_of(std::vector<std::map<std::size_t, mpq_class>> rows) {
  std::size_t rank = 0;
  std::map<std::size_t, std::map<std::size_t, mpq_class>> pivots;  // pivot column -> normalized row
  for (auto& row : rows) {
    for (;;) {
      if (row.empty()) break;
      auto lead = row.begin();
      auto it = pivots.find(lead->first);
      if (it == pivots.end()) {
        mpq_class inv = 1 / lead->second;
        for (auto& [c, v] : row) v *= inv;
        pivots.emplace(lead->first, std::move(row));
        ++rank;
        break;
      }
      mpq_class f = lead->second;
      for (const auto& [c, v] : it->second) {
        mpq_class& slot = row[c];
        slot -= f * v;
        if (slot == 0) row.erase(c);
      }
    }
  }
  return rank;
}

/// Colength of the submodule of O^r (O = local ring at 0 in nvars variables) generated by
/// gens, computed as dim of the quotient modulo m^bound: valid once m^bound * O^r lies in it.
/// Each generator is a list of r components, each a list of (exponents, coefficient).
using Component = std::vector<std::pair<Exps, mpq_class>>;
using Generator = std::vector<Component>;

inline std::size_t macaulay_colength(const std::vector<Generator>& gens, std::size_t nvars, std::size_t rank,
                                     int bound) {
  auto mons = monomials_below(nvars, bound);
  std::map<std::pair<std::size_t, Exps>, std::size_t> column;
  for (std::size_t c = 0; c < rank; ++c)
    for (const auto& m : mons) column.emplace(std::make_pair(c, m), column.size());
  std::vector<std::map<std::size_t, mpq_class>> rows;
  for (const auto& g : gens) {
    for (const auto& shift : mons) {
      std::map<std::size_t, mpq_class> row;
      for (std::size_t c = 0; c < rank; ++c) {
        for (const auto& [e, coef] : g[c]) {
          Exps m(nvars);
          int deg = 0;
          for (std::size_t i = 0; i < nvars; ++i) {
            m[i] = e[i] + shift[i];
            deg += m[i];
          }
          if (deg >= bound) continue;
          mpq_class& slot = row[column.at({c, m})];
          slot += coef;
          if (slot == 0) row.erase(column.at({c, m}));
        }
      }
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  return column.size() - rank_of(std::move(rows));
}

inline Component component_of(const icis::Polynomial<icis::Rational>& p) {
  Component out;
  for (const auto& t : p.terms()) {
    Exps e(t.m.nvars());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.m[i];
    out.emplace_back(e, t.c.value());
  }
  return out;
}

inline std::size_t macaulay_colength(const std::vector<icis::Polynomial<icis::Rational>>& ideal, int bound) {
  std::vector<Generator> gens;
  for (const auto& p : ideal) gens.push_back({component_of(p)});
  return macaulay_colength(gens, ideal.front().ring()->nvars(), 1, bound);
}

inline Component multiply(const Component& a, const Component& b) {
  std::map<Exps, mpq_class> acc;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      acc[e] += ca * cb;
    }
  Component out;
  for (auto& [e, c] : acc)
    if (c != 0) out.emplace_back(e, c);
  return out;
}

inline Component add(const Component& a, const Component& b) {
  std::map<Exps, mpq_class> acc;
  for (const auto& [e, c] : a) acc[e] += c;
  for (const auto& [e, c] : b) acc[e] += c;
  Component out;
  for (auto& [e, c] : acc)
    if (c != 0) out.emplace_back(e, c);
  return out;
}

/// dim Sym_n(O^r) / M^n modulo m^bound, with M^n spanned by every n-fold product of the
/// generators (all multisets, no pruning). Sym_n basis: degree-n multi-indices of e_1..e_r.
inline std::size_t symmetric_power_colength(const std::vector<Generator>& gens, std::size_t nvars, std::size_t rank,
                                            int n, int bound) {
  using SymVec = std::map<Exps, Component>;  // multi-index in e -> coefficient
  std::vector<SymVec> level{SymVec{{Exps(rank, 0), Component{{Exps(nvars, 0), mpq_class(1)}}}}};
  std::vector<std::vector<std::size_t>> last{{0}};  // index of the last factor, to enumerate multisets
  for (int step = 0; step < n; ++step) {
    std::vector<SymVec> next;
    std::vector<std::vector<std::size_t>> next_last;
    for (std::size_t h = 0; h < level.size(); ++h)
      for (std::size_t gi = last[h][0]; gi < gens.size(); ++gi) {
        SymVec prod;
        for (const auto& [alpha, coeff] : level[h])
          for (std::size_t c = 0; c < rank; ++c) {
            if (gens[gi][c].empty()) continue;
            Exps beta = alpha;
            ++beta[c];
            prod[beta] = add(prod[beta], multiply(coeff, gens[gi][c]));
          }
        next.push_back(std::move(prod));
        next_last.push_back({gi});
      }
    level = std::move(next);
    last = std::move(next_last);
  }
  std::map<Exps, std::size_t> index;
  auto rec = [&](auto&& self, Exps& cur, std::size_t pos, int left) -> void {
    if (pos + 1 == rank) {
      cur[pos] = left;
      index.emplace(cur, index.size());
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, cur, pos + 1, left - v);
    }
  };
  Exps cur(rank, 0);
  rec(rec, cur, 0, n);
  std::vector<Generator> flat;
  for (const auto& v : level) {
    Generator g(index.size());
    for (const auto& [beta, coeff] : v) g[index.at(beta)] = coeff;
    flat.push_back(std::move(g));
  }
  return macaulay_colength(flat, nvars, index.size(), bound);
}

/// Number of monomials not divisible by any generator (brute force inside a box).
inline std::uint64_t staircase_count(const std::vector<Exps>& gens, std::size_t nvars, int box) {
  std::uint64_t count = 0;
  Exps cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == nvars) {
      for (const auto& g : gens) {
        bool divides = true;
        for (std::size_t k = 0; k < nvars; ++k)
          if (g[k] > cur[k]) divides = false;
        if (divides) return;
      }
      ++count;
      return;
    }
    for (int e = 0; e < box; ++e) {
      cur[i] = e;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

/// Twice the area of the region between the axes and the Newton polygon of a set of
/// exponent points in the plane (points must include pure powers on both axes).
inline mpq_class twice_area_under_newton_polygon(std::vector<std::pair<int, int>> pts) {
  std::sort(pts.begin(), pts.end());
  // Lower-left convex hull (monotone chain, keep only the boundary facing the origin).
  std::vector<std::pair<int, int>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull[hull.size() - 1];
      long cross = static_cast<long>(x2 - x1) * (p.second - y1) - static_cast<long>(y2 - y1) * (p.first - x1);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    if (!hull.empty() && hull.back().second <= p.second) continue;  // dominated
    hull.push_back(p);
  }
  mpq_class twice = 0;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    auto [x1, y1] = hull[i];
    auto [x2, y2] = hull[i + 1];
    twice += mpq_class((x2 - x1) * (y1 + y2));
  }
  return twice;
}

/// Samuel multiplicity of an m-primary monomial ideal in two variables: 2 * covolume.
inline mpq_class newton_samuel_multiplicity(const std::vector<std::pair<int, int>>& gens) {
  return twice_area_under_newton_polygon(gens);
}

/// Kouchnirenko's formula for a convenient Newton-nondegenerate plane curve germ:
/// mu = 2A - a - b + 1 with A the area under the Newton polygon, a, b its axis intercepts.
inline mpq_class kouchnirenko_mu(const std::vector<std::pair<int, int>>& support) {
  int a = 1 << 30;
  int b = 1 << 30;
  for (const auto& [x, y] : support) {
    if (y == 0) a = std::min(a, x);
    if (x == 0) b = std::min(b, y);
  }
  return twice_area_under_newton_polygon(support) - a - b + 1;
}

/// Milnor-Orlik: mu = prod (1/w_i - 1) for a quasi-homogeneous isolated singularity.
inline mpq_class weighted_homogeneous_mu(const std::vector<mpq_class>& weights) {
  mpq_class mu = 1;
  for (const auto& w : weights) mu *= (1 / w - 1);
  return mu;
}

/// Multiplicity of 0 as a root of a univariate integer polynomial (coefficients by degree).
inline int root_order_at_zero(const std::vector<mpq_class>& coeffs) {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) return static_cast<int>(i);
  return -1;
}

}  // namespace oracle
