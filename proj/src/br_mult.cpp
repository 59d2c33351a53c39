#include "icis/br_mult.hpp"

#include <map>
#include <string>

#include "icis/fields.hpp"

namespace icis {

namespace {

// Degree-n multi-indices over r symbols, in lexicographic order.
std::vector<std::vector<int>> multi_indices(std::size_t r, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r, 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == r) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

template <class K>
using SymElement = std::vector<std::pair<std::vector<int>, Polynomial<K>>>;

template <class K>
SymElement<K> times_generator(const SymElement<K>& h, const ModuleVector<K>& g) {
  std::map<std::vector<int>, Polynomial<K>> acc;
  for (const auto& [alpha, coeff] : h)
    for (std::size_t c = 0; c < g.rank(); ++c) {
      if (g[c].is_zero()) continue;
      auto beta = alpha;
      ++beta[c];
      auto it = acc.find(beta);
      if (it == acc.end())
        acc.emplace(beta, coeff * g[c]);
      else
        it->second += coeff * g[c];
    }
  SymElement<K> out;
  for (auto& [beta, p] : acc)
    if (!p.is_zero()) out.emplace_back(beta, std::move(p));
  return out;
}

}  // namespace

template <class K>
GradedColengths<K>::GradedColengths(Submodule<K> m, const SbOptions& opts) : m_(std::move(m)), opts_(opts) {
  m_.validate();
  auto nb = noether_degree(m_, opts_);
  if (!nb) throw Error(ErrorCode::Infinite, "module does not have finite colength");
  noether_ = *nb;
  // Degree 0: the unit of the symmetric algebra.
  std::vector<int> zero(m_.rank, 0);
  current_.push_back({{zero, Polynomial<K>::one(m_.ring)}});
}

template <class K>
std::uint64_t GradedColengths<K>::next() {
  ++n_;
  auto basis = multi_indices(m_.rank, n_);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

  std::vector<SymElement<K>> products;
  std::vector<ModuleVector<K>> vectors;
  for (const auto& g : m_.generators) {
    if (g.is_zero()) continue;
    for (const auto& h : current_) {
      auto p = times_generator(h, g);
      if (p.empty()) continue;
      ModuleVector<K> v(m_.ring, basis.size());
      for (const auto& [beta, coeff] : p) v[index.at(beta)] = coeff;
      bool seen = false;
      for (const auto& w : vectors)
        if (w == v) {
          seen = true;
          break;
        }
      if (seen) continue;
      vectors.push_back(std::move(v));
      products.push_back(std::move(p));
    }
  }

  Submodule<K> sym{m_.ring, basis.size(), vectors, m_.ring_equations};
  // m^(T_{n-1} + N) Sym_n lies in O[M]_n; one degree more keeps the discarded part inside
  // m O[M]_n, so the essential inputs generate O[M]_n exactly.
  SbOptions o = opts_;
  o.noether.assign(basis.size(), piece_bound_ + noether_ + 1);
  o.corner_slack = 1;
  auto sb = standard_basis(sym, TermOrder::local(), o);
  auto c = colength(sb);
  if (!c.is_finite()) throw Error(ErrorCode::Infinite, "graded piece has infinite colength");
  piece_bound_ = sb.noether_bound().value_or(piece_bound_ + noether_);

  std::vector<SymElement<K>> kept;
  for (std::size_t i : sb.essential_generators()) kept.push_back(std::move(products[i]));
  current_ = std::move(kept);
  return c.value();
}

template <class K>
std::uint64_t graded_colength(const Submodule<K>& m, int n, const SbOptions& opts) {
  if (n < 0) throw Error(ErrorCode::Precondition, "negative degree");
  if (n == 0) return 0;
  GradedColengths<K> seq(m, opts);
  std::uint64_t c = 0;
  for (int i = 1; i <= n; ++i) c = seq.next();
  return c;
}

template <class K>
HilbertResult br_multiplicity_hilbert(const Submodule<K>& m, const ModuleContext& ctx, const BrOptions& opts) {
  if (m.rank != ctx.r) throw Error(ErrorCode::Precondition, "module rank differs from context rank");
  std::size_t D = ctx.D();
  HilbertResult res;
  res.colengths.push_back(0);
  GradedColengths<K> seq(m, opts.sb);
  for (int n = 1; n <= opts.n_max; ++n) {
    res.colengths.push_back(seq.next());
    auto un = static_cast<std::size_t>(n);
    if (un < D) continue;
    std::int64_t diff = 0;
    for (std::size_t j = 0; j <= D; ++j) {
      auto term = static_cast<std::int64_t>(binomial(D, j)) * static_cast<std::int64_t>(res.colengths[un - j]);
      diff += (j % 2 == 0) ? term : -term;
    }
    res.differences.push_back(diff);
    std::size_t s = res.differences.size();
    if (s >= 3 && res.differences[s - 1] == res.differences[s - 2] && res.differences[s - 2] == res.differences[s - 3]) {
      if (diff < 0) throw Error(ErrorCode::NoStabilization, "negative leading coefficient");
      res.e = static_cast<std::uint64_t>(diff);
      return res;
    }
  }
  std::string table = "c:";
  for (auto c : res.colengths) table += " " + std::to_string(c);
  table += "; D-th differences:";
  for (auto d : res.differences) table += " " + std::to_string(d);
  throw Error(ErrorCode::NoStabilization, "Hilbert function did not stabilize within n_max (" + table + ")");
}

template <class K>
std::uint64_t br_multiplicity_minors(const Submodule<K>& m, const ModuleContext& ctx, const SbOptions& opts) {
  if (m.rank != ctx.r) throw Error(ErrorCode::Precondition, "module rank differs from context rank");
  if (m.generators.size() != ctx.D())
    throw Error(ErrorCode::Precondition, "minors route needs exactly d + r - 1 generators");
  Matrix<K> mat(m.rank);
  for (std::size_t c = 0; c < m.rank; ++c)
    for (const auto& g : m.generators) mat[c].push_back(g[c]);
  auto c = colength(Submodule<K>::ideal(m.ring, maximal_minors(mat), m.ring_equations), TermOrder::local(), opts);
  if (!c.is_finite()) throw Error(ErrorCode::Infinite, "ideal of maximal minors has infinite colength");
  return c.value();
}

template <class K>
Submodule<K> ideal_times_module(const std::vector<Polynomial<K>>& ideal, const Submodule<K>& m) {
  Submodule<K> out{m.ring, m.rank, {}, m.ring_equations};
  for (const auto& p : ideal)
    for (const auto& g : m.generators) {
      auto v = p * g;
      if (v.is_zero()) continue;
      bool seen = false;
      for (const auto& w : out.generators)
        if (w == v) seen = true;
      if (!seen) out.generators.push_back(std::move(v));
    }
  return out;
}

template <class K>
std::vector<Polynomial<K>> maximal_ideal(const RingPtr<K>& ring) {
  std::vector<Polynomial<K>> out;
  for (std::size_t i = 0; i < ring->nvars(); ++i) out.push_back(Polynomial<K>::variable(ring, i));
  return out;
}

template <class K>
std::uint64_t polar_multiplicity(const IcisGerm<K>& g, std::size_t i, Rng& rng, const GermOptions& opts) {
  std::size_t d = g.dim();
  if (i > d) throw Error(ErrorCode::Precondition, "polar index above dim X");
  if (i == d) return multiplicity_at_origin(g, rng, opts);
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < g.a(); ++v) vars.push_back(v);
  return agreeing_draws<std::uint64_t>(rng, opts.retries, "polar multiplicity", [&](Rng& r) {
    std::vector<Polynomial<K>> rows = g.equations;
    rows.push_back(g.f());
    std::vector<Polynomial<K>> forms;
    for (std::size_t j = 0; j < i; ++j) forms.push_back(random_linear_form(g.ring, r));
    rows.insert(rows.end(), forms.begin(), forms.end());
    auto gens = maximal_minors(jacobian_matrix(rows, vars));
    gens.insert(gens.end(), forms.begin(), forms.end());
    auto c = colength(Submodule<K>::ideal(g.ring, gens, g.equations), TermOrder::local(), opts.sb);
    if (!c.is_finite()) throw Error(ErrorCode::NotIsolated, "polar curve section is not finite");
    return c.value();
  });
}

template <class K>
HilbertResult e_mM_direct(const IcisGerm<K>& g, const BrOptions& opts) {
  auto jm = jacobian_module(g);
  return br_multiplicity_hilbert(ideal_times_module(maximal_ideal(g.ring), jm.module()), ModuleContext::of(g), opts);
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

std::uint64_t polar_sum(const SectionalSequence& s, std::size_t upper) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < s.mu_X.size(); ++i) total += binomial(upper, i) * (s.mu_X[i] + s.mu_Z[i]);
  return total;
}

#define ICIS_INSTANTIATE(K)                                                                                   \
  template class GradedColengths<K>;                                                                          \
  template std::uint64_t graded_colength<K>(const Submodule<K>&, int, const SbOptions&);                      \
  template HilbertResult br_multiplicity_hilbert<K>(const Submodule<K>&, const ModuleContext&, const BrOptions&); \
  template std::uint64_t br_multiplicity_minors<K>(const Submodule<K>&, const ModuleContext&, const SbOptions&); \
  template Submodule<K> ideal_times_module<K>(const std::vector<Polynomial<K>>&, const Submodule<K>&);        \
  template std::vector<Polynomial<K>> maximal_ideal<K>(const RingPtr<K>&);                                    \
  template std::uint64_t polar_multiplicity<K>(const IcisGerm<K>&, std::size_t, Rng&, const GermOptions&);    \
  template HilbertResult e_mM_direct<K>(const IcisGerm<K>&, const BrOptions&);
ICIS_FOR_EACH_FIELD(ICIS_INSTANTIATE)
#undef ICIS_INSTANTIATE

}  // namespace icis
