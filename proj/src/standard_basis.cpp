#include "icis/standard_basis.hpp"

#include <algorithm>
#include <queue>

#include "icis/fields.hpp"

namespace icis {

namespace {

template <class K>
struct STerm {
  Monomial m;
  std::uint32_t comp;
  K c;
};

template <class K>
using SVec = std::vector<STerm<K>>;

// Term-over-position: monomials first, then the lower component index ranks higher.
class ModuleOrder {
 public:
  explicit ModuleOrder(TermOrder ord) : ord_(std::move(ord)) {}

  std::strong_ordering operator()(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const {
    auto c = ord_.compare(a, b);
    if (c != std::strong_ordering::equal) return c;
    return cb <=> ca;
  }
  const TermOrder& base() const { return ord_; }

 private:
  TermOrder ord_;
};

std::uint32_t support_mask(const Monomial& m) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < m.nvars(); ++i)
    if (m[i]) mask |= 1u << (i % 32);
  return mask;
}

template <class K>
SVec<K> to_svec(const ModuleVector<K>& v, const ModuleOrder& mo) {
  SVec<K> out;
  for (std::size_t c = 0; c < v.rank(); ++c)
    for (const auto& t : v[c].terms()) out.push_back({t.m, static_cast<std::uint32_t>(c), t.c});
  std::sort(out.begin(), out.end(), [&mo](const STerm<K>& x, const STerm<K>& y) {
    return mo(x.m, x.comp, y.m, y.comp) == std::strong_ordering::greater;
  });
  return out;
}

template <class K>
ModuleVector<K> from_svec(const SVec<K>& v, const RingPtr<K>& ring, std::size_t rank) {
  std::vector<std::vector<Term<K>>> parts(rank);
  for (const auto& t : v) parts[t.comp].push_back({t.m, t.c});
  std::vector<Polynomial<K>> comps;
  comps.reserve(rank);
  for (auto& p : parts) comps.push_back(Polynomial<K>::from_terms(ring, std::move(p)));
  return ModuleVector<K>(std::move(comps));
}

template <class K>
int ecart_of(const SVec<K>& v) {
  int lo = v.front().m.degree();
  int hi = lo;
  for (const auto& t : v) hi = std::max(hi, t.m.degree());
  return hi - lo;
}

template <class K>
struct Elem {
  SVec<K> v;
  int ecart = 0;
  std::uint32_t mask = 0;
  bool alive = true;

  const Monomial& lm() const { return v.front().m; }
  std::uint32_t comp() const { return v.front().comp; }
};

template <class K>
Elem<K> make_elem(SVec<K> v) {
  Elem<K> e;
  e.ecart = ecart_of(v);
  e.mask = support_mask(v.front().m);
  e.v = std::move(v);
  return e;
}

template <class K>
bool lead_divides(const Elem<K>& g, const STerm<K>& lead, std::uint32_t lead_mask) {
  return g.alive && g.comp() == lead.comp && (g.mask & ~lead_mask) == 0 && g.lm().divides(lead.m);
}

struct Pair {
  int i;  // -1 for an input generator
  int j;
  int deg;
  std::uint64_t seq;
};

struct PairAfter {
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.deg != b.deg) return a.deg > b.deg;
    return a.seq > b.seq;
  }
};

template <class K>
class Engine {
 public:
  Engine(const TermOrder& ord, std::size_t rank, std::size_t nvars, const SbOptions& opts)
      : mo_(ord), rank_(rank), nvars_(nvars), opts_(opts), trunc_(rank, -1) {
    if (ord.is_local() && !opts.noether.empty()) {
      if (opts.noether.size() != rank) throw Error(ErrorCode::Precondition, "noether bound per component expected");
      // Only a bound holding in every component makes m^N E part of the module.
      int n = *std::max_element(opts.noether.begin(), opts.noether.end());
      trunc_.assign(rank, n);
      truncated_ = true;
    }
  }

  void run(std::vector<SVec<K>> gens) {
    inputs_ = std::move(gens);
    useful_.assign(inputs_.size(), false);
    for (std::size_t k = 0; k < inputs_.size(); ++k) {
      auto& g = inputs_[k];
      truncate(g);
      if (g.empty()) continue;
      pairs_.push({-1, static_cast<int>(k), g.front().m.degree(), seq_++});
    }
    while (!pairs_.empty()) {
      Pair p = pairs_.top();
      pairs_.pop();
      if (++processed_ > opts_.max_pairs) throw Error(ErrorCode::Resource, "pair limit exceeded");
      SVec<K> h;
      if (p.i < 0) {
        h = std::move(inputs_[static_cast<std::size_t>(p.j)]);
        truncate(h);
      } else {
        pending_[static_cast<std::size_t>(p.j)][static_cast<std::size_t>(p.i)] = 0;
        if (!elems_[p.i].alive || !elems_[p.j].alive) continue;
        if (chain_criterion(p.i, p.j)) continue;
        h = spoly(elems_[p.i], elems_[p.j]);
      }
      h = normal_form(std::move(h));
      if (h.empty()) continue;
      if (p.i < 0) useful_[static_cast<std::size_t>(p.j)] = true;
      insert(std::move(h));
    }
  }

  // Inputs that were not already in the module spanned by what came before them.
  const std::vector<bool>& useful_inputs() const { return useful_; }

  SVec<K> normal_form(SVec<K> h) {
    return (mo_.base().is_local() && !truncated_) ? nf_mora(std::move(h)) : nf_plain(std::move(h));
  }

  std::vector<int> truncation() const { return truncated_ ? trunc_ : std::vector<int>(rank_, -1); }
  const std::vector<Elem<K>>& elements() const { return elems_; }

  std::vector<LeadingTerm> minimal_leading() const {
    std::vector<LeadingTerm> out;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      const auto& e = elems_[i];
      if (!e.alive) continue;
      bool redundant = false;
      for (std::size_t j = 0; j < elems_.size() && !redundant; ++j) {
        if (j == i || !elems_[j].alive || elems_[j].comp() != e.comp()) continue;
        if (elems_[j].lm().divides(e.lm()) && (!(elems_[j].lm() == e.lm()) || j < i)) redundant = true;
      }
      if (!redundant) out.push_back({e.comp(), e.lm()});
    }
    return out;
  }

 private:
  bool is_pending(int a, int b) const {
    if (a == b) return false;
    auto lo = static_cast<std::size_t>(std::min(a, b));
    auto hi = static_cast<std::size_t>(std::max(a, b));
    return pending_[hi][lo] != 0;
  }

  bool chain_criterion(int i, int j) const {
    const auto& a = elems_[i];
    const auto& b = elems_[j];
    Monomial l = Monomial::lcm(a.lm(), b.lm());
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      int kk = static_cast<int>(k);
      if (kk == i || kk == j || !elems_[k].alive || elems_[k].comp() != a.comp()) continue;
      if (!elems_[k].lm().divides(l)) continue;
      if (!is_pending(i, kk) && !is_pending(j, kk)) return true;
    }
    return false;
  }

  SVec<K> spoly(const Elem<K>& a, const Elem<K>& b) {
    Monomial l = Monomial::lcm(a.lm(), b.lm());
    Monomial ta = l / a.lm();
    SVec<K> lifted;
    lifted.reserve(a.v.size());
    for (const auto& t : a.v) {
      Monomial m = t.m * ta;
      if (truncated_ && m.degree() >= trunc_[t.comp]) continue;
      lifted.push_back({m, t.comp, t.c});
    }
    if (lifted.empty() || !(lifted.front().m == l)) {
      // The lcm itself lies beyond the truncation bound: the S-vector vanishes.
      return {};
    }
    return reduce_step(lifted, b.v);
  }

  // h - (lc(h)/lc(g)) * (lm(h)/lm(g)) * g, assuming the leading terms match up to that factor.
  SVec<K> reduce_step(const SVec<K>& h, const SVec<K>& g) {
    K c = h.front().c / g.front().c;
    Monomial t = h.front().m / g.front().m;
    SVec<K> out;
    out.reserve(h.size() + g.size());
    std::size_t i = 1;
    std::size_t j = 1;
    bool have_g = false;
    Monomial gm;
    auto load_g = [&]() {
      while (j < g.size()) {
        gm = g[j].m * t;
        if (truncated_ && gm.degree() >= trunc_[g[j].comp]) {
          ++j;
          continue;
        }
        have_g = true;
        return;
      }
      have_g = false;
    };
    load_g();
    while (i < h.size() || have_g) {
      std::strong_ordering cmp = std::strong_ordering::greater;
      if (i == h.size()) cmp = std::strong_ordering::less;
      else if (have_g) cmp = mo_(h[i].m, h[i].comp, gm, g[j].comp);
      if (cmp == std::strong_ordering::greater) {
        out.push_back(h[i++]);
      } else if (cmp == std::strong_ordering::less) {
        out.push_back({gm, g[j].comp, -(c * g[j].c)});
        ++j;
        load_g();
      } else {
        K s = h[i].c - c * g[j].c;
        if (!s.is_zero()) out.push_back({h[i].m, h[i].comp, std::move(s)});
        ++i;
        ++j;
        load_g();
      }
    }
    if (out.size() > opts_.max_terms) throw Error(ErrorCode::Resource, "term limit exceeded");
    return out;
  }

  SVec<K> nf_plain(SVec<K> h) {
    while (!h.empty()) {
      std::uint32_t mask = support_mask(h.front().m);
      const Elem<K>* div = nullptr;
      for (const auto& e : elems_)
        if (lead_divides(e, h.front(), mask)) {
          div = &e;
          break;
        }
      if (!div) break;
      h = reduce_step(h, div->v);
    }
    return h;
  }

  // Mora's normal form: ecart-minimal divisors, with previously seen intermediates
  // joining the reducer set whenever the chosen divisor has larger ecart.
  SVec<K> nf_mora(SVec<K> h) {
    std::vector<Elem<K>> extra;
    while (!h.empty()) {
      std::uint32_t mask = support_mask(h.front().m);
      const Elem<K>* best = nullptr;
      for (const auto& e : elems_)
        if (lead_divides(e, h.front(), mask) && (!best || e.ecart < best->ecart)) best = &e;
      for (const auto& e : extra)
        if (lead_divides(e, h.front(), mask) && (!best || e.ecart < best->ecart)) best = &e;
      if (!best) break;
      int eh = ecart_of(h);
      if (best->ecart > eh) {
        SVec<K> next = reduce_step(h, best->v);
        extra.push_back(make_elem(std::move(h)));
        h = std::move(next);
      } else {
        h = reduce_step(h, best->v);
      }
      if (extra.size() > opts_.max_basis) throw Error(ErrorCode::Resource, "normal form reducer set too large");
    }
    return h;
  }

  void truncate(SVec<K>& v) const {
    if (!truncated_) return;
    std::erase_if(v, [this](const STerm<K>& t) { return t.m.degree() >= trunc_[t.comp]; });
  }

  void make_monic(SVec<K>& v) const {
    if (v.front().c.is_one()) return;
    K inv = v.front().c.inv();
    for (auto& t : v) t.c *= inv;
  }

  void insert(SVec<K> h) {
    make_monic(h);
    int n = static_cast<int>(elems_.size());
    if (elems_.size() >= opts_.max_basis) throw Error(ErrorCode::Resource, "basis size limit exceeded");
    elems_.push_back(make_elem(std::move(h)));
    pending_.emplace_back(static_cast<std::size_t>(n), 0);
    const auto& e = elems_.back();
    for (int i = 0; i < n; ++i) {
      if (!elems_[i].alive || elems_[i].comp() != e.comp()) continue;
      Monomial l = Monomial::lcm(elems_[i].lm(), e.lm());
      pending_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] = 1;
      pairs_.push({i, n, l.degree(), seq_++});
    }
    if (mo_.base().is_local() && opts_.highest_corner) detect_highest_corner();
  }

  void detect_highest_corner() {
    std::vector<int> bounds(rank_, -1);
    for (std::size_t c = 0; c < rank_; ++c) {
      std::vector<int> pure(nvars_, -1);
      bool unit = false;
      for (const auto& e : elems_) {
        if (!e.alive || e.comp() != c) continue;
        const Monomial& m = e.lm();
        if (m.is_one()) {
          unit = true;
          break;
        }
        std::size_t nz = 0;
        std::size_t var = 0;
        for (std::size_t i = 0; i < nvars_; ++i)
          if (m[i]) {
            ++nz;
            var = i;
          }
        if (nz == 1 && (pure[var] < 0 || m[var] < pure[var])) pure[var] = m[var];
      }
      if (unit) {
        bounds[c] = 0;
        continue;
      }
      int sum = 1;
      for (int e : pure) {
        if (e < 0) return;
        sum += e - 1;
      }
      bounds[c] = sum;
    }
    int n = *std::max_element(bounds.begin(), bounds.end()) + opts_.corner_slack;
    if (truncated_ && n >= trunc_.front()) return;
    trunc_.assign(rank_, n);
    truncated_ = true;
    for (auto& e : elems_) {
      if (!e.alive) continue;
      truncate(e.v);
      if (e.v.empty()) {
        e.alive = false;
        continue;
      }
      e.ecart = ecart_of(e.v);
    }
  }

  ModuleOrder mo_;
  std::size_t rank_;
  std::size_t nvars_;
  SbOptions opts_;
  std::vector<int> trunc_;
  bool truncated_ = false;
  std::vector<Elem<K>> elems_;
  std::vector<SVec<K>> inputs_;
  std::vector<bool> useful_;
  std::vector<std::vector<char>> pending_;
  std::priority_queue<Pair, std::vector<Pair>, PairAfter> pairs_;
  std::uint64_t seq_ = 0;
  std::size_t processed_ = 0;
};

template <class K>
std::vector<SVec<K>> input_vectors(const Submodule<K>& m, const ModuleOrder& mo) {
  m.validate();
  std::vector<SVec<K>> gens;
  for (const auto& g : m.generators) gens.push_back(to_svec(g, mo));
  for (const auto& eq : m.ring_equations) {
    if (eq.is_zero()) continue;
    for (std::size_t c = 0; c < m.rank; ++c) gens.push_back(to_svec(ModuleVector<K>::unit(m.ring, m.rank, c, eq), mo));
  }
  return gens;
}

// Recursive staircase count: monomials in the first n variables of degree <= maxdeg
// not divisible by any of the given monomials.
std::uint64_t count_below(const std::vector<const Monomial*>& gens, std::size_t n, int maxdeg) {
  if (maxdeg < 0) return 0;
  for (const Monomial* g : gens) {
    bool unit = true;
    for (std::size_t i = 0; i < n && unit; ++i)
      if ((*g)[i]) unit = false;
    if (unit) return 0;
  }
  if (n == 0) return 1;
  std::size_t v = n - 1;
  std::vector<const Monomial*> sorted = gens;
  std::sort(sorted.begin(), sorted.end(), [v](const Monomial* a, const Monomial* b) { return (*a)[v] < (*b)[v]; });
  std::vector<const Monomial*> slice;
  std::size_t next = 0;
  std::uint64_t total = 0;
  for (int j = 0; j <= maxdeg; ++j) {
    while (next < sorted.size() && (*sorted[next])[v] <= j) slice.push_back(sorted[next++]);
    total += count_below(slice, v, maxdeg - j);
  }
  return total;
}

}  // namespace

template <class K>
std::optional<LeadingTerm> leading_term(const ModuleVector<K>& v, const TermOrder& ord) {
  ModuleOrder mo(ord);
  auto s = to_svec(v, mo);
  if (s.empty()) return std::nullopt;
  return LeadingTerm{s.front().comp, s.front().m};
}

template <class K>
StandardBasis<K> standard_basis(const Submodule<K>& m, const TermOrder& ord, const SbOptions& opts) {
  ModuleOrder mo(ord);
  Engine<K> engine(ord, m.rank, m.ring->nvars(), opts);
  engine.run(input_vectors(m, mo));
  std::vector<ModuleVector<K>> elements;
  for (const auto& e : engine.elements())
    if (e.alive) elements.push_back(from_svec(e.v, m.ring, m.rank));
  StandardBasis<K> sb(m.ring, m.rank, ord, std::move(elements), engine.minimal_leading(), engine.truncation());
  std::vector<std::size_t> essential;
  for (std::size_t i = 0; i < m.generators.size(); ++i)
    if (engine.useful_inputs()[i]) essential.push_back(i);
  sb.set_essential_generators(std::move(essential));
  return sb;
}

template <class K>
NormalForm<K> normal_form(const ModuleVector<K>& v, const std::vector<ModuleVector<K>>& basis, const TermOrder& ord) {
  ModuleOrder mo(ord);
  const RingPtr<K>& ring = v.ring();
  std::size_t rank = v.rank();
  auto one = Polynomial<K>::one(ring);

  struct Reducer {
    Elem<K> elem;
    Polynomial<K> unit;                   // unit * v = sum cofactors * basis + elem
    std::vector<Polynomial<K>> cofactors;
    std::size_t basis_index;
    bool from_basis;
  };
  std::vector<Reducer> reducers;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto s = to_svec(basis[i], mo);
    if (s.empty()) continue;
    reducers.push_back({make_elem(std::move(s)), Polynomial<K>(ring), {}, i, true});
  }

  SVec<K> h = to_svec(v, mo);
  Polynomial<K> unit = one;
  std::vector<Polynomial<K>> cof(basis.size(), Polynomial<K>(ring));

  auto subtract_scaled = [&](const Reducer& r, const K& c, const Monomial& t) {
    Polynomial<K> factor = Polynomial<K>::monomial(ring, t, c);
    if (r.from_basis) {
      cof[r.basis_index] += factor;
    } else {
      unit -= factor * r.unit;
      for (std::size_t k = 0; k < cof.size(); ++k) cof[k] -= factor * r.cofactors[k];
    }
  };
  auto step = [&mo](const SVec<K>& a, const SVec<K>& b) {
    // a - (lc a / lc b)(lm a / lm b) b via polynomial arithmetic on the sorted vectors.
    K c = a.front().c / b.front().c;
    Monomial t = a.front().m / b.front().m;
    SVec<K> out = a;
    for (const auto& term : b) out.push_back({term.m * t, term.comp, -(c * term.c)});
    std::sort(out.begin(), out.end(), [&mo](const STerm<K>& x, const STerm<K>& y) {
      return mo(x.m, x.comp, y.m, y.comp) == std::strong_ordering::greater;
    });
    SVec<K> merged;
    for (auto& term : out) {
      if (!merged.empty() && merged.back().m == term.m && merged.back().comp == term.comp) merged.back().c += term.c;
      else merged.push_back(std::move(term));
    }
    std::erase_if(merged, [](const STerm<K>& x) { return x.c.is_zero(); });
    return merged;
  };

  while (!h.empty()) {
    std::uint32_t mask = support_mask(h.front().m);
    const Reducer* best = nullptr;
    for (const auto& r : reducers) {
      if (!lead_divides(r.elem, h.front(), mask)) continue;
      if (!best || (ord.is_local() && r.elem.ecart < best->elem.ecart)) best = &r;
      if (!ord.is_local()) break;
    }
    if (!best) break;
    K c = h.front().c / best->elem.v.front().c;
    Monomial t = h.front().m / best->elem.lm();
    if (ord.is_local() && best->elem.ecart > ecart_of(h)) {
      Reducer snapshot{make_elem(h), unit, cof, 0, false};
      Reducer chosen = *best;
      h = step(h, chosen.elem.v);
      subtract_scaled(chosen, c, t);
      reducers.push_back(std::move(snapshot));
    } else {
      Reducer chosen = *best;
      h = step(h, chosen.elem.v);
      subtract_scaled(chosen, c, t);
    }
  }
  return {from_svec(h, ring, rank), unit, cof};
}

Colength count_standard_monomials(const std::vector<LeadingTerm>& leading, std::size_t nvars, std::size_t rank,
                                  const std::vector<int>& truncation) {
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < rank; ++c) {
    std::vector<const Monomial*> gens;
    for (const auto& lt : leading)
      if (lt.component == c) gens.push_back(&lt.monomial);
    int maxdeg;
    if (!truncation.empty() && truncation[c] >= 0) {
      maxdeg = truncation[c] - 1;
    } else {
      bool unit = false;
      std::vector<int> pure(nvars, -1);
      for (const Monomial* m : gens) {
        if (m->is_one()) unit = true;
        std::size_t nz = 0;
        std::size_t var = 0;
        for (std::size_t i = 0; i < nvars; ++i)
          if ((*m)[i]) {
            ++nz;
            var = i;
          }
        if (nz == 1 && (pure[var] < 0 || (*m)[var] < pure[var])) pure[var] = (*m)[var];
      }
      if (unit) continue;
      maxdeg = 0;
      for (int e : pure) {
        if (e < 0) return Colength::infinite();
        maxdeg += e - 1;
      }
    }
    total += count_below(gens, nvars, maxdeg);
  }
  return Colength::finite(total);
}

std::optional<int> noether_bound(const std::vector<LeadingTerm>& leading, std::size_t nvars, std::size_t rank,
                                 const std::vector<int>& truncation) {
  if (!truncation.empty() && truncation.front() >= 0) return *std::max_element(truncation.begin(), truncation.end());
  int bound = 0;
  for (std::size_t c = 0; c < rank; ++c) {
    std::vector<int> pure(nvars, -1);
    bool unit = false;
    for (const auto& lt : leading) {
      if (lt.component != c) continue;
      const Monomial& m = lt.monomial;
      if (m.is_one()) unit = true;
      std::size_t nz = 0;
      std::size_t var = 0;
      for (std::size_t i = 0; i < nvars; ++i)
        if (m[i]) {
          ++nz;
          var = i;
        }
      if (nz == 1 && (pure[var] < 0 || m[var] < pure[var])) pure[var] = m[var];
    }
    if (unit) continue;
    int sum = 1;
    for (int e : pure) {
      if (e < 0) return std::nullopt;
      sum += e - 1;
    }
    bound = std::max(bound, sum);
  }
  return bound;
}

template <class K>
Colength colength(const StandardBasis<K>& sb) {
  return count_standard_monomials(sb.leading_module(), sb.ring()->nvars(), sb.rank(), sb.truncation());
}

namespace {

// Colength of a local module by truncating at m^N E for growing N. The answer is exact once
// the truncated basis has no standard monomial of degree N - 1: then m^(N-1) E lies in
// M + m^N E and Nakayama gives m^(N-1) E inside M. Returns nullopt when no N up to the
// size limit certifies, leaving the question to the untruncated computation.
template <class K>
std::optional<StandardBasis<K>> basis_by_deepening(const Submodule<K>& m, const TermOrder& ord, const SbOptions& opts) {
  std::size_t n = m.ring->nvars();
  int top = 1;
  for (const auto& g : m.generators)
    for (std::size_t c = 0; c < m.rank; ++c)
      if (!g[c].is_zero()) top = std::max(top, g[c].order());
  for (int N = std::max(4, 2 * top + 1);; N *= 2) {
    // Number of monomials of degree < N, per component.
    double mons = 1;
    for (std::size_t i = 1; i <= n; ++i) mons = mons * static_cast<double>(N - 1 + i) / static_cast<double>(i);
    if (mons * static_cast<double>(m.rank) > opts.deepening_limit) return std::nullopt;
    SbOptions o = opts;
    o.noether.assign(m.rank, N);
    auto sb = standard_basis(m, ord, o);
    if (sb.truncation().front() < N) return sb;
    auto full = count_standard_monomials(sb.leading_module(), n, m.rank, sb.truncation());
    auto below = count_standard_monomials(sb.leading_module(), n, m.rank, std::vector<int>(m.rank, N - 1));
    if (full == below) return sb;
  }
}

template <class K>
StandardBasis<K> local_basis(const Submodule<K>& m, const SbOptions& opts) {
  if (opts.noether.empty() && opts.deepening_limit > 0 && m.ring->nvars() > 0)
    if (auto sb = basis_by_deepening(m, TermOrder::local(), opts)) return std::move(*sb);
  return standard_basis(m, TermOrder::local(), opts);
}

}  // namespace

template <class K>
Colength colength(const Submodule<K>& m, const TermOrder& ord, const SbOptions& opts) {
  if (ord.is_local()) return colength(local_basis(m, opts));
  return colength(standard_basis(m, ord, opts));
}

template <class K>
std::optional<int> noether_degree(const Submodule<K>& m, const SbOptions& opts) {
  return local_basis(m, opts).noether_bound();
}

template <class K>
bool is_zero_dimensional(const Submodule<K>& m, const TermOrder& ord, const SbOptions& opts) {
  return colength(m, ord, opts).is_finite();
}

template <class K>
bool radical_membership(const Polynomial<K>& g, const Submodule<K>& ideal, const SbOptions& opts) {
  if (ideal.rank != 1) throw Error(ErrorCode::Precondition, "radical membership needs an ideal");
  const auto& ring = ideal.ring;
  std::vector<std::string> names = ring->names;
  std::string w = "_w";
  while (ring->index_of(w)) w += "_";
  names.push_back(w);
  auto ext = make_ring<K>(names, ring->domain);
  std::vector<std::size_t> ident(ring->nvars());
  for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
  auto lift = [&](const Polynomial<K>& p) { return map_polynomial<K>(p, ext, ident, [](const K& c) { return c; }); };
  std::vector<Polynomial<K>> gens;
  for (const auto& v : ideal.generators) gens.push_back(lift(v[0]));
  for (const auto& e : ideal.ring_equations) gens.push_back(lift(e));
  gens.push_back(Polynomial<K>::one(ext) - Polynomial<K>::variable(ext, ring->nvars()) * lift(g));
  auto sb = standard_basis(Submodule<K>::ideal(ext, gens), TermOrder::global(), opts);
  return sb.contains_unit();
}

template <class K>
bool local_radical_membership(const Polynomial<K>& g, const Submodule<K>& ideal, const SbOptions& opts) {
  if (ideal.rank != 1) throw Error(ErrorCode::Precondition, "radical membership needs an ideal");
  const auto& ring = ideal.ring;
  std::vector<std::string> names{"_w"};
  while (ring->index_of(names[0])) names[0] += "_";
  names.insert(names.end(), ring->names.begin(), ring->names.end());
  auto ext = make_ring<K>(names, ring->domain);
  std::vector<std::size_t> shift(ring->nvars());
  for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = i + 1;
  auto lift = [&](const Polynomial<K>& p) { return map_polynomial<K>(p, ext, shift, [](const K& c) { return c; }); };
  std::vector<Polynomial<K>> gens;
  for (const auto& v : ideal.generators) gens.push_back(lift(v[0]));
  for (const auto& e : ideal.ring_equations) gens.push_back(lift(e));
  gens.push_back(Polynomial<K>::one(ext) - Polynomial<K>::variable(ext, 0) * lift(g));
  auto sb = standard_basis(Submodule<K>::ideal(ext, gens), TermOrder::global_elimination(1), opts);
  for (const auto& e : sb.elements()) {
    const auto& p = e[0];
    bool has_w = false;
    for (const auto& t : p.terms())
      if (t.m[0]) has_w = true;
    if (!has_w && !p.constant_term().is_zero()) return true;
  }
  return false;
}

#define ICIS_INSTANTIATE(K)                                                                                    \
  template std::optional<LeadingTerm> leading_term<K>(const ModuleVector<K>&, const TermOrder&);               \
  template StandardBasis<K> standard_basis<K>(const Submodule<K>&, const TermOrder&, const SbOptions&);        \
  template NormalForm<K> normal_form<K>(const ModuleVector<K>&, const std::vector<ModuleVector<K>>&,           \
                                        const TermOrder&);                                                     \
  template Colength colength<K>(const StandardBasis<K>&);                                                      \
  template Colength colength<K>(const Submodule<K>&, const TermOrder&, const SbOptions&);                      \
  template std::optional<int> noether_degree<K>(const Submodule<K>&, const SbOptions&);                     \
  template bool is_zero_dimensional<K>(const Submodule<K>&, const TermOrder&, const SbOptions&);               \
  template bool radical_membership<K>(const Polynomial<K>&, const Submodule<K>&, const SbOptions&);            \
  template bool local_radical_membership<K>(const Polynomial<K>&, const Submodule<K>&, const SbOptions&);
ICIS_FOR_EACH_FIELD(ICIS_INSTANTIATE)
#undef ICIS_INSTANTIATE

}  // namespace icis
