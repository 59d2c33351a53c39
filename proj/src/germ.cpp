#include "icis/germ.hpp"

#include "icis/fields.hpp"

namespace icis {

namespace {

template <class K>
Polynomial<K> det_rec(const Matrix<K>& m, std::size_t row, std::vector<std::size_t>& cols) {
  const auto& ring = m.front().front().ring();
  if (row == m.size()) return Polynomial<K>::one(ring);
  Polynomial<K> acc(ring);
  for (std::size_t idx = 0; idx < cols.size(); ++idx) {
    const auto& entry = m[row][cols[idx]];
    if (entry.is_zero()) continue;
    std::size_t c = cols[idx];
    cols.erase(cols.begin() + static_cast<long>(idx));
    Polynomial<K> sub = entry * det_rec(m, row + 1, cols);
    cols.insert(cols.begin() + static_cast<long>(idx), c);
    if (idx % 2) acc -= sub;
    else acc += sub;
  }
  return acc;
}

template <class K>
std::vector<Polynomial<K>> take(const std::vector<Polynomial<K>>& v, std::size_t n) {
  return std::vector<Polynomial<K>>(v.begin(), v.begin() + static_cast<long>(n));
}

template <class K>
std::vector<std::size_t> all_vars(const RingPtr<K>& ring) {
  std::vector<std::size_t> v(ring->nvars());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

bool invertible(std::vector<std::vector<Rational>> a) {
  std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return false;
    std::swap(a[p], a[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return true;
}

}  // namespace

template <class K>
void FamilyGerm<K>::validate() const {
  if (k() >= a) throw Error(ErrorCode::Semantic, "need fewer equations than x-variables (k < a)");
  auto vanishes_on_y = [this](const Polynomial<K>& p) {
    for (const auto& t : p.terms()) {
      int xdeg = 0;
      for (std::size_t i = 0; i < a; ++i) xdeg += t.m[i];
      if (xdeg == 0) return false;
    }
    return true;
  };
  for (const auto& e : equations)
    if (!vanishes_on_y(e)) throw Error(ErrorCode::Semantic, "equation " + e.str() + " does not vanish on x = 0");
  if (!vanishes_on_y(function))
    throw Error(ErrorCode::Semantic, "function does not vanish on Y (x = 0): " + function.str());
}

template <class K>
Polynomial<K> determinant(const Matrix<K>& m) {
  if (m.empty()) throw Error(ErrorCode::Precondition, "empty matrix");
  if (m.front().size() != m.size()) throw Error(ErrorCode::Precondition, "determinant of a non-square matrix");
  std::vector<std::size_t> cols(m.size());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return det_rec(m, 0, cols);
}

template <class K>
std::vector<Polynomial<K>> maximal_minors(const Matrix<K>& m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m.front().size() : 0;
  if (rows == 0 || rows > cols) throw Error(ErrorCode::Precondition, "maximal minors need rows <= columns");
  std::vector<Polynomial<K>> out;
  std::vector<std::size_t> pick(rows);
  for (std::size_t i = 0; i < rows; ++i) pick[i] = i;
  for (;;) {
    Matrix<K> sub(rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c : pick) sub[r].push_back(m[r][c]);
    auto d = determinant(sub);
    if (!d.is_zero()) out.push_back(std::move(d));
    // next combination
    std::size_t i = rows;
    while (i > 0 && pick[i - 1] == cols - rows + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < rows; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

template <class K>
Matrix<K> jacobian_matrix(const std::vector<Polynomial<K>>& fs, const std::vector<std::size_t>& vars) {
  Matrix<K> m;
  for (const auto& f : fs) {
    std::vector<Polynomial<K>> row;
    for (std::size_t v : vars) row.push_back(f.derivative(v));
    m.push_back(std::move(row));
  }
  return m;
}

template <class K>
JacobianModule<K> jacobian_module(const IcisGerm<K>& g) {
  std::vector<Polynomial<K>> fs = g.equations;
  fs.push_back(g.f());
  JacobianModule<K> jm{g.ring, jacobian_matrix(fs, all_vars(g.ring)), {}, {}, g.equations};
  for (std::size_t j = 0; j < g.a(); ++j) {
    std::vector<Polynomial<K>> col;
    for (const auto& row : jm.matrix) col.push_back(row[j]);
    jm.columns.emplace_back(std::move(col));
  }
  return jm;
}

template <class K>
JacobianModule<K> jacobian_module(const FamilyGerm<K>& g) {
  std::vector<Polynomial<K>> fs = g.equations;
  fs.push_back(g.function);
  std::vector<std::size_t> xs(g.a);
  std::vector<std::size_t> ys(g.b);
  for (std::size_t i = 0; i < g.a; ++i) xs[i] = i;
  for (std::size_t i = 0; i < g.b; ++i) ys[i] = g.a + i;
  JacobianModule<K> jm{g.ring, jacobian_matrix(fs, xs), {}, {}, g.equations};
  for (std::size_t j = 0; j < g.a; ++j) {
    std::vector<Polynomial<K>> col;
    for (const auto& row : jm.matrix) col.push_back(row[j]);
    jm.columns.emplace_back(std::move(col));
  }
  auto ymat = jacobian_matrix(fs, ys);
  for (std::size_t j = 0; j < g.b; ++j) {
    std::vector<Polynomial<K>> col;
    for (const auto& row : ymat) col.push_back(row[j]);
    jm.extra.emplace_back(std::move(col));
  }
  return jm;
}

template <class K>
Submodule<K> minors_ideal(const JacobianModule<K>& jm) {
  return Submodule<K>::ideal(jm.ring, maximal_minors(jm.matrix), jm.equations);
}

template <class K>
std::vector<Polynomial<K>> recombine(const std::vector<Polynomial<K>>& eqs, Rng& rng) {
  std::size_t k = eqs.size();
  if (k <= 1) return eqs;
  const auto& ring = eqs.front().ring();
  for (;;) {
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k));
    for (auto& row : a)
      for (auto& v : row) v = rng.rational();
    if (!invertible(a)) continue;
    std::vector<Polynomial<K>> out;
    for (std::size_t i = 0; i < k; ++i) {
      Polynomial<K> acc(ring);
      for (std::size_t j = 0; j < k; ++j) acc += ring->domain.from(a[i][j]) * eqs[j];
      out.push_back(std::move(acc));
    }
    return out;
  }
}

template <class K>
Polynomial<K> random_linear_form(const RingPtr<K>& ring, Rng& rng) {
  Polynomial<K> acc(ring);
  for (std::size_t i = 0; i < ring->nvars(); ++i)
    acc += ring->domain.from(rng.rational()) * Polynomial<K>::variable(ring, i);
  return acc;
}

template <class K>
std::uint64_t milnor_icis(const IcisGerm<K>& g, Rng& rng, const GermOptions& opts) {
  std::size_t k = g.k();
  if (k == 0) return 0;
  if (k >= g.a()) throw Error(ErrorCode::Precondition, "need k < a");
  auto vars = all_vars(g.ring);
  int attempts = k == 1 ? 1 : opts.retries;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Rng r = rng.split();
    auto gs = recombine(g.equations, r);
    std::uint64_t mu_prev = 0;
    bool ok = true;
    for (std::size_t j = 1; j <= k && ok; ++j) {
      auto minors = maximal_minors(jacobian_matrix(take(gs, j), vars));
      auto c = colength(Submodule<K>::ideal(g.ring, minors, take(gs, j - 1)), TermOrder::local(), opts.sb);
      if (!c.is_finite() || c.value() < mu_prev) {
        ok = false;
        break;
      }
      mu_prev = c.value() - mu_prev;
    }
    if (ok) return mu_prev;
  }
  throw Error(ErrorCode::NotIcis, "equations do not define an isolated complete intersection at 0");
}

template <class K>
std::pair<std::uint64_t, std::uint64_t> milnor_pair(const IcisGerm<K>& g, Rng& rng, const GermOptions& opts) {
  std::uint64_t mu_x = milnor_icis(g, rng, opts);
  auto c = colength(minors_ideal(jacobian_module(g)), TermOrder::local(), opts.sb);
  if (!c.is_finite()) throw Error(ErrorCode::NotIsolated, "critical locus of f on X is not isolated at 0");
  if (c.value() < mu_x) throw Error(ErrorCode::NotIcis, "Milnor number of X exceeds the critical colength");
  return {mu_x, c.value() - mu_x};
}

template <class K>
std::uint64_t multiplicity_at_origin(const IcisGerm<K>& g, Rng& rng, const GermOptions& opts) {
  std::size_t d = g.dim();
  return agreeing_draws<std::uint64_t>(rng, opts.retries, "multiplicity", [&](Rng& r) {
    std::vector<Polynomial<K>> gens;
    for (std::size_t i = 0; i < d; ++i) gens.push_back(random_linear_form(g.ring, r));
    auto c = colength(Submodule<K>::ideal(g.ring, gens, g.equations), TermOrder::local(), opts.sb);
    if (!c.is_finite()) throw Error(ErrorCode::NotIsolated, "linear section is not finite");
    return c.value();
  });
}

template <class K>
IcisGerm<K> linear_section(const IcisGerm<K>& g, std::size_t i, Rng& rng) {
  std::size_t a = g.a();
  if (i > a) throw Error(ErrorCode::Precondition, "section codimension exceeds dimension");
  if (i == 0) return g;
  std::size_t keep = a - i;
  auto sub = make_ring<K>(std::vector<std::string>(g.ring->names.begin(), g.ring->names.begin() + static_cast<long>(keep)),
                          g.ring->domain);
  std::vector<Polynomial<K>> images;
  for (std::size_t j = 0; j < keep; ++j) images.push_back(Polynomial<K>::variable(sub, j));
  for (std::size_t j = keep; j < a; ++j) images.push_back(random_linear_form(sub, rng));
  IcisGerm<K> out{sub, {}, std::nullopt};
  for (const auto& e : g.equations) out.equations.push_back(e.substitute(images));
  if (g.function) out.function = g.function->substitute(images);
  return out;
}

template <class K>
std::pair<std::uint64_t, std::uint64_t> sectional_milnor(const IcisGerm<K>& g, std::size_t i, Rng& rng,
                                                         const GermOptions& opts) {
  std::size_t d = g.dim();
  if (i > d) throw Error(ErrorCode::Precondition, "section index above dim X");
  if (i == 0) return milnor_pair(g, rng, opts);
  if (i == d) return {multiplicity_at_origin(g, rng, opts) - 1, 1};
  using P = std::pair<std::uint64_t, std::uint64_t>;
  return agreeing_draws<P>(rng, opts.retries, "sectional Milnor number", [&](Rng& r) {
    auto slice = linear_section(g, i, r);
    return milnor_pair(slice, r, opts);
  });
}

template <class K>
SectionalSequence sectional_sequence(const IcisGerm<K>& g, Rng& rng, const GermOptions& opts) {
  SectionalSequence s;
  for (std::size_t i = 0; i <= g.dim(); ++i) {
    Rng r = rng.derive("sectional", i);
    auto [x, z] = sectional_milnor(g, i, r, opts);
    s.mu_X.push_back(x);
    s.mu_Z.push_back(z);
  }
  return s;
}

#define ICIS_INSTANTIATE(K)                                                                                         \
  template struct FamilyGerm<K>;                                                                                    \
  template Polynomial<K> determinant<K>(const Matrix<K>&);                                                          \
  template std::vector<Polynomial<K>> maximal_minors<K>(const Matrix<K>&);                                          \
  template Matrix<K> jacobian_matrix<K>(const std::vector<Polynomial<K>>&, const std::vector<std::size_t>&);        \
  template JacobianModule<K> jacobian_module<K>(const IcisGerm<K>&);                                                \
  template JacobianModule<K> jacobian_module<K>(const FamilyGerm<K>&);                                              \
  template Submodule<K> minors_ideal<K>(const JacobianModule<K>&);                                                  \
  template std::vector<Polynomial<K>> recombine<K>(const std::vector<Polynomial<K>>&, Rng&);                        \
  template Polynomial<K> random_linear_form<K>(const RingPtr<K>&, Rng&);                                            \
  template std::uint64_t milnor_icis<K>(const IcisGerm<K>&, Rng&, const GermOptions&);                              \
  template std::pair<std::uint64_t, std::uint64_t> milnor_pair<K>(const IcisGerm<K>&, Rng&, const GermOptions&);    \
  template std::uint64_t multiplicity_at_origin<K>(const IcisGerm<K>&, Rng&, const GermOptions&);                   \
  template IcisGerm<K> linear_section<K>(const IcisGerm<K>&, std::size_t, Rng&);                                    \
  template std::pair<std::uint64_t, std::uint64_t> sectional_milnor<K>(const IcisGerm<K>&, std::size_t, Rng&,       \
                                                                       const GermOptions&);                         \
  template SectionalSequence sectional_sequence<K>(const IcisGerm<K>&, Rng&, const GermOptions&);
ICIS_FOR_EACH_FIELD(ICIS_INSTANTIATE)
#undef ICIS_INSTANTIATE

}  // namespace icis
