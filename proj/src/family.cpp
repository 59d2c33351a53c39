#include "icis/family.hpp"

#include <algorithm>
#include <functional>

#include "icis/parallel.hpp"

namespace icis {

bool ParameterPoint::is_origin() const {
  if (!values) return false;
  return std::all_of(values->begin(), values->end(), [](const Rational& v) { return v.is_zero(); });
}

std::string ParameterPoint::str() const {
  if (!values) return "GENERIC";
  if (values->empty()) return "0";
  if (values->size() == 1) return values->front().str();
  std::string s = "(";
  for (std::size_t i = 0; i < values->size(); ++i) s += (i ? ", " : "") + (*values)[i].str();
  return s + ")";
}

FieldChoice FieldChoice::parse(const std::string& text) {
  if (text == "q") return {};
  if (text.rfind("fp:", 0) == 0) {
    std::string digits = text.substr(3);
    if (!digits.empty() && digits.size() <= 19 && digits.find_first_not_of("0123456789") == std::string::npos) {
      std::uint64_t p = std::stoull(digits);
      if (p < kMinPrime) throw Error(ErrorCode::Semantic, "prime " + digits + " is below 2^30");
      if (!is_prime(p)) throw Error(ErrorCode::Semantic, digits + " is not prime");
      return FieldChoice{p};
    }
  }
  throw Error(ErrorCode::Semantic, "field must be q or fp:<prime>, got '" + text + "'");
}

namespace {

Monomial x_part(const Monomial& m, std::size_t a) {
  Monomial out(a);
  for (std::size_t i = 0; i < a; ++i)
    if (m[i]) out.set(i, m[i]);
  return out;
}

std::vector<std::string> x_names(const FamilyGerm<Rational>& g) {
  return {g.ring->names.begin(), g.ring->names.begin() + static_cast<long>(g.a)};
}

void check_fiber(const std::vector<Rational>& values, std::size_t b) {
  if (values.size() != b)
    throw Error(ErrorCode::Semantic, "parameter point has " + std::to_string(values.size()) + " values, need " +
                                         std::to_string(b));
}

template <class K>
IcisGerm<K> checked(IcisGerm<K> g) {
  for (std::size_t i = 0; i < g.equations.size(); ++i)
    if (g.equations[i].is_zero())
      throw Error(ErrorCode::NonReducedFiber, "equation " + std::to_string(i + 1) + " vanishes identically on the fiber");
  return g;
}

}  // namespace

template <class K>
IcisGerm<K> specialize(const FamilyGerm<Rational>& g, const std::vector<Rational>& values,
                       const typename K::Domain& domain) {
  check_fiber(values, g.b);
  auto ring = make_ring<K>(x_names(g), domain);
  auto map = [&](const Polynomial<Rational>& p) {
    std::vector<Term<K>> terms;
    for (const auto& t : p.terms()) {
      Rational c = t.c;
      for (std::size_t j = 0; j < g.b; ++j)
        for (int e = 0; e < t.m[g.a + j]; ++e) c = c * values[j];
      K k = ring->domain.from(c);
      if (!k.is_zero()) terms.push_back({x_part(t.m, g.a), std::move(k)});
    }
    return Polynomial<K>::from_terms(ring, std::move(terms));
  };
  IcisGerm<K> out{ring, {}, map(g.function)};
  for (const auto& e : g.equations) out.equations.push_back(map(e));
  return checked(std::move(out));
}

template <class B>
IcisGerm<RatFun<B>> specialize_generic(const FamilyGerm<Rational>& g, const typename B::Domain& base) {
  using F = RatFun<B>;
  std::vector<std::string> pnames(g.ring->names.begin() + static_cast<long>(g.a), g.ring->names.end());
  auto params = make_ring<B>(pnames, base);
  auto ring = make_ring<F>(x_names(g), RatFunDomain<B>{params});
  auto map = [&](const Polynomial<Rational>& p) {
    std::vector<Term<F>> terms;
    for (const auto& t : p.terms()) {
      Monomial ym(g.b);
      for (std::size_t j = 0; j < g.b; ++j)
        if (t.m[g.a + j]) ym.set(j, t.m[g.a + j]);
      terms.push_back({x_part(t.m, g.a), F(Polynomial<B>::monomial(params, ym, params->domain.from(t.c)))});
    }
    return Polynomial<F>::from_terms(ring, std::move(terms));
  };
  IcisGerm<F> out{ring, {}, map(g.function)};
  for (const auto& e : g.equations) out.equations.push_back(map(e));
  return checked(std::move(out));
}

const FieldError* InvariantRecord::error_for(const std::string& field) const {
  for (const auto& e : errors)
    if (e.field == field) return &e;
  return nullptr;
}

namespace {

// Runs one field computation, recording failures instead of propagating them.
template <class F>
void guarded(InvariantRecord& rec, const std::string& field, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    rec.errors.push_back({field, e.code(), e.what()});
    if (e.code() == ErrorCode::NotIcis && (field == "mu" || field == "fiber")) rec.icis = false;
  } catch (const std::bad_alloc&) {
    rec.errors.push_back({field, ErrorCode::Resource, "out of memory"});
  }
}

template <class K>
void fill_record(InvariantRecord& rec, const IcisGerm<K>& g, const Rng& rng, const RecordOptions& o) {
  std::size_t d = g.dim();
  bool have_mu = false;
  guarded(rec, "mu", [&] {
    Rng r = rng.derive("sectional", 0);
    try {
      auto [x, z] = milnor_pair(g, r, o.germ);
      rec.mu_X = {x};
      rec.mu_Z = {z};
      have_mu = true;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotIsolated) rec.isolated = false;
      throw;
    }
  });
  guarded(rec, "e_M", [&] {
    auto jm = jacobian_module(g);
    try {
      rec.e_M = br_multiplicity_minors(jm.module(), ModuleContext::of(g), o.germ.sb);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Infinite) {
        rec.isolated = false;
        throw Error(ErrorCode::NotIsolated, "critical locus of f on X is not isolated at 0");
      }
      throw;
    }
  });
  if (have_mu && rec.e_M && *rec.e_M != rec.mu_X[0] + rec.mu_Z[0]) {
    rec.consistent = false;
    rec.faults.push_back("e_M differs from mu(X) + mu(Z)");
  }
  if (o.sequences && have_mu) {
    for (std::size_t i = 1; i <= d; ++i) {
      bool ok = false;
      guarded(rec, "mu_" + std::to_string(i), [&] {
        Rng r = rng.derive("sectional", i);
        auto [x, z] = sectional_milnor(g, i, r, o.germ);
        rec.mu_X.push_back(x);
        rec.mu_Z.push_back(z);
        ok = true;
      });
      if (!ok) break;
    }
  }
  if (o.e_mM && rec.isolated && rec.icis) guarded(rec, "e_mM", [&] { rec.e_mM = e_mM_direct(g, o.br).e; });
  if (o.polar && rec.isolated && rec.icis) {
    guarded(rec, "polar", [&] {
      std::vector<std::uint64_t> polar;
      for (std::size_t i = 0; i <= d; ++i) {
        Rng r = rng.derive("polar", i);
        polar.push_back(polar_multiplicity(g, i, r, o.germ));
      }
      rec.polar = std::move(polar);
    });
  }
  if (o.e_prime) {
    guarded(rec, "e_prime", [&] {
      auto c = colength(minors_ideal(jacobian_module(g)), TermOrder::global(), o.germ.sb);
      if (c.is_finite()) rec.e_prime = c.value();
      else rec.e_prime_infinite = true;
    });
  }
}

template <class B>
void record_over(InvariantRecord& rec, const FamilyGerm<Rational>& g, const Rng& rng, const RecordOptions& o,
                 const typename B::Domain& base) {
  if (rec.at.is_generic()) {
    std::optional<IcisGerm<RatFun<B>>> s;
    guarded(rec, "fiber", [&] { s = specialize_generic<B>(g, base); });
    if (s) fill_record(rec, *s, rng, o);
  } else {
    std::optional<IcisGerm<B>> s;
    guarded(rec, "fiber", [&] { s = specialize<B>(g, *rec.at.values, base); });
    if (s) fill_record(rec, *s, rng, o);
  }
}

InvariantRecord compute_record(const FamilyGerm<Rational>& g, const ParameterPoint& at, std::uint64_t seed,
                               const RecordOptions& o, std::uint64_t prime) {
  InvariantRecord rec;
  rec.at = at;
  // Draws depend only on the seed and the point, so records do not depend on evaluation order.
  Rng rng = Rng(seed).derive("point:" + at.str());
  if (prime == 0) record_over<Rational>(rec, g, rng, o, RationalDomain{});
  else record_over<ModP>(rec, g, rng, o, ModPDomain{prime});
  return rec;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// Headline integers of a record, for the two-prime comparison.
std::string headline(const InvariantRecord& r) {
  auto opt = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  return "mu_X [" + join(r.mu_X) + "] mu_Z [" + join(r.mu_Z) + "] e_M " + opt(r.e_M) + " e_mM " + opt(r.e_mM) +
         " e' " + (r.e_prime_infinite ? std::string("INFINITE") : opt(r.e_prime)) + " polar [" + join(r.polar) + "]";
}

}  // namespace

InvariantRecord invariant_record(const FamilyGerm<Rational>& g, const ParameterPoint& at, std::uint64_t seed,
                                 const RecordOptions& opts) {
  return invariant_records(g, {at}, seed, opts).front();
}

std::vector<InvariantRecord> invariant_records(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points,
                                               std::uint64_t seed, const RecordOptions& opts) {
  std::uint64_t p = opts.field.prime;
  bool cross = p != 0 && opts.cross_check;
  std::uint64_t q = p == kPrimeA ? kPrimeB : kPrimeA;
  std::size_t n = points.size();
  std::vector<InvariantRecord> out(n), other(cross ? n : 0);
  parallel_for(cross ? 2 * n : n, [&](std::size_t i) {
    if (i < n) out[i] = compute_record(g, points[i], seed, opts, p);
    else other[i - n] = compute_record(g, points[i - n], seed, opts, q);
  });
  if (cross) {
    for (std::size_t i = 0; i < n; ++i) {
      auto a = headline(out[i]), b = headline(other[i]);
      if (a != b)
        out[i].faults.push_back("fp:" + std::to_string(p) + " gives " + a + " but fp:" + std::to_string(q) + " gives " + b);
    }
  }
  return out;
}

const char* to_string(Condition c) {
  switch (c) {
    case Condition::AF: return "AF";
    case Condition::WF: return "WF";
    case Condition::MilnorPair: return "MILNOR_PAIR";
    case Condition::MilnorSequences: return "MILNOR_SEQUENCES";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "HOLDS";
    case Outcome::Fails: return "FAILS";
    case Outcome::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

namespace {

bool hypothesis_error(ErrorCode c) {
  return c == ErrorCode::NotIcis || c == ErrorCode::NonReducedFiber || c == ErrorCode::Semantic;
}

struct Quantity {
  std::string name;
  std::function<bool(const std::string&)> uses_field;
  std::function<std::optional<std::string>(const InvariantRecord&)> value;
};

Verdict decide(Condition cond, const std::vector<InvariantRecord>& records, const Quantity& q) {
  Verdict v;
  v.condition = cond;
  for (const auto& r : records)
    for (const auto& e : r.errors)
      if (hypothesis_error(e.code) && (e.field == "fiber" || e.field == "mu" || e.field == "e_M")) {
        v.outcome = Outcome::Indeterminate;
        v.clause = "hypothesis failed at y = " + r.at.str() + ": " + e.message;
        return v;
      }
  std::string table = q.name + ":";
  bool first = true;
  for (const auto& r : records) {
    auto val = q.value(r);
    table += std::string(first ? " " : ", ") + r.at.str() + " -> " + (val ? *val : std::string("?"));
    first = false;
  }
  v.evidence.push_back(table);
  for (const auto& r : records)
    if (!r.isolated) {
      v.outcome = Outcome::Fails;
      v.clause = "Z_y not isolated at 0 for y = " + r.at.str();
      return v;
    }
  for (const auto& r : records) {
    for (const auto& e : r.errors)
      if (q.uses_field(e.field)) {
        v.outcome = Outcome::Indeterminate;
        v.clause = "not computed at y = " + r.at.str() + ": " + e.message;
        return v;
      }
    if (!q.value(r)) {
      v.outcome = Outcome::Indeterminate;
      v.clause = q.name + " not computed at y = " + r.at.str();
      return v;
    }
  }
  auto ref = *q.value(records.front());
  bool constant = std::all_of(records.begin(), records.end(), [&](const InvariantRecord& r) { return *q.value(r) == ref; });
  v.outcome = constant ? Outcome::Holds : Outcome::Fails;
  v.clause = q.name + (constant ? " constant in y" : " not constant in y");
  return v;
}

std::function<std::optional<std::string>(const InvariantRecord&)> scalar(std::optional<std::uint64_t> InvariantRecord::*f) {
  return [f](const InvariantRecord& r) -> std::optional<std::string> {
    if (!(r.*f)) return std::nullopt;
    return std::to_string(*(r.*f));
  };
}

}  // namespace

Verdict af_verdict(const std::vector<InvariantRecord>& records) {
  Verdict v = decide(Condition::AF, records,
                     {"e(M_y)", [](const std::string& f) { return f == "e_M"; }, scalar(&InvariantRecord::e_M)});
  for (const auto& r : records) {
    if (r.e_prime_infinite) v.evidence.push_back("e'(y) infinite at y = " + r.at.str());
    else if (r.e_prime && r.e_M)
      v.evidence.push_back("off-origin mass at y = " + r.at.str() + ": e'(y) - e(M_y) = " + std::to_string(*r.e_prime) +
                           " - " + std::to_string(*r.e_M) + " = " +
                           std::to_string(static_cast<std::int64_t>(*r.e_prime) - static_cast<std::int64_t>(*r.e_M)));
  }
  return v;
}

Verdict wf_verdict(const std::vector<InvariantRecord>& records) {
  Verdict v = decide(Condition::WF, records,
                     {"e(m_y M_y)", [](const std::string& f) { return f == "e_mM"; }, scalar(&InvariantRecord::e_mM)});
  if (v.outcome == Outcome::Holds) {
    Verdict af = af_verdict(records);
    if (af.outcome != Outcome::Holds)
      v.faults.push_back("e(m_y M_y) constant but A_f check gives " + std::string(to_string(af.outcome)) + " (" +
                         af.clause + ")");
  }
  return v;
}

Verdict milnor_pair_verdict(const std::vector<InvariantRecord>& records) {
  return decide(Condition::MilnorPair, records,
                {"(mu(X_y), mu(Z_y))", [](const std::string& f) { return f == "mu"; },
                 [](const InvariantRecord& r) -> std::optional<std::string> {
                   if (r.mu_X.empty()) return std::nullopt;
                   return "(" + std::to_string(r.mu_X[0]) + ", " + std::to_string(r.mu_Z[0]) + ")";
                 }});
}

Verdict milnor_sequence_verdict(const std::vector<InvariantRecord>& records) {
  std::size_t len = 0;
  for (const auto& r : records) len = std::max(len, r.mu_X.size());
  return decide(Condition::MilnorSequences, records,
                {"mu_*(X_y) ; mu_*(Z_y)", [](const std::string& f) { return f.rfind("mu", 0) == 0; },
                 [len](const InvariantRecord& r) -> std::optional<std::string> {
                   if (r.mu_X.empty() || r.mu_X.size() < len) return std::nullopt;
                   return "(" + join(r.mu_X) + " ; " + join(r.mu_Z) + ")";
                 }});
}

void check_points(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points) {
  bool origin = false, other = false;
  for (const auto& p : points) {
    if (p.values) check_fiber(*p.values, g.b);
    if (p.is_origin()) origin = true;
    else other = true;
  }
  if (!origin || !other)
    throw Error(ErrorCode::Precondition, "points must include y = 0 and at least one other point or GENERIC");
}

namespace {

// Hypotheses without which no verdict can be drawn; nullopt when they hold.
std::optional<Verdict> hypothesis_verdict(const FamilyGerm<Rational>& g, Condition c) {
  try {
    g.validate();
  } catch (const Error& e) {
    Verdict v;
    v.condition = c;
    v.outcome = Outcome::Indeterminate;
    v.clause = std::string("hypothesis failed: ") + e.what();
    return v;
  }
  return std::nullopt;
}

void cross_faults(Verdict& primary, Verdict& milnor) {
  if (primary.outcome == milnor.outcome) return;
  std::string msg = std::string(to_string(primary.condition)) + " gives " + to_string(primary.outcome) + " but " +
                    to_string(milnor.condition) + " gives " + to_string(milnor.outcome);
  primary.faults.push_back(msg);
  milnor.faults.push_back(msg);
}

}  // namespace

Verdict check_af(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points, std::uint64_t seed,
                 const RecordOptions& opts) {
  check_points(g, points);
  if (auto v = hypothesis_verdict(g, Condition::AF)) return *v;
  RecordOptions o = opts;
  o.sequences = o.e_mM = o.polar = false;
  return af_verdict(invariant_records(g, points, seed, o));
}

Verdict check_wf(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points, std::uint64_t seed,
                 const RecordOptions& opts) {
  check_points(g, points);
  if (auto v = hypothesis_verdict(g, Condition::WF)) return *v;
  RecordOptions o = opts;
  o.sequences = o.polar = false;
  return wf_verdict(invariant_records(g, points, seed, o));
}

std::pair<Verdict, Verdict> check_milnor_formulations(const FamilyGerm<Rational>& g,
                                                      const std::vector<ParameterPoint>& points, std::uint64_t seed,
                                                      const RecordOptions& opts) {
  RecordOptions o = opts;
  o.polar = false;
  auto a = analyze_family(g, points, seed, o);
  return {a.milnor_pair, a.milnor_sequences};
}

SemicontinuityReport semicontinuity_check(const std::vector<InvariantRecord>& records) {
  SemicontinuityReport rep;
  auto origin = std::find_if(records.begin(), records.end(), [](const InvariantRecord& r) { return r.at.is_origin(); });
  if (origin == records.end()) {
    rep.ok = false;
    rep.violations.push_back("no record at y = 0");
    return rep;
  }
  for (const auto& r : records) {
    if (&r == &*origin) continue;
    std::size_t n = std::min({r.mu_X.size(), r.mu_Z.size(), origin->mu_X.size(), origin->mu_Z.size()});
    for (std::size_t i = 0; i < n; ++i) {
      auto here = r.mu_X[i] + r.mu_Z[i], there = origin->mu_X[i] + origin->mu_Z[i];
      if (here > there)
        rep.violations.push_back("mu_" + std::to_string(i) + "(X) + mu_" + std::to_string(i) + "(Z) at y = " + r.at.str() +
                                 ": " + std::to_string(here) + " > " + std::to_string(there));
    }
    if (r.e_M && origin->e_M && *r.e_M > *origin->e_M)
      rep.violations.push_back("e(M_y) at y = " + r.at.str() + ": " + std::to_string(*r.e_M) + " > " +
                               std::to_string(*origin->e_M));
  }
  rep.ok = rep.violations.empty();
  return rep;
}

SupportReport support_equality(const FamilyGerm<Rational>& g, const SbOptions& opts) {
  auto jm = jacobian_module(g);
  auto full = jm.matrix;
  for (std::size_t r = 0; r < full.size(); ++r)
    for (const auto& col : jm.extra) full[r].push_back(col[r]);
  auto sigma_y = Submodule<Rational>::ideal(g.ring, maximal_minors(jm.matrix), g.equations);
  auto sigma = Submodule<Rational>::ideal(g.ring, maximal_minors(full), g.equations);
  auto in_y = [&](const Submodule<Rational>& ideal) {
    for (std::size_t i = 0; i < g.a; ++i)
      if (!local_radical_membership(Polynomial<Rational>::variable(g.ring, i), ideal, opts)) return false;
    return true;
  };
  auto vanishes_on_y = [&](const Polynomial<Rational>& p) {
    for (const auto& t : p.terms()) {
      int xdeg = 0;
      for (std::size_t i = 0; i < g.a; ++i) xdeg += t.m[i];
      if (xdeg == 0) return false;
    }
    return true;
  };
  SupportReport rep;
  rep.sigma_y_in_y = in_y(sigma_y);
  rep.sigma_in_y = in_y(sigma);
  rep.y_in_sigma_y = true;
  for (const auto& v : sigma_y.generators) rep.y_in_sigma_y = rep.y_in_sigma_y && vanishes_on_y(v[0]);
  rep.sigma_equals_sigma_y = true;
  for (const auto& v : sigma.generators)
    if (!local_radical_membership(v[0], sigma_y, opts)) {
      rep.sigma_equals_sigma_y = false;
      break;
    }
  return rep;
}

FamilyAnalysis analyze_family(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points,
                              std::uint64_t seed, const RecordOptions& opts) {
  check_points(g, points);
  FamilyAnalysis a;
  if (auto v = hypothesis_verdict(g, Condition::AF)) {
    a.af = a.wf = a.milnor_pair = a.milnor_sequences = *v;
    a.wf.condition = Condition::WF;
    a.milnor_pair.condition = Condition::MilnorPair;
    a.milnor_sequences.condition = Condition::MilnorSequences;
    return a;
  }
  a.wf.condition = Condition::WF;
  a.wf.clause = "e(m_y M_y) not requested";
  a.milnor_sequences.condition = Condition::MilnorSequences;
  a.milnor_sequences.clause = "sectional sequences not requested";
  a.records = invariant_records(g, points, seed, opts);
  a.af = af_verdict(a.records);
  a.milnor_pair = milnor_pair_verdict(a.records);
  cross_faults(a.af, a.milnor_pair);
  if (opts.e_mM) a.wf = wf_verdict(a.records);
  if (opts.sequences) a.milnor_sequences = milnor_sequence_verdict(a.records);
  if (opts.e_mM && opts.sequences) cross_faults(a.wf, a.milnor_sequences);
  a.semicontinuity = semicontinuity_check(a.records);
  return a;
}

template IcisGerm<Rational> specialize<Rational>(const FamilyGerm<Rational>&, const std::vector<Rational>&,
                                                 const RationalDomain&);
template IcisGerm<ModP> specialize<ModP>(const FamilyGerm<Rational>&, const std::vector<Rational>&, const ModPDomain&);
template IcisGerm<RatFun<Rational>> specialize_generic<Rational>(const FamilyGerm<Rational>&, const RationalDomain&);
template IcisGerm<RatFun<ModP>> specialize_generic<ModP>(const FamilyGerm<Rational>&, const ModPDomain&);

}  // namespace icis
