#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "icis/depend.hpp"
#include "icis/germ.hpp"
#include "icis/parse.hpp"
#include "icis/standard_basis.hpp"

using namespace icis;
using Q = Polynomial<Rational>;
using V = ModuleVector<Rational>;

namespace {

RingPtr<Rational> ring(std::vector<std::string> names) { return make_ring<Rational>(std::move(names), RationalDomain{}); }

Series series(std::vector<long> cs, int N = 24) {
  Series s(static_cast<std::size_t>(N + 1));
  for (std::size_t i = 0; i < cs.size(); ++i) s[i] = Rational(cs[i]);
  return s;
}

// u^e with coefficient c.
Series mono(long c, int e, int N = 24) {
  Series s(static_cast<std::size_t>(N + 1));
  s[static_cast<std::size_t>(e)] = Rational(c);
  return s;
}

V vec(const RingPtr<Rational>& r, std::vector<const char*> cs) {
  V v(r, cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) v[i] = parse_poly(cs[i], r);
  return v;
}

}  // namespace

TEST_CASE("pullbacks") {
  auto r = ring({"x", "y"});
  TestPath p{{mono(1, 2), mono(1, 3)}, 24};
  CHECK(pullback(parse_poly("x*y", r), p) == mono(1, 5));
  TestPath q{{mono(1, 1), mono(1, 2)}, 24};
  auto v = pullback(vec(r, {"x", "y"}), q);
  CHECK(v[0] == mono(1, 1));
  CHECK(v[1] == mono(1, 2));
  TestPath on{{mono(1, 1), mono(-1, 1)}, 24};
  CHECK(valuation(pullback(parse_poly("x^2 - y^2", r), on)) == -1);
  // Truncation at u^(N+1).
  TestPath shortp{{mono(1, 1, 4), mono(1, 1, 4)}, 4};
  CHECK(valuation(pullback(parse_poly("x^5", r), shortp)) == -1);
}

TEST_CASE("membership over the series ring") {
  auto w = membership_over_series({mono(1, 1, 6)}, {{mono(1, 2, 6)}}, 6, 2);
  CHECK(w.verdict == MemberVerdict::Witness);
  CHECK(w.gap == 1);
  CHECK(w.gap_exact);
  auto m = membership_over_series({mono(1, 3, 6)}, {{mono(1, 2, 6)}}, 6, 2);
  CHECK(m.verdict == MemberVerdict::MemberToOrder);
  CHECK(m.order == 4);
  auto c = membership_over_series({mono(1, 2), mono(1, 3)}, {{mono(1, 2), series({})}, {series({}), mono(1, 1)}}, 24, 4);
  CHECK(c.verdict == MemberVerdict::MemberToOrder);
  // Non-diagonal: g = (u^2, u^2) against (u, u) + (0, u^3): member; g = (u, 0) is not.
  std::vector<std::vector<Series>> gens{{mono(1, 1), mono(1, 1)}, {series({}), mono(1, 3)}};
  CHECK(membership_over_series({mono(1, 2), mono(1, 2)}, gens, 24, 4).verdict == MemberVerdict::MemberToOrder);
  auto nw = membership_over_series({mono(1, 1), series({})}, gens, 24, 4);
  CHECK(nw.verdict == MemberVerdict::Witness);
  CHECK(nw.gap == 2);
  // Everything pulled back to zero.
  CHECK(membership_over_series({series({})}, {{series({})}}, 24, 4).verdict == MemberVerdict::Inconclusive);
  // A gap only near the truncation order is not trusted.
  CHECK(membership_over_series({mono(1, 23)}, {{series({})}}, 24, 4).verdict == MemberVerdict::Inconclusive);
  // Units in the pivot: (1 + u) u^2 generates the same ideal as u^2.
  CHECK(membership_over_series({mono(5, 2)}, {{series({0, 0, 1, 1})}}, 24, 4).verdict == MemberVerdict::MemberToOrder);
}

TEST_CASE("witness gaps survive doubled truncation") {
  std::vector<std::vector<Series>> gens{{series({0, 0, 1, 3}, 12), series({0, 0, 0, 2}, 12)},
                                        {series({0, 0, 0, 1}, 12), series({0, 0, 0, 0, 7}, 12)}};
  std::vector<Series> g{series({0, 1, 5}, 12), series({0, 0, 1}, 12)};
  auto a = membership_over_series(g, gens, 12, 2);
  REQUIRE(a.verdict == MemberVerdict::Witness);
  REQUIRE(a.gap_exact);
  for (auto& v : gens)
    for (auto& s : v) s.resize(25);
  for (auto& s : g) s.resize(25);
  auto b = membership_over_series(g, gens, 24, 2);
  CHECK(b.verdict == MemberVerdict::Witness);
  CHECK(b.gap == a.gap);
}

TEST_CASE("curve criterion") {
  auto r = ring({"x", "y"});
  auto m = Submodule<Rational>::ideal(r, {parse_poly("x^2", r), parse_poly("y^2", r)});
  auto rep = curve_criterion(vec(r, {"x"}), m, {TestPath{{mono(1, 1), mono(1, 1)}, 24}});
  CHECK(rep.verdict == DependVerdict::Witness);
  CHECK(rep.witness_path == 0u);
  CHECK(rep.per_path[0].gap == 1);

  // xy against (x^2, y^2) on every monomial path (u^p, u^q), p, q <= 4.
  std::vector<TestPath> paths;
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q) paths.push_back(TestPath{{mono(1, p), mono(1, q)}, 24});
  auto xy = curve_criterion(vec(r, {"x*y"}), m, paths);
  CHECK(xy.verdict == DependVerdict::DependentToOrder);
  CHECK(xy.order == 20);
  for (const auto& pr : xy.per_path) {
    CHECK(pr.verdict == MemberVerdict::MemberToOrder);
  }

  // Paths must lie on X and start at the origin.
  auto node = Submodule<Rational>::ideal(r, {parse_poly("x", r)}, {parse_poly("x^2 - y^2", r)});
  CHECK_THROWS_AS(curve_criterion(vec(r, {"y"}), node, {TestPath{{mono(1, 1), mono(2, 1)}, 24}}), Error);
  CHECK_THROWS_AS(curve_criterion(vec(r, {"y"}), m, {TestPath{{series({1}), mono(1, 1)}, 24}}), Error);
  CHECK_NOTHROW(curve_criterion(vec(r, {"y"}), node, {TestPath{{mono(1, 1), mono(-1, 1)}, 24}}));
}

TEST_CASE("elements of the module never get a witness") {
  auto r = ring({"x", "y"});
  auto m = Submodule<Rational>::ideal(r, {parse_poly("x^2 + y^3", r), parse_poly("x*y", r)});
  Rng rng(7);
  auto sample = default_paths(r, {}, 3, rng);
  auto g = vec(r, {"(1 + x)*(x^2 + y^3) - 7*y^2*x*y"});
  auto rep = curve_criterion(g, m, sample.paths);
  CHECK(rep.verdict == DependVerdict::DependentToOrder);
}

TEST_CASE("default paths") {
  auto r = ring({"x", "y"});
  Rng rng(1);
  auto s = default_paths(r, {}, 3, rng);
  CHECK(s.paths.size() == 15);
  for (const auto& p : s.paths) {
    CHECK(p.components[0][0].is_zero());
    CHECK(p.components[1][0].is_zero());
  }
  CHECK(default_paths(r, {}, 0, rng).paths.empty());
  CHECK(default_paths(r, {}, 0, rng).notices.size() == 1);

  // The node x1^2 - x2^2 realized over Q: solving for x2 gives the branches x2 = +-x1.
  auto n = ring({"x1", "x2"});
  auto eq = parse_poly("x1^2 - x2^2", n);
  auto b = default_paths(n, {eq}, 1, rng, {}, 1);
  REQUIRE(b.paths.size() == 2);
  for (const auto& p : b.paths) {
    auto c = p.components[0][1];
    bool plus = p.components[1][1] == c;
    bool minus = p.components[1][1] == -c;
    CHECK((plus || minus));
    CHECK(valuation(pullback(eq, p)) == -1);
  }
  CHECK_FALSE(b.paths[0].components[1][1] == b.paths[1].components[1][1]);

  // A curved branch needing Hensel lifting: x2 - x1^2 - x2^3 = 0.
  auto h = parse_poly("x2 - x1^2 - x2^3", n);
  auto lifted = default_paths(n, {h}, 2, rng, {}, 1);
  REQUIRE_FALSE(lifted.paths.empty());
  for (const auto& p : lifted.paths) CHECK(valuation(pullback(h, p)) == -1);

  // Without lifting, monomial paths off X are dropped with a notice.
  auto off = default_paths(n, {eq}, 2, rng);
  CHECK(off.notices.size() == 1);
}

TEST_CASE("family columns on fixtures") {
  Rng rng(3);
  // f = (1+t) x^3: g_1 = x^3 against M = (3(1+t)x^2), no witness on any path.
  auto r = ring({"x", "t"});
  FamilyGerm<Rational> hold{r, 1, 1, {}, parse_poly("(1+t)*x^3", r)};
  auto jm = jacobian_module(hold);
  auto paths = default_paths(r, {}, 4, rng).paths;
  for (const auto& g : jm.extra) CHECK(curve_criterion(g, jm.module(), paths).verdict == DependVerdict::DependentToOrder);
  // f = x^4 - t x^2: g_1 = -x^2 against (4x^3 - 2t x) gets a witness, e.g. on (u, u^2).
  FamilyGerm<Rational> fail{r, 1, 1, {}, parse_poly("x^4 - t*x^2", r)};
  auto jf = jacobian_module(fail);
  CHECK(curve_criterion(jf.extra[0], jf.module(), paths).verdict == DependVerdict::Witness);
}

TEST_CASE("path printing") {
  TestPath p{{mono(1, 1), series({0, 2, 0, -1})}, 24};
  CHECK(p.str({"x", "y"}) == "(x = u, y = 2*u - u^3)");
}
