#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "icis/germ.hpp"
#include "icis/parse.hpp"
#include "oracles.hpp"

using namespace icis;
using Q = Polynomial<Rational>;

namespace {

RingPtr<Rational> ring(std::vector<std::string> names) { return make_ring<Rational>(std::move(names), RationalDomain{}); }

IcisGerm<Rational> germ(std::vector<std::string> names, std::vector<const char*> eqs, const char* f = nullptr) {
  auto r = ring(std::move(names));
  IcisGerm<Rational> g{r, {}, std::nullopt};
  for (const char* e : eqs) g.equations.push_back(parse_poly(e, r));
  if (f) g.function = parse_poly(f, r);
  return g;
}

}  // namespace

TEST_CASE("Jacobian modules and minors") {
  auto g = germ({"x", "y"}, {}, "x^3 + y^3");
  auto jm = jacobian_module(g);
  REQUIRE(jm.rank() == 1);
  CHECK(jm.matrix[0][0] == parse_poly("3*x^2", g.ring));
  CHECK(jm.matrix[0][1] == parse_poly("3*y^2", g.ring));
  CHECK(minors_ideal(jm).generators.size() == 2);

  auto n = germ({"x1", "x2"}, {"x1^2 + x2^2"}, "x1");
  auto jn = jacobian_module(n);
  CHECK(jn.matrix[0][0] == parse_poly("2*x1", n.ring));
  CHECK(jn.matrix[1][0] == Q::one(n.ring));
  CHECK(jn.matrix[1][1].is_zero());
  auto mi = minors_ideal(jn);
  REQUIRE(mi.generators.size() == 1);
  CHECK(mi.generators[0][0] == parse_poly("-2*x2", n.ring));

  auto r = ring({"x", "t"});
  FamilyGerm<Rational> fam{r, 1, 1, {}, parse_poly("x^4 - t*x^2", r)};
  fam.validate();
  auto jf = jacobian_module(fam);
  CHECK(jf.columns[0][0] == parse_poly("4*x^3 - 2*t*x", r));
  REQUIRE(jf.extra.size() == 1);
  CHECK(jf.extra[0][0] == parse_poly("-x^2", r));

  auto r3 = ring({"x", "y", "z"});
  auto m = maximal_minors(jacobian_matrix<Rational>({parse_poly("x^2 + y^2 + z^2", r3), parse_poly("x*y", r3)}, {0, 1, 2}));
  REQUIRE(m.size() == 3);
  CHECK(m[0] == parse_poly("2*x^2 - 2*y^2", r3));
  CHECK(m[1] == parse_poly("-2*y*z", r3));
  CHECK(m[2] == parse_poly("-2*x*z", r3));
}

TEST_CASE("family hypotheses") {
  auto r = ring({"x", "t"});
  FamilyGerm<Rational> bad{r, 1, 1, {}, parse_poly("x^3 + t", r)};
  CHECK_THROWS_AS(bad.validate(), Error);
  FamilyGerm<Rational> tall{r, 1, 1, {parse_poly("x^2", r)}, parse_poly("x", r)};
  CHECK_THROWS_AS(tall.validate(), Error);
}

TEST_CASE("Milnor numbers of Brieskorn curves") {
  Rng rng(1);
  for (int p = 2; p <= 6; ++p)
    for (int q = 2; q <= 6; ++q) {
      std::string eq = "x^" + std::to_string(p) + " + y^" + std::to_string(q);
      auto g = germ({"x", "y"}, {eq.c_str()});
      std::uint64_t want = oracle::staircase_count({{p - 1, 0}, {0, q - 1}}, 2, 8);
      CHECK(want == static_cast<std::uint64_t>((p - 1) * (q - 1)));
      CHECK(milnor_icis(g, rng) == want);
    }
}

TEST_CASE("Milnor numbers of complete intersections") {
  Rng rng(2);
  CHECK(milnor_icis(germ({"x", "y"}, {"x^2 + y^2"}), rng) == 1);
  CHECK(milnor_icis(germ({"x", "y"}, {"x^2 + y^3"}), rng) == 2);
  // The truncated-linear-algebra oracle gives colength 6 for (x^2+y^2+z^2) + minors, so mu = 5.
  auto g = germ({"x", "y", "z"}, {"x^2 + y^2 + z^2", "x*y"});
  CHECK(milnor_icis(g, rng) == 5);
  CHECK(milnor_icis(germ({"x", "y", "z"}, {"x*y", "x^2 + y^2 + z^2"}), rng) == 5);
  CHECK(milnor_icis(germ({"x", "y"}, {}), rng) == 0);
  CHECK_THROWS_AS(milnor_icis(germ({"x", "y"}, {"x^2"}), rng), Error);
}

TEST_CASE("Milnor pairs") {
  Rng rng(3);
  CHECK(milnor_pair(germ({"x1", "x2"}, {"x1^2 + x2^2"}, "x1"), rng) == std::pair<std::uint64_t, std::uint64_t>{1, 1});
  CHECK(milnor_pair(germ({"x", "y"}, {}, "x^3 + y^3"), rng) == std::pair<std::uint64_t, std::uint64_t>{0, 4});
  CHECK(milnor_pair(germ({"x", "y"}, {}, "x^2 + y^2"), rng) == std::pair<std::uint64_t, std::uint64_t>{0, 1});
  try {
    milnor_pair(germ({"x", "y"}, {}, "x^2*y"), rng);
    FAIL("expected NotIsolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIsolated);
  }
}

TEST_CASE("multiplicities and sectional sequences") {
  Rng rng(4);
  CHECK(multiplicity_at_origin(germ({"x1", "x2"}, {"x1"}), rng) == 1);
  CHECK(multiplicity_at_origin(germ({"x", "y"}, {"x^2 + y^2"}), rng) == 2);
  CHECK(multiplicity_at_origin(germ({"x", "y"}, {"x^2 + y^3"}), rng) == 2);

  auto s = sectional_sequence(germ({"x", "y"}, {}, "x^3 + y^3"), rng);
  CHECK(s.mu_Z == std::vector<std::uint64_t>{4, 2, 1});
  CHECK(s.mu_X == std::vector<std::uint64_t>{0, 0, 0});
  s = sectional_sequence(germ({"x", "y"}, {}, "x^2 + y^3"), rng);
  CHECK(s.mu_Z == std::vector<std::uint64_t>{2, 1, 1});
  s = sectional_sequence(germ({"x1", "x2"}, {"x1^2 + x2^2"}, "x1"), rng);
  CHECK(s.mu_X == std::vector<std::uint64_t>{1, 1});
  CHECK(s.mu_Z == std::vector<std::uint64_t>{1, 1});
  s = sectional_sequence(germ({"x", "y"}, {}, "x^2 + y^2"), rng);
  CHECK(s.mu_Z == std::vector<std::uint64_t>{1, 1, 1});

  auto g = germ({"x", "y", "z"}, {}, "x^2 + y^3 + z^4");
  CHECK(sectional_milnor(g, 0, rng) == milnor_pair(g, rng));
}

TEST_CASE("invariance under coordinate changes, recombination and units") {
  auto g = germ({"x", "y", "z"}, {"x^2 + y^2 + z^2", "x*y"}, "z");
  Rng rng(5);
  auto base = milnor_pair(g, rng);
  auto base_seq = sectional_sequence(g, rng);
  for (int draw = 0; draw < 2; ++draw) {
    Rng r = rng.split();
    // Invertible change of x by a unipotent random matrix.
    std::vector<Q> images;
    for (std::size_t i = 0; i < 3; ++i) {
      Q img = Q::variable(g.ring, i);
      for (std::size_t j = i + 1; j < 3; ++j) img += Q::from_rational(g.ring, r.rational()) * Q::variable(g.ring, j);
      images.push_back(img);
    }
    IcisGerm<Rational> moved{g.ring, {}, g.function->substitute(images)};
    for (const auto& e : g.equations) moved.equations.push_back(e.substitute(images));
    CHECK(milnor_pair(moved, r) == base);

    IcisGerm<Rational> mixed{g.ring, recombine(g.equations, r), g.function};
    CHECK(milnor_pair(mixed, r) == base);

    IcisGerm<Rational> scaled = g;
    for (auto& e : scaled.equations) e = (Q::one(g.ring) + random_linear_form(g.ring, r)) * e;
    CHECK(milnor_pair(scaled, r) == base);
    CHECK(sectional_sequence(scaled, r).mu_Z == base_seq.mu_Z);
  }
  CHECK(base.first == 5);
}

TEST_CASE("prime-field Milnor numbers agree") {
  auto g = germ({"x", "y", "z"}, {"x^2 + y^2 + z^2", "x*y"}, "x + 2*z");
  Rng rng(6);
  auto want = milnor_pair(g, rng);
  for (std::uint64_t p : {kPrimeA, kPrimeB}) {
    auto rp = make_ring<ModP>(g.ring->names, ModPDomain{p});
    auto conv = [&](const Q& q) {
      return map_polynomial<ModP>(q, rp, {0, 1, 2}, [&](const Rational& c) { return rp->domain.from(c); });
    };
    IcisGerm<ModP> gp{rp, {conv(g.equations[0]), conv(g.equations[1])}, conv(*g.function)};
    Rng r(6);
    CHECK(milnor_pair(gp, r) == want);
  }
}
