#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icis/module.hpp"
#include "icis/random.hpp"

namespace icis {

/// Truncated power series in u: coefficients of u^0..u^N.
using Series = std::vector<Rational>;

/// A map germ u -> (phi_1(u), ..., phi_n(u)) into the ring's variables, known mod u^(N+1).
struct TestPath {
  std::vector<Series> components;
  int N = 24;
  std::string str(const std::vector<std::string>& names) const;
};

struct DependOptions {
  int N = 24;
  int safety = 4;
};

int valuation(const Series& s);

Series pullback(const Polynomial<Rational>& p, const TestPath& path);
std::vector<Series> pullback(const ModuleVector<Rational>& v, const TestPath& path);

enum class MemberVerdict { MemberToOrder, Witness, Inconclusive };

struct MembershipResult {
  MemberVerdict verdict = MemberVerdict::Inconclusive;
  int order = 0;              // MemberToOrder: claimed order N - s
  int g_valuation = -1;       // smallest valuation of g when the gap appeared (-1: g reduced to 0)
  int module_valuation = -1;  // smallest valuation among the remaining module entries (-1: none below N+1)
  int gap = 0;                // module_valuation - g_valuation, or a lower bound when inexact
  bool gap_exact = false;
};

/// Is g in the span of gens over k[[u]] modulo u^(N+1)? Valuation-pivot elimination.
MembershipResult membership_over_series(std::vector<Series> g, std::vector<std::vector<Series>> gens, int N,
                                        int safety);

enum class DependVerdict { DependentToOrder, Witness, Inconclusive };
const char* to_string(DependVerdict v);
const char* to_string(MemberVerdict v);

struct DependenceReport {
  DependVerdict verdict = DependVerdict::Inconclusive;
  int order = 0;
  std::optional<std::size_t> witness_path;  // first witnessing path in declaration order
  std::vector<MembershipResult> per_path;
};

/// Curve criterion along the given paths. Paths must start at 0 and lie on V(ring equations)
/// to order N, else InvalidPath.
DependenceReport curve_criterion(const ModuleVector<Rational>& g, const Submodule<Rational>& m,
                                 const std::vector<TestPath>& paths, const DependOptions& opts = {});

struct PathSample {
  std::vector<TestPath> paths;
  std::vector<std::string> notices;
};

/// Monomial paths c_i u^(e_i) with 0 <= e_i <= budget (0 meaning the component is absent)
/// and small random coefficients, kept when they lie on V(equations). With one equation the
/// last variable of `solve_for` is instead solved for by Newton polygon and Hensel lifting.
PathSample default_paths(const RingPtr<Rational>& ring, const std::vector<Polynomial<Rational>>& equations,
                         int budget, Rng& rng, const DependOptions& opts = {},
                         std::optional<std::size_t> solve_for = std::nullopt);

}  // namespace icis
