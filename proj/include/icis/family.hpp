#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icis/br_mult.hpp"
#include "icis/fields.hpp"
#include "icis/germ.hpp"

namespace icis {

/// A parameter value: b rationals, or GENERIC (parameters left transcendental).
struct ParameterPoint {
  std::optional<std::vector<Rational>> values;

  static ParameterPoint generic() { return {}; }
  static ParameterPoint at(std::vector<Rational> v) { return ParameterPoint{std::move(v)}; }
  static ParameterPoint origin(std::size_t b) { return at(std::vector<Rational>(b, Rational(0))); }
  bool is_generic() const { return !values.has_value(); }
  bool is_origin() const;
  // "GENERIC", "1/2" for one parameter, "(0, 1)" for several.
  std::string str() const;
  bool operator==(const ParameterPoint&) const = default;
};

/// Coefficient field for the computation: q, or fp:<prime>.
struct FieldChoice {
  std::uint64_t prime = 0;  // 0 means Q
  bool is_rational() const { return prime == 0; }
  std::string str() const { return prime ? "fp:" + std::to_string(prime) : "q"; }
  // Throws Semantic on anything but "q" or "fp:<prime >= 2^30>".
  static FieldChoice parse(const std::string& text);
};

template <class K>
IcisGerm<K> specialize(const FamilyGerm<Rational>& g, const std::vector<Rational>& values,
                       const typename K::Domain& domain = {});

/// GENERIC specialization: coefficients in the rational-function field of the parameters over B.
template <class B>
IcisGerm<RatFun<B>> specialize_generic(const FamilyGerm<Rational>& g, const typename B::Domain& base = {});

struct FieldError {
  std::string field;
  ErrorCode code;
  std::string message;
};

struct InvariantRecord {
  ParameterPoint at;
  std::vector<std::uint64_t> mu_X;  // mu_0..mu_d, or only mu_0 without sequences
  std::vector<std::uint64_t> mu_Z;
  std::optional<std::uint64_t> e_M;
  std::optional<std::uint64_t> e_mM;
  std::optional<std::uint64_t> e_prime;
  bool e_prime_infinite = false;
  std::vector<std::uint64_t> polar;
  bool icis = true;
  bool isolated = true;
  bool consistent = true;  // e_M = mu_0(X) + mu_0(Z)
  std::vector<FieldError> errors;
  std::vector<std::string> faults;

  const FieldError* error_for(const std::string& field) const;
};

struct RecordOptions {
  GermOptions germ;
  BrOptions br;
  FieldChoice field;
  bool sequences = true;
  bool e_mM = true;
  bool polar = true;
  bool e_prime = true;
  // In prime-field mode, recompute with a second prime and compare the integers.
  bool cross_check = true;
};

InvariantRecord invariant_record(const FamilyGerm<Rational>& g, const ParameterPoint& at, std::uint64_t seed,
                                 const RecordOptions& opts = {});

/// One record per point, computed in parallel; output follows the order of points.
std::vector<InvariantRecord> invariant_records(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points,
                                               std::uint64_t seed, const RecordOptions& opts = {});

enum class Condition { AF, WF, MilnorPair, MilnorSequences };
enum class Outcome { Holds, Fails, Indeterminate };
const char* to_string(Condition c);
const char* to_string(Outcome o);

struct Verdict {
  Condition condition = Condition::AF;
  Outcome outcome = Outcome::Indeterminate;
  std::string clause;
  std::vector<std::string> evidence;
  std::vector<std::string> faults;  // internal-consistency failures, never reconciled
};

/// Verdicts from records already computed. The origin must be among the records.
Verdict af_verdict(const std::vector<InvariantRecord>& records);
Verdict wf_verdict(const std::vector<InvariantRecord>& records);
Verdict milnor_pair_verdict(const std::vector<InvariantRecord>& records);
Verdict milnor_sequence_verdict(const std::vector<InvariantRecord>& records);

/// Throws Precondition unless points contain the origin and some other point.
void check_points(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points);

Verdict check_af(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points, std::uint64_t seed,
                 const RecordOptions& opts = {});
Verdict check_wf(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points, std::uint64_t seed,
                 const RecordOptions& opts = {});
std::pair<Verdict, Verdict> check_milnor_formulations(const FamilyGerm<Rational>& g,
                                                      const std::vector<ParameterPoint>& points, std::uint64_t seed,
                                                      const RecordOptions& opts = {});

struct SemicontinuityReport {
  bool ok = true;
  std::vector<std::string> violations;
};
SemicontinuityReport semicontinuity_check(const std::vector<InvariantRecord>& records);

struct SupportReport {
  bool sigma_y_in_y = false;      // every x_i vanishes on Sigma_Y(f) near 0
  bool y_in_sigma_y = false;      // every minor vanishes on x = 0
  bool sigma_in_y = false;
  bool sigma_equals_sigma_y = false;
  bool sigma_y_equals_y() const { return sigma_y_in_y && y_in_sigma_y; }
};
SupportReport support_equality(const FamilyGerm<Rational>& g, const SbOptions& opts = {});

/// Everything the report subcommand prints, from one set of records.
struct FamilyAnalysis {
  std::vector<InvariantRecord> records;
  Verdict af, wf, milnor_pair, milnor_sequences;
  SemicontinuityReport semicontinuity;
};
FamilyAnalysis analyze_family(const FamilyGerm<Rational>& g, const std::vector<ParameterPoint>& points,
                              std::uint64_t seed, const RecordOptions& opts = {});

}  // namespace icis
