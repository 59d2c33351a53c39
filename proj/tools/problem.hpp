#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icis/family.hpp"

namespace icis::cli {

enum class Mode { Generic, Samples, Both };
const char* to_string(Mode m);
Mode parse_mode(const std::string& text);

/// Upper binomial index in the polar formula, relative to a.
enum class Binomial { AMinus1, A };
const char* to_string(Binomial b);
Binomial parse_binomial(const std::string& text);

struct ProblemOptions {
  Binomial binomial = Binomial::AMinus1;
  int nmax = 12;
  int truncation = 24;
};

struct ProblemFile {
  std::vector<std::string> xs;
  std::vector<std::string> params;
  FamilyGerm<Rational> germ;
  // samples[j] lists the values of params[j]; all lists have one length.
  std::vector<std::vector<Rational>> samples;
  Mode mode = Mode::Both;
  std::uint64_t seed = 0;
  FieldChoice field;
  ProblemOptions options;

  /// y = 0 first, then the samples (if the mode uses them), then GENERIC (if used and b > 0).
  std::vector<ParameterPoint> points() const;
  /// Problem-file text that parses back to the same problem.
  std::string canonical() const;
};

/// Throws ParseError (with a line number) on malformed input and Error(Semantic) when f or
/// an equation does not vanish on Y or k >= a.
ProblemFile parse_problem(std::string_view text);

}  // namespace icis::cli
