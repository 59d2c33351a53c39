#include "problem.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>

#include "icis/parse.hpp"

namespace icis::cli {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Generic: return "generic";
    case Mode::Samples: return "samples";
    case Mode::Both: return "both";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "generic") return Mode::Generic;
  if (text == "samples") return Mode::Samples;
  if (text == "both") return Mode::Both;
  throw Error(ErrorCode::Semantic, "mode must be generic, samples or both, got '" + text + "'");
}

const char* to_string(Binomial b) { return b == Binomial::A ? "a" : "a-1"; }

Binomial parse_binomial(const std::string& text) {
  if (text == "a") return Binomial::A;
  if (text == "a-1") return Binomial::AMinus1;
  throw Error(ErrorCode::Semantic, "binomial must be a-1 or a, got '" + text + "'");
}

std::vector<ParameterPoint> ProblemFile::points() const {
  std::vector<ParameterPoint> out{ParameterPoint::origin(params.size())};
  if (params.empty()) return out;
  if (mode != Mode::Generic && !samples.empty()) {
    for (std::size_t i = 0; i < samples.front().size(); ++i) {
      std::vector<Rational> v;
      for (const auto& s : samples) v.push_back(s[i]);
      auto p = ParameterPoint::at(std::move(v));
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
  }
  if (mode != Mode::Samples) out.push_back(ParameterPoint::generic());
  return out;
}

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

}  // namespace

std::string ProblemFile::canonical() const {
  std::string s = "ring: " + join(xs, ", ");
  if (!params.empty()) s += " ; " + join(params, ", ");
  s += "\n";
  if (!germ.equations.empty()) {
    std::vector<std::string> eqs;
    for (const auto& e : germ.equations) eqs.push_back(e.str());
    s += "equations: " + join(eqs, ", ") + "\n";
  }
  s += "function: " + germ.function.str() + "\n";
  for (std::size_t j = 0; j < samples.size(); ++j) {
    std::vector<std::string> vals;
    for (const auto& v : samples[j]) vals.push_back(v.str());
    s += "samples: " + params[j] + " = " + join(vals, ", ") + "\n";
  }
  s += std::string("mode: ") + to_string(mode) + "\n";
  s += "seed: " + std::to_string(seed) + "\n";
  s += "field: " + field.str() + "\n";
  s += std::string("options: binomial = ") + to_string(options.binomial) + " ; nmax = " + std::to_string(options.nmax) +
       " ; truncation = " + std::to_string(options.truncation) + "\n";
  return s;
}

namespace {

struct Line {
  std::size_t number;
  std::size_t offset;  // byte offset of the value in the file
  std::string value;
};

[[noreturn]] void fail(const Line& l, const std::string& what, ErrorCode code = ErrorCode::Syntax) {
  throw ParseError(what, l.offset, l.number, code);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits on sep, keeping the offset of each piece within s.
std::vector<std::pair<std::size_t, std::string>> split(const std::string& s, char sep) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.emplace_back(start, s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::vector<std::string> identifiers(const Line& l, const std::string& part) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  std::vector<std::string> out;
  if (trim(part).empty()) return out;
  for (const auto& [off, piece] : split(part, ',')) {
    std::string name = trim(piece);
    if (!std::regex_match(name, ident)) fail(l, "bad identifier '" + name + "'");
    out.push_back(name);
  }
  return out;
}

Rational rational(const Line& l, const std::string& text) {
  static const std::regex lit("[+-]?[0-9]+(/[0-9]+)?");
  std::string t = trim(text);
  if (!std::regex_match(t, lit)) fail(l, "bad rational '" + t + "'");
  try {
    return Rational::parse(t[0] == '+' ? t.substr(1) : t);
  } catch (const Error& e) {
    fail(l, e.what(), e.code());
  }
}

int small_int(const Line& l, const std::string& text, int lo) {
  std::string t = trim(text);
  if (t.empty() || t.size() > 6 || t.find_first_not_of("0123456789") != std::string::npos) fail(l, "bad integer '" + t + "'");
  int v = std::stoi(t);
  if (v < lo) fail(l, "value " + t + " below " + std::to_string(lo), ErrorCode::Semantic);
  return v;
}

// Strips the "CODE: " prefix and the position suffix from an engine error message.
std::string bare(const std::string& what) {
  std::string s = what;
  if (auto p = s.find(": "); p != std::string::npos) s = s.substr(p + 2);
  if (auto p = s.rfind(" at offset "); p != std::string::npos) s = s.substr(0, p);
  return s;
}

bool vanishes_on_y(const Polynomial<Rational>& p, std::size_t a) {
  for (const auto& t : p.terms()) {
    int xdeg = 0;
    for (std::size_t i = 0; i < a; ++i) xdeg += t.m[i];
    if (xdeg == 0) return false;
  }
  return true;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  static const std::set<std::string> known{"ring", "equations", "function", "samples", "mode", "seed", "field", "options"};
  std::map<std::string, Line> entries;
  std::vector<Line> sample_lines;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string raw(text.substr(pos, end - pos));
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line where{number, pos, raw};
    if (!trim(raw).empty()) {
      auto colon = raw.find(':');
      if (colon == std::string::npos) fail(where, "expected '<key>: <value>'");
      std::string key = trim(raw.substr(0, colon));
      if (!known.count(key)) fail(where, "unknown key '" + key + "'");
      Line l{number, pos + colon + 1, raw.substr(colon + 1)};
      if (key == "samples") sample_lines.push_back(l);
      else if (!entries.emplace(key, l).second) fail(where, "duplicate key '" + key + "'");
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  Line eof{number, text.size(), ""};
  if (!entries.count("ring")) fail(eof, "missing 'ring:'");
  if (!entries.count("function")) fail(eof, "missing 'function:'");

  ProblemFile pf;
  const Line& ring_line = entries.at("ring");
  auto halves = split(ring_line.value, ';');
  if (halves.size() > 2) fail(ring_line, "ring takes at most one ';'");
  pf.xs = identifiers(ring_line, halves[0].second);
  if (pf.xs.empty()) fail(ring_line, "need at least one x-variable");
  if (halves.size() == 2) pf.params = identifiers(ring_line, halves[1].second);
  std::vector<std::string> names = pf.xs;
  names.insert(names.end(), pf.params.begin(), pf.params.end());
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) fail(ring_line, "repeated variable name");
  auto ring = make_ring<Rational>(names, RationalDomain{});

  auto expression = [&](const Line& l, std::size_t off, const std::string& piece) {
    if (trim(piece).empty()) fail(l, "empty expression");
    try {
      return parse_poly(piece, ring, l.offset + off);
    } catch (const ParseError& e) {
      throw ParseError(bare(e.what()), e.offset(), l.number, e.code());
    }
  };

  pf.germ = FamilyGerm<Rational>{ring, pf.xs.size(), pf.params.size(), {}, {}};
  const Line* eq_line = nullptr;
  if (auto it = entries.find("equations"); it != entries.end()) {
    eq_line = &it->second;
    if (!trim(it->second.value).empty())
      for (const auto& [off, piece] : split(it->second.value, ','))
        pf.germ.equations.push_back(expression(it->second, off, piece));
  }
  const Line& fl = entries.at("function");
  pf.germ.function = expression(fl, 0, fl.value);

  std::vector<bool> seen(pf.params.size(), false);
  pf.samples.assign(pf.params.size(), {});
  for (const auto& l : sample_lines) {
    auto eq = l.value.find('=');
    if (eq == std::string::npos) fail(l, "expected '<param> = <rational>, ...'");
    std::string name = trim(l.value.substr(0, eq));
    auto p = std::find(pf.params.begin(), pf.params.end(), name);
    if (p == pf.params.end()) fail(l, "'" + name + "' is not a parameter", ErrorCode::UnknownVariable);
    auto j = static_cast<std::size_t>(p - pf.params.begin());
    if (seen[j]) fail(l, "samples for '" + name + "' given twice");
    seen[j] = true;
    for (const auto& [off, piece] : split(l.value.substr(eq + 1), ',')) pf.samples[j].push_back(rational(l, piece));
  }
  if (!sample_lines.empty()) {
    for (std::size_t j = 0; j < seen.size(); ++j)
      if (!seen[j]) fail(sample_lines.front(), "no samples for parameter '" + pf.params[j] + "'", ErrorCode::Semantic);
    for (const auto& s : pf.samples)
      if (s.size() != pf.samples.front().size())
        fail(sample_lines.front(), "every parameter needs the same number of samples", ErrorCode::Semantic);
  } else {
    pf.samples.clear();
  }

  if (auto it = entries.find("mode"); it != entries.end()) {
    try {
      pf.mode = parse_mode(trim(it->second.value));
    } catch (const Error& e) {
      fail(it->second, bare(e.what()), ErrorCode::Semantic);
    }
  }
  if (auto it = entries.find("seed"); it != entries.end()) {
    std::string t = trim(it->second.value);
    if (t.empty() || t.size() > 20 || t.find_first_not_of("0123456789") != std::string::npos)
      fail(it->second, "seed must be an unsigned integer");
    try {
      pf.seed = std::stoull(t);
    } catch (const std::out_of_range&) {
      fail(it->second, "seed out of range");
    }
  }
  if (auto it = entries.find("field"); it != entries.end()) {
    try {
      pf.field = FieldChoice::parse(trim(it->second.value));
    } catch (const Error& e) {
      fail(it->second, bare(e.what()), ErrorCode::Semantic);
    }
  }
  if (auto it = entries.find("options"); it != entries.end()) {
    const Line& l = it->second;
    std::set<std::string> given;
    for (const auto& [off, piece] : split(l.value, ';')) {
      if (trim(piece).empty()) continue;
      auto eq = piece.find('=');
      if (eq == std::string::npos) fail(l, "expected '<option> = <value>'");
      std::string key = trim(piece.substr(0, eq)), val = trim(piece.substr(eq + 1));
      if (!given.insert(key).second) fail(l, "option '" + key + "' given twice");
      if (key == "binomial") {
        try {
          pf.options.binomial = parse_binomial(val);
        } catch (const Error& e) {
          fail(l, bare(e.what()), ErrorCode::Semantic);
        }
      } else if (key == "nmax") {
        pf.options.nmax = small_int(l, val, 1);
      } else if (key == "truncation") {
        pf.options.truncation = small_int(l, val, 1);
      } else {
        fail(l, "unknown option '" + key + "'");
      }
    }
  }

  const Line& where_eq = eq_line ? *eq_line : fl;
  if (pf.germ.k() >= pf.germ.a)
    fail(where_eq, "need fewer equations than x-variables (k < a)", ErrorCode::Semantic);
  for (const auto& e : pf.germ.equations)
    if (!vanishes_on_y(e, pf.germ.a))
      fail(where_eq, "equation " + e.str() + " does not vanish on Y (x = 0)", ErrorCode::Semantic);
  if (!vanishes_on_y(pf.germ.function, pf.germ.a)) {
    std::vector<Term<Rational>> terms;
    for (const auto& t : pf.germ.function.terms()) {
      bool pure = true;
      for (std::size_t i = 0; i < pf.xs.size(); ++i) pure = pure && t.m[i] == 0;
      if (pure) terms.push_back(t);
    }
    auto rest = Polynomial<Rational>::from_terms(ring, terms);
    fail(fl, "f does not vanish on Y: f(0, y) = " + rest.str(), ErrorCode::Semantic);
  }
  return pf;
}

}  // namespace icis::cli
