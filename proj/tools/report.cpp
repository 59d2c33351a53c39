#include "report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "icis/depend.hpp"

namespace icis::cli {

using nlohmann::ordered_json;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"milnor", "br", "polar", "depend", "check-af", "check-wf", "report"};
  return names;
}

namespace {

ordered_json str_or_null(const std::optional<std::uint64_t>& v) {
  return v ? ordered_json(std::to_string(*v)) : ordered_json(nullptr);
}

ordered_json strings(const std::vector<std::uint64_t>& v) {
  ordered_json a = ordered_json::array();
  for (auto x : v) a.push_back(std::to_string(x));
  return a;
}

ordered_json string_list(const std::vector<std::string>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

ordered_json input_echo(const ProblemFile& pf) {
  ordered_json in;
  in["canonical"] = pf.canonical();
  in["ring"] = {{"x", string_list(pf.xs)}, {"parameters", string_list(pf.params)}};
  ordered_json eqs = ordered_json::array();
  for (const auto& e : pf.germ.equations) eqs.push_back(e.str());
  in["equations"] = eqs;
  in["function"] = pf.germ.function.str();
  ordered_json samples = ordered_json::object();
  for (std::size_t j = 0; j < pf.samples.size(); ++j) {
    ordered_json vals = ordered_json::array();
    for (const auto& v : pf.samples[j]) vals.push_back(v.str());
    samples[pf.params[j]] = vals;
  }
  in["samples"] = samples;
  in["mode"] = to_string(pf.mode);
  in["seed"] = std::to_string(pf.seed);
  in["field"] = pf.field.str();
  in["options"] = {{"binomial", to_string(pf.options.binomial)},
                   {"nmax", std::to_string(pf.options.nmax)},
                   {"truncation", std::to_string(pf.options.truncation)}};
  return in;
}

std::size_t upper_index(const ProblemFile& pf) {
  std::size_t a = pf.xs.size();
  return pf.options.binomial == Binomial::A ? a : a - 1;
}

// Polar-formula value of e(m_y M_y) from a full sectional sequence, if there is one.
std::optional<std::uint64_t> polar_formula(const InvariantRecord& r, const ProblemFile& pf) {
  std::size_t d = pf.xs.size() - pf.germ.k();
  if (r.mu_X.size() != d + 1 || r.mu_Z.size() != d + 1) return std::nullopt;
  return polar_sum(SectionalSequence{r.mu_X, r.mu_Z}, upper_index(pf));
}

ordered_json record_json(const InvariantRecord& r, const ProblemFile& pf, bool with_formula) {
  ordered_json j;
  j["at"] = r.at.str();
  j["mu_X"] = strings(r.mu_X);
  j["mu_Z"] = strings(r.mu_Z);
  j["e_M"] = str_or_null(r.e_M);
  j["e_mM"] = str_or_null(r.e_mM);
  j["e_mM_polar"] = with_formula ? str_or_null(polar_formula(r, pf)) : ordered_json(nullptr);
  j["e_prime"] = r.e_prime_infinite ? ordered_json("INFINITE") : str_or_null(r.e_prime);
  j["polar"] = strings(r.polar);
  j["flags"] = {{"icis", r.icis}, {"isolated", r.isolated}, {"consistent", r.consistent}};
  ordered_json errs = ordered_json::array();
  for (const auto& e : r.errors) errs.push_back({{"field", e.field}, {"code", to_string(e.code)}, {"message", e.message}});
  j["errors"] = errs;
  j["faults"] = string_list(r.faults);
  return j;
}

ordered_json verdict_json(const Verdict& v, const std::vector<InvariantRecord>& records,
                          std::optional<std::uint64_t> InvariantRecord::*table_field) {
  ordered_json j;
  j["condition"] = to_string(v.condition);
  j["outcome"] = to_string(v.outcome);
  j["clause"] = v.clause;
  if (table_field) {
    ordered_json t = ordered_json::object();
    for (const auto& r : records) t[r.at.str()] = str_or_null(r.*table_field);
    j["table"] = t;
  }
  j["evidence"] = string_list(v.evidence);
  j["faults"] = string_list(v.faults);
  return j;
}

RecordOptions record_options(const ProblemFile& pf) {
  RecordOptions o;
  o.field = pf.field;
  o.br.n_max = pf.options.nmax;
  return o;
}

bool any_record_error(const std::vector<InvariantRecord>& rs) {
  for (const auto& r : rs)
    if (!r.errors.empty() || !r.faults.empty()) return true;
  return false;
}

bool any_fault(const std::vector<InvariantRecord>& rs) {
  for (const auto& r : rs)
    if (!r.faults.empty()) return true;
  return false;
}

void record_diagnostics(ordered_json& diag, const std::vector<InvariantRecord>& rs, const ProblemFile& pf,
                        bool formula, bool polar) {
  for (const auto& r : rs) {
    if (formula && r.e_mM) {
      if (auto p = polar_formula(r, pf); p && *p != *r.e_mM)
        diag.push_back("polar formula with upper index " + std::string(to_string(pf.options.binomial)) + " gives " +
                       std::to_string(*p) + ", direct route " + std::to_string(*r.e_mM) + " at y = " + r.at.str());
    }
    if (polar && !r.polar.empty()) {
      for (std::size_t i = 0; i + 1 < r.polar.size() && i < r.mu_X.size(); ++i)
        if (r.polar[i] != r.mu_X[i] + r.mu_Z[i])
          diag.push_back("m(Pi^" + std::to_string(i) + ") = " + std::to_string(r.polar[i]) + " differs from mu_" +
                         std::to_string(i) + "(X) + mu_" + std::to_string(i) + "(Z) at y = " + r.at.str());
    }
  }
}

ordered_json depend_section(const ProblemFile& pf, bool& inconclusive) {
  ordered_json out;
  DependOptions dopts;
  dopts.N = pf.options.truncation;
  Rng rng = Rng(pf.seed).derive("paths");
  std::optional<std::size_t> solve;
  if (pf.germ.k() == 1) solve = pf.xs.size() - 1;
  auto sample = default_paths(pf.germ.ring, pf.germ.equations, kPathBudget, rng, dopts, solve);
  out["budget"] = std::to_string(kPathBudget);
  out["truncation"] = std::to_string(dopts.N);
  out["paths"] = std::to_string(sample.paths.size());
  out["notices"] = string_list(sample.notices);
  auto jm = jacobian_module(pf.germ);
  auto m = jm.module();
  ordered_json cols = ordered_json::array();
  for (std::size_t j = 0; j < jm.extra.size(); ++j) {
    auto rep = curve_criterion(jm.extra[j], m, sample.paths, dopts);
    ordered_json c;
    c["parameter"] = pf.params[j];
    c["verdict"] = to_string(rep.verdict);
    if (rep.verdict == DependVerdict::Inconclusive) inconclusive = true;
    if (rep.verdict == DependVerdict::DependentToOrder) c["order"] = std::to_string(rep.order);
    if (rep.witness_path) {
      const auto& mr = rep.per_path[*rep.witness_path];
      c["witness_path"] = sample.paths[*rep.witness_path].str(pf.germ.ring->names);
      c["gap"] = std::to_string(mr.gap);
      c["gap_exact"] = mr.gap_exact;
    }
    cols.push_back(c);
  }
  out["columns"] = cols;
  return out;
}

}  // namespace

RunResult run_subcommand(const std::string& name, const ProblemFile& pf, bool timing) {
  if (std::find(subcommands().begin(), subcommands().end(), name) == subcommands().end())
    throw Error(ErrorCode::Semantic, "unknown subcommand '" + name + "'");
  auto start = std::chrono::steady_clock::now();
  RunResult res;
  ordered_json& rep = res.report;
  rep["schema"] = kSchemaVersion;
  rep["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  rep["command"] = name;
  rep["seed"] = std::to_string(pf.seed);
  rep["input"] = input_echo(pf);
  auto points = pf.points();
  ordered_json pts = ordered_json::array();
  for (const auto& p : points) pts.push_back(p.str());
  rep["points"] = pts;
  ordered_json diag = ordered_json::array();
  RecordOptions o = record_options(pf);

  auto put_records = [&](const std::vector<InvariantRecord>& rs, bool formula) {
    ordered_json a = ordered_json::array();
    for (const auto& r : rs) a.push_back(record_json(r, pf, formula));
    rep["records"] = a;
  };

  // Without parameters there is nothing to compare, so report only lists the invariants.
  bool single = name == "report" && pf.params.empty();
  if (name == "milnor" || name == "br" || name == "polar" || single) {
    o.e_mM = o.e_prime = name == "br" || single;
    o.polar = name == "polar" || single;
    auto rs = invariant_records(pf.germ, points, pf.seed, o);
    put_records(rs, o.e_mM);
    record_diagnostics(diag, rs, pf, o.e_mM, o.polar);
    if (single) diag.push_back("no parameters: verdicts need y = 0 and another point");
    res.exit_code = any_record_error(rs) ? 2 : 0;
  } else if (name == "depend") {
    bool inconclusive = false;
    rep["depend"] = depend_section(pf, inconclusive);
    res.exit_code = inconclusive ? 2 : 0;
  } else {
    check_points(pf.germ, points);
    bool full = name == "report";
    o.sequences = full;
    o.polar = full;
    o.e_mM = name != "check-af";
    auto a = analyze_family(pf.germ, points, pf.seed, o);
    put_records(a.records, full);
    ordered_json v = ordered_json::object();
    v["af"] = verdict_json(a.af, a.records, &InvariantRecord::e_M);
    if (o.e_mM) v["wf"] = verdict_json(a.wf, a.records, &InvariantRecord::e_mM);
    if (full) {
      v["milnor_pair"] = verdict_json(a.milnor_pair, a.records, nullptr);
      v["milnor_sequences"] = verdict_json(a.milnor_sequences, a.records, nullptr);
    }
    rep["verdicts"] = v;
    bool indeterminate = a.af.outcome == Outcome::Indeterminate ||
                         (o.e_mM && a.wf.outcome == Outcome::Indeterminate);
    bool faults = any_fault(a.records) || !a.af.faults.empty() || !a.wf.faults.empty() ||
                  !a.milnor_pair.faults.empty() || !a.milnor_sequences.faults.empty();
    if (name == "check-af") indeterminate = a.af.outcome == Outcome::Indeterminate;
    if (full) {
      rep["semicontinuity"] = {{"ok", a.semicontinuity.ok}, {"violations", string_list(a.semicontinuity.violations)}};
      try {
        SbOptions sb;
        sb.max_pairs = 200'000;
        auto s = support_equality(pf.germ, sb);
        rep["support"] = {{"sigma_y_in_y", s.sigma_y_in_y},
                          {"y_in_sigma_y", s.y_in_sigma_y},
                          {"sigma_y_equals_y", s.sigma_y_equals_y()},
                          {"sigma_in_y", s.sigma_in_y},
                          {"sigma_equals_sigma_y", s.sigma_equals_sigma_y}};
      } catch (const Error& e) {
        rep["support"] = nullptr;
        diag.push_back(std::string("support comparison not completed: ") + e.what());
      }
      bool inconclusive = false;
      rep["depend"] = depend_section(pf, inconclusive);
      record_diagnostics(diag, a.records, pf, true, true);
      if (!a.semicontinuity.ok) faults = true;
    }
    // e' is reported for information only.
    std::optional<std::string> eprime;
    bool constant = true;
    for (const auto& r : a.records) {
      std::string val = r.e_prime_infinite ? "INFINITE" : r.e_prime ? std::to_string(*r.e_prime) : "?";
      if (eprime && *eprime != val) constant = false;
      eprime = val;
    }
    diag.push_back(std::string("e'(y) ") + (constant ? "constant" : "not constant") + " across points");
    res.exit_code = indeterminate || faults ? 2 : 0;
  }
  rep["diagnostics"] = diag;
  if (timing) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", secs);
    rep["timing"] = {{"wall_seconds", buf}};
  }
  return res;
}

namespace {

std::string flat(const ordered_json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + flat(j[i]);
    return s + "]";
  }
  return j.dump();
}

}  // namespace

std::string human(const ordered_json& r) {
  std::ostringstream out;
  out << r["tool"]["name"].get<std::string>() << " " << r["tool"]["version"].get<std::string>() << "  "
      << r["command"].get<std::string>() << "  seed " << r["seed"].get<std::string>() << "\n";
  std::istringstream canon(r["input"]["canonical"].get<std::string>());
  for (std::string line; std::getline(canon, line);) out << "  | " << line << "\n";
  if (r.contains("records")) {
    out << "records\n";
    for (const auto& rec : r["records"]) {
      out << "  y = " << flat(rec["at"]) << ":";
      for (const char* k : {"mu_X", "mu_Z", "e_M", "e_mM", "e_mM_polar", "e_prime", "polar"}) {
        const auto& v = rec[k];
        if (v.is_null() || (v.is_array() && v.empty())) continue;
        out << "  " << k << " " << flat(v);
      }
      out << "\n";
      for (const auto& e : rec["errors"]) out << "    error " << flat(e["field"]) << ": " << flat(e["message"]) << "\n";
      for (const auto& f : rec["faults"]) out << "    FAULT " << flat(f) << "\n";
    }
  }
  if (r.contains("verdicts")) {
    out << "verdicts\n";
    for (const auto& [key, v] : r["verdicts"].items()) {
      out << "  " << flat(v["condition"]) << ": " << flat(v["outcome"]) << " (" << flat(v["clause"]) << ")\n";
      for (const auto& e : v["evidence"]) out << "    " << flat(e) << "\n";
      for (const auto& f : v["faults"]) out << "    FAULT " << flat(f) << "\n";
    }
  }
  if (r.contains("semicontinuity")) {
    out << "semicontinuity " << (r["semicontinuity"]["ok"].get<bool>() ? "ok" : "VIOLATED") << "\n";
    for (const auto& v : r["semicontinuity"]["violations"]) out << "  " << flat(v) << "\n";
  }
  if (r.contains("support") && !r["support"].is_null()) {
    out << "support";
    for (const auto& [k, v] : r["support"].items()) out << "  " << k << " " << (v.get<bool>() ? "yes" : "no");
    out << "\n";
  }
  if (r.contains("depend")) {
    const auto& d = r["depend"];
    out << "curve criterion: " << flat(d["paths"]) << " paths, budget " << flat(d["budget"]) << ", truncation "
        << flat(d["truncation"]) << "\n";
    for (const auto& n : d["notices"]) out << "  notice: " << flat(n) << "\n";
    for (const auto& c : d["columns"]) {
      out << "  d/d" << flat(c["parameter"]) << ": " << flat(c["verdict"]);
      if (c.contains("order")) out << " to order " << flat(c["order"]);
      if (c.contains("witness_path")) out << " on " << flat(c["witness_path"]) << ", gap " << flat(c["gap"]);
      out << "\n";
    }
  }
  for (const auto& d : r["diagnostics"]) out << "note: " << flat(d) << "\n";
  if (r.contains("timing")) out << "time " << flat(r["timing"]["wall_seconds"]) << " s\n";
  return out.str();
}

}  // namespace icis::cli
