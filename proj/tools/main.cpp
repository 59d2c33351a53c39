#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "report.hpp"

using namespace icis;
using namespace icis::cli;

namespace {

bool input_error(ErrorCode c) {
  return c == ErrorCode::Syntax || c == ErrorCode::UnknownVariable || c == ErrorCode::Semantic ||
         c == ErrorCode::Precondition || c == ErrorCode::RingMismatch;
}

void print_error(bool json, const Error& e, std::size_t line) {
  if (json) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    if (line) j["error"]["line"] = std::to_string(line);
    std::cout << j.dump(2) << "\n";
  }
  std::cerr << "error: " << e.what() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equisingularity invariants of families of ICIS germs"};
  app.require_subcommand(1);
  std::string file;
  bool json = false, timing = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode, field, binomial;
  std::optional<int> nmax, truncation;
  const std::map<std::string, std::string> about{
      {"milnor", "sectional Milnor numbers of X_y and Z_y"},
      {"br", "e(M_y), e(m_y M_y) and e'(y)"},
      {"polar", "polar multiplicities m(Pi^i)"},
      {"depend", "curve criterion for the parameter columns"},
      {"check-af", "A_f condition via e(M_y)"},
      {"check-wf", "W_f condition via e(m_y M_y)"},
      {"report", "all of the above in one report"}};
  for (const auto& name : subcommands()) {
    auto it = about.find(name);
    auto* sub = app.add_subcommand(name, it == about.end() ? "" : it->second);
    sub->add_option("file", file, "problem file, or - for standard input")->required();
    sub->fallthrough();
  }
  app.add_flag("--json", json, "write the JSON report to stdout");
  app.add_flag("--timing", timing, "include wall-clock time in the report");
  app.add_option("--seed", seed, "random seed (overrides the file)");
  app.add_option("--mode", mode, "generic | samples | both");
  app.add_option("--field", field, "q | fp:<prime>");
  app.add_option("--nmax", nmax, "largest degree tried by the Hilbert route");
  app.add_option("--truncation", truncation, "power series truncation order for depend");
  app.add_option("--binomial", binomial, "upper binomial index in the polar formula: a-1 | a");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::string command = app.get_subcommands().front()->get_name();

  std::string text;
  if (file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << file << "\n";
      return 1;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }

  ProblemFile pf;
  try {
    pf = parse_problem(text);
    if (seed) pf.seed = *seed;
    if (mode) pf.mode = parse_mode(*mode);
    if (field) pf.field = FieldChoice::parse(*field);
    if (binomial) pf.options.binomial = parse_binomial(*binomial);
    if (nmax) {
      if (*nmax < 1) throw Error(ErrorCode::Semantic, "--nmax must be positive");
      pf.options.nmax = *nmax;
    }
    if (truncation) {
      if (*truncation < 1) throw Error(ErrorCode::Semantic, "--truncation must be positive");
      pf.options.truncation = *truncation;
    }
  } catch (const ParseError& e) {
    print_error(json, e, e.line());
    return 1;
  } catch (const Error& e) {
    print_error(json, e, 0);
    return 1;
  }

  try {
    auto res = run_subcommand(command, pf, timing);
    if (json) std::cout << res.report.dump(2) << "\n";
    else std::cout << human(res.report);
    return res.exit_code;
  } catch (const Error& e) {
    print_error(json, e, 0);
    return input_error(e.code()) ? 1 : 2;
  } catch (const std::bad_alloc&) {
    print_error(json, Error(ErrorCode::Resource, "out of memory"), 0);
    return 2;
  }
}
