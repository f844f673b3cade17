#ifndef DAGFIX_CLI_HPP
#define DAGFIX_CLI_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dagfix/functional_laws.hpp"
#include "dagfix/io/documents.hpp"
#include "dagfix/laws.hpp"
#include "dagfix/revlang.hpp"
#include "dagfix/trace.hpp"

namespace dagfix::cli {

enum Exit : int { ok = 0, violation = 1, input_error = 2, non_convergence = 3 };

struct RunConfig {
  std::string category = "rel";
  std::vector<std::string> suites;
  std::size_t min_size = 1;
  std::size_t max_size = 2;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  double tolerance = kDefaultTolerance;
  std::size_t fuel = 10;
  std::size_t max_depth = 4;
  std::string format = "text";
  bool timings = false;
};

namespace detail {

// Input problems the CLI reports with exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline io::Json read_json(const std::string& path) {
  try {
    return io::Json::parse(read_file(path));
  } catch (const io::Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline Category parse_category(const std::string& s) {
  if (s == "rel") return Category::rel;
  if (s == "pinj") return Category::pinj;
  if (s == "dstoch") return Category::dstoch;
  throw ConfigError("unknown category " + s);
}

inline bool randomized(Category c, const std::string& suite) {
  const auto& cs = category_suites();
  if (std::find(cs.begin(), cs.end(), suite) != cs.end()) return c == Category::dstoch;
  return suite == "conj" || suite == "fix-adjoint" || suite == "pfix-adjoint" ||
         suite == "pfix-identity" || suite == "conj-pfix";
}

inline std::vector<std::string> expand_suites(Category c, const std::vector<std::string>& in) {
  std::vector<std::string> out;
  auto add = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  const auto& cs = category_suites();
  const auto& fs = functional_suites();
  for (const std::string& s : in) {
    if (s == "all") {
      for (const std::string& n : cs) add(n);
      for (const std::string& n : fs)
        if (c != Category::dstoch || randomized(c, n)) add(n);
      continue;
    }
    if (std::find(cs.begin(), cs.end(), s) == cs.end() &&
        std::find(fs.begin(), fs.end(), s) == fs.end())
      throw ConfigError("unknown suite " + s);
    if (c == Category::dstoch && !randomized(c, s))
      throw ConfigError("suite " + s + " enumerates hom-sets and needs rel or pinj");
    add(s);
  }
  return out;
}

inline rvl::Bindings parse_bindings(const std::vector<std::string>& items) {
  rvl::Bindings b;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw ConfigError("binding \"" + item + "\" is not of the form param=function");
    b[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return b;
}

inline rvl::Program load_program(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return rvl::parse(text);
  } catch (const rvl::SyntaxError& e) {
    throw ConfigError(path + ":" + e.what());
  }
}

inline std::string default_function(const rvl::Program& p, const std::string& path) {
  const std::string stem = std::filesystem::path(path).stem().string();
  if (p.find(stem)) return stem;
  if (p.defs.empty()) throw ConfigError(path + " defines no functions");
  return p.defs.front().name;
}

inline void require_valid(const rvl::Program& p, const std::string& path) {
  const rvl::ValidationReport r = rvl::validate(p);
  if (r.ok()) return;
  std::string msg = path + " is not a valid program:";
  for (const rvl::Issue& i : r.issues) msg += "\n  " + to_string(i);
  throw ConfigError(msg);
}

inline void print_report_text(std::ostream& out, const LawReport& r, bool timings) {
  out << r.suite << ": " << r.checked << " checked, " << r.skipped << " skipped, "
      << r.violation_count << " violations";
  if (timings)
    out << " (" << std::fixed << std::setprecision(3)
        << std::chrono::duration<double>(r.elapsed).count() << " s)" << std::defaultfloat;
  out << (r.passed() ? "  PASS" : "  FAIL") << '\n';
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i)
    out << "  " << r.violations[i].law << ": " << r.violations[i].witness << '\n';
}

inline int cmd_laws(const RunConfig& rc, std::ostream& out) {
  const Category c = parse_category(rc.category);
  if (rc.suites.empty()) throw ConfigError("select at least one --suite (or --suite all)");
  if (!(rc.tolerance > 0)) throw ConfigError("--tolerance must be positive");
  if (rc.min_size > rc.max_size) throw ConfigError("--min-size exceeds --max-size");
  const std::vector<std::string> suites = expand_suites(c, rc.suites);
  for (const std::string& s : suites)
    if (randomized(c, s) && !rc.seed)
      throw ConfigError("suite " + s + " is randomized and needs --seed");

  LawConfig cfg;
  cfg.min_size = rc.min_size;
  cfg.max_size = rc.max_size;
  cfg.trials = rc.trials;
  cfg.seed = rc.seed;
  cfg.tolerance = rc.tolerance;
  cfg.fuel = rc.fuel;
  cfg.max_depth = rc.max_depth;

  std::vector<LawReport> reports;
  for (const std::string& s : suites) {
    const auto& cs = category_suites();
    const bool category_suite = std::find(cs.begin(), cs.end(), s) != cs.end();
    reports.push_back(category_suite ? law_suite(c, s, cfg) : functional_law_suite(c, s, cfg));
  }
  const bool passed = std::all_of(reports.begin(), reports.end(),
                                  [](const LawReport& r) { return r.passed(); });
  if (rc.format == "json") {
    io::Json doc{{"command", "laws"},
                 {"category", rc.category},
                 {"config",
                  {{"min_size", rc.min_size},
                   {"max_size", rc.max_size},
                   {"trials", rc.trials},
                   {"tolerance", rc.tolerance},
                   {"fuel", rc.fuel},
                   {"max_depth", rc.max_depth}}},
                 {"passed", passed}};
    doc["config"]["seed"] = rc.seed ? io::Json(*rc.seed) : io::Json(nullptr);
    io::Json by_suite = io::Json::object();
    for (const LawReport& r : reports) by_suite[r.suite] = io::to_json(r, rc.timings);
    doc["suites"] = by_suite;
    out << doc.dump(2) << '\n';
  } else {
    for (const LawReport& r : reports) print_report_text(out, r, rc.timings);
  }
  return passed ? ok : violation;
}

struct FixArgs {
  std::string file;
  std::string mode = "auto";
  std::size_t max_iterations = 10000;
};

inline int cmd_fix(const FixArgs& a, const RunConfig& rc, std::ostream& out) {
  const FunctionalExpr phi = io::functional_from_json(read_json(a.file), rc.tolerance);
  FixPolicy policy = default_policy(phi.dom().category, rc.tolerance, a.max_iterations);
  if (a.mode == "exact") policy = FixPolicy::exact(a.max_iterations);
  if (a.mode == "metric") policy = FixPolicy::metric(rc.tolerance, a.max_iterations);
  const KleeneResult<Morphism> r = fix_functional(phi, policy, rc.tolerance);
  io::Json doc{{"command", "fix"},
               {"fixed_point", io::to_json(r.value)},
               {"iterations", r.iterations},
               {"converged", r.converged}};
  if (r.residual) doc["residual"] = *r.residual;
  if (rc.format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    out << io::to_json(r.value).dump() << '\n'
        << "iterations: " << r.iterations << (r.converged ? ", converged" : "") << '\n';
  }
  return ok;
}

struct TraceArgs {
  std::string file;
  std::size_t x = 1;
  std::size_t y = 1;
  std::size_t u = 1;
};

inline int cmd_trace(const TraceArgs& a, const RunConfig& rc, std::ostream& out) {
  const Morphism f = io::morphism_from_json(read_json(a.file), rc.tolerance);
  const Morphism t = trace(f, FinObject{a.x}, FinObject{a.y}, FinObject{a.u});
  if (rc.format == "json")
    out << io::Json{{"command", "trace"}, {"trace", io::to_json(t)}}.dump(2) << '\n';
  else
    out << io::to_json(t).dump() << '\n';
  return ok;
}

struct ProgramArgs {
  std::string file;
  std::string function;
  std::string arg;
  std::size_t fuel = 1000;
  std::vector<std::string> bindings;
  std::string suffix = rvl::kDefaultInverseSuffix;
  std::string output;
  std::size_t trials = 100;
  std::string input_sort;
  std::string output_sort;
  std::size_t max_nat = 8;
  std::size_t max_length = 5;
};

inline int cmd_run(const ProgramArgs& a, const RunConfig& rc, std::ostream& out) {
  const rvl::Program p = load_program(a.file);
  require_valid(p, a.file);
  const std::string fn = a.function.empty() ? default_function(p, a.file) : a.function;
  rvl::Value v;
  try {
    v = rvl::parse_value(a.arg);
  } catch (const rvl::SyntaxError& e) {
    throw ConfigError(std::string("--arg:") + e.what());
  }
  const rvl::EvalResult r = rvl::Evaluator(p).run(fn, parse_bindings(a.bindings), v, a.fuel);
  if (rc.format == "json") {
    io::Json doc{{"command", "run"},
                 {"function", fn},
                 {"fuel", a.fuel},
                 {"outcome", rvl::to_string(r.outcome)}};
    if (r.defined()) {
      doc["value"] = rvl::to_string(r.value);
      doc["depth"] = r.depth;
    }
    if (r.outcome == rvl::Outcome::stuck) doc["reason"] = r.reason;
    out << doc.dump(2) << '\n';
  } else {
    out << rvl::to_string(r) << '\n';
  }
  return ok;
}

inline int cmd_invert(const ProgramArgs& a, std::ostream& out) {
  const rvl::Program p = load_program(a.file);
  require_valid(p, a.file);
  const std::string text = to_string(rvl::invert(p, a.suffix));
  if (a.output.empty()) {
    out << text;
    return ok;
  }
  std::ofstream f(a.output, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + a.output);
  f << text;
  return ok;
}

inline int cmd_roundtrip(const ProgramArgs& a, const RunConfig& rc, std::ostream& out) {
  if (!rc.seed) throw ConfigError("roundtrip is randomized and needs --seed");
  const rvl::Program p = load_program(a.file);
  require_valid(p, a.file);
  const std::string fn = a.function.empty() ? default_function(p, a.file) : a.function;
  rvl::RoundtripConfig cfg;
  cfg.trials = a.trials;
  cfg.fuel = a.fuel;
  cfg.seed = *rc.seed;
  cfg.suffix = a.suffix;
  cfg.sampling = {a.max_nat, a.max_length};
  try {
    if (!a.input_sort.empty()) cfg.input_sort = rvl::parse_sort(a.input_sort);
    if (!a.output_sort.empty()) cfg.output_sort = rvl::parse_sort(a.output_sort);
  } catch (const rvl::SyntaxError& e) {
    throw ConfigError(std::string("sort:") + e.what());
  }
  LawReport r = rvl::roundtrip_check(p, fn, parse_bindings(a.bindings), cfg);
  if (rc.format == "json") {
    io::Json doc{{"command", "roundtrip"},
                 {"function", fn},
                 {"trials", a.trials},
                 {"fuel", a.fuel},
                 {"seed", *rc.seed},
                 {"report", io::to_json(r, rc.timings)}};
    out << doc.dump(2) << '\n';
  } else {
    print_report_text(out, r, rc.timings);
  }
  return r.passed() ? ok : violation;
}

}  // namespace detail

/// Entry point of the dagfix tool. Exit codes: 0 pass, 1 law or round-trip
/// violation, 2 input or configuration error, 3 non-convergence.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dagger categories, fixed points and a reversible language"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML/INI file; flags override it");
  RunConfig rc;
  std::uint64_t seed = 0;
  auto common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--tolerance", rc.tolerance, "numeric tolerance (dstoch)")
        ->capture_default_str();
    sub->add_option("--format", rc.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_flag("--timings", rc.timings, "include elapsed times");
    if (with_seed) sub->add_option("--seed", seed, "seed for every randomized choice");
  };

  CLI::App* laws = app.add_subcommand("laws", "run law suites");
  laws->add_option("--category", rc.category)
      ->check(CLI::IsMember({"rel", "pinj", "dstoch"}))
      ->capture_default_str();
  laws->add_option("--suite", rc.suites, "suite name, repeatable, or all");
  laws->add_option("--min-size", rc.min_size)->capture_default_str();
  laws->add_option("--max-size", rc.max_size)->capture_default_str();
  laws->add_option("--trials", rc.trials)->capture_default_str();
  laws->add_option("--fuel", rc.fuel, "Kleene approximants checked by naturality")
      ->capture_default_str();
  laws->add_option("--max-depth", rc.max_depth, "depth of random functional trees")
      ->capture_default_str();
  common(laws, true);

  detail::FixArgs fix_args;
  CLI::App* fix = app.add_subcommand("fix", "least fixed point of a functional document");
  fix->add_option("spec", fix_args.file)->required();
  fix->add_option("--mode", fix_args.mode)
      ->check(CLI::IsMember({"auto", "exact", "metric"}))
      ->capture_default_str();
  fix->add_option("--max-iterations", fix_args.max_iterations)->capture_default_str();
  common(fix, false);

  detail::TraceArgs trace_args;
  CLI::App* tr = app.add_subcommand("trace", "dagger trace of a morphism document");
  tr->add_option("morphism", trace_args.file)->required();
  tr->add_option("--x", trace_args.x)->capture_default_str();
  tr->add_option("--y", trace_args.y)->capture_default_str();
  tr->add_option("--u", trace_args.u)->capture_default_str();
  common(tr, false);

  detail::ProgramArgs pa;
  auto program = [&](CLI::App* sub) {
    sub->add_option("program", pa.file, ".rvl file")->required();
    sub->add_option("function", pa.function, "defaults to the file stem or the first function");
    sub->add_option("--bind", pa.bindings, "param=function, repeatable; function~ for its inverse");
  };
  CLI::App* run = app.add_subcommand("run", "evaluate a function on a value");
  program(run);
  run->add_option("--arg", pa.arg, "value literal")->required();
  run->add_option("--fuel", pa.fuel)->capture_default_str();
  common(run, false);

  CLI::App* inv = app.add_subcommand("invert", "print the inverse program");
  inv->add_option("program", pa.file)->required();
  inv->add_option("--suffix", pa.suffix)->capture_default_str();
  inv->add_option("-o,--output", pa.output, "write to a file instead of stdout");

  CLI::App* rt = app.add_subcommand("roundtrip", "run a function and its inverse on random inputs");
  program(rt);
  rt->add_option("--trials", pa.trials)->capture_default_str();
  rt->add_option("--fuel", pa.fuel)->capture_default_str();
  rt->add_option("--suffix", pa.suffix)->capture_default_str();
  rt->add_option("--sort", pa.input_sort, "input sort, e.g. \"(nat, list nat)\"");
  rt->add_option("--output-sort", pa.output_sort);
  rt->add_option("--max-nat", pa.max_nat)->capture_default_str();
  rt->add_option("--max-length", pa.max_length)->capture_default_str();
  common(rt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }
  for (CLI::App* sub : {laws, rt})
    if (sub->count("--seed") > 0) rc.seed = seed;
  if (rt->parsed()) pa.fuel = rt->count("--fuel") ? pa.fuel : 10000;

  try {
    if (laws->parsed()) return detail::cmd_laws(rc, out);
    if (fix->parsed()) return detail::cmd_fix(fix_args, rc, out);
    if (tr->parsed()) return detail::cmd_trace(trace_args, rc, out);
    if (run->parsed()) return detail::cmd_run(pa, rc, out);
    if (inv->parsed()) return detail::cmd_invert(pa, out);
    if (rt->parsed()) return detail::cmd_roundtrip(pa, rc, out);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return non_convergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }
  return input_error;
}

}  // namespace dagfix::cli

#endif
