#pragma once

// Command-line front end. Kept as a header so the test suite can drive
// run_cli() in-process; sgprime_main.cpp is a two-line wrapper.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sgprime/sgprime.hpp"

namespace sgprime::cli {

struct RunConfig {
  std::string command;
  std::uint64_t sieve_limit = kDefaultSieveLimit;
  std::uint64_t max_sieve_limit = kDefaultMaxSieveLimit;
  unsigned threads = default_threads();
  std::string output;  // empty: stdout
  std::string format = "csv";
  bool gnuplot = false;
};

namespace detail {

inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw ArgumentError("range must look like lo:hi, got '" + s + "'");
  auto lo = sgprime::detail::parse_u64(std::string_view(s).substr(0, colon), "range start");
  auto hi = sgprime::detail::parse_u64(std::string_view(s).substr(colon + 1), "range end");
  if (hi < lo) throw ArgumentError("range end below start: '" + s + "'");
  return {lo, hi};
}

inline std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) out.push_back(sgprime::detail::parse_u64(item, "generator"));
  return out;
}

inline PrimeTable make_table(const RunConfig& cfg, std::uint64_t required) {
  return PrimeTable(std::max(cfg.sieve_limit, required), cfg.max_sieve_limit);
}

// Writes next to the destination and renames, so a failed run leaves nothing behind.
inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  namespace fs = std::filesystem;
  fs::path dest(cfg.output);
  fs::path tmp = dest;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open " + tmp.string() + " for writing");
    f << text;
    if (!f.flush()) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, dest);
}

inline std::string csv_bool(bool b) { return b ? "1" : "0"; }

}  // namespace detail

inline std::string frobenius_output(const RunConfig& cfg, const AperyProfile& ap, const AtomSet& at) {
  auto gap_list = gaps(ap);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["multiplicity"] = ap.multiplicity;
    j["f"] = ap.frobenius;
    j["g"] = ap.genus;
    j["e"] = at.embedding_dimension;
    j["atoms"] = at.atoms;
    j["gaps"] = gap_list.size() <= 64 ? gap_list : std::vector<std::uint64_t>(gap_list.begin(), gap_list.begin() + 64);
    j["gaps_truncated"] = gap_list.size() > 64;
    return j.dump() + "\n";
  }
  std::ostringstream os;
  os << "f=" << ap.frobenius << " g=" << ap.genus << " e=" << at.embedding_dimension << " m=" << ap.multiplicity
     << "\n";
  os << "gaps:";
  const std::size_t shown = std::min<std::size_t>(gap_list.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) os << (i ? "," : " ") << gap_list[i];
  if (gap_list.size() > shown) os << ",... (" << gap_list.size() << " total)";
  os << "\n";
  return os.str();
}

inline std::string staircase_csv(const RatioScan& scan, bool json) {
  std::ostringstream os;
  struct Row {
    Rational x;
    std::string line;
  };
  std::vector<Row> rows;
  for (const auto& pt : scan.points) {
    if (json) {
      nlohmann::ordered_json j{{"p", pt.p}, {"a", pt.lambda.num}, {"b", pt.lambda.den},
                               {"x", format_decimal(pt.x)}, {"f", pt.f}, {"ratio", pt.ratio_str()},
                               {"F", pt.F}, {"in_D", true}};
      rows.push_back({pt.x, j.dump()});
    } else {
      rows.push_back({pt.x, std::to_string(pt.p) + "," + std::to_string(pt.lambda.num) + "," +
                                std::to_string(pt.lambda.den) + "," + format_decimal(pt.x) + "," +
                                std::to_string(pt.f) + "," + pt.ratio_str() + "," + std::to_string(pt.F) + ",1"});
    }
  }
  for (const auto& s : scan.skipped) {
    Rational x = Rational::make(s.lambda.num + s.lambda.den, s.lambda.den);
    if (json) {
      nlohmann::ordered_json j{{"p", nullptr}, {"a", s.lambda.num}, {"b", s.lambda.den}, {"x", format_decimal(x)},
                               {"f", nullptr}, {"ratio", nullptr}, {"F", staircase_F(s.lambda)}, {"in_D", false}};
      rows.push_back({x, j.dump()});
    } else {
      rows.push_back({x, "," + std::to_string(s.lambda.num) + "," + std::to_string(s.lambda.den) + "," +
                             format_decimal(x) + ",,," + std::to_string(staircase_F(s.lambda)) + ",0"});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.x < b.x; });
  if (!json) os << "p,a,b,x,f,ratio,F,in_D\n";
  for (const auto& r : rows) os << r.line << "\n";
  return os.str();
}

inline std::string gnuplot_script(const std::string& csv_path, std::uint64_t p) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key top right\n"
     << "set xlabel 'x = 1 + lambda'\n"
     << "set ylabel 'f_lambda(p)/p'\n"
     << "set title 'f_lambda(" << p << ")/" << p << "'\n"
     << "plot '" << csv_path << "' every ::1 using 4:6 with points pt 7 ps 0.3 title 'ratio', \\\n"
     << "     '' every ::1 using 4:7 with steps title 'F(lambda)'\n";
  return os.str();
}

inline std::string wilf_csv(const std::vector<SpRow>& rows, bool json) {
  std::ostringstream os;
  if (!json) os << "n,p,e,f,g,sporadic,lhs,rhs,holds,eq3_rhs,f_lt_eq3_rhs\n";
  for (const auto& r : rows) {
    const auto& w = r.report;
    if (json) {
      nlohmann::ordered_json j{{"n", r.n}, {"p", w.p}, {"e", w.e}, {"f", w.f}, {"g", w.g},
                               {"sporadic", w.sporadic}, {"lhs", w.lhs.str()}, {"rhs", w.rhs.str()},
                               {"holds", w.holds}, {"eq3_rhs", r.eq3_rhs}, {"f_lt_eq3_rhs", r.f_lt_eq3_rhs}};
      os << j.dump() << "\n";
    } else {
      os << r.n << "," << w.p << "," << w.e << "," << w.f << "," << w.g << "," << w.sporadic << "," << w.lhs.str()
         << "," << w.rhs.str() << "," << detail::csv_bool(w.holds) << "," << r.eq3_rhs << ","
         << detail::csv_bool(r.f_lt_eq3_rhs) << "\n";
    }
  }
  return os.str();
}

inline std::string table3_csv(const std::vector<Table3Row>& rows, bool json) {
  std::ostringstream os;
  if (!json) os << "n,p_n,f_n,parity,f_next_minus_3p,pass\n";
  for (const auto& r : rows) {
    const char* parity = r.f_odd ? "odd" : "even";
    if (json) {
      nlohmann::ordered_json j{{"n", r.n},         {"p_n", r.p_n}, {"f_n", r.f_n}, {"parity", parity},
                               {"f_next_minus_3p", r.gap_to_3p}, {"pass", r.pass()}};
      os << j.dump() << "\n";
    } else {
      os << r.n << "," << r.p_n << "," << r.f_n << "," << parity << "," << r.gap_to_3p << ","
         << detail::csv_bool(r.pass()) << "\n";
    }
  }
  return os.str();
}

inline std::string certificate_json(const DecompCertificate& c) {
  nlohmann::ordered_json j;
  j["N"] = c.N;
  j["m"] = c.m;
  j["parts"] = c.parts;
  j["max_deviation"] = c.max_deviation;
  j["bound"] = to_string(c.bound_type);
  if (c.bound_type == BoundType::DeltaN) j["delta"] = c.delta.str();
  else j["window"] = c.window;
  return j.dump() + "\n";
}

// Returns the process exit code: 0 success, 2 usage/domain error, 1 internal error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Numerical semigroups generated by primes in intervals"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* sieve_opt = app.add_option("--sieve-limit", cfg.sieve_limit,
                                   "minimum sieve limit, auto-extended as needed (env SGPRIME_SIEVE_LIMIT)")
                        ->check(CLI::Range(std::uint64_t{2}, kDefaultMaxSieveLimit));
  auto* threads_opt = app.add_option("--threads", cfg.threads, "worker threads (env SGPRIME_THREADS)")
                          ->check(CLI::Range(1u, 4096u));
  app.add_option("--output,-o", cfg.output, "write to this file instead of stdout");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* frob = app.add_subcommand("frobenius", "f, g, e and gaps of a semigroup");
  std::string gens_arg, lambda_arg;
  std::uint64_t p_arg = 0;
  auto* gens_opt = frob->add_option("--gens", gens_arg, "comma-separated generators");
  auto* p_opt = frob->add_option("--p", p_arg, "prime p for S_lambda(p)");
  auto* lambda_opt = frob->add_option("--lambda", lambda_arg, "lambda as a/b")->needs(p_opt);
  gens_opt->excludes(p_opt);
  p_opt->needs(lambda_opt);

  auto* scan = app.add_subcommand("lambda-scan", "f_lambda(p)/p over a grid of x = 1 + lambda");
  std::uint64_t scan_p = 0, grid_den = 0, grid_steps = 0;
  bool figure_mode = false;
  std::vector<std::string> x_args;
  scan->add_option("--p", scan_p, "prime p")->required();
  scan->add_flag("--figure-mode", figure_mode, "every x with x p prime up to the largest atom of S_n, p = p_n");
  scan->add_option("--x", x_args, "x values (rational, > 1)");
  scan->add_option("--grid-den", grid_den, "uniform grid x = 1 + k/den");
  scan->add_option("--grid-steps", grid_steps, "number of uniform grid points");
  scan->add_flag("--gnuplot", cfg.gnuplot, "also write <output>.gp");

  auto* wilf = app.add_subcommand("wilf", "Wilf's inequality for S(p_n)");
  std::string wilf_range;
  wilf->add_option("--range", wilf_range, "n range lo:hi")->required();

  auto* table3 = app.add_subcommand("table3", "parity of f_n and f_{n+1} - 3p_n");
  std::string table3_range;
  table3->add_option("--range", table3_range, "n range lo:hi (lo >= 5)")->required();

  auto* goldbach = app.add_subcommand("goldbach", "certified decomposition into m nearly equal primes");
  std::uint64_t gb_N = 0, gb_m = 0;
  std::string gb_delta;
  double gb_theta = kDefaultTernaryTheta;
  goldbach->add_option("--N", gb_N)->required();
  goldbach->add_option("--m", gb_m)->required();
  goldbach->add_option("--delta", gb_delta, "delta as a/b")->required();
  goldbach->add_option("--theta", gb_theta, "exponent of the ternary window")->check(CLI::Range(0.0, 1.0));

  auto* dens = app.add_subcommand("density", "(1+f-g)/(1+f) for S(p)");
  std::uint64_t dens_p = 0;
  dens->add_option("--p", dens_p)->required();

  auto* sn = app.add_subcommand("sn", "Frobenius number f_n of <primes >= p_n>");
  std::uint64_t sn_n = 0;
  sn->add_option("--n", sn_n)->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int rc = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return rc == 0 ? 0 : 2;
  }

  const bool json = cfg.format == "json";
  try {
    // Flags win over the environment. CLI11 drops malformed env values
    // silently, so they are parsed here and rejected loudly.
    if (const char* env = std::getenv("SGPRIME_SIEVE_LIMIT"); env && sieve_opt->count() == 0)
      cfg.sieve_limit = sgprime::detail::parse_u64(env, "SGPRIME_SIEVE_LIMIT");
    if (const char* env = std::getenv("SGPRIME_THREADS"); env && threads_opt->count() == 0)
      cfg.threads = static_cast<unsigned>(sgprime::detail::parse_u64(env, "SGPRIME_THREADS"));
    if (cfg.sieve_limit < 2 || cfg.sieve_limit > cfg.max_sieve_limit)
      throw ConfigError("sieve limit must lie in [2, " + std::to_string(cfg.max_sieve_limit) + "]");
    if (cfg.threads == 0) throw ConfigError("thread count must be positive");
    if (frob->parsed()) {
      cfg.command = "frobenius";
      if (gens_arg.empty() && p_arg == 0) throw ArgumentError("frobenius needs --gens or --p with --lambda");
      if (!gens_arg.empty()) {
        auto gs = normalize_generators(detail::parse_list(gens_arg));
        auto ap = apery_set(gs);
        detail::emit(cfg, frobenius_output(cfg, ap, atoms(ap, gs)), out);
      } else {
        auto lambda = Lambda::parse(lambda_arg);
        auto t = detail::make_table(cfg, interval_upper(p_arg, lambda));
        auto ls = build(t, p_arg, lambda);
        detail::emit(cfg, frobenius_output(cfg, ls.profile, atoms(ls.profile, ls.generator_set())), out);
      }
    } else if (scan->parsed()) {
      cfg.command = "lambda-scan";
      if (cfg.gnuplot && cfg.output.empty()) throw ArgumentError("--gnuplot needs --output");
      if ((grid_den == 0) != (grid_steps == 0)) throw ArgumentError("--grid-den and --grid-steps go together");
      if (!figure_mode && x_args.empty() && grid_den == 0)
        throw ArgumentError("lambda-scan needs --figure-mode, --x or a uniform grid");
      std::vector<Lambda> lambdas;
      for (const auto& xs : x_args) {
        auto x = Rational::parse(xs);
        if (x.num <= x.den) throw ArgumentError("x must exceed 1, got " + xs);
        lambdas.push_back(Lambda::make(x.num - x.den, x.den));
      }
      if (grid_den != 0)
        for (auto l : uniform_lambdas(grid_den, grid_steps)) lambdas.push_back(l);
      std::uint64_t need = 2 * scan_p + 2;
      for (const auto& l : lambdas) need = std::max(need, interval_upper(scan_p, l));
      std::uint64_t figure_n = 0;
      if (figure_mode) {
        // the prime index of p is known once a table covering p exists
        figure_n = PrimeTable(std::max<std::uint64_t>(scan_p, 2), cfg.max_sieve_limit).pi(scan_p);
        need = std::max(need, sn_required_limit(figure_n));
      }
      auto t = detail::make_table(cfg, need);
      if (!t.is_prime(scan_p)) throw ArgumentError(std::to_string(scan_p) + " is not prime");
      if (figure_mode) {
        auto s = sn_frobenius(t, figure_n);
        for (auto l : figure_lambdas(t, scan_p, sn_max_atom(s))) lambdas.push_back(l);
      }
      auto result = ratio_scan(t, scan_p, lambdas);
      for (const auto& s : result.skipped) err << "skipped lambda=" << s.lambda.str() << ": " << s.reason << "\n";
      detail::emit(cfg, staircase_csv(result, json), out);
      if (cfg.gnuplot) {
        RunConfig gp = cfg;
        gp.output = cfg.output + ".gp";
        detail::emit(gp, gnuplot_script(cfg.output, scan_p), out);
      }
    } else if (wilf->parsed()) {
      cfg.command = "wilf";
      auto [lo, hi] = detail::parse_range(wilf_range);
      if (lo < 1) throw ArgumentError("n starts at 1");
      auto t = detail::make_table(cfg, 2 * nth_prime_upper_estimate(hi) + 2);
      auto rows = verify_sp_range(t, lo, hi, cfg.threads);
      std::size_t failed = std::count_if(rows.begin(), rows.end(), [](const SpRow& r) { return !r.report.holds; });
      detail::emit(cfg, wilf_csv(rows, json), out);
      err << rows.size() << " semigroups, " << (failed == 0 ? "all hold" : std::to_string(failed) + " fail") << "\n";
    } else if (table3->parsed()) {
      cfg.command = "table3";
      auto [lo, hi] = detail::parse_range(table3_range);
      auto t = detail::make_table(cfg, sn_required_limit(hi + 1));
      auto rows = table3_scan(t, lo, hi, cfg.threads);
      std::size_t failed = std::count_if(rows.begin(), rows.end(), [](const Table3Row& r) { return !r.pass(); });
      detail::emit(cfg, table3_csv(rows, json), out);
      err << rows.size() << " rows, " << (failed == 0 ? "all pass" : std::to_string(failed) + " fail") << "\n";
    } else if (goldbach->parsed()) {
      cfg.command = "goldbach";
      auto delta = Rational::parse(gb_delta);
      auto t = detail::make_table(cfg, gb_N);
      auto cert = decompose_m(t, gb_N, gb_m, delta, gb_theta);
      if (!validate(t, cert)) throw Error("certificate failed re-validation");
      detail::emit(cfg, certificate_json(cert), out);
    } else if (dens->parsed()) {
      cfg.command = "density";
      auto t = detail::make_table(cfg, 2 * dens_p);
      auto d = density(t, dens_p);
      std::ostringstream os;
      if (json)
        os << nlohmann::ordered_json{{"p", dens_p}, {"sporadic", d.num}, {"f_plus_1", d.den},
                                     {"density", format_decimal(d)}}.dump() << "\n";
      else
        os << "p,density_num,density_den,density\n" << dens_p << "," << d.num << "," << d.den << ","
           << format_decimal(d) << "\n";
      detail::emit(cfg, os.str(), out);
    } else if (sn->parsed()) {
      cfg.command = "sn";
      auto t = detail::make_table(cfg, sn_required_limit(sn_n));
      auto s = sn_frobenius(t, sn_n);
      std::ostringstream os;
      if (json)
        os << nlohmann::ordered_json{{"n", s.n}, {"p_n", s.p_n}, {"truncation", s.truncation}, {"f_n", s.f_n},
                                     {"certificate_ok", s.certificate_ok}}.dump() << "\n";
      else
        os << "n,p_n,truncation,f_n,certificate_ok\n" << s.n << "," << s.p_n << "," << s.truncation << ","
           << s.f_n << "," << detail::csv_bool(s.certificate_ok) << "\n";
      detail::emit(cfg, os.str(), out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace sgprime::cli
