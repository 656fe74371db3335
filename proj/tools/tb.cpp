// tb: command-line front end for the twobridge library.
// Exit codes: 0 pass, 1 verification failure, 2 usage or domain error.
#include "twobridge/acceptance.hpp"
#include "twobridge/twobridge.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace twobridge;
using nlohmann::json;

namespace {

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text);
    } else {
      r.lo = std::stoi(text.substr(0, dots));
      r.hi = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw DomainError("bad crossing range '" + text + "', expected N or A..B");
  }
  if (r.lo < 3 || r.hi < r.lo) throw DomainError("crossing range must satisfy 3 <= A <= B, got '" + text + "'");
  return r;
}

struct Common {
  std::string cache_dir = ".tb-cache";
  unsigned workers = default_workers();
  std::string format = "csv";
};

SignatureRow cached_enumerated(int c, const Common& cfg) {
  acceptance::Options opt;
  opt.cache_dir = resolve_cache_dir(cfg.cache_dir);
  opt.workers = cfg.workers;
  opt.log = &std::cerr;
  return acceptance::enumerated_row(c, opt);
}

// rows 3..hi purely by recursion from the base rows, reusing cached recursed rows
SignatureTable cached_recursed(int hi, const Common& cfg) {
  SignatureCache cache(resolve_cache_dir(cfg.cache_dir));
  SignatureTable t;
  for (int c = 3; c <= hi; ++c) {
    if (c <= 4) {
      t.set(c, cached_enumerated(c, cfg), Provenance::Enumerated);
      continue;
    }
    bool corrupt = false;
    SignatureRow fresh = histogram_recursed(c, t);
    auto hit = cache.load(c, &corrupt);
    if (corrupt) std::cerr << "warning: cache file " << cache.path(c).string() << " is corrupt; re-deriving\n";
    if (hit && hit->row != fresh) {
      std::cerr << "warning: cached row c=" << c << " disagrees with recursion; overwriting\n";
      hit.reset();
    }
    if (!hit) cache.store(c, fresh, Provenance::Recursed);
    t.set(c, std::move(fresh), Provenance::Recursed);
  }
  return t;
}

json row_json(int c, const SignatureRow& row, Provenance p) {
  json counts = json::object();
  for (const auto& [sg, n] : row) counts[std::to_string(sg)] = big_json(n);
  return {{"c", c}, {"provenance", provenance_name(p)}, {"counts", counts}};
}

int cmd_enumerate(int c, bool count_only, const Common&) {
  require_enumerable(c);
  if (count_only) {
    std::cout << word_count(c) << "\n";
    return 0;
  }
  for (RunWord w : enumerate_words(c)) std::cout << w.str() << "\n";
  return 0;
}

int cmd_sig_table(const Range& range, const std::string& method, const Common& cfg) {
  if (method != "enumerate" && method != "recurse" && method != "both") throw DomainError("unknown method " + method);
  bool mismatch = false;
  std::vector<std::tuple<int, SignatureRow, Provenance>> out;
  SignatureTable rec;
  if (method != "enumerate") rec = cached_recursed(range.hi, cfg);
  for (int c = range.lo; c <= range.hi; ++c) {
    if (method == "recurse") {
      out.emplace_back(c, rec.row(c), rec.provenance(c));
      continue;
    }
    SignatureRow e = cached_enumerated(c, cfg);
    if (method == "both" && e != rec.row(c)) {
      std::cerr << "mismatch: enumerated and recursed rows differ at c=" << c << "\n";
      mismatch = true;
    }
    out.emplace_back(c, std::move(e), Provenance::Enumerated);
  }
  if (cfg.format == "json") {
    json rows = json::array();
    for (const auto& [c, row, p] : out) rows.push_back(row_json(c, row, p));
    std::cout << json{{"schema", kSchemaVersion}, {"rows", rows}}.dump(2) << "\n";
  } else {
    std::cout << "# twobridge sig-table schema=" << kSchemaVersion << "\nc,sigma,count\n";
    for (const auto& [c, row, p] : out) std::cout << row_csv_body(c, row);
  }
  return mismatch ? 1 : 0;
}

int cmd_avg_sig(const Range& range, const std::string& method, const Common& cfg) {
  SignatureTable t;
  if (method == "recurse") {
    t = cached_recursed(range.hi, cfg);
  } else if (method == "enumerate") {
    for (int c = range.lo; c <= range.hi; ++c) t.set(c, cached_enumerated(c, cfg), Provenance::Enumerated);
  } else {
    throw DomainError("unknown method " + method);
  }
  json rows = json::array();
  if (cfg.format != "json") std::cout << "# twobridge avg-sig schema=" << kSchemaVersion << "\nc,tot,tot_p,knots,avg_num,avg_den,avg,asymptote,gap\n";
  for (int c = range.lo; c <= range.hi; ++c) {
    const TotalsReport r = totals(c, t);
    const BigFloat gap = to_float(r.avg_abs_sigma) - r.asymptote;
    if (cfg.format == "json") {
      json j = totals_json(r);
      j["gap"] = format_float(gap);
      rows.push_back(j);
    } else {
      std::cout << c << "," << r.tot << "," << r.tot_p << "," << r.knots << ","
                << boost::multiprecision::numerator(r.avg_abs_sigma) << ","
                << boost::multiprecision::denominator(r.avg_abs_sigma) << "," << format_float(to_float(r.avg_abs_sigma))
                << "," << format_float(r.asymptote) << "," << format_float(gap) << "\n";
    }
  }
  if (cfg.format == "json") std::cout << json{{"schema", kSchemaVersion}, {"rows", rows}}.dump(2) << "\n";
  return 0;
}

int cmd_g4_word(const std::string& text, int s, bool dump, const Common&) {
  const RunWord w = RunWord::parse(text);
  if (s <= 0) s = choose_block_size(w.crossing_number());
  const DecompositionReport rep = analyze(w, s);
  json j = decomposition_json(rep);
  if (dump) j["diagram"] = diagram_json(build_diagram(to_braid(w)));
  std::cout << j.dump(2) << "\n";
  return rep.g4_lower <= rep.g4_upper ? 0 : 1;
}

int cmd_g4_aggregate(const Range& range, int s_flag, const Common& cfg) {
  bool ok = true;
  json rows = json::array();
  if (cfg.format != "json") std::cout << aggregate_csv_header();
  for (int c = range.lo; c <= range.hi; ++c) {
    const int s = s_flag > 0 ? s_flag : choose_block_size(c);
    const CrossingAverage a = average_over(c, s, cfg.workers);
    ok = ok && a.sandwich && a.below_bound;
    if (cfg.format == "json") {
      rows.push_back({{"c", c},
                      {"s", s},
                      {"words", big_json(a.words)},
                      {"mean_upper_num", big_json(boost::multiprecision::numerator(a.mean_upper))},
                      {"mean_upper_den", big_json(boost::multiprecision::denominator(a.mean_upper))},
                      {"mean_upper", format_float(to_float(a.mean_upper))},
                      {"expression", format_float(a.expression)},
                      {"bound_975", format_float(a.bound_975)},
                      {"sandwich", a.sandwich},
                      {"below_bound", a.below_bound}});
    } else {
      std::cout << aggregate_csv_line(a);
    }
  }
  if (cfg.format == "json") std::cout << json{{"schema", kSchemaVersion}, {"rows", rows}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_markov_verify(int s_max, int k_max) {
  if (s_max < 1 || k_max < 1) throw DomainError("need --s >= 1 and --kmax >= 1");
  bool ok = true;
  std::cout << "s  k  closed_form  contraction  max_diff  bound\n";
  for (int s = 1; s <= s_max; ++s) {
    if (s <= 24 && transition_matrix(s) != empirical_transition(s)) {
      std::cout << "s=" << s << " empirical transitions FAIL\n";
      ok = false;
    }
    for (int k = 1; k <= k_max; ++k) {
      const bool cf = power_closed_form(s, k) == matrix_power(transition_matrix(s), k);
      const ContractionReport cr = verify_contraction(s, k);
      ok = ok && cf && cr.holds;
      std::cout << s << "  " << k << "  " << (cf ? "PASS" : "FAIL") << "  " << (cr.holds ? "PASS" : "FAIL") << "  "
                << cr.max_diff << "  " << cr.bound << (cr.tight ? "  (equal)" : "") << "\n";
    }
  }
  return ok ? 0 : 1;
}

int cmd_walk_sim(int s, int t, bool exact, long long trials, std::uint64_t seed) {
  if (s < 1) throw DomainError("--s must be positive");
  const int p = palindromic_type_count(s);
  const BigFloat bound = taxicab_bound(s, t, p);
  json j{{"schema", kSchemaVersion}, {"s", s}, {"t", t}, {"p", p}, {"bound", format_float(bound)}};
  bool pass;
  if (exact) {
    const Rational e = exact_expected_distance(s, t);
    pass = within_taxicab_bound(e, s, t, p);
    j["mean"] = format_float(to_float(e));
    j["mean_exact"] = e.str();
  } else {
    const MonteCarloResult mc = monte_carlo_distance(s, t, trials, seed);
    pass = BigFloat(mc.mean - 3 * mc.stderr_) <= bound;
    j["mean"] = mc.mean;
    j["stderr"] = mc.stderr_;
    j["trials"] = trials;
    j["seed"] = seed;
  }
  j["pass"] = pass;
  std::cout << j.dump(2) << "\n";
  return pass ? 0 : 1;
}

int cmd_verify_all(int budget_c, const Common& cfg) {
  acceptance::Options opt;
  opt.budget_c = budget_c;
  opt.workers = cfg.workers;
  opt.cache_dir = resolve_cache_dir(cfg.cache_dir);
  opt.log = &std::cerr;
  const auto results = acceptance::run_all(opt);
  const json j = acceptance::results_json(results);
  std::cout << j.dump(2) << "\n";
  return j["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-bridge knot words, signatures and 4-genus bounds"};
  app.require_subcommand(1);
  Common cfg;
  app.add_option("--cache-dir", cfg.cache_dir, "signature row cache (TB_CACHE_DIR overrides)");
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);

  int c = 0;
  bool count_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "list the words of T(c)");
  enumerate->add_option("--c", c, "crossing number")->required();
  enumerate->add_flag("--count-only", count_only, "print |T(c)| only");

  std::string range_text, method = "enumerate";
  auto* sig = app.add_subcommand("sig-table", "signature histograms s(c, sigma)");
  sig->add_option("--c", range_text, "crossing number N or range A..B")->required();
  sig->add_option("--method", method, "enumerate | recurse | both");
  sig->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  std::string avg_method = "enumerate";
  auto* avg = app.add_subcommand("avg-sig", "average |signature| against sqrt(2c/pi)");
  avg->add_option("--c", range_text, "crossing number N or range A..B")->required();
  avg->add_option("--method", avg_method, "enumerate | recurse");
  avg->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  std::string word;
  int s = 0;
  bool dump = false;
  auto* g4 = app.add_subcommand("g4", "4-genus interval for a word, or averages over T(c)");
  auto* word_opt = g4->add_option("--word", word, "word over + and -");
  auto* c_opt = g4->add_option("--c", range_text, "crossing number N or range A..B");
  word_opt->excludes(c_opt);
  g4->add_option("--s", s, "block size (default ceil(log10 c))");
  g4->add_flag("--dump-diagram", dump, "include the plat diagram arc list");
  g4->add_option("--format", cfg.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  int kmax = 8;
  auto* mv = app.add_subcommand("markov-verify", "transition matrix, closed-form powers, contraction");
  mv->add_option("--s", s, "largest block size")->required();
  mv->add_option("--kmax", kmax, "largest power");

  int t = 0;
  bool exact = false;
  long long trials = 10000;
  std::uint64_t seed = 1;
  auto* ws = app.add_subcommand("walk-sim", "expected taxicab distance of the word-counting walk");
  ws->add_option("--s", s, "block size")->required();
  ws->add_option("--t", t, "steps")->required();
  auto* exact_flag = ws->add_flag("--exact", exact, "enumerate all 2^(st) sequences");
  ws->add_option("--trials", trials, "Monte-Carlo trials")->excludes(exact_flag);
  ws->add_option("--seed", seed, "Monte-Carlo seed")->excludes(exact_flag);

  int budget_c = 20;
  auto* va = app.add_subcommand("verify-all", "run every acceptance check");
  va->add_option("--budget-c", budget_c, "largest crossing number to enumerate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) return cmd_enumerate(c, count_only, cfg);
    if (*sig) return cmd_sig_table(parse_range(range_text), method, cfg);
    if (*avg) return cmd_avg_sig(parse_range(range_text), avg_method, cfg);
    if (*g4) {
      if (!word.empty()) return cmd_g4_word(word, s, dump, cfg);
      if (!range_text.empty()) return cmd_g4_aggregate(parse_range(range_text), s, cfg);
      throw DomainError("g4 needs --word or --c");
    }
    if (*mv) return cmd_markov_verify(s, kmax);
    if (*ws) return cmd_walk_sim(s, t, exact, trials, seed);
    if (*va) return cmd_verify_all(budget_c, cfg);
  } catch (const BudgetError& e) {
    std::cerr << "refused: " << e.what() << " (about " << e.required << " units of work)\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid word: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
