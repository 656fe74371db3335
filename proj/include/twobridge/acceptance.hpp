#ifndef TWOBRIDGE_ACCEPTANCE_HPP
#define TWOBRIDGE_ACCEPTANCE_HPP

#include "io.hpp"
#include "markov.hpp"

#include <chrono>
#include <functional>
#include <iostream>

namespace twobridge::acceptance {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  int budget_c = 20;          // largest crossing number enumerated
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
  std::ostream* log = nullptr;  // cache warnings
  std::uint64_t seed = 20240601;
};

// Table 3, rows 3..14, as printed
inline const std::map<int, SignatureRow>& paper_table3() {
  static const std::map<int, SignatureRow> t = [] {
    std::map<int, SignatureRow> m;
    auto put = [&](int c, int lo, std::vector<int> v) {
      for (std::size_t i = 0; i < v.size(); ++i) m[c][lo + 2 * static_cast<int>(i)] = v[i];
    };
    put(3, 2, {1});
    put(4, 0, {1});
    put(5, 2, {2, 1});
    put(6, -2, {1, 3, 1});
    put(7, 0, {1, 5, 4, 1});
    put(8, -4, {1, 5, 9, 5, 1});
    put(9, -2, {1, 6, 15, 14, 6, 1});
    put(10, -6, {1, 7, 20, 29, 20, 7, 1});
    put(11, -4, {1, 8, 27, 50, 49, 27, 8, 1});
    put(12, -8, {1, 9, 35, 76, 99, 76, 35, 9, 1});
    put(13, -6, {1, 10, 44, 111, 176, 175, 111, 44, 10, 1});
    put(14, -10, {1, 11, 54, 155, 286, 351, 286, 155, 54, 11, 1});
    return m;
  }();
  return t;
}

struct Table2Row {
  const char* word;
  int c_plus, s_A, sigma;
};

// Table 2 plus the two diagrams of Figure 2
inline const std::vector<Table2Row>& paper_table2() {
  static const std::vector<Table2Row> rows = {
      {"+--+", 0, 3, 2},       {"+-+-", 2, 3, 0},       {"+--+--+", 0, 5, 4},    {"+--++-+", 0, 3, 2},
      {"+-++--+", 0, 3, 2},    {"+-+-++-", 4, 3, -2},   {"+-+--+-", 4, 5, 0},    {"+--++--++-", 3, 4, 0},
      {"+-++-+-", 2, 3, 0},    {"+--+-+-", 2, 5, 2},
  };
  return rows;
}

// enumerated row, through the cache when one is configured
inline SignatureRow enumerated_row(int c, const Options& opt) {
  if (opt.cache_dir) {
    SignatureCache cache(*opt.cache_dir);
    bool corrupt = false;
    if (auto hit = cache.load(c, &corrupt); hit && hit->provenance == Provenance::Enumerated) return hit->row;
    if (corrupt && opt.log) *opt.log << "warning: cache file " << cache.path(c).string() << " is corrupt; re-deriving\n";
    SignatureRow row = histogram_enumerated(c, opt.workers);
    cache.store(c, row, Provenance::Enumerated);
    return row;
  }
  return histogram_enumerated(c, opt.workers);
}

// enumerated through min(enum_max, budget), recursed beyond
inline SignatureTable mixed_table(int c_max, int enum_max, const Options& opt) {
  SignatureTable t;
  const int e = std::min(enum_max, opt.budget_c);
  for (int c = 3; c <= c_max; ++c) {
    if (c <= std::max(e, 4))
      t.set(c, enumerated_row(c, opt), Provenance::Enumerated);
    else
      t.set(c, histogram_recursed(c, t), Provenance::Recursed);
  }
  return t;
}

inline std::string to_str(const BigFloat& x) { return format_float(x, 12); }

inline CheckResult check_counting(const Options& opt) {
  CheckResult r{1, "counting", true, ""};
  const int hi = std::min(20, opt.budget_c);
  for (int c = 3; c <= hi; ++c) {
    std::uint64_t n = 0, np = 0;
    for (RunWord w : enumerate_words(c)) {
      ++n;
      np += is_palindromic(w);
    }
    const bool ok = BigInt(n) == word_count(c) && BigInt(np) == palindrome_count(c) &&
                    palindromic_words(c).size() == np && 2 * knot_count(c) == word_count(c) + palindrome_count(c);
    if (!ok) {
      r.pass = false;
      r.detail += "mismatch at c=" + std::to_string(c) + "; ";
    }
  }
  r.detail += "c in [3," + std::to_string(hi) + "]";
  return r;
}

inline CheckResult check_table2(const Options&) {
  CheckResult r{2, "table2", true, ""};
  for (const auto& row : paper_table2()) {
    const DiagramMetrics m = word_metrics(RunWord::parse(row.word));
    if (m.c_plus != row.c_plus || m.s_A != row.s_A || m.signature != row.sigma) {
      r.pass = false;
      r.detail += std::string(row.word) + " gave (" + std::to_string(m.c_plus) + "," + std::to_string(m.s_A) + "," +
                  std::to_string(m.signature) + "); ";
    }
  }
  r.detail += std::to_string(paper_table2().size()) + " rows";
  return r;
}

inline CheckResult check_table3(const Options& opt) {
  CheckResult r{3, "table3", true, ""};
  const int enum_hi = std::min(14, opt.budget_c);
  const SignatureTable mixed = mixed_table(18, 14, opt);
  for (int c = 3; c <= enum_hi; ++c)
    if (mixed.row(c) != paper_table3().at(c)) {
      r.pass = false;
      r.detail += "enumerated row " + std::to_string(c) + " differs from print; ";
    }
  const SignatureTable rec = recursed_table(18);
  for (int c = 5; c <= 14; ++c)
    if (rec.row(c) != paper_table3().at(c) || (c <= enum_hi && rec.row(c) != mixed.row(c))) {
      r.pass = false;
      r.detail += "recursed row " + std::to_string(c) + " differs; ";
    }
  for (int c = 3; c <= 18; ++c) {
    if (c >= 4 && !verify_recursion2(c, mixed)) {
      r.pass = false;
      r.detail += "four-case recursion fails at c=" + std::to_string(c) + "; ";
    }
    if (!verify_symmetry(c, mixed.row(c))) {
      r.pass = false;
      r.detail += "symmetry fails at c=" + std::to_string(c) + "; ";
    }
  }
  r.detail += "enumerated 3.." + std::to_string(enum_hi) + ", recursed to 18";
  return r;
}

inline CheckResult check_binomial(const Options& opt) {
  CheckResult r{4, "binomial", true, ""};
  const SignatureTable t = mixed_table(18, 18, opt);
  for (int m = 1; m <= 8; ++m)
    if (!verify_binomial(m, t)) {
      r.pass = false;
      r.detail += "m=" + std::to_string(m) + " fails; ";
    }
  r.detail += "m in [1,8], enumerated to c=" + std::to_string(std::min(18, opt.budget_c));
  return r;
}

inline CheckResult check_totals(const Options& opt) {
  CheckResult r{5, "totals", true, ""};
  const SignatureTable t = mixed_table(18, 18, opt);
  for (int m = 1; m <= 8; ++m)
    if (!verify_tot2(m, t)) {
      r.pass = false;
      r.detail += "tot2 m=" + std::to_string(m) + "; ";
    }
  for (int c = 4; c <= 18; c += 2)
    if (!verify_tot_recursion(c, t)) {
      r.pass = false;
      r.detail += "tot recursion c=" + std::to_string(c) + "; ";
    }
  for (int m = 1; m <= 6; ++m)
    if (!verify_tot_identities(m, t)) {
      r.pass = false;
      r.detail += "exact identities m=" + std::to_string(m) + "; ";
    }
  r.detail += "tot2 m<=8, recursion even c<=18, identities m<=6";
  return r;
}

inline CheckResult check_average(const Options& opt) {
  CheckResult r{6, "average-signature", true, ""};
  if (opt.budget_c < 20) {
    // reduced: only what fits in the budget
    const SignatureTable t = mixed_table(6, 6, opt);
    const Rational avg6 = totals(6, t).avg_abs_sigma;
    r.pass = avg6 == Rational(2, 3);
    r.detail = "reduced run (budget c=" + std::to_string(opt.budget_c) + "): avg(6)=" + avg6.str();
    return r;
  }
  SignatureTable t;
  for (int c : {6, 9, 10, 19, 20}) t.set(c, enumerated_row(c, opt), Provenance::Enumerated);
  const Rational avg6 = totals(6, t).avg_abs_sigma;
  auto gap = [&](int c) { return abs(to_float(totals(c, t).avg_abs_sigma) - asymptote(c)); };
  const BigFloat g9 = gap(9), g10 = gap(10), g19 = gap(19), g20 = gap(20);
  r.pass = avg6 == Rational(2, 3) && g20 < g10 && g19 < g9;
  r.detail = "avg(6)=" + avg6.str() + " |gap| 10:" + to_str(g10) + " 20:" + to_str(g20) + " 9:" + to_str(g9) +
             " 19:" + to_str(g19);
  return r;
}

inline CheckResult check_wallis(const Options&) {
  CheckResult r{7, "wallis", true, ""};
  for (int m = 1; m <= 50; ++m)
    if (!verify_wallis(m)) {
      r.pass = false;
      r.detail += "m=" + std::to_string(m) + "; ";
    }
  if (!verify_wallis(1000)) {
    r.pass = false;
    r.detail += "m=1000; ";
  }
  r.detail += "m in [1,50] and 1000";
  return r;
}

inline CheckResult check_markov(const Options&) {
  CheckResult r{8, "markov", true, ""};
  for (int s = 1; s <= 8; ++s)
    if (transition_matrix(s) != empirical_transition(s)) {
      r.pass = false;
      r.detail += "empirical s=" + std::to_string(s) + "; ";
    }
  for (int s = 1; s <= 6; ++s)
    for (int k = 1; k <= 8; ++k) {
      if (power_closed_form(s, k) != matrix_power(transition_matrix(s), k)) {
        r.pass = false;
        r.detail += "closed form s=" + std::to_string(s) + " k=" + std::to_string(k) + "; ";
      }
      if (!verify_contraction(s, k).holds) {
        r.pass = false;
        r.detail += "contraction s=" + std::to_string(s) + " k=" + std::to_string(k) + "; ";
      }
    }
  for (int q = 0; q <= 20; ++q)
    if (!verify_matrix_identity(q)) {
      r.pass = false;
      r.detail += "M^r identity r=" + std::to_string(q) + "; ";
    }
  r.detail += "empirical s<=8, closed form and contraction s<=6 k<=8, identity r<=20";
  return r;
}

inline CheckResult check_walk(const Options& opt) {
  CheckResult r{9, "walk", true, ""};
  int pairs = 0;
  for (int s = 1; s <= 20; ++s) {
    const WalkModel model(s, PalScheme::LettersOnly);
    for (int t = 1; s * t <= 20; ++t) {
      const ExactWalk e = exact_walk(model, t);
      ++pairs;
      if (!within_taxicab_bound(e.expected_distance, s, t, model.p())) {
        r.pass = false;
        r.detail += "distance s=" + std::to_string(s) + " t=" + std::to_string(t) + "; ";
      }
      for (const Rational& x : e.expected_abs)
        if (!within_class_bound(x, s, t)) {
          r.pass = false;
          r.detail += "class bound s=" + std::to_string(s) + " t=" + std::to_string(t) + "; ";
          break;
        }
    }
  }
  const MonteCarloResult mc = monte_carlo_distance(4, 100, 10000, opt.seed);
  const double bound = 3.0 * std::sqrt(16.0 * 100.0) + palindromic_type_count(4);
  if (!(mc.mean - 3 * mc.stderr_ <= bound)) {
    r.pass = false;
    r.detail += "monte carlo; ";
  }
  std::ostringstream os;
  os << pairs << " exact (s,t) pairs; MC mean " << mc.mean << " +- " << mc.stderr_ << " vs " << bound;
  r.detail += os.str();
  return r;
}

inline bool mirror_checks(int s_involution, int s_equivariance, std::string& detail) {
  bool ok = true;
  for (int s = 0; s <= s_involution; ++s) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s); ++bits)
      for (int o = 1; o <= 3; ++o) {
        BraidWord z(s);
        for (int i = 0; i < s; ++i) z[i] = ((bits >> i) & 1u) ? Letter::Upper : Letter::Lower;
        const OrientedWord x{state_of(o), z};
        if (mirror(mirror(x)) != x) {
          ok = false;
          detail += "involution fails at " + x.str() + "; ";
        }
        if (s == 0 || s > s_equivariance || component_count(x) != 2) continue;
        const FixVariant v = default_variant(x);
        const OrientedWord mx = mirror(x);
        const FixVariant mv = polarity(x) == Polarity::SelfMirror
                                  ? (v == FixVariant::LowerUpperLower ? FixVariant::UpperLowerUpper : FixVariant::LowerUpperLower)
                                  : default_variant(mx);
        if (component_count(mx) != 2) {
          ok = false;
          detail += "mirror of link is a knot at " + x.str() + "; ";
          continue;
        }
        const LinkFix a = link_lemma_fix(x, v), b = link_lemma_fix(mx, mv);
        if (mirror(a.fixed) != b.fixed || a.saddles != b.saddles) {
          ok = false;
          detail += "equivariance fails at " + x.str() + "; ";
        }
      }
  }
  return ok;
}

inline CheckResult check_cobordism(const Options&) {
  CheckResult r{10, "cobordism-example", true, ""};
  const DecompositionReport rep = analyze(RunWord::parse("+--+-+-+--++-++-"), 3);
  const std::vector<std::string> want = {"o1:aab", "o2:aba", "o2:abb"};
  std::vector<std::string> got;
  for (const auto& x : rep.summands) got.push_back(x.str());
  auto fail = [&](const std::string& why) {
    r.pass = false;
    r.detail += why + "; ";
  };
  if (got != want) fail("summands");
  if (rep.cut_costs != std::vector<int>{1, 2, 2, 1}) fail("cut costs");
  if (mirror(rep.summands[0]) != rep.summands[2]) fail("summands 1 and 3 are not mirrors");
  if (rep.summand_components != std::vector<int>{1, 2, 1}) fail("summand components");
  if (rep.link_fix_saddles != 1 || rep.remainder_fix_saddles != 1) fail("link fixes");
  if (rep.residual.size() != 1 || rep.residual[0].str() != "o2:aba") fail("residual");
  if (rep.g4_upper != 6) fail("g4_upper=" + std::to_string(rep.g4_upper));
  std::string mdetail;
  if (!mirror_checks(6, 4, mdetail)) fail(mdetail);
  r.detail += "g4 in [" + std::to_string(rep.g4_lower) + "," + std::to_string(rep.g4_upper) + "], mirror checks s<=6/4";
  return r;
}

inline CheckResult check_aggregate(const Options& opt) {
  CheckResult r{11, "aggregate-g4", true, ""};
  const int hi = std::min(15, opt.budget_c);
  for (int c = 7; c <= hi; ++c) {
    const CrossingAverage a = average_over(c, choose_block_size(c), opt.workers);
    if (!a.sandwich || !a.below_bound) {
      r.pass = false;
      r.detail += "c=" + std::to_string(c) + " fails; ";
    }
    if (c == hi)
      r.detail += "c=" + std::to_string(c) + " mean " + to_str(to_float(a.mean_upper)) + " vs " + to_str(a.bound_975) + "; ";
  }
  r.detail += "c in [7," + std::to_string(hi) + "]";
  return r;
}

inline std::vector<std::function<CheckResult(const Options&)>> all_checks() {
  return {check_counting, check_table2, check_table3,   check_binomial, check_totals,   check_average,
          check_wallis,   check_markov, check_walk,     check_cobordism, check_aggregate};
}

inline CheckResult timed(const std::function<CheckResult(const Options&)>& fn, const Options& opt, int id) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = fn(opt);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "check " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<CheckResult> run_all(const Options& opt) {
  std::vector<CheckResult> out;
  auto checks = all_checks();
  for (std::size_t i = 0; i < checks.size(); ++i) out.push_back(timed(checks[i], opt, static_cast<int>(i) + 1));
  return out;
}

inline nlohmann::json results_json(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    checks.push_back({{"id", r.id}, {"name", r.name}, {"status", r.pass ? "pass" : "fail"}, {"seconds", r.seconds}, {"detail", r.detail}});
    all = all && r.pass;
  }
  return {{"schema", kSchemaVersion}, {"pass", all}, {"checks", checks}};
}

}  // namespace twobridge::acceptance

#endif
