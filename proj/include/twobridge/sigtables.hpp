#ifndef TWOBRIDGE_SIGTABLES_HPP
#define TWOBRIDGE_SIGTABLES_HPP

#include "diagram.hpp"
#include "parallel.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

namespace twobridge {

using SignatureRow = std::map<int, BigInt>;  // sigma -> s(c, sigma)

enum class Provenance { Enumerated, Recursed };

inline const char* provenance_name(Provenance p) { return p == Provenance::Enumerated ? "enumerated" : "recursed"; }

inline BigInt row_at(const SignatureRow& row, int sigma) {
  auto it = row.find(sigma);
  return it == row.end() ? BigInt(0) : it->second;
}

inline void prune(SignatureRow& row) {
  for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
}

inline BigInt row_sum(const SignatureRow& row) {
  BigInt s = 0;
  for (const auto& [sg, n] : row) s += n;
  return s;
}

class SignatureTable {
 public:
  bool has(int c) const { return rows_.count(c) != 0; }

  const SignatureRow& row(int c) const {
    auto it = rows_.find(c);
    if (it == rows_.end()) throw DomainError("signature table has no row for c=" + std::to_string(c));
    return it->second;
  }

  Provenance provenance(int c) const { return provenance_.at(c); }

  BigInt count(int c, int sigma) const { return row_at(row(c), sigma); }

  void set(int c, SignatureRow r, Provenance p) {
    prune(r);
    for (const auto& [sg, n] : r)
      if (sg % 2 != 0) throw ValidationError("odd signature key in row c=" + std::to_string(c));
    if (row_sum(r) != word_count(c)) throw ValidationError("row sum differs from |T(c)| at c=" + std::to_string(c));
    rows_[c] = std::move(r);
    provenance_[c] = p;
  }

  const std::map<int, SignatureRow>& rows() const { return rows_; }

 private:
  std::map<int, SignatureRow> rows_;
  std::map<int, Provenance> provenance_;
};

constexpr int kEnumerationBudget = 26;

inline SignatureRow histogram_enumerated(int c, unsigned workers = 1, int budget = kEnumerationBudget) {
  require_crossing(c);
  if (c > budget)
    throw BudgetError("enumerating T(" + std::to_string(c) + ") needs about 2^" + std::to_string(c - 2) +
                          " diagram evaluations; budget is c <= " + std::to_string(budget),
                      pow2(c - 2));
  const unsigned shards = std::max(1u, workers) * 4;
  std::vector<std::map<int, std::uint64_t>> parts(shards);
  run_shards(shards, workers, [&](unsigned i) {
    for (RunWord w : WordStream(c, i, shards)) ++parts[i][signature(w)];
  });
  SignatureRow row;
  for (const auto& p : parts)
    for (const auto& [sg, n] : p) row[sg] += n;
  return row;
}

inline SignatureRow histogram_recursed(int c, const SignatureTable& base) {
  if (c < 5) throw DomainError("recursion needs c >= 5");
  const SignatureRow& r1 = base.row(c - 1);
  const SignatureRow& r2 = base.row(c - 2);
  const int shift = (c % 2 == 0) ? 2 : -2;
  SignatureRow out;
  for (const auto& [sg, n] : r1) out[sg - shift] += n;
  for (const auto& [sg, n] : r2) {
    out[sg - shift] += n;
    out[sg] += n;
  }
  prune(out);
  return out;
}

inline SignatureTable base_table() {
  SignatureTable t;
  t.set(3, {{2, 1}}, Provenance::Enumerated);
  t.set(4, {{0, 1}}, Provenance::Enumerated);
  return t;
}

// rows up to c_max built by enumeration through `enum_max`, by recursion beyond
inline SignatureTable build_table(int c_max, int enum_max, unsigned workers = 1) {
  SignatureTable t;
  for (int c = 3; c <= c_max; ++c) {
    if (c <= enum_max)
      t.set(c, histogram_enumerated(c, workers), Provenance::Enumerated);
    else if (c >= 5)
      t.set(c, histogram_recursed(c, t), Provenance::Recursed);
    else
      t.set(c, base_table().row(c), Provenance::Enumerated);
  }
  return t;
}

inline SignatureTable recursed_table(int c_max) {
  SignatureTable t = base_table();
  for (int c = 5; c <= c_max; ++c) t.set(c, histogram_recursed(c, t), Provenance::Recursed);
  return t;
}

inline bool verify_recursion2(int c, const SignatureTable& table) {
  if (c < 4) throw DomainError("second recursion needs c >= 4");
  const SignatureRow& row = table.row(c);
  const SignatureRow& prev = table.row(c - 1);
  int lo = 0, hi = 0;
  for (const auto* r : {&row, &prev}) {
    lo = std::min(lo, r->begin()->first);
    hi = std::max(hi, r->rbegin()->first);
  }
  const bool odd = c % 2 == 1;
  for (int sg = lo - 6; sg <= hi + 6; sg += 2) {
    BigInt rhs = odd ? row_at(prev, sg - 2) + row_at(prev, sg - 4) : row_at(prev, sg + 2) + row_at(prev, sg + 4);
    if (odd && sg == 2) rhs += 1;
    if (!odd && sg == -2) rhs -= 1;
    if (rhs != row_at(row, sg)) return false;
  }
  return true;
}

inline bool verify_symmetry(int c, const SignatureRow& row) {
  if (c % 2 == 0) {
    for (const auto& [sg, n] : row)
      if (row_at(row, -sg) != n) return false;
    return true;
  }
  if (row_at(row, 2) != row_at(row, 4) + 1) return false;
  for (const auto& [sg, n] : row)
    if ((sg >= 6 || sg <= 0) && row_at(row, 6 - sg) != n) return false;
  return true;
}

inline bool verify_binomial(int m, const SignatureTable& table) {
  if (m < 1) throw DomainError("m must be positive");
  const SignatureRow& a = table.row(2 * m + 1);
  const SignatureRow& b = table.row(2 * m + 2);
  std::map<int, BigInt> sum;
  for (const auto* r : {&a, &b})
    for (const auto& [sg, n] : *r) sum[sg] += n;
  for (const auto& [sg, n] : sum)
    if (sg % 2 != 0 || binomial(2 * m - 1, m - 1 + sg / 2) != n) return false;
  // every nonzero binomial must appear
  BigInt total = 0;
  for (const auto& [sg, n] : sum) total += n;
  return total == pow2(2 * m - 1);
}

inline BigInt row_total(const SignatureRow& row) {
  BigInt t = 0;
  for (const auto& [sg, n] : row) t += n * std::abs(sg);
  return t;
}

inline BigInt palindrome_total(int c) {
  BigInt t = 0;
  for (const RunWord& w : palindromic_words(c)) t += std::abs(signature(w));
  return t;
}

struct TotalsReport {
  int c = 0;
  BigInt tot, tot_p, knots;
  Rational avg_abs_sigma;
  BigFloat asymptote;
};

inline BigFloat asymptote(int c) { return boost::multiprecision::sqrt(BigFloat(2 * c) / pi_big()); }

inline TotalsReport totals(int c, const SignatureTable& table) {
  TotalsReport r;
  r.c = c;
  r.tot = row_total(table.row(c));
  r.tot_p = palindrome_total(c);
  r.knots = knot_count(c);
  r.avg_abs_sigma = Rational(r.tot + r.tot_p, 2 * r.knots);
  r.asymptote = asymptote(c);
  return r;
}

inline BigInt tot2(int m, const SignatureTable& table) {
  return row_total(table.row(2 * m + 1)) + row_total(table.row(2 * m + 2));
}

inline bool verify_tot2(int m, const SignatureTable& table) { return tot2(m, table) == m * binomial(2 * m, m); }

inline bool verify_tot_recursion(int c, const SignatureTable& table) {
  if (c % 2 != 0 || c < 4) throw DomainError("tot recursion is stated for even c >= 4");
  const SignatureRow& prev = table.row(c - 1);
  return row_total(table.row(c)) == 2 * row_total(prev) - 2 * row_at(prev, 2) - 6 * row_at(prev, 4) - 2;
}

inline BigInt epsilon(int c) {
  require_crossing(c);
  const int m = half_index(c);
  return 2 * binomial(2 * m - 1, m) + 6 * binomial(2 * m - 1, m + 1) + 2;
}

// exact forms of the j=1 and j=2 totals; the correction term uses row 2m+1
inline bool verify_tot_identities(int m, const SignatureTable& table) {
  const SignatureRow& odd = table.row(2 * m + 1);
  const BigInt corr = 2 * row_at(odd, 2) + 6 * row_at(odd, 4) + 2;
  const BigInt central = binomial(2 * m, m);
  return 3 * row_total(odd) - m * central == corr && 3 * row_total(table.row(2 * m + 2)) == 2 * m * central - corr;
}

inline Rational epsilon_ratio(int c) { return Rational(epsilon(c), 2 * knot_count(c)); }

inline bool verify_wallis(int m) {
  if (m < 1) throw DomainError("m must be positive");
  const BigFloat fm(m);
  const BigFloat upper = boost::multiprecision::pow(BigFloat(4), m) / boost::multiprecision::sqrt(pi_big() * fm);
  const BigFloat lower = upper * (1 - 1 / (4 * fm));
  const BigFloat central(binomial(2 * m, m));
  return lower < central && central < upper;
}

struct GapEntry {
  int c = 0;
  Rational avg;
  BigFloat gap;  // avg - sqrt(2c/pi)
};

inline std::vector<GapEntry> asymptote_gap(int c_min, int c_max, const SignatureTable& table) {
  std::vector<GapEntry> out;
  for (int c = c_min; c <= c_max; ++c) {
    TotalsReport r = totals(c, table);
    out.push_back({c, r.avg_abs_sigma, to_float(r.avg_abs_sigma) - r.asymptote});
  }
  return out;
}

inline std::string format_float(const BigFloat& x, int digits = 12) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace twobridge

#endif
