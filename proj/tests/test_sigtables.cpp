#include "oracles.hpp"
#include "twobridge/acceptance.hpp"
#include "twobridge/sigtables.hpp"

#include <gtest/gtest.h>

using namespace twobridge;

namespace {

const SignatureTable& enumerated14() {
  static const SignatureTable t = build_table(14, 14);
  return t;
}

const SignatureTable& mixed18() {
  static const SignatureTable t = build_table(18, 16);
  return t;
}

}  // namespace

TEST(SigTables, EnumeratedRows) {
  EXPECT_EQ(histogram_enumerated(8), (SignatureRow{{-4, 1}, {-2, 5}, {0, 9}, {2, 5}, {4, 1}}));
  EXPECT_EQ(histogram_enumerated(9), (SignatureRow{{-2, 1}, {0, 6}, {2, 15}, {4, 14}, {6, 6}, {8, 1}}));
  EXPECT_EQ(histogram_enumerated(3), (SignatureRow{{2, 1}}));
  EXPECT_THROW(histogram_enumerated(30), BudgetError);
}

TEST(SigTables, PrintedTableThree) {
  for (const auto& [c, row] : acceptance::paper_table3()) EXPECT_EQ(enumerated14().row(c), row) << c;
}

TEST(SigTables, ParallelEnumerationMatchesSerial) {
  EXPECT_EQ(histogram_enumerated(15, 1), histogram_enumerated(15, 3));
}

TEST(SigTables, Recursion) {
  const SignatureTable rec = recursed_table(14);
  EXPECT_EQ(rec.count(8, 0), 9);
  EXPECT_EQ(rec.count(14, 0), 351);
  EXPECT_EQ(rec.count(5, 4), 1);
  for (int c = 5; c <= 14; ++c) EXPECT_EQ(rec.row(c), enumerated14().row(c)) << c;
  const SignatureTable far = build_table(18, 18);
  const SignatureTable rec18 = recursed_table(18);
  for (int c = 15; c <= 18; ++c) EXPECT_EQ(rec18.row(c), far.row(c)) << c;
  SignatureTable missing;
  EXPECT_THROW(histogram_recursed(7, missing), DomainError);
}

TEST(SigTables, SecondRecursionAndSymmetry) {
  const SignatureTable& t = mixed18();
  EXPECT_EQ(t.count(7, 0) + t.count(7, 2) - 1, t.count(8, -2));
  EXPECT_EQ(t.count(6, 0) + t.count(6, -2) + 1, t.count(7, 2));
  for (int c = 4; c <= 18; ++c) EXPECT_TRUE(verify_recursion2(c, t)) << c;
  for (int c = 3; c <= 18; ++c) EXPECT_TRUE(verify_symmetry(c, t.row(c))) << c;
  EXPECT_EQ(t.count(13, 2), 176);
  EXPECT_EQ(t.count(13, 4), 175);
  EXPECT_EQ(t.count(11, -2), t.count(11, 8));
}

TEST(SigTables, CorruptedRowFailsChecks) {
  SignatureTable t = build_table(9, 9);
  SignatureRow bad = t.row(9);
  bad[2] -= 1;
  bad[4] += 1;
  t.set(9, bad, Provenance::Enumerated);
  EXPECT_FALSE(verify_recursion2(9, t));
  EXPECT_FALSE(verify_symmetry(9, t.row(9)));
}

TEST(SigTables, Binomial) {
  const SignatureTable& t = mixed18();
  EXPECT_EQ(t.count(7, 0) + t.count(8, 0), 10);
  for (int m = 1; m <= 8; ++m) {
    EXPECT_TRUE(verify_binomial(m, t)) << m;
    for (int k = 0; k <= 2 * m - 1; ++k) {
      const int sg = 2 * k - 2 * m + 2;
      EXPECT_EQ(t.count(2 * m + 1, sg) + t.count(2 * m + 2, sg), oracle::binom(2 * m - 1, k));
    }
  }
}

TEST(SigTables, Totals) {
  const TotalsReport r6 = totals(6, enumerated14());
  EXPECT_EQ(r6.tot, 4);
  EXPECT_EQ(r6.tot_p, 0);
  EXPECT_EQ(r6.knots, 3);
  EXPECT_EQ(r6.avg_abs_sigma, Rational(2, 3));
  EXPECT_EQ(totals(3, enumerated14()).avg_abs_sigma, 2);
  EXPECT_EQ(totals(5, enumerated14()).tot, 8);
}

TEST(SigTables, TotalsMatchDirectSum) {
  for (int c = 3; c <= 12; ++c) {
    BigInt tot = 0, tot_p = 0;
    for (RunWord w : enumerate_words(c)) {
      const int a = std::abs(signature(w));
      tot += a;
      if (is_palindromic(w)) tot_p += a;
    }
    const TotalsReport r = totals(c, enumerated14());
    EXPECT_EQ(r.tot, tot);
    EXPECT_EQ(r.tot_p, tot_p);
  }
}

TEST(SigTables, TotIdentities) {
  const SignatureTable& t = mixed18();
  EXPECT_EQ(tot2(2, t), 12);
  EXPECT_EQ(tot2(1, t), 2);
  EXPECT_EQ(tot2(6, t), 5544);
  for (int m = 1; m <= 8; ++m) EXPECT_TRUE(verify_tot2(m, t)) << m;
  for (int c = 4; c <= 18; c += 2) EXPECT_TRUE(verify_tot_recursion(c, t)) << c;
  for (int m = 1; m <= 6; ++m) EXPECT_TRUE(verify_tot_identities(m, t)) << m;
  EXPECT_THROW(verify_tot_recursion(7, t), DomainError);
}

TEST(SigTables, Epsilon) {
  EXPECT_EQ(epsilon(5), 14);
  EXPECT_EQ(epsilon(6), 14);
  EXPECT_EQ(epsilon(3), 4);
  // decays like 1/sqrt(m) within each parity class, after a hump at small c
  for (int c = 15; c <= 200; ++c) EXPECT_LT(epsilon_ratio(c), epsilon_ratio(c - 2)) << c;
  EXPECT_LT(epsilon_ratio(4000), Rational(1, 2));
  EXPECT_LT(epsilon_ratio(4001), Rational(1, 2));
}

TEST(SigTables, PalindromeShareVanishes) {
  // palindromes only occur for odd c
  EXPECT_EQ(palindrome_total(10), 0);
  for (int c = 7; c + 2 <= 18; c += 2) {
    const Rational a(palindrome_total(c), 2 * knot_count(c));
    const Rational b(palindrome_total(c + 2), 2 * knot_count(c + 2));
    EXPECT_LT(b, a) << c;
  }
}

TEST(SigTables, Wallis) {
  for (int m = 1; m <= 50; ++m) EXPECT_TRUE(verify_wallis(m)) << m;
  EXPECT_TRUE(verify_wallis(1000));
  EXPECT_THROW(verify_wallis(0), DomainError);
}

TEST(SigTables, AsymptoteGap) {
  const auto gaps = asymptote_gap(3, 14, enumerated14());
  EXPECT_EQ(gaps.front().avg, 2);
  EXPECT_LT(abs(gaps.front().gap - (BigFloat(2) - asymptote(3))), BigFloat(1e-40));
  SignatureTable t;
  for (int c : {8, 16}) t.set(c, histogram_enumerated(c), Provenance::Enumerated);
  EXPECT_LT(abs(asymptote_gap(16, 16, t)[0].gap), abs(asymptote_gap(8, 8, t)[0].gap));
}

TEST(SigTables, TableInvariants) {
  SignatureTable t;
  EXPECT_THROW(t.set(5, {{2, 1}}, Provenance::Enumerated), ValidationError);
  EXPECT_THROW(t.set(5, {{1, 2}, {3, 1}}, Provenance::Enumerated), ValidationError);
  EXPECT_THROW(t.row(5), DomainError);
}
