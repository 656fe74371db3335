#include "oracles.hpp"
#include "twobridge/markov.hpp"

#include <gtest/gtest.h>

using namespace twobridge;

namespace {

Matrix3 from_ints(const int (&v)[3][3], int den) {
  Matrix3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = Rational(v[i][j], den);
  return m;
}

std::uint64_t bits_of(const BraidWord& z) {
  std::uint64_t b = 0;
  for (Letter l : z) b = (b << 1) | (l == Letter::Upper ? 1u : 0u);
  return b;
}

}  // namespace

TEST(Markov, TransitionMatrix) {
  const int m1[3][3] = {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  EXPECT_EQ(transition_matrix(1), from_ints(m1, 2));
  const int m2[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  EXPECT_EQ(transition_matrix(2), from_ints(m2, 4));
  for (int s = 1; s <= 10; ++s) {
    const Matrix3 p = transition_matrix(s);
    const auto ref = oracle::int_power(s);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(p[i][0] + p[i][1] + p[i][2], 1);
      EXPECT_EQ(p[0][i] + p[1][i] + p[2][i], 1);
      for (int j = 0; j < 3; ++j) EXPECT_EQ(p[i][j], Rational(ref[i][j], 1 << s));
    }
  }
  EXPECT_THROW(transition_matrix(0), DomainError);
}

TEST(Markov, EmpiricalTransitions) {
  for (int s = 1; s <= 10; ++s) EXPECT_EQ(transition_matrix(s), empirical_transition(s)) << s;
}

TEST(Markov, ClosedFormPowers) {
  EXPECT_EQ(power_closed_form(1, 2), scaled(matrix_power(step_matrix(), 2), Rational(1, 4)));
  EXPECT_EQ(power_closed_form(1, 2)[0][0], Rational(1, 3) * (1 + Rational(1, 2)));
  EXPECT_EQ(power_closed_form(1, 2)[0][1], Rational(1, 3) * (1 - Rational(1, 4)));
  EXPECT_EQ(power_closed_form(4, 0), identity3());
  EXPECT_EQ(power_closed_form(3, 3), matrix_power(transition_matrix(3), 3));
  for (int s = 1; s <= 6; ++s)
    for (int k = 0; k <= 8; ++k) EXPECT_EQ(power_closed_form(s, k), matrix_power(transition_matrix(s), k)) << s << "," << k;
}

TEST(Markov, Contraction) {
  const ContractionReport a = verify_contraction(1, 1);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.max_diff, Rational(1, 2));
  EXPECT_TRUE(a.tight);
  EXPECT_TRUE(verify_contraction(2, 3).holds);
  for (int s = 1; s <= 6; ++s)
    for (int k = 1; k <= 8; ++k) {
      const ContractionReport r = verify_contraction(s, k);
      EXPECT_TRUE(r.holds);
      // the (-J)^r term keeps entries exactly 2^-sk apart
      EXPECT_TRUE(r.tight) << s << "," << k;
    }
}

TEST(Markov, MatrixIdentity) {
  for (int r = 0; r <= 20; ++r) EXPECT_TRUE(verify_matrix_identity(r)) << r;
}

TEST(Markov, PalindromicTypeCounts) {
  for (int s = 1; s <= 8; ++s) {
    const WalkModel m(s, PalScheme::LettersOnly);
    EXPECT_EQ(m.p(), palindromic_type_count(s));
    EXPECT_EQ(2 * m.d() + m.p(), 3 * (1 << s));
    const WalkModel t(s, PalScheme::TrueMirror);
    EXPECT_EQ(2 * t.d() + t.p(), 3 * (1 << s));
    EXPECT_LE(t.p(), m.p());
  }
}

TEST(Markov, ModelAgreesWithCobordismMirror) {
  for (int s = 1; s <= 6; ++s) {
    const WalkModel m(s, PalScheme::TrueMirror);
    for (std::uint64_t key = 0; key < 3 * m.blocks(); ++key) {
      const OrientedWord x = m.word(key);
      const OrientedWord mx = mirror(x);
      EXPECT_EQ(m.word(m.mirror_key(key)), mx);
      EXPECT_EQ(m.end_state(key), x.end_state());
      EXPECT_EQ(m.key(x.start, bits_of(x.letters)), key);
      const bool self = polarity(x) == Polarity::SelfMirror;
      EXPECT_EQ(m.coordinate(key) >= m.d(), self);
      if (!self) EXPECT_EQ(m.sign(key) > 0, polarity(x) == Polarity::Plus);
    }
  }
}

TEST(Markov, ExactDistanceSmallCases) {
  EXPECT_EQ(exact_expected_distance(1, 1), 1);
  EXPECT_EQ(exact_expected_distance(3, 0), 0);
  const Rational e = exact_expected_distance(2, 2);
  EXPECT_TRUE(within_taxicab_bound(e, 2, 2, 6));
  EXPECT_LT(to_float(e), 3 * boost::multiprecision::sqrt(BigFloat(8)) + 6);
  EXPECT_TRUE(within_taxicab_bound(exact_expected_distance(2, 6), 2, 6, 6));
  EXPECT_THROW(exact_expected_distance(5, 5), BudgetError);
}

// The walk's distance under the true-mirror scheme is the residual count that
// cancel_mirrors leaves for the same summand sequence.
TEST(Markov, ExactDistanceMatchesCancellation) {
  for (int s = 1; s <= 3; ++s)
    for (int t = 1; s * t <= 9; ++t) {
      const WalkModel m(s, PalScheme::TrueMirror);
      BigInt sum = 0;
      const std::uint64_t total = std::uint64_t{1} << (s * t);
      for (std::uint64_t seq = 0; seq < total; ++seq) {
        std::vector<OrientedWord> summands;
        OrientationState o = OrientationState::O1;
        for (int k = 0; k < t; ++k) {
          const std::uint64_t bits = (seq >> (s * k)) & (m.blocks() - 1);
          OrientedWord x = m.word(m.key(o, bits));
          o = x.end_state();
          summands.push_back(std::move(x));
        }
        sum += cancel_mirrors(summands).count;
      }
      EXPECT_EQ(exact_expected_distance(s, t, PalScheme::TrueMirror), Rational(sum, BigInt(total))) << s << "," << t;
    }
}

TEST(Markov, WalkMatchesDecompositionResidual) {
  for (int c : {11, 12}) {
    const WalkModel m(3, PalScheme::TrueMirror);
    for (RunWord w : enumerate_words(c)) {
      const DecompositionReport r = decompose(w, 3);
      WalkState st(m);
      for (const auto& x : r.summands) st.apply(m.key(x.start, bits_of(x.letters)));
      EXPECT_EQ(st.distance(), cancel_mirrors(r.summands).count) << w.str();
    }
  }
}

TEST(Markov, StepConservation) {
  const WalkModel m(3, PalScheme::LettersOnly);
  WalkState st(m);
  std::mt19937_64 rng(3);
  OrientationState o = OrientationState::O1;
  for (int i = 0; i < 500; ++i) {
    std::vector<int> before;
    for (int c = 0; c < m.d() + m.p(); ++c) before.push_back(st.value(c));
    const std::uint64_t key = m.key(o, rng() & 7);
    const int delta = st.apply(key);
    EXPECT_EQ(std::abs(delta), 1);
    int changed = 0;
    for (int c = 0; c < m.d() + m.p(); ++c)
      if (st.value(c) != before[c]) {
        ++changed;
        EXPECT_EQ(std::abs(st.value(c) - before[c]), 1);
      }
    EXPECT_EQ(changed, 1);
    o = m.end_state(key);
  }
}

TEST(Markov, TaxicabBoundGrid) {
  for (int s = 1; s <= 6; ++s) {
    const WalkModel m(s, PalScheme::LettersOnly);
    for (int t = 1; s * t <= 16; ++t) {
      const ExactWalk e = exact_walk(m, t);
      EXPECT_TRUE(within_taxicab_bound(e.expected_distance, s, t, m.p()));
      EXPECT_LE(to_float(e.expected_distance), taxicab_bound(s, t, m.p()));
      for (const Rational& x : e.expected_abs) EXPECT_TRUE(within_class_bound(x, s, t));
    }
  }
}

TEST(Markov, PerWordBound) {
  for (int t = 0; t <= 6; ++t)
    for (std::uint64_t key : WalkModel(2, PalScheme::LettersOnly).plus_keys())
      EXPECT_TRUE(per_word_variance_bound(2, t, WalkModel(2, PalScheme::LettersOnly).word(key)));
  const WalkModel m1(1, PalScheme::LettersOnly);
  for (std::uint64_t key = 0; key < 6; ++key) EXPECT_TRUE(per_word_variance_bound(1, 4, m1.word(key)));
  EXPECT_THROW(per_word_variance_bound(2, 3, parse_oriented("o1:ab")), DomainError);
}

TEST(Markov, MonteCarlo) {
  const MonteCarloResult a = monte_carlo_distance(4, 100, 10000, 99);
  const MonteCarloResult b = monte_carlo_distance(4, 100, 10000, 99);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stderr_, b.stderr_);
  EXPECT_LE(a.mean - 3 * a.stderr_, 3 * std::sqrt(1600.0) + 12);
  EXPECT_EQ(monte_carlo_distance(3, 0, 50, 1).mean, 0);
  // agrees with exact enumeration within a few standard errors
  const double exact = to_float(exact_expected_distance(2, 8)).convert_to<double>();
  const MonteCarloResult c = monte_carlo_distance(2, 8, 40000, 5);
  EXPECT_NEAR(c.mean, exact, 5 * c.stderr_);
  EXPECT_THROW(monte_carlo_distance(2, 2, 0, 1), DomainError);
}
