#include "twobridge/cobordism.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace twobridge;

namespace {

const RunWord kExample = RunWord::parse("+--+-+-+--++-++-");

std::vector<OrientedWord> all_oriented(int s) {
  std::vector<OrientedWord> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s); ++bits)
    for (int o = 1; o <= 3; ++o) {
      BraidWord z(s);
      for (int i = 0; i < s; ++i) z[i] = ((bits >> (s - 1 - i)) & 1u) ? Letter::Upper : Letter::Lower;
      out.push_back({state_of(o), z});
    }
  return out;
}

}  // namespace

TEST(Cobordism, ExampleDecomposition) {
  const DecompositionReport r = decompose(kExample, 3);
  ASSERT_EQ(r.summands.size(), 3u);
  EXPECT_EQ(r.summands[0], parse_oriented("o1:aab"));
  EXPECT_EQ(r.summands[1], parse_oriented("o2:aba"));
  EXPECT_EQ(r.summands[2], parse_oriented("o2:abb"));
  EXPECT_EQ(r.remainder_crossings, 2);
  EXPECT_EQ(r.cut_saddles, 6);
  EXPECT_EQ(r.cut_states, (std::vector<OrientationState>{OrientationState::O1, OrientationState::O2,
                                                         OrientationState::O2, OrientationState::O3}));
  EXPECT_EQ(r.r1_moves, 1);
}

TEST(Cobordism, ExampleBound) {
  const DecompositionReport r = analyze(kExample, 3);
  EXPECT_EQ(r.g4_upper, 6);
  EXPECT_EQ(r.link_fix_saddles, 1);
  EXPECT_EQ(r.remainder_fix_saddles, 1);
  EXPECT_EQ(r.remainder_after_fix, 1);
  ASSERT_EQ(r.residual.size(), 1u);
  EXPECT_EQ(r.residual[0].str(), "o2:aba");
  EXPECT_EQ(r.g4_lower, std::abs(signature(kExample)) / 2);
  EXPECT_LE(r.g4_lower, 1);
}

TEST(Cobordism, SingleBlock) {
  for (int c : {7, 8})
    for (RunWord w : enumerate_words(c)) {
      const DecompositionReport r = decompose(w, 2 * half_index(c) - 1);
      EXPECT_EQ(r.t, 1);
      EXPECT_EQ(r.summands.size(), 1u);
    }
  EXPECT_THROW(decompose(kExample, 0), DomainError);
  EXPECT_THROW(decompose(kExample, 10), DomainError);
}

TEST(Cobordism, DecompositionInvariants) {
  for (int c = 5; c <= 12; ++c)
    for (RunWord w : enumerate_words(c))
      for (int s = 1; s <= 2 * half_index(c) - 1; ++s) {
        const DecompositionReport r = decompose(w, s);
        BraidWord joined{to_braid(w).front()};
        for (const auto& x : r.summands) joined.insert(joined.end(), x.letters.begin(), x.letters.end());
        joined.insert(joined.end(), r.remainder.letters.begin(), r.remainder.letters.end());
        EXPECT_EQ(joined, to_braid(w));
        EXPECT_EQ(c, s * r.t + r.r);
        const int j = c - 2 * half_index(c);
        EXPECT_GE(r.r - 1 - j, 0);
        EXPECT_LE(r.r - 1 - j, s - 1);
        EXPECT_LE(r.cut_saddles, 2 * r.t + 2);
        for (std::size_t k = 0; k < r.cut_states.size(); ++k)
          EXPECT_EQ(r.cut_costs[k], r.cut_states[k] == OrientationState::O2 ? 2 : 1);
        for (std::size_t k = 0; k + 1 < r.cut_states.size(); ++k)
          EXPECT_EQ(r.summands[k].end_state(), r.cut_states[k + 1]);
      }
}

TEST(Cobordism, Mirror) {
  EXPECT_EQ(mirror(parse_oriented("o1:aab")), parse_oriented("o2:abb"));
  for (int o = 1; o <= 3; ++o) EXPECT_EQ(mirror(OrientedWord{state_of(o), {}}).letters.size(), 0u);
  EXPECT_EQ(mirror(OrientedWord{OrientationState::O2, {}}).start, OrientationState::O2);
  for (int s = 0; s <= 6; ++s)
    for (const auto& x : all_oriented(s)) EXPECT_EQ(mirror(mirror(x)), x) << x.str();
}

TEST(Cobordism, MirrorPreservesComponentCount) {
  for (int s = 0; s <= 6; ++s)
    for (const auto& x : all_oriented(s)) EXPECT_EQ(component_count(x), component_count(mirror(x))) << x.str();
}

TEST(Cobordism, ComponentCount) {
  EXPECT_EQ(component_count(parse_oriented("o2:aba")), 2);
  EXPECT_EQ(component_count(parse_oriented("o1:aab")), 1);
  // regression: the bare closure at o1 is a two-component unlink
  EXPECT_EQ(component_count(OrientedWord{OrientationState::O1, {}}), 2);
  EXPECT_EQ(component_count(OrientedWord{OrientationState::O2, {}}), 1);
}

TEST(Cobordism, LinkLemma) {
  const LinkFix f = link_lemma_fix(parse_oriented("o2:aba"));
  EXPECT_EQ(f.fixed.crossings(), 4);
  EXPECT_EQ(f.saddles, 1);
  EXPECT_EQ(braid_string(f.fixed.letters), "abba");
  EXPECT_THROW(link_lemma_fix(parse_oriented("o1:aab")), std::logic_error);
}

TEST(Cobordism, LinkLemmaExhaustive) {
  for (int s = 1; s <= 8; ++s)
    for (const auto& x : all_oriented(s)) {
      if (component_count(x) != 2) continue;
      for (FixVariant v : {FixVariant::LowerUpperLower, FixVariant::UpperLowerUpper}) {
        const LinkFix f = link_lemma_fix(x, v);
        EXPECT_EQ(link_components(f.fixed.diagram()), 1);
        EXPECT_LE(f.added_crossings, 3);
        EXPECT_LE(f.fixed.crossings(), s + 3);
        EXPECT_TRUE(f.saddles == 1 || f.saddles == 3);
      }
    }
}

TEST(Cobordism, LinkLemmaMirrorEquivariance) {
  for (int s = 1; s <= 4; ++s)
    for (const auto& x : all_oriented(s)) {
      if (component_count(x) != 2) continue;
      const OrientedWord mx = mirror(x);
      const FixVariant v = default_variant(x);
      const FixVariant mv = polarity(x) == Polarity::SelfMirror
                                ? (v == FixVariant::LowerUpperLower ? FixVariant::UpperLowerUpper : FixVariant::LowerUpperLower)
                                : default_variant(mx);
      const LinkFix a = link_lemma_fix(x, v), b = link_lemma_fix(mx, mv);
      EXPECT_EQ(mirror(a.fixed), b.fixed) << x.str();
      EXPECT_EQ(a.saddles, b.saddles);
    }
}

TEST(Cobordism, CancelMirrors) {
  const OrientedWord w1 = parse_oriented("o1:aab"), w2 = parse_oriented("o2:aba"), w3 = parse_oriented("o2:abb");
  const std::vector<OrientedWord> seq{w1, w2, w3};
  const CancelResult r = cancel_mirrors(seq);
  EXPECT_EQ(r.count, 1);
  EXPECT_EQ(r.residual, std::vector<OrientedWord>{w2});
  EXPECT_EQ(cancel_mirrors(std::vector<OrientedWord>{}).count, 0);
  const OrientedWord p = parse_oriented("o1:ba");
  ASSERT_EQ(polarity(p), Polarity::SelfMirror);
  EXPECT_EQ(polarity(parse_oriented("o2:ab")), Polarity::Minus);
  EXPECT_EQ(cancel_mirrors(std::vector<OrientedWord>{p, p}).count, 0);
  EXPECT_EQ(cancel_mirrors(std::vector<OrientedWord>{p, p, p}).count, 1);
}

TEST(Cobordism, CancelIsPermutationInvariant) {
  std::mt19937_64 rng(7);
  const auto pool = all_oriented(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<OrientedWord> seq;
    for (int i = 0; i < 12; ++i) seq.push_back(pool[rng() % pool.size()]);
    const CancelResult a = cancel_mirrors(seq);
    std::shuffle(seq.begin(), seq.end(), rng);
    const CancelResult b = cancel_mirrors(seq);
    EXPECT_EQ(a.count, b.count);
    EXPECT_EQ(a.residual, b.residual);
  }
}

TEST(Cobordism, BlockSize) {
  EXPECT_EQ(choose_block_size(12), 2);
  EXPECT_EQ(choose_block_size(10000), 4);
  EXPECT_EQ(choose_block_size(3), 1);
  EXPECT_EQ(choose_block_size(10), 1);
  EXPECT_EQ(choose_block_size(11), 2);
  EXPECT_EQ(choose_block_size(101), 3);
}

TEST(Cobordism, SandwichAndEvenSaddles) {
  for (int c = 3; c <= 17; ++c) {
    const int s = choose_block_size(c);
    for (RunWord w : enumerate_words(c)) {
      const DecompositionReport r = analyze(w, s);
      EXPECT_EQ(r.total_saddles() % 2, 0);
      EXPECT_LE(r.g4_lower, r.g4_upper) << w.str();
    }
  }
}

TEST(Cobordism, AllBlockSizesWork) {
  for (int c = 5; c <= 13; ++c)
    for (RunWord w : enumerate_words(c))
      for (int s = 1; s <= 2 * half_index(c) - 1; ++s) {
        const G4Interval g = g4_interval(w, s);
        EXPECT_LE(g.lower, g.upper);
      }
}

TEST(Cobordism, AverageBound) {
  const AverageReport a = average_g4_bound(3, 1);
  EXPECT_TRUE(a.odd.sandwich);
  EXPECT_TRUE(a.even.sandwich);
  EXPECT_LT(to_float(a.odd.mean_upper), theorem_bound(7));
  EXPECT_TRUE(a.below_bound);
  EXPECT_GT(a.odd.expression, 0);
  EXPECT_EQ(a.odd.words + a.even.words, pow2(5));
  EXPECT_THROW(average_over(30, 2), BudgetError);
}
