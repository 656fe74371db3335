#ifndef TWOBRIDGE_COBORDISM_HPP
#define TWOBRIDGE_COBORDISM_HPP

#include "diagram.hpp"
#include "parallel.hpp"

#include <map>

namespace twobridge {

struct OrientedWord {
  OrientationState start = OrientationState::O1;
  BraidWord letters;

  OrientationState end_state() const { return orientation_after(start, letters); }
  std::string str() const { return state_name(start) + ":" + braid_string(letters); }
  friend bool operator==(const OrientedWord&, const OrientedWord&) = default;
};

inline OrientedWord parse_oriented(std::string_view text) {
  if (text.size() < 3 || text[0] != 'o' || text[2] != ':' || text[1] < '1' || text[1] > '3')
    throw ValidationError("oriented word must look like o<1-3>:<letters>");
  return {state_of(text[1] - '0'), parse_braid(text.substr(3))};
}

inline BraidWord reverse_swap(std::span<const Letter> z) {
  BraidWord out(z.rbegin(), z.rend());
  for (Letter& l : out) l = other(l);
  return out;
}

inline OrientedWord mirror(const OrientedWord& x) { return {flip(x.end_state()), reverse_swap(x.letters)}; }

// caps of a cut-out summand, read off the orientation at its two cuts
inline Closure summand_closure(OrientationState start, OrientationState end) {
  return {start == OrientationState::O3 ? Cap::MiddleBottom : Cap::TopMiddle,
          end == OrientationState::O1 ? Cap::TopMiddle : Cap::MiddleBottom};
}

inline PlatDiagram summand_diagram(const OrientedWord& x) {
  return PlatDiagram{x.letters, summand_closure(x.start, x.end_state())};
}

inline int component_count(const OrientedWord& x) { return link_components(summand_diagram(x)); }

enum class Polarity { Plus, Minus, SelfMirror };

inline const char* polarity_name(Polarity p) {
  return p == Polarity::Plus ? "plus" : p == Polarity::Minus ? "minus" : "self-mirror";
}

inline Polarity polarity(const OrientedWord& x) {
  const std::string a = x.str(), b = mirror(x).str();
  return a == b ? Polarity::SelfMirror : a < b ? Polarity::Plus : Polarity::Minus;
}

struct SummandClass {
  std::string canonical_key;
  Polarity polarity;
};

inline SummandClass classify(const OrientedWord& x) {
  const std::string a = x.str(), b = mirror(x).str();
  return {std::min(a, b), a == b ? Polarity::SelfMirror : a < b ? Polarity::Plus : Polarity::Minus};
}

// a diagram fragment with explicit caps; fixed summands keep their original caps
struct Summand {
  OrientationState start = OrientationState::O1;
  BraidWord letters;
  Closure closure;

  PlatDiagram diagram() const { return PlatDiagram{letters, closure}; }
  int crossings() const { return static_cast<int>(letters.size()); }
  friend bool operator==(const Summand&, const Summand&) = default;
};

inline Summand as_summand(const OrientedWord& x) { return {x.start, x.letters, summand_closure(x.start, x.end_state())}; }

inline Summand mirror(const Summand& x) {
  return {flip(orientation_after(x.start, x.letters)), reverse_swap(x.letters),
          Closure{flip(x.closure.right), flip(x.closure.left)}};
}

// which of the two three-crossing moves to use when the middle strand is the leftward one
enum class FixVariant { LowerUpperLower, UpperLowerUpper };

inline FixVariant default_variant(const OrientedWord& x) {
  return polarity(x) == Polarity::Minus ? FixVariant::UpperLowerUpper : FixVariant::LowerUpperLower;
}

struct LinkFix {
  Summand fixed;
  int saddles = 0;
  int added_crossings = 0;
};

inline LinkFix link_lemma_fix(const OrientedWord& x, FixVariant variant) {
  if (component_count(x) != 2) throw std::logic_error("link_lemma_fix called on a knot summand " + x.str());
  const int s = static_cast<int>(x.letters.size());
  LinkFix out;
  out.fixed = as_summand(x);
  BraidWord& z = out.fixed.letters;
  if (s % 2 == 0) {
    const auto mid = orientation_after(x.start, std::span(x.letters).first(s / 2));
    auto at = z.begin() + s / 2;
    if (mid == OrientationState::O1) {
      z.insert(at, Letter::Lower);
      out.saddles = 1;
    } else if (mid == OrientationState::O3) {
      z.insert(at, Letter::Upper);
      out.saddles = 1;
    } else {
      // no two adjacent coherent strands: Reidemeister II, twist, crossing change
      if (variant == FixVariant::LowerUpperLower)
        z.insert(at, {Letter::Lower, Letter::Upper, Letter::Lower});
      else
        z.insert(at, {Letter::Upper, Letter::Lower, Letter::Upper});
      out.saddles = 3;
    }
  } else {
    const int ci = (s - 1) / 2;  // 0-based center letter
    const Letter X = x.letters[ci];
    const int left = index_of(orientation_after(x.start, std::span(x.letters).first(ci)));
    const bool in_pair = X == Letter::Lower ? left != 1 : left != 3;
    if (!in_pair)
      z.insert(z.begin() + ci, X);
    else if (left == 2)
      z.insert(z.begin() + ci + 1, other(X));
    else
      z.insert(z.begin() + ci, other(X));
    out.saddles = 1;
  }
  out.added_crossings = static_cast<int>(z.size()) - s;
  if (link_components(out.fixed.diagram()) != 1)
    throw std::logic_error("link lemma fix did not produce a knot for " + x.str());
  return out;
}

inline LinkFix link_lemma_fix(const OrientedWord& x) { return link_lemma_fix(x, default_variant(x)); }

struct CancelResult {
  int count = 0;
  std::vector<OrientedWord> residual;  // sorted by serialization
};

inline CancelResult cancel_mirrors(std::span<const OrientedWord> summands) {
  struct Tally {
    int plus = 0, minus = 0;
    OrientedWord rep_plus, rep_minus;
    bool self = false;
  };
  std::map<std::string, Tally> by_key;
  for (const auto& x : summands) {
    const SummandClass cls = classify(x);
    Tally& t = by_key[cls.canonical_key];
    if (cls.polarity == Polarity::Minus) {
      ++t.minus;
      t.rep_minus = x;
    } else {
      ++t.plus;
      t.rep_plus = x;
      t.self = cls.polarity == Polarity::SelfMirror;
    }
  }
  CancelResult out;
  for (const auto& [key, t] : by_key) {
    const int n = t.self ? t.plus % 2 : std::abs(t.plus - t.minus);
    const OrientedWord& rep = t.plus >= t.minus ? t.rep_plus : t.rep_minus;
    for (int i = 0; i < n; ++i) out.residual.push_back(rep);
    out.count += n;
  }
  return out;
}

inline int choose_block_size(int c) {
  require_crossing(c);
  int s = 0;
  long long p = 1;
  while (p < c) {
    p *= 10;
    ++s;
  }
  return std::clamp(s, 1, 2 * half_index(c) - 1);
}

inline int cut_cost(OrientationState o) { return o == OrientationState::O2 ? 2 : 1; }

struct DecompositionReport {
  RunWord word;
  int s = 0, t = 0, r = 0;
  std::vector<OrientationState> cut_states;  // t+1 cuts, after crossings 1, 1+s, ..., 1+ts
  std::vector<int> cut_costs;
  int cut_saddles = 0;
  int r1_moves = 1;
  std::vector<OrientedWord> summands;
  std::vector<int> summand_components;
  int link_fix_saddles = 0;
  OrientedWord remainder;
  int remainder_crossings = 0;    // r - 1
  int remainder_fix_saddles = 0;  // 1 if the remainder was a link
  int remainder_after_fix = 0;    // crossings left after that fix
  std::vector<OrientedWord> residual;
  std::vector<Summand> residual_fixed;
  int g4_lower = 0;
  int g4_upper = 0;

  int total_saddles() const { return cut_saddles + link_fix_saddles + remainder_fix_saddles; }
};

inline DecompositionReport decompose(const RunWord& w, int s) {
  const int c = w.crossing_number();
  const int m = half_index(c);
  if (s < 1 || s > 2 * m - 1)
    throw DomainError("block size must be in [1, " + std::to_string(2 * m - 1) + "], got " + std::to_string(s));
  const BraidWord z = to_braid(w);
  const PlatDiagram d = build_diagram(z);
  const Orientation orient = orient_diagram(d);

  DecompositionReport rep;
  rep.word = w;
  rep.s = s;
  rep.t = (2 * m - 1) / s;
  rep.r = c - s * rep.t;
  for (int k = 0; k <= rep.t; ++k) {
    const OrientationState o = orient.cut_states[1 + k * s];
    rep.cut_states.push_back(o);
    rep.cut_costs.push_back(cut_cost(o));
    rep.cut_saddles += cut_cost(o);
  }
  for (int k = 1; k <= rep.t; ++k) {
    OrientedWord x{rep.cut_states[k - 1], BraidWord(z.begin() + (k - 1) * s + 1, z.begin() + k * s + 1)};
    rep.summand_components.push_back(component_count(x));
    rep.summands.push_back(std::move(x));
  }
  rep.remainder = {rep.cut_states.back(), BraidWord(z.begin() + rep.t * s + 1, z.end())};
  rep.remainder_crossings = rep.r - 1;
  if (summand_closure(rep.remainder.start, rep.remainder.end_state()).right != d.closure.right)
    throw std::logic_error("remainder caps disagree with the knot closure for " + w.str());
  return rep;
}

// link fixes, mirror cancellation and the genus interval on top of decompose()
inline DecompositionReport analyze(const RunWord& w, int s) {
  DecompositionReport rep = decompose(w, s);

  for (std::size_t i = 0; i < rep.summands.size(); ++i)
    if (rep.summand_components[i] == 2) rep.link_fix_saddles += link_lemma_fix(rep.summands[i]).saddles;

  Summand rem = as_summand(rep.remainder);
  rep.remainder_after_fix = rem.crossings();
  if (link_components(rem.diagram()) == 2) {
    rem.letters.pop_back();
    rep.remainder_fix_saddles = 1;
    rep.remainder_after_fix = rem.crossings();
    if (link_components(rem.diagram()) != 1)
      throw std::logic_error("inverse twist did not close up the remainder of " + w.str());
  }

  const CancelResult cancel = cancel_mirrors(rep.summands);
  rep.residual = cancel.residual;
  int residual_bound = 0;
  for (const OrientedWord& x : rep.residual) {
    Summand f = component_count(x) == 2 ? link_lemma_fix(x).fixed : as_summand(x);
    residual_bound += f.crossings() / 2;
    rep.residual_fixed.push_back(std::move(f));
  }

  const int total = rep.total_saddles();
  if (total % 2 != 0) throw std::logic_error("odd saddle total for " + w.str());
  rep.g4_upper = total / 2 + residual_bound + rep.remainder_after_fix / 2;
  rep.g4_lower = std::abs(signature(w)) / 2;
  return rep;
}

struct G4Interval {
  int lower = 0;
  int upper = 0;
};

inline G4Interval g4_interval(const RunWord& w, int s) {
  const DecompositionReport r = analyze(w, s);
  return {r.g4_lower, r.g4_upper};
}

// Expression (t+1) + 3t/2 + 3(s+3)sqrt(2^s t)/2 + (s+3)2^(s/2)/2 + (r-1)/2
inline BigFloat expression_bound(int c, int s) {
  const int m = half_index(c);
  const int t = (2 * m - 1) / s;
  const int r = c - s * t;
  const BigFloat ft(t), fs(s);
  using boost::multiprecision::sqrt;
  return (ft + 1) + BigFloat(3) / 2 * ft + BigFloat(3) / 2 * (fs + 3) * sqrt(BigFloat(pow2(s)) * ft) +
         (fs + 3) / 2 * sqrt(BigFloat(pow2(s))) + BigFloat(r - 1) / 2;
}

inline BigFloat theorem_bound(int c) { return BigFloat(975) / 100 * BigFloat(c) / boost::multiprecision::log10(BigFloat(c)); }

struct CrossingAverage {
  int c = 0;
  int s = 0;
  BigInt words;
  BigInt sum_upper;
  BigInt sum_lower;
  Rational mean_upper;
  bool sandwich = true;  // lower <= upper for every word
  BigFloat expression;
  BigFloat bound_975;
  bool below_bound = false;
};

inline CrossingAverage average_over(int c, int s, unsigned workers = 1) {
  require_enumerable(c);
  if (c > 24) throw BudgetError("g4 averaging over T(" + std::to_string(c) + ") exceeds the budget c <= 24", pow2(c - 2));
  const unsigned shards = std::max(1u, workers) * 4;
  std::vector<std::array<long long, 4>> parts(shards, {0, 0, 0, 1});
  run_shards(shards, workers, [&](unsigned i) {
    auto& p = parts[i];
    for (RunWord w : WordStream(c, i, shards)) {
      const G4Interval g = g4_interval(w, s);
      ++p[0];
      p[1] += g.upper;
      p[2] += g.lower;
      if (g.lower > g.upper) p[3] = 0;
    }
  });
  CrossingAverage a;
  a.c = c;
  a.s = s;
  for (const auto& p : parts) {
    a.words += p[0];
    a.sum_upper += p[1];
    a.sum_lower += p[2];
    a.sandwich = a.sandwich && p[3] == 1;
  }
  a.mean_upper = Rational(a.sum_upper, a.words);
  a.expression = expression_bound(c, s);
  a.bound_975 = theorem_bound(c);
  a.below_bound = to_float(a.mean_upper) < a.bound_975;
  return a;
}

struct AverageReport {
  int m = 0;
  int s = 0;
  CrossingAverage odd, even;
  Rational mean_upper;  // over T(2m+1) and T(2m+2) together
  bool below_expression = false;
  bool below_bound = false;
};

inline AverageReport average_g4_bound(int m, int s, unsigned workers = 1) {
  AverageReport r;
  r.m = m;
  r.s = s;
  r.odd = average_over(2 * m + 1, s, workers);
  r.even = average_over(2 * m + 2, s, workers);
  r.mean_upper = Rational(r.odd.sum_upper + r.even.sum_upper, r.odd.words + r.even.words);
  const BigFloat mean = to_float(r.mean_upper);
  r.below_expression = mean <= r.odd.expression && mean <= r.even.expression;
  r.below_bound = mean < r.odd.bound_975 && mean < r.even.bound_975;
  return r;
}

}  // namespace twobridge

#endif
