#ifndef TWOBRIDGE_MARKOV_HPP
#define TWOBRIDGE_MARKOV_HPP

#include "cobordism.hpp"

#include <array>
#include <cmath>
#include <random>

namespace twobridge {

using Matrix3 = std::array<std::array<Rational, 3>, 3>;

inline Matrix3 identity3() {
  Matrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

inline Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
  Matrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Matrix3 scaled(Matrix3 a, const Rational& f) {
  for (auto& row : a)
    for (auto& x : row) x *= f;
  return a;
}

inline Matrix3 matrix_power(const Matrix3& a, int k) {
  Matrix3 r = identity3();
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

inline Matrix3 step_matrix() {
  Matrix3 m{};
  const int v[3][3] = {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = v[i][j];
  return m;
}

inline Rational pow2_rational(int e) {
  return e >= 0 ? Rational(pow2(e)) : Rational(BigInt(1), pow2(-e));
}

inline Matrix3 transition_matrix(int s) {
  if (s < 1) throw DomainError("block size must be positive");
  return scaled(matrix_power(step_matrix(), s), pow2_rational(-s));
}

// frequencies of orientation_after over all 2^s blocks from each start state
inline Matrix3 empirical_transition(int s) {
  if (s < 1 || s > 24) throw DomainError("empirical transitions need 1 <= s <= 24");
  std::array<std::array<std::uint64_t, 3>, 3> hits{};
  BraidWord z(s);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s); ++bits) {
    for (int i = 0; i < s; ++i) z[i] = ((bits >> (s - 1 - i)) & 1u) ? Letter::Upper : Letter::Lower;
    for (int o = 1; o <= 3; ++o) ++hits[o - 1][index_of(orientation_after(state_of(o), z)) - 1];
  }
  Matrix3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = Rational(BigInt(hits[i][j]), pow2(s));
  return m;
}

inline Matrix3 power_closed_form(int s, int k) {
  if (s < 1 || k < 0) throw DomainError("need s >= 1 and k >= 0");
  const int e = s * k;
  const Rational third(1, 3);
  const Rational a = pow2_rational(-e), b = pow2_rational(1 - e);
  Matrix3 p{};
  if (e % 2 == 1) {
    // anti-diagonal carries 1 - 2^(1-ks)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p[i][j] = third * (i + j == 2 ? Rational(1 - b) : Rational(1 + a));
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p[i][j] = third * (i == j ? Rational(1 + b) : Rational(1 - a));
  }
  return p;
}

struct ContractionReport {
  bool holds = false;
  Rational max_diff;
  Rational bound;
  bool tight = false;  // max_diff equals the bound
};

inline ContractionReport verify_contraction(int s, int k) {
  if (s < 1 || k < 1) throw DomainError("need s, k >= 1");
  const Matrix3 p = matrix_power(transition_matrix(s), k);
  ContractionReport r;
  r.bound = pow2_rational(-s * k);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) r.max_diff = std::max<Rational>(r.max_diff, abs(p[i][j] - p[i][l]));
  r.holds = r.max_diff <= r.bound;
  r.tight = r.max_diff == r.bound;
  return r;
}

// M^r = (-J)^r + (2^r - (-1)^r)/3 B, J the anti-diagonal, B all ones
inline bool verify_matrix_identity(int r) {
  const Matrix3 lhs = matrix_power(step_matrix(), r);
  const int sgn = r % 2 == 0 ? 1 : -1;
  const Rational coef = Rational(pow2(r) - sgn, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Rational jr = (r % 2 == 0) ? Rational(i == j ? 1 : 0) : Rational(i + j == 2 ? 1 : 0);
      if (lhs[i][j] != sgn * jr + coef) return false;
    }
  return true;
}

enum class PalScheme {
  LettersOnly,   // words equal to their reverse-swap, all three orientations, count as parity coordinates
  TrueMirror,    // only oriented words equal to their own mirror are parity coordinates
};

// Coordinates of the word-counting walk for a fixed block size. Oriented word
// keys are (state-1) * 2^s + bits with the first letter as the top bit, a = 0.
class WalkModel {
 public:
  WalkModel(int s, PalScheme scheme) : s_(s), scheme_(scheme) {
    if (s < 1 || s > 22) throw DomainError("walk model needs 1 <= s <= 22");
    const std::uint64_t n = std::uint64_t{1} << s;
    end_.resize(3 * n);
    coord_.assign(3 * n, -1);
    sign_.assign(3 * n, 0);
    for (std::uint64_t key = 0; key < 3 * n; ++key) {
      int o = static_cast<int>(key / n) + 1;
      const std::uint64_t bits = key % n;
      for (int i = s - 1; i >= 0; --i) o = swap_strand(((bits >> i) & 1u) ? Letter::Upper : Letter::Lower, o);
      end_[key] = static_cast<std::uint8_t>(o);
    }
    std::vector<std::uint64_t> parity_keys, plus_keys;
    for (std::uint64_t key = 0; key < 3 * n; ++key) {
      const std::uint64_t mk = mirror_key(key);
      const std::uint64_t bits = key % n;
      const bool pal = scheme == PalScheme::LettersOnly ? reverse_swap_bits(bits) == bits : mk == key;
      if (pal)
        parity_keys.push_back(key);
      else if (key < mk)
        plus_keys.push_back(key);
    }
    d_ = static_cast<int>(plus_keys.size());
    p_ = static_cast<int>(parity_keys.size());
    for (int i = 0; i < d_; ++i) {
      coord_[plus_keys[i]] = i;
      sign_[plus_keys[i]] = 1;
      coord_[mirror_key(plus_keys[i])] = i;
      sign_[mirror_key(plus_keys[i])] = -1;
    }
    for (int i = 0; i < p_; ++i) coord_[parity_keys[i]] = d_ + i;
    plus_keys_ = std::move(plus_keys);
  }

  int s() const { return s_; }
  PalScheme scheme() const { return scheme_; }
  int d() const { return d_; }
  int p() const { return p_; }
  std::uint64_t blocks() const { return std::uint64_t{1} << s_; }

  std::uint64_t key(OrientationState o, std::uint64_t bits) const { return (index_of(o) - 1) * blocks() + bits; }
  OrientationState end_state(std::uint64_t key) const { return state_of(end_[key]); }
  int coordinate(std::uint64_t key) const { return coord_[key]; }
  int sign(std::uint64_t key) const { return sign_[key]; }  // 0 for parity coordinates
  const std::vector<std::uint64_t>& plus_keys() const { return plus_keys_; }

  std::uint64_t reverse_swap_bits(std::uint64_t bits) const {
    std::uint64_t r = 0;
    for (int i = 0; i < s_; ++i) r |= ((bits >> i) & 1u) << (s_ - 1 - i);
    return r ^ (blocks() - 1);
  }

  std::uint64_t mirror_key(std::uint64_t key) const {
    const std::uint64_t bits = key % blocks();
    return key_of(flip(end_state(key)), reverse_swap_bits(bits));
  }

  OrientedWord word(std::uint64_t key) const {
    BraidWord z(s_);
    const std::uint64_t bits = key % blocks();
    for (int i = 0; i < s_; ++i) z[i] = ((bits >> (s_ - 1 - i)) & 1u) ? Letter::Upper : Letter::Lower;
    return {state_of(static_cast<int>(key / blocks()) + 1), z};
  }

 private:
  std::uint64_t key_of(OrientationState o, std::uint64_t bits) const { return key(o, bits); }

  int s_;
  PalScheme scheme_;
  int d_ = 0, p_ = 0;
  std::vector<std::uint8_t> end_;
  std::vector<int> coord_;
  std::vector<int> sign_;
  std::vector<std::uint64_t> plus_keys_;
};

inline int palindromic_type_count(int s) { return s % 2 == 1 ? 0 : 3 * (1 << (s / 2)); }

// Running displacement of the walk: integer coordinates then parity bits.
class WalkState {
 public:
  explicit WalkState(const WalkModel& model) : model_(&model), value_(model.d() + model.p(), 0) {}

  // applies one summand and returns the change in taxicab distance
  int apply(std::uint64_t key) {
    const int c = model_->coordinate(key);
    int& v = value_[c];
    const int before = std::abs(v);
    if (c < model_->d())
      v += model_->sign(key);
    else
      v ^= 1;
    touched_.push_back(c);
    const int delta = std::abs(v) - before;
    dist_ += delta;
    return delta;
  }

  void undo(std::uint64_t key) {
    const int c = model_->coordinate(key);
    int& v = value_[c];
    const int before = std::abs(v);
    if (c < model_->d())
      v -= model_->sign(key);
    else
      v ^= 1;
    touched_.pop_back();
    dist_ += std::abs(v) - before;
  }

  void reset() {
    for (int c : touched_) value_[c] = 0;
    touched_.clear();
    dist_ = 0;
  }

  int distance() const { return dist_; }
  int value(int coord) const { return value_[coord]; }
  const std::vector<int>& touched() const { return touched_; }

 private:
  const WalkModel* model_;
  std::vector<int> value_;
  std::vector<int> touched_;
  int dist_ = 0;
};

inline constexpr int kWalkBudgetBits = 24;

inline void require_walk_budget(int s, int t) {
  if (t < 0) throw DomainError("t must be non-negative");
  if (static_cast<long long>(s) * t > kWalkBudgetBits)
    throw BudgetError("exact enumeration needs 2^" + std::to_string(s * t) +
                          " sequences; the budget is 2^24, use monte_carlo_distance instead",
                      pow2(s * t));
}

struct ExactWalk {
  int s = 0, t = 0;
  Rational expected_distance;
  std::vector<Rational> expected_abs;  // per integer coordinate, E|D_w(t)|
};

inline ExactWalk exact_walk(const WalkModel& model, int t) {
  require_walk_budget(model.s(), t);
  const int s = model.s();
  ExactWalk out;
  out.s = s;
  out.t = t;
  std::uint64_t dist_sum = 0;
  std::vector<std::uint64_t> abs_sum(model.d(), 0);
  std::vector<std::uint64_t> stamp(model.d() + model.p(), 0);
  std::uint64_t leaf = 0;
  WalkState state(model);

  auto visit_leaf = [&] {
    ++leaf;
    dist_sum += state.distance();
    for (int c : state.touched()) {
      if (c >= model.d() || stamp[c] == leaf) continue;
      stamp[c] = leaf;
      abs_sum[c] += std::abs(state.value(c));
    }
  };

  auto rec = [&](auto&& self, int depth, OrientationState o) -> void {
    if (depth == t) {
      visit_leaf();
      return;
    }
    for (std::uint64_t bits = 0; bits < model.blocks(); ++bits) {
      const std::uint64_t key = model.key(o, bits);
      state.apply(key);
      self(self, depth + 1, model.end_state(key));
      state.undo(key);
    }
  };
  rec(rec, 0, OrientationState::O1);

  const BigInt total = pow2(s * t);
  out.expected_distance = Rational(BigInt(dist_sum), total);
  out.expected_abs.reserve(model.d());
  for (std::uint64_t a : abs_sum) out.expected_abs.push_back(Rational(BigInt(a), total));
  return out;
}

inline Rational exact_expected_distance(int s, int t, PalScheme scheme = PalScheme::LettersOnly) {
  require_walk_budget(s, t);
  return exact_walk(WalkModel(s, scheme), t).expected_distance;
}

// E[Dist(t)] <= 3 sqrt(2^s t) + p, compared exactly after squaring
inline bool within_taxicab_bound(const Rational& e, int s, int t, int p) {
  return le_sqrt(e - p, Rational(9) * Rational(pow2(s)) * t);
}

inline BigFloat taxicab_bound(int s, int t, int p) {
  return 3 * boost::multiprecision::sqrt(BigFloat(pow2(s)) * t) + p;
}

// E|D_w(t)| <= 2 sqrt(t / 2^s), exactly
inline bool within_class_bound(const Rational& e, int s, int t) {
  return le_sqrt(e, Rational(BigInt(4 * t), pow2(s)));
}

inline bool per_word_variance_bound(int s, int t, const OrientedWord& w, PalScheme scheme = PalScheme::LettersOnly) {
  if (static_cast<int>(w.letters.size()) != s) throw DomainError("word length differs from the block size");
  require_walk_budget(s, t);
  const WalkModel model(s, scheme);
  std::uint64_t bits = 0;
  for (Letter l : w.letters) bits = (bits << 1) | (l == Letter::Upper ? 1u : 0u);
  const std::uint64_t key = model.key(w.start, bits);
  const int c = model.coordinate(key);
  if (c >= model.d()) throw DomainError("per-class bound applies to non-palindromic classes only");
  if (t == 0) return true;
  return within_class_bound(exact_walk(model, t).expected_abs[c], s, t);
}

struct MonteCarloResult {
  double mean = 0;
  double stderr_ = 0;
  long long trials = 0;
};

// std::mt19937_64 raw output; one 64-bit draw per block, low s bits are the letters
inline MonteCarloResult monte_carlo_distance(int s, int t, long long trials, std::uint64_t seed,
                                             PalScheme scheme = PalScheme::LettersOnly) {
  if (trials < 1) throw DomainError("trials must be positive");
  if (s > 22) throw DomainError("block size too large for the walk model");
  const WalkModel model(s, scheme);
  WalkState state(model);
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = model.blocks() - 1;
  double mean = 0, m2 = 0;
  for (long long i = 1; i <= trials; ++i) {
    state.reset();
    OrientationState o = OrientationState::O1;
    for (int step = 0; step < t; ++step) {
      const std::uint64_t key = model.key(o, rng() & mask);
      state.apply(key);
      o = model.end_state(key);
    }
    const double x = state.distance();
    const double delta = x - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (x - mean);
  }
  MonteCarloResult r;
  r.trials = trials;
  r.mean = mean;
  r.stderr_ = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  return r;
}

}  // namespace twobridge

#endif
