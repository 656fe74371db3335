#ifndef TWOBRIDGE_WORDS_HPP
#define TWOBRIDGE_WORDS_HPP

#include "numeric.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace twobridge {

enum class Letter : std::uint8_t { Lower = 0, Upper = 1 };  // sigma_1, sigma_2^-1

using BraidWord = std::vector<Letter>;

inline char letter_char(Letter l) { return l == Letter::Lower ? 'a' : 'b'; }

inline std::string braid_string(std::span<const Letter> z) {
  std::string s;
  s.reserve(z.size());
  for (Letter l : z) s.push_back(letter_char(l));
  return s;
}

inline BraidWord parse_braid(std::string_view text) {
  BraidWord z;
  z.reserve(text.size());
  for (char ch : text) {
    if (ch == 'a')
      z.push_back(Letter::Lower);
    else if (ch == 'b')
      z.push_back(Letter::Upper);
    else
      throw ValidationError("braid word must use letters a, b: got '" + std::string(1, ch) + "'");
  }
  return z;
}

inline Letter other(Letter l) { return l == Letter::Lower ? Letter::Upper : Letter::Lower; }

constexpr int kMaxCrossings = 64;

// A word of T(c). Exponent eps_i = 2 is bit (c - i), so eps_1 is the top bit and
// numeric order of bits is lexicographic order of exponent sequences.
class RunWord {
 public:
  RunWord() = default;

  static RunWord from_bits(int c, std::uint64_t bits) {
    RunWord w(c, bits);
    w.validate();
    return w;
  }

  static RunWord from_exponents(std::span<const int> eps) {
    if (eps.size() < 3 || eps.size() > kMaxCrossings)
      throw ValidationError("crossing number must be in [3, 64], got " + std::to_string(eps.size()));
    const int c = static_cast<int>(eps.size());
    std::uint64_t bits = 0;
    for (int i = 0; i < c; ++i) {
      if (eps[i] != 1 && eps[i] != 2) throw ValidationError("run exponent must be 1 or 2");
      if (eps[i] == 2) bits |= std::uint64_t{1} << (c - 1 - i);
    }
    return from_bits(c, bits);
  }

  static RunWord parse(std::string_view text) {
    if (text.empty()) throw ValidationError("empty word");
    if (text.front() != '+') throw ValidationError("word must start with '+'");
    std::vector<int> eps;
    std::size_t i = 0;
    while (i < text.size()) {
      char ch = text[i];
      if (ch != '+' && ch != '-') throw ValidationError("word must use only '+' and '-'");
      std::size_t j = i;
      while (j < text.size() && text[j] == ch) ++j;
      if (j - i > 2) throw ValidationError("run longer than 2 at position " + std::to_string(i));
      eps.push_back(static_cast<int>(j - i));
      i = j;
    }
    return from_exponents(eps);
  }

  int crossing_number() const { return c_; }
  std::uint64_t bits() const { return bits_; }

  // 1-based run index
  int exponent(int i) const { return ((bits_ >> (c_ - i)) & 1u) ? 2 : 1; }
  // +1 for odd runs, -1 for even runs
  static int run_sign(int i) { return (i % 2 == 1) ? 1 : -1; }

  std::vector<int> exponents() const {
    std::vector<int> e(c_);
    for (int i = 1; i <= c_; ++i) e[i - 1] = exponent(i);
    return e;
  }

  int length() const { return c_ + std::popcount(bits_); }

  std::string str() const {
    std::string s;
    s.reserve(length());
    for (int i = 1; i <= c_; ++i) s.append(exponent(i), run_sign(i) > 0 ? '+' : '-');
    return s;
  }

  friend auto operator<=>(const RunWord&, const RunWord&) = default;

 private:
  RunWord(int c, std::uint64_t bits) : c_(c), bits_(bits) {}

  void validate() const {
    if (c_ < 3 || c_ > kMaxCrossings) throw ValidationError("crossing number must be in [3, 64]");
    if (c_ < 64 && (bits_ >> c_) != 0) throw ValidationError("exponent bits exceed crossing number");
    if (exponent(1) != 1) throw ValidationError("first run must have exponent 1");
    if (exponent(c_) != 1) throw ValidationError("last run must have exponent 1");
    if (length() % 3 != 1) throw ValidationError("word length must be 1 mod 3, got " + std::to_string(length()));
  }

  int c_ = 0;
  std::uint64_t bits_ = 0;
};

inline void require_crossing(int c) {
  if (c < 3) throw DomainError("crossing number must be at least 3, got " + std::to_string(c));
}

inline void require_enumerable(int c) {
  require_crossing(c);
  if (c > 40) throw BudgetError("enumeration of T(" + std::to_string(c) + ") exceeds the word budget", pow2(c - 2));
}

// Iterates T(c) in lexicographic order, optionally one contiguous prefix shard of it.
class WordStream {
 public:
  class iterator {
   public:
    using value_type = RunWord;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(int c, std::uint64_t free, std::uint64_t end) : c_(c), free_(free), end_(end) { settle(); }

    RunWord operator*() const { return RunWord::from_bits(c_, free_ << 1); }
    iterator& operator++() {
      ++free_;
      settle();
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return free_ == o.free_; }

   private:
    void settle() {
      const unsigned want = static_cast<unsigned>(((1 - c_) % 3 + 3) % 3);
      while (free_ < end_ && static_cast<unsigned>(std::popcount(free_)) % 3 != want) ++free_;
    }
    int c_ = 0;
    std::uint64_t free_ = 0, end_ = 0;
  };

  explicit WordStream(int c, unsigned shard = 0, unsigned shards = 1) : c_(c) {
    require_enumerable(c);
    if (shards == 0 || shard >= shards) throw DomainError("bad shard index");
    const std::uint64_t total = std::uint64_t{1} << (c - 2);
    lo_ = total / shards * shard + std::min<std::uint64_t>(shard, total % shards);
    hi_ = lo_ + total / shards + (shard < total % shards ? 1 : 0);
  }

  iterator begin() const { return iterator(c_, lo_, hi_); }
  iterator end() const { return iterator(c_, hi_, hi_); }

 private:
  int c_;
  std::uint64_t lo_ = 0, hi_ = 0;
};

inline WordStream enumerate_words(int c) { return WordStream(c); }

inline std::vector<RunWord> collect_words(int c) {
  std::vector<RunWord> out;
  for (RunWord w : enumerate_words(c)) out.push_back(w);
  return out;
}

inline BigInt word_count(int c) {
  require_crossing(c);
  BigInt r = pow2(c - 2);
  r += (c % 2 == 0) ? -1 : 1;
  return r / 3;
}

inline BigInt palindrome_count(int c) {
  require_crossing(c);
  const int f = (c - 1) / 2;
  BigInt r = pow2(f);
  r += (f % 2 == 0) ? -1 : 1;
  return r / 3;
}

inline BigInt knot_count(int c) {
  require_crossing(c);
  BigInt r = pow2(c - 3);
  switch (c % 4) {
    case 0: r += pow2((c - 4) / 2); break;
    case 1: r += pow2((c - 3) / 2); break;
    case 2: r += pow2((c - 4) / 2) - 1; break;
    default: r += pow2((c - 3) / 2) + 1; break;
  }
  return r / 3;
}

struct CountReport {
  int c = 0;
  BigInt t_c, t_p_c, k_c;
};

inline CountReport count_report(int c) { return {c, word_count(c), palindrome_count(c), knot_count(c)}; }

// Reversal (with sign swap for even c) of a word of T(c) is again the exponent
// sequence read backwards, so palindromic means a palindromic exponent sequence.
inline bool is_palindromic(const RunWord& w) {
  const int c = w.crossing_number();
  for (int i = 1; i <= c / 2; ++i)
    if (w.exponent(i) != w.exponent(c + 1 - i)) return false;
  return true;
}

inline RunWord reverse_word(const RunWord& w) {
  auto e = w.exponents();
  std::reverse(e.begin(), e.end());
  return RunWord::from_exponents(e);
}

inline std::vector<RunWord> palindromic_words(int c) {
  require_enumerable(c);
  std::vector<RunWord> out;
  const int half = (c + 1) / 2;  // eps_1 .. eps_half determine the word
  std::vector<int> e(c);
  for (std::uint64_t free = 0; free < (std::uint64_t{1} << (half - 1)); ++free) {
    e[0] = e[c - 1] = 1;
    for (int i = 2; i <= half; ++i) {
      const int v = ((free >> (half - i)) & 1u) ? 2 : 1;
      e[i - 1] = v;
      e[c - i] = v;
    }
    int len = 0;
    for (int v : e) len += v;
    if (len % 3 == 1) out.push_back(RunWord::from_exponents(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Letter run_letter(int i, int eps) {
  const bool plus = RunWord::run_sign(i) > 0;
  return (plus == (eps == 1)) ? Letter::Lower : Letter::Upper;
}

inline BraidWord to_braid(const RunWord& w) {
  BraidWord z(w.crossing_number());
  for (int i = 1; i <= w.crossing_number(); ++i) z[i - 1] = run_letter(i, w.exponent(i));
  return z;
}

inline int half_index(int c) { return (c - 1) / 2; }  // m for c in {2m+1, 2m+2}

inline BraidWord bijection_f(const RunWord& w) {
  BraidWord z = to_braid(w);
  const int drop_tail = (w.crossing_number() % 2 == 1) ? 1 : 2;
  return BraidWord(z.begin() + 1, z.end() - drop_tail);
}

inline RunWord bijection_f_inverse(std::span<const Letter> z) {
  if (z.size() % 2 == 0) throw DomainError("bijection_f_inverse needs odd length");
  std::vector<int> e{1};
  int len = 0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const bool minus = (k % 2 == 0);
    const int eps = (minus == (z[k] == Letter::Lower)) ? 2 : 1;
    e.push_back(eps);
    len += eps;
  }
  switch (len % 3) {
    case 2: e.push_back(1); break;
    case 1: e.insert(e.end(), {1, 1}); break;
    default: e.insert(e.end(), {2, 1}); break;
  }
  return RunWord::from_exponents(e);
}

struct PartitionResult {
  int index = 0;
  RunWord replacement;
};

inline PartitionResult partition_class(const RunWord& w) {
  const int c = w.crossing_number();
  if (c < 5) throw DomainError("partition_class needs c >= 5");
  auto e = w.exponents();
  const int a = e[c - 3], b = e[c - 2];
  e.resize(c - 3);
  int index;
  if (a == 1 && b == 1) {
    index = 1;
    e.insert(e.end(), {2, 1});
  } else if (a == 2 && b == 2) {
    index = 2;
    e.insert(e.end(), {1, 1});
  } else {
    index = (a == 1) ? 3 : 4;
    e.push_back(1);
  }
  return {index, RunWord::from_exponents(e)};
}

}  // namespace twobridge

#endif
