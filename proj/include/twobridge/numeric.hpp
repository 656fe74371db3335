#ifndef TWOBRIDGE_NUMERIC_HPP
#define TWOBRIDGE_NUMERIC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twobridge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 100 decimal digits, comfortably past the 50-bit floor for root comparisons
using BigFloat = boost::multiprecision::cpp_bin_float_100;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BudgetError : std::runtime_error {
  BigInt required;
  BudgetError(const std::string& what, BigInt need) : std::runtime_error(what), required(std::move(need)) {}
};

inline BigInt pow2(unsigned n) {
  BigInt r = 1;
  r <<= n;
  return r;
}

inline BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline BigFloat pi_big() { return boost::math::constants::pi<BigFloat>(); }

inline BigFloat to_float(const Rational& q) {
  return BigFloat(boost::multiprecision::numerator(q)) / BigFloat(boost::multiprecision::denominator(q));
}

// exact check of q <= sqrt(x) for x >= 0
inline bool le_sqrt(const Rational& q, const Rational& x) {
  if (q <= 0) return true;
  return q * q <= x;
}

}  // namespace twobridge

#endif
