// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "symtest/errors.hpp"

namespace symtest {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

inline BigInt pow10(int e) {
  BigInt p = 1;
  for (int i = 0; i < e; ++i) p *= 10;
  return p;
}

// Nearest integer to num/den (both > 0), ties to even.
inline BigInt round_half_even(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  BigInt twice_rem = 2 * (num - q * den);
  if (twice_rem > den) return q + 1;
  if (twice_rem < den) return q;
  return (q % 2 == 0) ? q : q + 1;
}

// "p/q" for non-integers, plain "p" otherwise.
inline std::string rational_str(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Fixed-point decimal with 12 significant digits, round half to even.
/// Examples: 1/20 -> "0.0500000000000", 1 -> "1.00000000000".
inline std::string decimal12(const Rational& value) {
  constexpr int kSigDigits = 12;
  if (value == 0) return "0.00000000000";
  const bool negative = value < 0;
  const BigInt num = boost::multiprecision::abs(boost::multiprecision::numerator(value));
  const BigInt den = boost::multiprecision::denominator(value);

  // Decimal exponent e with 10^e <= |value| < 10^{e+1}.
  auto at_least_pow10 = [&](int e) {
    return e >= 0 ? num >= den * pow10(e) : num * pow10(-e) >= den;
  };
  int e = 0;
  while (at_least_pow10(e + 1)) ++e;
  while (!at_least_pow10(e)) --e;

  const int shift = kSigDigits - 1 - e;
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  if (shift >= 0)
    scaled_num *= pow10(shift);
  else
    scaled_den *= pow10(-shift);
  BigInt digits = round_half_even(scaled_num, scaled_den);
  if (digits == pow10(kSigDigits)) {
    digits = pow10(kSigDigits - 1);
    ++e;
  }

  std::string ds = digits.str();
  std::string out;
  if (e >= 0) {
    if (e + 1 >= kSigDigits) {
      out = ds + std::string(static_cast<size_t>(e + 1 - kSigDigits), '0');
    } else {
      out = ds.substr(0, static_cast<size_t>(e + 1)) + "." + ds.substr(static_cast<size_t>(e + 1));
    }
  } else {
    out = "0." + std::string(static_cast<size_t>(-e - 1), '0') + ds;
  }
  return negative ? "-" + out : out;
}

inline std::string decimal12(double value) {
  if (value == 0.0) return "0.00000000000";
  // Binary doubles convert exactly, so the decimal rounding happens once.
  return decimal12(Rational(value));
}

/// Parses "p/q", integers, and decimal/scientific notation into an exact
/// rational ("0.05" -> 1/20).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw RangeError("empty numeric literal");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw RangeError("zero denominator in '" + s + "'");
    return Rational(p, q);
  }
  bool negative = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  int frac_len = 0;
  bool seen_point = false, seen_digit = false;
  long exp10 = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point) ++frac_len;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exp10 = std::stol(s.substr(i + 1));
      break;
    } else {
      throw RangeError("malformed numeric literal '" + s + "'");
    }
  }
  if (!seen_digit) throw RangeError("malformed numeric literal '" + s + "'");
  Rational r(BigInt(digits.empty() ? "0" : digits));
  long net = exp10 - frac_len;
  if (net > 0)
    r *= pow10(static_cast<int>(net));
  else if (net < 0)
    r /= pow10(static_cast<int>(-net));
  return negative ? -r : r;
}

}  // namespace symtest
