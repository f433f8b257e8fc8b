#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "bqpvol/errors.hpp"

namespace bqp {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer factorial(unsigned long k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

inline Integer binomial(unsigned long a, unsigned long b) {
  if (b > a) throw DomainError("binomial: lower index exceeds upper index");
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return r;
}

inline Integer pow2(unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

/// 2^k for possibly negative k, as an exact rational.
inline Rational pow2_signed(long k) {
  if (k >= 0) return Rational(pow2(static_cast<unsigned long>(k)));
  return Rational(Integer(1), pow2(static_cast<unsigned long>(-k)));
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Canonical "num/den" text; the denominator is always present.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "a/b", an integer, or a finite decimal such as "-0.125" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational { throw DomainError("malformed rational: '" + s + "'"); };
  if (s.empty()) return fail();
  auto is_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view t) {
    if (!t.empty() && t[0] == '+') t.remove_prefix(1);
    return Integer(std::string(t), 10);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string_view num(s.data(), slash), den(s.data() + slash + 1, s.size() - slash - 1);
    if (!is_int(num) || !is_int(den)) return fail();
    Integer d = to_int(den);
    if (d == 0) return fail();
    return make_rational(to_int(num), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) return fail();
    std::string digits = whole + frac;
    if (whole.empty() || whole == "-" || whole == "+") digits = whole + "0" + frac;
    if (!is_int(digits)) return fail();
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    return make_rational(to_int(digits), scale);
  }
  if (!is_int(s)) return fail();
  return Rational(to_int(s));
}

/// Natural log of a positive integer, carrying the top 64 bits in long double.
inline long double log_integer(const Integer& z) {
  if (z <= 0) throw DomainError("log of a non-positive integer");
  std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  std::size_t shift = bits > 64 ? bits - 64 : 0;
  Integer top = z >> static_cast<mp_bitcnt_t>(shift);
  // top fits in 64 bits; assemble it from two 32-bit halves.
  Integer hi = top >> 32;
  Integer lo = top - (hi << 32);
  long double mant = static_cast<long double>(hi.get_ui()) * 4294967296.0L +
                     static_cast<long double>(lo.get_ui());
  return std::log(mant) + static_cast<long double>(shift) * std::log(2.0L);
}

inline long double log_rational(const Rational& q) {
  return log_integer(q.get_num()) - log_integer(q.get_den());
}

/// value^(1/d) for a rational in [0, 1]; d == 0 yields 1.
inline long double dth_root(const Rational& value, unsigned d) {
  if (value < 0) throw DomainError("d-th root of a negative value");
  if (d == 0) return 1.0L;
  if (value == 0) return 0.0L;
  return std::exp(log_rational(value) / static_cast<long double>(d));
}

inline std::string format_decimal(long double v, int significant = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", significant, v);
  return buf;
}

/// Euler (zigzag) numbers A_0..A_K.
struct EulerNumberTable {
  std::vector<Integer> values;

  const Integer& operator[](std::size_t k) const { return values.at(k); }
  std::size_t max_index() const { return values.size() - 1; }
};

/// Boustrophedon (Seidel–Entringer) triangle: row k starts at 0 and each entry
/// adds the previous entry of row k to the mirrored entry of row k-1.
/// A_k is the last entry of row k.
inline EulerNumberTable euler_numbers(std::size_t K) {
  EulerNumberTable table;
  table.values.reserve(K + 1);
  table.values.emplace_back(1);
  std::vector<Integer> prev{Integer(1)}, row;
  for (std::size_t k = 1; k <= K; ++k) {
    row.assign(k + 1, Integer(0));
    for (std::size_t j = 1; j <= k; ++j) row[j] = row[j - 1] + prev[k - j];
    table.values.push_back(row[k]);
    prev.swap(row);
  }
  return table;
}

}  // namespace bqp
