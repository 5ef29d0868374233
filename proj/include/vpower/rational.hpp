#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "vpower/errors.hpp"

namespace vpower {

using int128 = __int128;

/// Exact non-negative-denominator fraction over 64-bit integers, always kept
/// in lowest terms. Comparisons cross-multiply in 128 bits.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ConfigError("rational with zero denominator");
    normalize();
  }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }

  long double to_long_double() const noexcept {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }
  double to_double() const noexcept { return static_cast<double>(to_long_double()); }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return static_cast<int128>(a.num_) * b.den_ <=> static_cast<int128>(b.num_) * a.den_;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<int128>(a.num_) * b.den_ + static_cast<int128>(b.num_) * a.den_,
                     static_cast<int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<int128>(a.num_) * b.den_ - static_cast<int128>(b.num_) * a.den_,
                     static_cast<int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<int128>(a.num_) * b.num_, static_cast<int128>(a.den_) * b.den_);
  }

  /// Parses "0.775", "3/4", "1" exactly. Percent signs are rejected.
  static Rational parse(std::string_view text);

  /// Fixed-point decimal rendering with half-up rounding, computed exactly.
  std::string to_decimal(int places) const;

 private:
  static Rational from_wide(int128 num, int128 den);
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

namespace detail {

inline int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  if (negative) v = -v;
  std::string digits;
  while (v > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

inline int128 pow10_128(int exponent) {
  int128 r = 1;
  for (int i = 0; i < exponent; ++i) r *= 10;
  return r;
}

/// floor(a / b) for b > 0.
inline int128 floor_div(int128 a, int128 b) {
  int128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

/// ceil(a / b) for b > 0.
inline int128 ceil_div(int128 a, int128 b) { return -floor_div(-a, b); }

/// Renders num/den rounded half-up to `places` fractional digits.
inline std::string fixed_decimal(int128 num, int128 den, int places) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const bool negative = num < 0;
  const int128 scale = pow10_128(places);
  int128 a = negative ? -num : num;
  int128 scaled = (a * scale * 2 + den) / (den * 2);
  std::string body = int128_to_string(scaled / scale);
  if (places > 0) {
    std::string frac = int128_to_string(scaled % scale);
    body += '.';
    body.append(static_cast<std::size_t>(places) - frac.size(), '0');
    body += frac;
  }
  if (negative && scaled != 0) body.insert(body.begin(), '-');
  return body;
}

}  // namespace detail

inline Rational Rational::from_wide(int128 num, int128 den) {
  if (den == 0) throw ConfigError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int128 g = detail::gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr int128 kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax) throw CapacityError("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

inline Rational Rational::parse(std::string_view text) {
  const std::string original(text);
  auto fail = [&] { return ConfigError("not an exact number: '" + original + "'"); };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational a = parse(text.substr(0, slash));
    const Rational b = parse(text.substr(slash + 1));
    if (b.num_ == 0) throw fail();
    return from_wide(static_cast<int128>(a.num_) * b.den_, static_cast<int128>(a.den_) * b.num_);
  }
  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  int128 num = 0;
  int128 den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw fail();
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw fail();
    seen_digit = true;
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
    if (num > INT64_MAX || den > INT64_MAX) throw fail();
  }
  if (!seen_digit) throw fail();
  return from_wide(negative ? -num : num, den);
}

inline std::string Rational::to_decimal(int places) const {
  return detail::fixed_decimal(num_, den_, places);
}

}  // namespace vpower
