// Copyright 2026 The algdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <utility>

#include <boost/multiprecision/gmp.hpp>

#include "algdiff/errors.hpp"

namespace algdiff {

/// Element of Z/pZ for a word-size prime p < 2^63.
///
/// Every element carries its modulus. A default-constructed Zp has modulus 0
/// and value 0; it acts as the zero of every prime field, so generic code can
/// value-initialize containers without a field context. Binary operations
/// take the nonzero modulus of the two operands.
class Zp {
 public:
  constexpr Zp() = default;
  Zp(std::uint64_t value, std::uint64_t modulus) : v_(value % modulus), p_(modulus) {}

  /// Wraps an already reduced value.
  static constexpr Zp raw(std::uint64_t value, std::uint64_t modulus) {
    Zp z;
    z.v_ = value;
    z.p_ = modulus;
    return z;
  }

  constexpr std::uint64_t value() const { return v_; }
  constexpr std::uint64_t modulus() const { return p_; }

  friend Zp operator+(Zp a, Zp b) {
    const std::uint64_t p = a.p_ | b.p_;
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p && p != 0) s -= p;
    return raw(s, p);
  }
  friend Zp operator-(Zp a, Zp b) {
    const std::uint64_t p = a.p_ | b.p_;
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p - b.v_, p);
  }
  friend Zp operator-(Zp a) { return raw(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }
  friend Zp operator*(Zp a, Zp b) {
    const std::uint64_t p = a.p_ | b.p_;
    if (a.v_ == 0 || b.v_ == 0) return raw(0, p);
    return raw(mulmod(a.v_, b.v_, p), p);
  }
  friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
  Zp& operator+=(Zp b) { return *this = *this + b; }
  Zp& operator-=(Zp b) { return *this = *this - b; }
  Zp& operator*=(Zp b) { return *this = *this * b; }
  Zp& operator/=(Zp b) { return *this = *this / b; }

  friend constexpr bool operator==(Zp a, Zp b) { return a.v_ == b.v_; }

  Zp inverse() const {
    if (v_ == 0) throw DomainError("division by zero in Z/pZ");
    // Extended Euclid on signed 128-bit values.
    __int128 r0 = p_, r1 = v_, s0 = 0, s1 = 1;
    while (r1 != 0) {
      const __int128 q = r0 / r1;
      std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
      std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    if (r0 != 1) throw DomainError("modulus is not prime");
    if (s0 < 0) s0 += p_;
    return raw(static_cast<std::uint64_t>(s0), p_);
  }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    if ((a | b) >> 32 == 0) return (a * b) % p;
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }

  friend std::ostream& operator<<(std::ostream& os, Zp a) { return os << a.v_; }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

inline bool is_zero(const Zp& a) { return a.value() == 0; }
inline bool is_zero(const Rational& a) { return a.is_zero(); }

// Context-free helpers used by series code that only sees ring elements.
inline Zp one_like(const Zp& a) {
  if (a.modulus() == 0) throw InvariantError("unit requested from a context-free zero");
  return Zp::raw(1, a.modulus());
}
inline Rational one_like(const Rational&) { return Rational(1); }

inline Zp mul_int(const Zp& a, std::int64_t n) {
  const std::uint64_t p = a.modulus();
  if (p == 0 || a.value() == 0) return a;
  const std::uint64_t m = n >= 0 ? static_cast<std::uint64_t>(n) % p
                                 : (p - (static_cast<std::uint64_t>(-(n + 1)) + 1) % p) % p;
  return a * Zp::raw(m, p);
}
inline Rational mul_int(const Rational& a, std::int64_t n) { return a * n; }

inline Zp inv(const Zp& a) { return a.inverse(); }
inline Rational inv(const Rational& a) {
  if (a.is_zero()) throw DomainError("division by zero in Q");
  return 1 / a;
}

/// Zero test usable from class scopes whose own is_zero() member would hide
/// the free overloads.
template <class T>
bool is_zero_elem(const T& x) {
  return is_zero(x);
}

namespace detail {

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = Zp::mulmod(r, b, m);
    b = Zp::mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = Zp::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

enum class FieldKind { prime, rational };

/// Runtime description of a coefficient field.
struct FieldSpec {
  FieldKind kind = FieldKind::rational;
  std::uint64_t modulus = 0;  // meaningful iff kind == prime

  static FieldSpec rational() { return {FieldKind::rational, 0}; }
  static FieldSpec prime(std::uint64_t p) {
    if (p >= (1ull << 63) || !is_prime_u64(p))
      throw DomainError("modulus " + std::to_string(p) + " is not a word-size prime");
    return {FieldKind::prime, p};
  }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class PrimeField {
 public:
  using Elem = Zp;

  explicit PrimeField(std::uint64_t p) : p_(FieldSpec::prime(p).modulus) {}

  Elem zero() const { return Elem::raw(0, p_); }
  Elem one() const { return Elem::raw(1 % p_, p_); }
  Elem from_int(std::int64_t n) const {
    const std::uint64_t m = n >= 0 ? static_cast<std::uint64_t>(n) % p_
                                   : (p_ - (static_cast<std::uint64_t>(-(n + 1)) + 1) % p_) % p_;
    return Elem::raw(m, p_);
  }
  Elem from_integer(const Integer& n) const {
    Integer r = n % p_;
    if (r < 0) r += p_;
    return Elem::raw(static_cast<std::uint64_t>(r), p_);
  }
  Elem from_rational(const Rational& q) const {
    const Elem den = from_integer(boost::multiprecision::denominator(q));
    if (is_zero(den)) throw DomainError("denominator vanishes modulo " + std::to_string(p_));
    return from_integer(boost::multiprecision::numerator(q)) / den;
  }
  /// Accepts "a" or "a/b" with optional sign.
  Elem parse(std::string_view s) const { return from_rational(parse_rational(s)); }
  std::string to_string(const Elem& a) const { return std::to_string(a.value()); }

  std::uint64_t modulus() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  FieldSpec spec() const { return {FieldKind::prime, p_}; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

  static Rational parse_rational(std::string_view s);

 private:
  std::uint64_t p_;
};

class RationalField {
 public:
  using Elem = Rational;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t n) const { return Elem(n); }
  Elem from_integer(const Integer& n) const { return Elem(n); }
  Elem from_rational(const Rational& q) const { return q; }
  Elem parse(std::string_view s) const { return PrimeField::parse_rational(s); }
  std::string to_string(const Elem& a) const { return a.str(); }

  std::uint64_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rational(); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

inline Rational PrimeField::parse_rational(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  auto parse_int = [](std::string_view v) {
    if (v.empty()) throw ParseError("empty scalar");
    std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
    if (i == v.size()) throw ParseError("malformed scalar '" + std::string(v) + "'");
    for (std::size_t k = i; k < v.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(v[k])))
        throw ParseError("malformed scalar '" + std::string(v) + "'");
    return Integer(std::string(v[0] == '+' ? v.substr(1) : v));
  };
  s = trim(s);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  const Integer num = parse_int(trim(s.substr(0, slash)));
  const Integer den = parse_int(trim(s.substr(slash + 1)));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

template <class K>
concept Field = requires(const K& k, const typename K::Elem& a, std::int64_t n) {
  { k.zero() } -> std::same_as<typename K::Elem>;
  { k.one() } -> std::same_as<typename K::Elem>;
  { k.from_int(n) } -> std::same_as<typename K::Elem>;
  { k.to_string(a) } -> std::same_as<std::string>;
  { k.spec() } -> std::same_as<FieldSpec>;
  { is_zero(a) } -> std::same_as<bool>;
};

template <class K>
inline constexpr bool is_prime_field_v = std::is_same_v<K, PrimeField>;

/// Calls f with the concrete field described by spec.
template <class F>
decltype(auto) with_field(const FieldSpec& spec, F&& f) {
  if (spec.kind == FieldKind::prime) return std::forward<F>(f)(PrimeField(spec.modulus));
  return std::forward<F>(f)(RationalField{});
}

}  // namespace algdiff
