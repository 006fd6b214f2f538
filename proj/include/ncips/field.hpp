#pragma once

// Exact scalar fields: GF(2), prime fields Z_p (p < 2^31) and the rationals.
//
// Every scalar type models `FieldScalar`. A default-constructed scalar is zero.
// Z_p elements carry their modulus; an element with modulus 0 is an unreduced
// integer literal (as produced by `Zp(0)` / `Zp(1)`) and adopts the modulus of
// the other operand on first use.

#include <Eigen/Core>
#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "ncips/errors.hpp"

namespace ncips {

enum class FieldKind { gf2, rational, prime };

struct Field {
  FieldKind kind = FieldKind::rational;
  std::uint32_t modulus = 0;

  static Field gf2() { return {FieldKind::gf2, 2}; }
  static Field rationals() { return {FieldKind::rational, 0}; }
  /// Throws PreconditionError unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);
  /// Accepts "gf2", "q" and "zp:<p>".
  static Field parse(std::string_view text);

  std::string name() const;
  bool operator==(const Field&) const = default;
};

bool is_prime(std::uint32_t n);

class Gf2 {
 public:
  constexpr Gf2() = default;
  constexpr explicit Gf2(long long v) : bit_(static_cast<std::uint8_t>(v & 1)) {}

  constexpr bool is_zero() const { return bit_ == 0; }
  constexpr bool is_one() const { return bit_ == 1; }
  constexpr unsigned value() const { return bit_; }
  Gf2 inverse() const {
    if (bit_ == 0) throw DivisionByZero();
    return *this;
  }
  Field field() const { return Field::gf2(); }

  friend constexpr Gf2 operator+(Gf2 a, Gf2 b) { return Gf2(a.bit_ ^ b.bit_); }
  friend constexpr Gf2 operator-(Gf2 a, Gf2 b) { return Gf2(a.bit_ ^ b.bit_); }
  friend constexpr Gf2 operator*(Gf2 a, Gf2 b) { return Gf2(a.bit_ & b.bit_); }
  friend Gf2 operator/(Gf2 a, Gf2 b) { return a * b.inverse(); }
  constexpr Gf2 operator-() const { return *this; }
  Gf2& operator+=(Gf2 o) { return *this = *this + o; }
  Gf2& operator-=(Gf2 o) { return *this = *this - o; }
  Gf2& operator*=(Gf2 o) { return *this = *this * o; }
  Gf2& operator/=(Gf2 o) { return *this = *this / o; }
  friend constexpr bool operator==(Gf2 a, Gf2 b) { return a.bit_ == b.bit_; }

 private:
  std::uint8_t bit_ = 0;
};

class Zp {
 public:
  Zp() = default;
  explicit Zp(long long v) : value_(v) {}
  Zp(long long v, std::uint32_t modulus) : value_(reduce(v, modulus)), modulus_(modulus) {}

  std::uint32_t modulus() const { return modulus_; }
  /// Canonical representative in [0, p); the raw integer when unbound.
  long long value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  Zp inverse() const;
  Field field() const { return Field::prime(modulus_); }

  friend Zp operator+(const Zp& a, const Zp& b);
  friend Zp operator-(const Zp& a, const Zp& b);
  friend Zp operator*(const Zp& a, const Zp& b);
  friend Zp operator/(const Zp& a, const Zp& b) { return a * b.inverse(); }
  Zp operator-() const { return modulus_ == 0 ? Zp(-value_) : Zp(-value_, modulus_); }
  Zp& operator+=(const Zp& o) { return *this = *this + o; }
  Zp& operator-=(const Zp& o) { return *this = *this - o; }
  Zp& operator*=(const Zp& o) { return *this = *this * o; }
  Zp& operator/=(const Zp& o) { return *this = *this / o; }
  friend bool operator==(const Zp& a, const Zp& b);

 private:
  static long long reduce(long long v, std::uint32_t p) {
    if (p == 0) return v;
    long long r = v % static_cast<long long>(p);
    return r < 0 ? r + p : r;
  }
  static std::uint32_t common_modulus(const Zp& a, const Zp& b) {
    if (a.modulus_ != 0 && b.modulus_ != 0 && a.modulus_ != b.modulus_) {
      throw FieldMismatch("Z_" + std::to_string(a.modulus_) + " vs Z_" + std::to_string(b.modulus_));
    }
    return a.modulus_ != 0 ? a.modulus_ : b.modulus_;
  }

  long long value_ = 0;
  std::uint32_t modulus_ = 0;
};

class Rational {
 public:
  Rational() = default;
  explicit Rational(long long v) : q_(static_cast<long>(v)) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den);

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(mpq_class(1) / q_);
  }
  Field field() const { return Field::rationals(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

 private:
  mpq_class q_;
};

template <class S>
concept FieldScalar = std::regular<S> && requires(const S a, const S b) {
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { -a } -> std::same_as<S>;
  { a.inverse() } -> std::same_as<S>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.is_one() } -> std::convertible_to<bool>;
};

std::string to_string(const Gf2& a);
std::string to_string(const Zp& a);
std::string to_string(const Rational& a);

inline std::ostream& operator<<(std::ostream& os, const Gf2& a) { return os << to_string(a); }
inline std::ostream& operator<<(std::ostream& os, const Zp& a) { return os << to_string(a); }
inline std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << to_string(a); }

/// Field-tag compatibility between a scalar type and a runtime field.
template <class S>
bool field_matches(const Field& field) {
  if constexpr (std::is_same_v<S, Gf2>) return field.kind == FieldKind::gf2;
  if constexpr (std::is_same_v<S, Zp>) return field.kind == FieldKind::prime;
  if constexpr (std::is_same_v<S, Rational>) return field.kind == FieldKind::rational;
  return false;
}

/// Integer n read into `field`. For Z_p the result carries the modulus.
template <class S>
S from_integer(const Field& field, const mpz_class& n) {
  if (!field_matches<S>(field)) throw FieldMismatch("scalar type does not match field " + field.name());
  if constexpr (std::is_same_v<S, Gf2>) {
    return Gf2(mpz_odd_p(n.get_mpz_t()) ? 1 : 0);
  } else if constexpr (std::is_same_v<S, Zp>) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), field.modulus);
    return Zp(r.get_si(), field.modulus);
  } else {
    return Rational(mpq_class(n));
  }
}

template <class S>
S from_integer(const Field& field, long long n) {
  return from_integer<S>(field, mpz_class(static_cast<long>(n)));
}

template <class S>
S zero(const Field& field) {
  return from_integer<S>(field, 0);
}

template <class S>
S one(const Field& field) {
  return from_integer<S>(field, 1);
}

/// Parses "n" or (over Q only) "n/d" with d > 0. Throws Error on bad text.
template <class S>
S parse_scalar(const Field& field, std::string_view text);

template <>
Gf2 parse_scalar<Gf2>(const Field& field, std::string_view text);
template <>
Zp parse_scalar<Zp>(const Field& field, std::string_view text);
template <>
Rational parse_scalar<Rational>(const Field& field, std::string_view text);

/// Calls fn(std::type_identity<S>{}) with the scalar type selected by field.
template <class Fn>
decltype(auto) visit_field(const Field& field, Fn&& fn) {
  switch (field.kind) {
    case FieldKind::gf2:
      return fn(std::type_identity<Gf2>{});
    case FieldKind::prime:
      return fn(std::type_identity<Zp>{});
    case FieldKind::rational:
      break;
  }
  return fn(std::type_identity<Rational>{});
}

}  // namespace ncips

namespace Eigen {

template <class S>
struct ExactFieldNumTraits {
  using Real = S;
  using NonInteger = S;
  using Literal = S;
  using Nested = S;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline S epsilon() { return S(0); }
  static inline S dummy_precision() { return S(0); }
  static inline S highest() { return S(0); }
  static inline S lowest() { return S(0); }
  static inline int digits10() { return 0; }
  static inline int digits() { return 0; }
};

template <>
struct NumTraits<ncips::Gf2> : ExactFieldNumTraits<ncips::Gf2> {};
template <>
struct NumTraits<ncips::Zp> : ExactFieldNumTraits<ncips::Zp> {};
template <>
struct NumTraits<ncips::Rational> : ExactFieldNumTraits<ncips::Rational> {
  enum { ReadCost = 8, AddCost = 32, MulCost = 32 };
};

}  // namespace Eigen
