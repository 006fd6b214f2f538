#include "ncips/field.hpp"

#include <charconv>
#include <cctype>

namespace ncips {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw PreconditionError("modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  return {FieldKind::prime, p};
}

Field Field::parse(std::string_view text) {
  if (text == "gf2") return gf2();
  if (text == "q") return rationals();
  if (text.substr(0, 3) == "zp:") {
    std::string_view digits = text.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty() || p >= (1ull << 31)) {
      throw PreconditionError("bad field modulus '" + std::string(digits) + "'");
    }
    return prime(static_cast<std::uint32_t>(p));
  }
  throw PreconditionError("unknown field '" + std::string(text) + "' (expected gf2, q or zp:<p>)");
}

std::string Field::name() const {
  switch (kind) {
    case FieldKind::gf2:
      return "gf2";
    case FieldKind::prime:
      return "zp:" + std::to_string(modulus);
    case FieldKind::rational:
      break;
  }
  return "q";
}

Zp operator+(const Zp& a, const Zp& b) {
  std::uint32_t p = Zp::common_modulus(a, b);
  return p == 0 ? Zp(a.value_ + b.value_) : Zp(a.value_ + b.value_, p);
}

Zp operator-(const Zp& a, const Zp& b) {
  std::uint32_t p = Zp::common_modulus(a, b);
  return p == 0 ? Zp(a.value_ - b.value_) : Zp(a.value_ - b.value_, p);
}

Zp operator*(const Zp& a, const Zp& b) {
  std::uint32_t p = Zp::common_modulus(a, b);
  if (p == 0) return Zp(a.value_ * b.value_);
  // Reduce first: an unbound literal may lie outside [0, p).
  long long x = Zp::reduce(a.value_, p);
  long long y = Zp::reduce(b.value_, p);
  return Zp(x * y, p);
}

bool operator==(const Zp& a, const Zp& b) {
  std::uint32_t p = Zp::common_modulus(a, b);
  if (p == 0) return a.value_ == b.value_;
  return Zp::reduce(a.value_, p) == Zp::reduce(b.value_, p);
}

Zp Zp::inverse() const {
  if (modulus_ == 0) {
    if (value_ == 1 || value_ == -1) return *this;
    throw FieldMismatch("inverse of an unbound Z_p literal");
  }
  if (value_ == 0) throw DivisionByZero();
  // Extended Euclid on (value, p).
  long long r0 = modulus_, r1 = value_, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    long long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return Zp(s0, modulus_);
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw DivisionByZero();
  q_.canonicalize();
}

std::string to_string(const Gf2& a) { return a.is_zero() ? "0" : "1"; }

std::string to_string(const Zp& a) { return std::to_string(a.value()); }

std::string to_string(const Rational& a) { return a.value().get_str(); }

namespace {

bool is_integer_text(std::string_view text, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && !text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view text) {
  if (!is_integer_text(text, true)) throw Error("bad integer constant '" + std::string(text) + "'");
  std::string s(text[0] == '+' ? text.substr(1) : text);
  return mpz_class(s, 10);
}

}  // namespace

template <>
Gf2 parse_scalar<Gf2>(const Field& field, std::string_view text) {
  if (text.find('/') != std::string_view::npos) {
    throw Error("unknown field constant '" + std::string(text) + "' (fractions are only allowed over q)");
  }
  return from_integer<Gf2>(field, parse_integer(text));
}

template <>
Zp parse_scalar<Zp>(const Field& field, std::string_view text) {
  if (text.find('/') != std::string_view::npos) {
    throw Error("unknown field constant '" + std::string(text) + "' (fractions are only allowed over q)");
  }
  return from_integer<Zp>(field, parse_integer(text));
}

template <>
Rational parse_scalar<Rational>(const Field& field, std::string_view text) {
  if (!field_matches<Rational>(field)) throw FieldMismatch("scalar type does not match field " + field.name());
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(mpq_class(parse_integer(text)));
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_text(den, false)) throw Error("bad denominator in '" + std::string(text) + "'");
  mpz_class d(std::string(den), 10);
  if (d == 0) throw DivisionByZero();
  return Rational(parse_integer(text.substr(0, slash)), d);
}

}  // namespace ncips
