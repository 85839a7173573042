#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace pcf {

using Rational = mpq_class;

enum class FieldKind { Rationals, PrimeField };

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The coefficient field: either the rationals or Z/p for a prime p < 2^31.
class FieldSpec {
 public:
  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec{}; }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p);

  FieldKind kind() const { return kind_; }
  bool is_rationals() const { return kind_ == FieldKind::Rationals; }
  /// The characteristic; 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }

  /// "q" or "zp:<p>", the token used by the matrix interchange format.
  std::string to_string() const;
  /// Inverse of to_string(). Throws std::invalid_argument.
  static FieldSpec parse(std::string_view token);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldKind kind_ = FieldKind::Rationals;
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// An element of a FieldSpec. Rationals are kept in lowest terms with a
/// positive denominator and residues in [0, p), so equality is structural.
class Scalar {
 public:
  /// The zero of Q.
  Scalar() = default;

  static Scalar zero(const FieldSpec& field);
  static Scalar one(const FieldSpec& field);
  static Scalar from_int(const FieldSpec& field, long long value);
  /// num/den mapped into the field. Throws DivisionByZero if den vanishes there.
  static Scalar from_fraction(const FieldSpec& field, const mpz_class& num,
                              const mpz_class& den);
  static Scalar from_rational(const FieldSpec& field, const Rational& q);
  /// Parses an integer or "num/den". Throws std::invalid_argument.
  static Scalar parse(const FieldSpec& field, std::string_view text);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Only valid over Q.
  const Rational& rational() const;
  /// Only valid over Z/p.
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Decimal "num/den" (or "num" when den = 1) over Q, the residue over Z/p.
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& other) const;

  FieldSpec field_;
  std::variant<Rational, std::uint64_t> value_;
};

/// Multiplicative inverse. Throws DivisionByZero on zero.
Scalar inverse(const Scalar& a);

}  // namespace pcf
