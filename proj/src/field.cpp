#include "pcf/field.hpp"

#include <charconv>

namespace pcf {

namespace {

std::uint64_t reduce_mod(const mpz_class& value, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
  return r.get_ui();
}

// Extended Euclid; p is prime and a in (0, p).
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

bool parse_integer(std::string_view text, mpz_class& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31)) {
    throw std::invalid_argument("prime field characteristic must be below 2^31, got " +
                                std::to_string(p));
  }
  if (!is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  }
  FieldSpec f;
  f.kind_ = FieldKind::PrimeField;
  f.p_ = static_cast<std::uint32_t>(p);
  return f;
}

std::string FieldSpec::to_string() const {
  if (is_rationals()) return "q";
  return "zp:" + std::to_string(p_);
}

FieldSpec FieldSpec::parse(std::string_view token) {
  if (token == "q" || token == "Q") return rationals();
  if (token.starts_with("zp:")) {
    auto digits = token.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) {
      return prime(p);
    }
  }
  throw std::invalid_argument("unknown field '" + std::string(token) +
                              "' (expected q or zp:<prime>)");
}

Scalar Scalar::zero(const FieldSpec& field) { return from_int(field, 0); }

Scalar Scalar::one(const FieldSpec& field) { return from_int(field, 1); }

Scalar Scalar::from_int(const FieldSpec& field, long long value) {
  static_assert(sizeof(long) == sizeof(long long));
  if (field.is_rationals()) {
    Scalar s;
    s.value_ = Rational(static_cast<long>(value));
    return s;
  }
  std::int64_t p = field.characteristic();
  std::int64_t r = value % p;
  if (r < 0) r += p;
  Scalar s;
  s.field_ = field;
  s.value_ = static_cast<std::uint64_t>(r);
  return s;
}

Scalar Scalar::from_fraction(const FieldSpec& field, const mpz_class& num,
                             const mpz_class& den) {
  Scalar s;
  s.field_ = field;
  if (field.is_rationals()) {
    if (den == 0) throw DivisionByZero("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    s.value_ = std::move(q);
  } else {
    std::uint32_t p = field.characteristic();
    std::uint64_t d = reduce_mod(den, p);
    if (d == 0) {
      throw DivisionByZero("denominator " + den.get_str() + " vanishes mod " +
                           std::to_string(p));
    }
    s.value_ = reduce_mod(num, p) * inverse_mod(d, p) % p;
  }
  return s;
}

Scalar Scalar::from_rational(const FieldSpec& field, const Rational& q) {
  return from_fraction(field, q.get_num(), q.get_den());
}

Scalar Scalar::parse(const FieldSpec& field, std::string_view text) {
  auto slash = text.find('/');
  mpz_class num, den(1);
  bool ok = slash == std::string_view::npos
                ? parse_integer(text, num)
                : parse_integer(text.substr(0, slash), num) &&
                      parse_integer(text.substr(slash + 1), den);
  if (!ok) throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
  return from_fraction(field, num, den);
}

bool Scalar::is_zero() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q) == 0;
  return std::get<std::uint64_t>(value_) == 0;
}

bool Scalar::is_one() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q == 1;
  return std::get<std::uint64_t>(value_) == 1;
}

const Rational& Scalar::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw std::logic_error("rational() called on a prime-field scalar");
}

std::uint64_t Scalar::residue() const {
  if (const auto* r = std::get_if<std::uint64_t>(&value_)) return *r;
  throw std::logic_error("residue() called on a rational scalar");
}

void Scalar::check_same_field(const Scalar& other) const {
  if (!(field_ == other.field_)) {
    throw FieldMismatch("field mismatch: " + field_.to_string() + " vs " +
                        other.field_.to_string());
  }
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (auto* q = std::get_if<Rational>(&s.value_)) {
    *q = -*q;
  } else {
    auto& r = std::get<std::uint64_t>(s.value_);
    if (r != 0) r = field_.characteristic() - r;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* q = std::get_if<Rational>(&value_)) {
    *q += std::get<Rational>(rhs.value_);
  } else {
    auto& r = std::get<std::uint64_t>(value_);
    r = (r + std::get<std::uint64_t>(rhs.value_)) % field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* q = std::get_if<Rational>(&value_)) {
    *q *= std::get<Rational>(rhs.value_);
  } else {
    auto& r = std::get<std::uint64_t>(value_);
    r = r * std::get<std::uint64_t>(rhs.value_) % field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= inverse(rhs);
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->get_str();
  return std::to_string(std::get<std::uint64_t>(value_));
}

Scalar inverse(const Scalar& a) {
  if (a.is_zero()) throw DivisionByZero("inverse of zero");
  if (a.field().is_rationals()) {
    const Rational& q = a.rational();
    return Scalar::from_fraction(a.field(), q.get_den(), q.get_num());
  }
  std::uint32_t p = a.field().characteristic();
  return Scalar::from_int(a.field(), static_cast<long long>(inverse_mod(a.residue(), p)));
}

}  // namespace pcf
