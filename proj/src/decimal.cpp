#include "pcf/decimal.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace pcf {

std::optional<Rational> parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  std::string digits;
  long exponent = 0;
  bool any_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    long e = 0;
    std::string_view rest = text.substr(i);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
    if (ec != std::errc{} || ptr != rest.data() + rest.size() || rest.empty()) {
      return std::nullopt;
    }
    exponent += e;
    i = text.size();
  }
  if (i != text.size()) return std::nullopt;
  // Guard against absurd exponents blowing up memory.
  if (exponent > 4096 || exponent < -4096) return std::nullopt;

  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) {
  // An 800-digit decimal string, then strtod's correct rounding. Midpoints
  // between doubles have fewer significant digits than that, so a sticky
  // trailing digit decides every tie exactly.
  if (q == 0) return 0.0;
  mpz_class num = abs(q.get_num());
  const mpz_class& den = q.get_den();
  long shift = 800 - static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) +
               static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
  if (shift < 0) shift = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift));
  mpz_class quotient, remainder;
  mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), mpz_class(num * scale).get_mpz_t(),
              den.get_mpz_t());
  std::string digits = quotient.get_str();
  // A nonzero remainder becomes a sticky trailing digit so halfway cases
  // round correctly.
  if (remainder != 0) digits += '1';
  else digits += '0';
  std::string text = (q < 0 ? "-" : "") + digits + "e-" + std::to_string(shift + 1);
  return std::strtod(text.c_str(), nullptr);
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

}  // namespace pcf
