#include "ncfree/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ncfree {

namespace {

bool is_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) {
    throw std::invalid_argument("empty rational literal");
  }
  std::string_view body = text.substr(begin, end - begin + 1);

  std::string_view num = body;
  std::string_view den = "1";
  if (size_t slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!is_integer_token(num) || !is_integer_token(den)) {
    throw std::invalid_argument("malformed rational literal: '" +
                                std::string(text) + "'");
  }
  Rational value(std::string(num) + "/" + std::string(den));
  if (value.get_den() == 0) {
    throw std::invalid_argument("zero denominator in rational literal: '" +
                                std::string(text) + "'");
  }
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rational_to_decimal(const Rational& value, int digits) {
  if (digits < 0) throw std::invalid_argument("negative digit count");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round(|v| * 10^digits), half away from zero
  mpz_class num = abs(value.get_num()) * scale;
  mpz_class scaled = (2 * num + value.get_den()) / (2 * value.get_den());
  std::string body = scaled.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<size_t>(digits)) {
      body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<size_t>(digits), ".");
  }
  if (sgn(value) < 0 && scaled != 0) body.insert(0, "-");
  return body;
}

}  // namespace ncfree
