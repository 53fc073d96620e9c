#include "orthodual/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "orthodual/error.hpp"

namespace orthodual {
namespace {

bool is_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den) || den.front() == '-' || den.front() == '+') {
    return std::nullopt;
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class a(n, 10);
  mpz_class b(std::string(den), 10);
  if (b == 0) return std::nullopt;
  Rational q(a, b);
  q.canonicalize();
  return q;
}

ParsedScalar parse_scalar(std::string_view text) {
  text = trim(text);
  if (auto q = parse_rational(text)) return {q->get_d(), *q};
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::ParseError, "cannot parse number '" + s + "'");
  }
  return {v, std::nullopt};
}

std::vector<ParsedScalar> parse_scalar_list(std::string_view text) {
  std::vector<ParsedScalar> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(parse_scalar(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace orthodual
