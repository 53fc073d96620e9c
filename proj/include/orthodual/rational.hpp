#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orthodual {

using Rational = mpq_class;

/// Parses "a", "-a" or "a/b" (integers only). Returns nullopt for anything
/// else, including decimals.
std::optional<Rational> parse_rational(std::string_view text);

/// A probability-like scalar as typed by a user: exact when it parsed as a
/// rational, otherwise the nearest double.
struct ParsedScalar {
  double value = 0.0;
  std::optional<Rational> exact;
};

ParsedScalar parse_scalar(std::string_view text);

/// Comma- or whitespace-separated list of scalars.
std::vector<ParsedScalar> parse_scalar_list(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

}  // namespace orthodual
