#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace newton {

using Rational = mpq_class;
using Integer = mpz_class;

/// Formats as "p" or "p/q" (canonical, q > 0).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p" or "p/q"; throws InputError on anything else or q = 0.
Rational parse_rational(std::string_view text);

Integer lcm_of_denominators(std::span<const Rational> values);

std::int64_t to_int64(const Integer& z);

/// Marker for the +infinity alternative of ExtendedRational.
struct PlusInfinity {
  friend bool operator==(PlusInfinity, PlusInfinity) { return true; }
};

/// A rational number or +infinity. Used for Newton orders, where the
/// zero series has order +infinity.
class ExtendedRational {
 public:
  ExtendedRational(const Rational& value) : value_(value) {}  // NOLINT
  ExtendedRational(PlusInfinity inf) : value_(inf) {}         // NOLINT

  static ExtendedRational infinity() { return ExtendedRational(PlusInfinity{}); }

  bool is_infinite() const { return std::holds_alternative<PlusInfinity>(value_); }
  /// Throws PreconditionError when infinite.
  const Rational& value() const;

  std::string to_string() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }
  friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) { return !(a < b); }

 private:
  std::variant<Rational, PlusInfinity> value_;
};

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);

}  // namespace newton
