#pragma once

// Scalar support shared by every module: the exact rational type, a traits
// table that lets templates stay agnostic of double vs Rational, and the
// textual forms used by the CLI ("p/q" strings, shortest round-trip floats).

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace polymul {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class ScalarMode { exact_rational, float64 };

inline std::string format_double(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf, end);
}

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

// Correctly rounded when numerator and denominator fit in 53 bits.
inline double rational_to_double(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  static const BigInt limit = BigInt(1) << 53;
  if (abs(num) <= limit && den <= limit) {
    return num.convert_to<double>() / den.convert_to<double>();
  }
  return q.convert_to<double>();
}

// Accepts "p", "p/q", and plain decimals such as "-0.125" or "3.5e-2";
// decimals are converted exactly ("0.1" becomes 1/10).
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty scalar literal");
  auto parse_int = [&](std::string_view s) {
    s = trim(s);
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed scalar literal '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw std::invalid_argument("malformed scalar literal '" + std::string(text) + "'");
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  std::string_view mantissa = text;
  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text[0] == '+') exp_text.remove_prefix(1);
    auto [p, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc{} || p != exp_text.data() + exp_text.size())
      throw std::invalid_argument("malformed scalar literal '" + std::string(text) + "'");
  }
  std::string digits;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    exponent -= static_cast<long long>(mantissa.size() - dot - 1);
    if (digits == "-" || digits == "+" || digits.empty())
      throw std::invalid_argument("malformed scalar literal '" + std::string(text) + "'");
  } else {
    digits = std::string(mantissa);
  }
  Rational value(parse_int(digits));
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exponent)));
  return exponent >= 0 ? Rational(value * Rational(scale)) : Rational(value / Rational(scale));
}

template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::float64;
  static double from_rational(const Rational& q) { return rational_to_double(q); }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static double parse(std::string_view text) { return rational_to_double(parse_rational(text)); }
  static std::string format(double v) { return format_double(v); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::exact_rational;
  static Rational from_rational(const Rational& q) { return q; }
  // Exact binary value of v; callers that need decimal semantics parse text instead.
  static Rational from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite value has no rational form");
    return Rational(v);
  }
  static double to_double(const Rational& v) { return rational_to_double(v); }
  static Rational parse(std::string_view text) { return parse_rational(text); }
  static std::string format(const Rational& v) {
    return boost::multiprecision::numerator(v).str() + "/" +
           boost::multiprecision::denominator(v).str();
  }
};

template <typename S>
concept Scalar = requires { ScalarTraits<S>::exact; };

template <Scalar S>
S ratio(long long num, long long den) {
  return ScalarTraits<S>::from_rational(make_rational(num, den));
}

template <Scalar S>
double to_double(const S& v) {
  return ScalarTraits<S>::to_double(v);
}

template <Scalar S>
S abs_value(const S& v) {
  return v < S{0} ? S{-v} : v;
}

inline std::string to_string(ScalarMode mode) {
  return mode == ScalarMode::exact_rational ? "exact-rational" : "float64";
}

}  // namespace polymul
