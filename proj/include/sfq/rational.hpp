#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace sfq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Serialized form is always "p/q" with q > 0 and the sign carried by p.
inline std::string rat_str(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p" or "p/q"; p may start with '-'. q must be a positive integer.
inline Rat parse_rat(const std::string& s) {
  auto bad = [&]() -> ParseError {
    return ParseError("malformed rational '" + s + "'");
  };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  const std::string ps = s.substr(0, slash == std::string::npos ? s.size() : slash);
  const std::string qs = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits = [](const std::string& t, size_t from) {
    if (t.size() <= from) return false;
    for (size_t i = from; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!digits(ps, ps[0] == '-' ? 1 : 0) || !digits(qs, 0)) throw bad();
  Int p(ps), q(qs);
  if (q == 0) throw bad();
  return Rat(p, q);
}

inline Rat rat_factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rat(f);
}

}  // namespace sfq
