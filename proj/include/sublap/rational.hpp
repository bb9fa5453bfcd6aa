#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sublap {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using RationalVec = std::vector<Rational>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline int rational_sign(const Rational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

/// Parses "p/q", plain integers, and decimal strings like "-0.25".
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(BigInt(s));
  std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (head == "-" || head.empty()) head = neg ? "-0" : "0";
  BigInt num(head);
  BigInt den = 1;
  for (char c : tail) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad rational literal: " + s);
    num = num * 10 + (neg ? -(c - '0') : (c - '0'));
    den *= 10;
  }
  return Rational(num, den);
}

inline std::string rational_str(const Rational& q) {
  BigInt num = numerator(q), den = denominator(q);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

inline std::vector<double> to_double_vec(const RationalVec& v) {
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

}  // namespace sublap
