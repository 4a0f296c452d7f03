#pragma once

// Exact scalar types. Every quantity that feeds a verdict or a certificate
// is a Rational; floating point appears only in advisory renderings and in
// the destabilizer search heuristic.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "toricstab/errors.hpp"

namespace toricstab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

inline Int rat_num(const Rational& q) { return numerator(q); }
inline Int rat_den(const Rational& q) { return denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Int& z) { return z.sign(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Largest integer <= q.
inline Int floor_int(const Rational& q) {
  Int t = numerator(q) / denominator(q);
  if (q < 0 && t * denominator(q) != numerator(q)) --t;
  return t;
}

// Smallest integer >= q.
inline Int ceil_int(const Rational& q) { return -floor_int(-q); }

// Canonical form: "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Int& z) { return z.str(); }

// Accepts "p" or "p/q" with optional leading minus; rejects anything else.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw input_error("empty rational literal");
  auto digits = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!digits(s)) throw input_error("bad rational literal: " + s);
      return Rational(Int(s));
    }
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num) || !digits(den))
      throw input_error("bad rational literal: " + s);
    Int d(den);
    if (d == 0) throw input_error("zero denominator: " + s);
    return Rational(Int(num), d);
  } catch (const std::exception&) {
    throw input_error("bad rational literal: " + s);
  }
}

inline Int parse_integer(const std::string& s) {
  Rational q = parse_rational(s);
  if (denominator(q) != 1) throw input_error("expected integer, got " + s);
  return numerator(q);
}

inline bool lex_less(const QVec& a, const QVec& b) {
  for (std::size_t j = 0; j < a.size() && j < b.size(); ++j) {
    if (a[j] != b[j]) return a[j] < b[j];
  }
  return a.size() < b.size();
}

inline bool lex_less(const IVec& a, const IVec& b) {
  for (std::size_t j = 0; j < a.size() && j < b.size(); ++j) {
    if (a[j] != b[j]) return a[j] < b[j];
  }
  return a.size() < b.size();
}

}  // namespace toricstab
