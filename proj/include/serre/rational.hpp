#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "serre/error.hpp"

namespace serre {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

// Largest integer <= r. cpp_rational keeps denominator > 0.
inline Int floor_rat(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  Int q = n / d;
  if (q * d != n && n < 0) q -= 1;
  return q;
}

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

inline int sgn(const Rat& r) { return r.sign(); }
inline int sgn(const Int& n) { return n.sign(); }

// Accepts "p", "-p" or "p/q"; used by the JSON layer which stores rationals as strings.
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& r);

struct Vec2Q {
  Rat x{}, y{};

  bool operator==(const Vec2Q& o) const { return x == o.x && y == o.y; }
  Vec2Q operator+(const Vec2Q& o) const { return {x + o.x, y + o.y}; }
  Vec2Q operator-(const Vec2Q& o) const { return {x - o.x, y - o.y}; }
  Vec2Q operator-() const { return {-x, -y}; }
  Vec2Q operator*(const Rat& c) const { return {x * c, y * c}; }
  bool is_zero() const { return x == 0 && y == 0; }
};

inline Rat cross(const Vec2Q& u, const Vec2Q& v) { return u.x * v.y - u.y * v.x; }
inline Rat dot(const Vec2Q& u, const Vec2Q& v) { return u.x * v.x + u.y * v.y; }

}  // namespace serre
