#pragma once

#include <string>

#include "serre/surd.hpp"

namespace serre {

// Integer 2x2 matrix [[a,b],[c,d]], arbitrary precision entries. Matrices with
// |det| != 1 are representable; unimodularity is a query checked by consumers.
struct Mat2Z {
  Int a{}, b{}, c{}, d{};

  static Mat2Z identity() { return {1, 0, 0, 1}; }

  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  bool unimodular() const {
    Int dt = det();
    return dt == 1 || dt == -1;
  }
  bool operator==(const Mat2Z& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

  Mat2Z operator*(const Mat2Z& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2Z operator-() const { return {-a, -b, -c, -d}; }

  Mat2Z inverse() const {
    Int dt = det();
    check(dt == 1 || dt == -1, Err::NonUnimodular, "inverse of a non-unimodular matrix");
    if (dt == 1) return {d, -b, -c, a};
    return {-d, b, c, -a};
  }

  Mat2Z pow(long k) const {
    Mat2Z base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
    Mat2Z acc = identity();
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  Vec2Q apply(const Vec2Q& v) const {
    return {Rat(a) * v.x + Rat(b) * v.y, Rat(c) * v.x + Rat(d) * v.y};
  }
  Vec2S apply(const Vec2S& v) const {
    return {QuadraticSurd(Rat(a)) * v.x + QuadraticSurd(Rat(b)) * v.y,
            QuadraticSurd(Rat(c)) * v.x + QuadraticSurd(Rat(d)) * v.y};
  }

  std::string str() const {
    return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
  }
};

}  // namespace serre
