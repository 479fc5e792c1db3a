#pragma once

#include <string>

#include "serre/rational.hpp"

namespace serre {

// Exact real number p + q*sqrt(d) with p,q rational and d a certified squarefree
// integer >= 2 (d == 0 and q == 0 for plain rationals). Radicands are reduced on
// construction; ones that cannot be certified squarefree are rejected.
class QuadraticSurd {
public:
  QuadraticSurd() = default;
  QuadraticSurd(const Rat& p) : p_(p) {}
  QuadraticSurd(long long p) : p_(p) {}
  QuadraticSurd(const Rat& p, const Rat& q, const Int& d);

  // sqrt(m) for rational m >= 0.
  static QuadraticSurd sqrt_of(const Rat& m);

  const Rat& rat() const { return p_; }
  const Rat& coef() const { return q_; }
  const Int& radicand() const { return d_; }
  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }

  QuadraticSurd conj() const;  // p - q*sqrt(d)
  int sign() const;            // exact: -1, 0, +1
  double to_double() const;
  std::string str() const;

  QuadraticSurd operator-() const;
  QuadraticSurd operator+(const QuadraticSurd& o) const;
  QuadraticSurd operator-(const QuadraticSurd& o) const;
  QuadraticSurd operator*(const QuadraticSurd& o) const;
  QuadraticSurd operator/(const QuadraticSurd& o) const;
  QuadraticSurd pow_int(long k) const;  // k < 0 requires a nonzero value

  bool operator==(const QuadraticSurd& o) const;
  bool operator!=(const QuadraticSurd& o) const { return !(*this == o); }
  bool operator<(const QuadraticSurd& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const QuadraticSurd& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const QuadraticSurd& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const QuadraticSurd& o) const { return (*this - o).sign() >= 0; }

private:
  Rat p_{}, q_{};
  Int d_{};

  void normalize();
  static Int common_radicand(const QuadraticSurd& a, const QuadraticSurd& b);
};

struct Vec2S {
  QuadraticSurd x, y;

  Vec2S() = default;
  Vec2S(QuadraticSurd x_, QuadraticSurd y_) : x(std::move(x_)), y(std::move(y_)) {}
  Vec2S(const Vec2Q& v) : x(v.x), y(v.y) {}

  bool operator==(const Vec2S& o) const { return x == o.x && y == o.y; }
  Vec2S operator+(const Vec2S& o) const { return {x + o.x, y + o.y}; }
  Vec2S operator-(const Vec2S& o) const { return {x - o.x, y - o.y}; }
  Vec2S operator-() const { return {-x, -y}; }
  Vec2S operator*(const QuadraticSurd& c) const { return {x * c, y * c}; }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  bool rational() const { return x.is_rational() && y.is_rational(); }
  Vec2Q to_rational() const;  // requires rational()
};

inline QuadraticSurd cross(const Vec2S& u, const Vec2S& v) { return u.x * v.y - u.y * v.x; }
inline QuadraticSurd dot(const Vec2S& u, const Vec2S& v) { return u.x * v.x + u.y * v.y; }

// Ray direction in R^2: orientation is kept, scale is canonical (primitive integer
// vector for rational rays, first nonzero component +-1 for irrational ones).
class Direction2 {
public:
  static Direction2 of(const Vec2S& u);  // u != 0
  static Direction2 of(const Vec2Q& u);

  const Vec2S& vec() const { return v_; }
  bool rational() const { return v_.rational(); }
  bool operator==(const Direction2& o) const { return v_ == o.v_; }
  bool operator!=(const Direction2& o) const { return !(v_ == o.v_); }
  Direction2 opposite() const;
  std::string str() const;

private:
  Vec2S v_;
};

}  // namespace serre
