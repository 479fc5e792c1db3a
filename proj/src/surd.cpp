#include "serre/surd.hpp"

#include <sstream>

namespace serre {

namespace {

constexpr long long kTrialLimit = 1000000;  // trial divisor bound for radicand reduction

// Largest integer r with r*r <= n.
Int isqrt(const Int& n) {
  using boost::multiprecision::sqrt;
  return sqrt(n);
}

}  // namespace

QuadraticSurd::QuadraticSurd(const Rat& p, const Rat& q, const Int& d) : p_(p), q_(q), d_(d) {
  normalize();
}

QuadraticSurd QuadraticSurd::sqrt_of(const Rat& m) {
  check(m >= 0, Err::DomainSignViolation, "sqrt of a negative rational");
  // sqrt(n/d) = sqrt(n*d)/d
  Int n = numerator(m), d = denominator(m);
  return QuadraticSurd(Rat(0), Rat(1, d), n * d);
}

void QuadraticSurd::normalize() {
  if (q_ == 0 || d_ == 0) {
    q_ = 0;
    d_ = 0;
    return;
  }
  check(d_ > 0, Err::DomainSignViolation, "negative radicand");

  // Pull square factors f^2 <= d with f <= the trial bound into the coefficient.
  Int d = d_;
  Int extracted = 1;
  for (long long f = 2; f <= kTrialLimit; ++f) {
    Int f2 = Int(f) * f;
    if (f2 > d) break;
    while (d % f2 == 0) {
      d /= f2;
      extracted *= f;
    }
  }
  // Certify the rest squarefree: strip single small prime factors, then the cofactor m
  // has only prime factors above the trial bound. A non-square m < bound^3 has at most
  // two such factors and hence is squarefree; a square m = r^2 is extracted whole.
  Int m = d;
  for (long long f = 2; f <= kTrialLimit; ++f) {
    if (Int(f) * f > m) break;
    while (m % f == 0) m /= f;
  }
  if (m > 1) {
    Int r = isqrt(m);
    if (r * r == m) {
      d /= m;
      extracted *= r;
    } else {
      Int bound3 = Int(kTrialLimit) * kTrialLimit * kTrialLimit;
      check(m < bound3, Err::RadicandTooLarge,
            "cannot certify radicand squarefree: " + d_.str());
    }
  }
  d_ = d;
  q_ *= extracted;
  if (d_ == 1) {
    p_ += q_;
    q_ = 0;
    d_ = 0;
  }
}

QuadraticSurd QuadraticSurd::conj() const {
  QuadraticSurd r = *this;
  r.q_ = -r.q_;
  return r;
}

int QuadraticSurd::sign() const {
  if (q_ == 0) return sgn(p_);
  if (p_ == 0) return sgn(q_);
  int sp = sgn(p_), sq = sgn(q_);
  if (sp == sq) return sp;
  // Opposite signs: decide by comparing p^2 with q^2 d. Equality is impossible for a
  // certified squarefree d >= 2.
  Rat pp = p_ * p_, qq = q_ * q_ * Rat(d_);
  if (pp == qq) fail(Err::RadicandTooLarge, "squarefree certification violated");
  return pp > qq ? sp : sq;
}

double QuadraticSurd::to_double() const {
  double v = serre::to_double(p_);
  if (q_ != 0) v += serre::to_double(q_) * std::sqrt(serre::to_double(d_));
  return v;
}

std::string QuadraticSurd::str() const {
  if (q_ == 0) return rat_str(p_);
  std::ostringstream os;
  if (p_ != 0) os << rat_str(p_) << (q_ > 0 ? "+" : "");
  if (q_ == 1)
    os << "sqrt(" << d_.str() << ")";
  else if (q_ == -1)
    os << "-sqrt(" << d_.str() << ")";
  else
    os << rat_str(q_) << "*sqrt(" << d_.str() << ")";
  return os.str();
}

Int QuadraticSurd::common_radicand(const QuadraticSurd& a, const QuadraticSurd& b) {
  if (a.d_ == 0) return b.d_;
  if (b.d_ == 0 || a.d_ == b.d_) return a.d_;
  fail(Err::MixedRadicands,
       "incompatible radicands " + a.d_.str() + " and " + b.d_.str());
}

QuadraticSurd QuadraticSurd::operator-() const {
  QuadraticSurd r = *this;
  r.p_ = -r.p_;
  r.q_ = -r.q_;
  return r;
}

QuadraticSurd QuadraticSurd::operator+(const QuadraticSurd& o) const {
  Int d = common_radicand(*this, o);
  QuadraticSurd r;
  r.p_ = p_ + o.p_;
  r.q_ = q_ + o.q_;
  r.d_ = d;
  if (r.q_ == 0) r.d_ = 0;
  return r;
}

QuadraticSurd QuadraticSurd::operator-(const QuadraticSurd& o) const { return *this + (-o); }

QuadraticSurd QuadraticSurd::operator*(const QuadraticSurd& o) const {
  Int d = common_radicand(*this, o);
  QuadraticSurd r;
  r.p_ = p_ * o.p_;
  if (q_ != 0 && o.q_ != 0) r.p_ += q_ * o.q_ * Rat(d);
  r.q_ = p_ * o.q_ + q_ * o.p_;
  r.d_ = r.q_ == 0 ? Int(0) : d;
  return r;
}

QuadraticSurd QuadraticSurd::operator/(const QuadraticSurd& o) const {
  check(!o.is_zero(), Err::SingularSystem, "division by zero surd");
  if (o.q_ == 0) {
    QuadraticSurd r = *this;
    r.p_ /= o.p_;
    r.q_ /= o.p_;
    return r;
  }
  // Multiply by the conjugate; o * conj(o) = p^2 - q^2 d is rational and nonzero.
  QuadraticSurd num = *this * o.conj();
  Rat denom = o.p_ * o.p_ - o.q_ * o.q_ * Rat(o.d_);
  num.p_ /= denom;
  num.q_ /= denom;
  return num;
}

QuadraticSurd QuadraticSurd::pow_int(long k) const {
  if (k < 0) return (QuadraticSurd(1) / *this).pow_int(-k);
  QuadraticSurd acc(1), base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool QuadraticSurd::operator==(const QuadraticSurd& o) const {
  return p_ == o.p_ && q_ == o.q_ && d_ == o.d_;
}

Vec2Q Vec2S::to_rational() const {
  check(rational(), Err::MixedRadicands, "vector has irrational components");
  return {x.rat(), y.rat()};
}

Direction2 Direction2::of(const Vec2Q& u) { return of(Vec2S(u)); }

Direction2 Direction2::of(const Vec2S& u) {
  check(!u.is_zero(), Err::SingularSystem, "zero vector has no direction");
  Direction2 dir;
  if (u.rational()) {
    Rat x = u.x.rat(), y = u.y.rat();
    Int scale = boost::multiprecision::lcm(denominator(x), denominator(y));
    Int ix = numerator(x) * (scale / denominator(x));
    Int iy = numerator(y) * (scale / denominator(y));
    Int g = boost::multiprecision::gcd(ix < 0 ? Int(-ix) : ix, iy < 0 ? Int(-iy) : iy);
    dir.v_ = Vec2S(Vec2Q{Rat(ix / g), Rat(iy / g)});
    return dir;
  }
  if (u.x.is_zero()) {
    dir.v_ = Vec2S(QuadraticSurd(0), QuadraticSurd(u.y.sign()));
    return dir;
  }
  QuadraticSurd ax = u.x.sign() < 0 ? -u.x : u.x;
  dir.v_ = Vec2S(u.x / ax, u.y / ax);
  return dir;
}

Direction2 Direction2::opposite() const {
  Direction2 d;
  d.v_ = -v_;
  return d;
}

std::string Direction2::str() const { return "(" + v_.x.str() + ", " + v_.y.str() + ")"; }

Rat parse_rat(const std::string& s) {
  auto bad = [&] { fail(Err::SchemaViolation, "bad rational literal '" + s + "'"); };
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) bad();
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(t));
    Int n(t.substr(0, slash)), d(t.substr(slash + 1));
    if (d == 0) bad();
    return Rat(n, d);
  } catch (const std::exception&) {
    bad();
  }
  return Rat();  // unreachable
}

std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace serre
