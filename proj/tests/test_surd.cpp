#include <doctest.h>

#include "serre/surd.hpp"
#include "testutil.hpp"

using namespace serre;

TEST_CASE("sqrt reduction extracts square factors") {
  QuadraticSurd s8 = QuadraticSurd::sqrt_of(8);
  CHECK(s8.coef() == Rat(2));
  CHECK(s8.radicand() == 2);

  QuadraticSurd s49 = QuadraticSurd::sqrt_of(Rat(4, 9));
  CHECK(s49.is_rational());
  CHECK(s49.rat() == Rat(2, 3));

  QuadraticSurd s12 = QuadraticSurd(Rat(1), Rat(1, 2), 12);  // 1 + sqrt(12)/2 = 1 + sqrt(3)
  CHECK(s12.radicand() == 3);
  CHECK(s12.coef() == Rat(1));
}

TEST_CASE("large radicands: two big primes fine, hidden square rejected") {
  Int p("1000003"), q("1000033");
  QuadraticSurd ok = QuadraticSurd(Rat(0), Rat(1), p * q);
  CHECK(ok.radicand() == p * q);

  CHECK_THROWS_AS(QuadraticSurd(Rat(0), Rat(1), p * p * p), Error);
  try {
    QuadraticSurd(Rat(0), Rat(1), p * p * p);
  } catch (const Error& e) {
    CHECK(e.code() == Err::RadicandTooLarge);
  }
}

TEST_CASE("field arithmetic in Q(sqrt(5))") {
  QuadraticSurd phi(Rat(1, 2), Rat(1, 2), 5);  // golden ratio
  QuadraticSurd one(1);

  CHECK(phi * phi == phi + one);           // phi^2 = phi + 1
  CHECK(one / phi == phi - one);           // 1/phi = phi - 1
  CHECK(phi * phi.conj() == QuadraticSurd(Rat(-1)));
  CHECK(phi.pow_int(3) == phi * phi * phi);
  CHECK(phi.pow_int(-2) * phi.pow_int(2) == one);
  CHECK((phi - phi).is_zero());
}

TEST_CASE("exact sign near zero") {
  QuadraticSurd a(Rat(3), Rat(-2), 2);  // 3 - 2 sqrt 2 ~ 0.17
  QuadraticSurd b(Rat(2), Rat(-2), 2);  // 2 - 2 sqrt 2 ~ -0.83
  CHECK(a.sign() == 1);
  CHECK(b.sign() == -1);
  CHECK(a > QuadraticSurd(0));
  CHECK(b < QuadraticSurd(0));
  CHECK(doctest::Approx(a.to_double()).epsilon(1e-12) == 3 - 2 * std::sqrt(2.0));
}

TEST_CASE("mixed radicands rejected") {
  QuadraticSurd r2 = QuadraticSurd::sqrt_of(2), r3 = QuadraticSurd::sqrt_of(3);
  CHECK_THROWS_AS(r2 + r3, Error);
  CHECK_THROWS_AS(r2 * r3, Error);
  CHECK((r2 + QuadraticSurd(Rat(1, 7))).radicand() == 2);  // rationals mix freely
}

TEST_CASE("direction canonicalization keeps orientation") {
  CHECK(Direction2::of(Vec2Q{Rat(2), Rat(-4)}).vec().to_rational() == Vec2Q{1, -2});
  CHECK(Direction2::of(Vec2Q{Rat(-2), Rat(4)}).vec().to_rational() == Vec2Q{-1, 2});
  CHECK(Direction2::of(Vec2Q{Rat(1, 3), Rat(1, 2)}).vec().to_rational() == Vec2Q{2, 3});

  QuadraticSurd s5 = QuadraticSurd::sqrt_of(5);
  Vec2S u{QuadraticSurd(2), QuadraticSurd(1) + s5};
  Direction2 d = Direction2::of(u);
  CHECK(d.vec().x == QuadraticSurd(1));
  CHECK(d.vec().y == QuadraticSurd(Rat(1, 2), Rat(1, 2), 5));
  CHECK(Direction2::of(-u) == d.opposite());
  CHECK(Direction2::of(u * QuadraticSurd(7)) == d);
  CHECK(!d.rational());
}

TEST_CASE("rational parsing round-trips") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-6/8") == Rat(-3, 4));
  CHECK(parse_rat("17") == Rat(17));
  CHECK(rat_str(Rat(-3, 4)) == "-3/4");
  CHECK(rat_str(Rat(5)) == "5");
  CHECK_THROWS_AS(parse_rat("1/0"), Error);
  CHECK_THROWS_AS(parse_rat("x"), Error);
}

TEST_CASE("property: sign agrees with double evaluation away from zero") {
  auto g = testutil::rng();
  for (int i = 0; i < 500; ++i) {
    QuadraticSurd s(testutil::rand_rat(g, -20, 20), testutil::rand_rat(g, -20, 20),
                    Int(testutil::rand_ll(g, 2, 40)));
    double v = s.to_double();
    if (std::abs(v) > 1e-9) CHECK(s.sign() == (v > 0 ? 1 : -1));
    CHECK((s - s).sign() == 0);
    if (!s.is_zero()) CHECK(s / s == QuadraticSurd(1));
  }
}
