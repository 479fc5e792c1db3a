#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "doctest.h"
#include "serre/intmat.hpp"
#include "serre/model.hpp"
#include "serre/polyhedra.hpp"
#include "testutil.hpp"

using namespace serre;

namespace {

template <typename F>
std::optional<Err> thrown_code(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

HalfPlane hp(long long nx, long long ny, const Rat& c) {
  return {Vec2Q{Rat(nx), Rat(ny)}, c};
}

const Mat2Z kFib{2, 1, 1, 1};          // lambda = (3+sqrt5)/2
const Mat2Z kShear{1, 0, 2, 1};        // unipotent; w = (0,1), v = (1/2,0)
const Direction2 kW = Direction2::of(Vec2Q{0, 1});
const Direction2 kMinusE1 = Direction2::of(Vec2Q{-1, 0});
const Direction2 kMinusE2 = Direction2::of(Vec2Q{0, -1});

std::vector<HalfPlane> quadrant() { return {hp(1, 0, 1), hp(0, 1, 2)}; }
std::vector<HalfPlane> slab_ray() { return {hp(0, 1, 1), hp(0, -1, 1), hp(1, 0, 0)}; }
std::vector<HalfPlane> strip() { return {hp(0, 1, 1), hp(0, -1, 1)}; }
std::vector<HalfPlane> triangle() { return {hp(1, 0, 1), hp(0, 1, 1), hp(-1, -1, 1)}; }
std::vector<HalfPlane> origin_box() { return {hp(1, 0, 0), hp(0, 1, 0), hp(1, 1, -1)}; }

// PL interpolation of 1/t on [1, lambda), which satisfies the scaling law exactly.
PhiSpec inv_t_table() {
  return PhiSpec::table({{Rat(1), Rat(1)},
                         {Rat(3, 2), Rat(2, 3)},
                         {Rat(2), Rat(1, 2)},
                         {Rat(5, 2), Rat(2, 5)}});
}

// PL interpolation of t(t-1)/2 on [0,1) at quarter-integer knots.
PsiSpec pl_psi_pos() {
  return PsiSpec::table(
      {{Rat(0), Rat(0)}, {Rat(1, 4), Rat(-3, 32)}, {Rat(1, 2), Rat(-1, 8)}, {Rat(3, 4), Rat(-3, 32)}});
}

// PL interpolation of -t(t+1)/2 on (-1, 0] at quarter-integer knots.
PsiSpec pl_psi_neg() {
  return PsiSpec::table(
      {{Rat(-3, 4), Rat(3, 32)}, {Rat(-1, 2), Rat(1, 8)}, {Rat(-1, 4), Rat(3, 32)}, {Rat(0), Rat(0)}});
}

Mat2Z rand_unimodular(std::mt19937_64& g) {
  Mat2Z U = Mat2Z::identity();
  int len = int(testutil::rand_ll(g, 1, 3));
  for (int i = 0; i < len; ++i) {
    Int k(testutil::rand_ll(g, -3, 3));
    U = testutil::rand_ll(g, 0, 1) ? U * Mat2Z{1, k, 0, 1} : U * Mat2Z{1, 0, k, 1};
  }
  if (testutil::rand_ll(g, 0, 1)) U = U * Mat2Z{0, 1, 1, 0};
  if (testutil::rand_ll(g, 0, 1)) U = -U;
  return U;
}

}  // namespace

TEST_CASE("fourier-motzkin projection, feasibility, suprema") {
  Interval1 p = project_onto({hp(1, 0, 2), hp(0, 1, 3), hp(1, 1, 4)}, Vec2Q{1, 0});
  CHECK(p.feasible);
  CHECK(!p.lo);
  REQUIRE(p.hi.has_value());
  CHECK(*p.hi == 2);

  CHECK(!feasible({hp(1, 0, 0), hp(-1, 0, -1)}));
  CHECK(feasible(triangle()));

  p = project_onto({hp(-1, 0, 0), hp(1, 0, 5), hp(0, 1, 0), hp(1, 1, 3)}, Vec2Q{1, 0});
  CHECK(p.feasible);
  REQUIRE(p.lo.has_value());
  REQUIRE(p.hi.has_value());
  CHECK(*p.lo == 0);
  CHECK(*p.hi == 5);

  p = project_onto({hp(1, 0, 0), hp(0, 1, 0)}, Vec2Q{1, 1});
  CHECK(p.feasible);
  CHECK(!p.lo);
  REQUIRE(p.hi.has_value());
  CHECK(*p.hi == 0);

  SupResult s = sup_linear({hp(1, 1, 4), hp(1, -1, 2)}, Vec2Q{1, 0});
  CHECK(s.feasible);
  CHECK(s.bounded);
  CHECK(s.value == 3);

  s = sup_linear({hp(1, 0, 0)}, Vec2Q{0, 1});
  CHECK(s.feasible);
  CHECK(!s.bounded);

  s = sup_linear({hp(1, 0, 0), hp(-1, 0, -1)}, Vec2Q{1, 0});
  CHECK(!s.feasible);
}

TEST_CASE("interior_point satisfies its system") {
  auto g = testutil::rng();
  for (int iter = 0; iter < 100; ++iter) {
    Vec2Q p{testutil::rand_rat(g, -5, 5), testutil::rand_rat(g, -5, 5)};
    std::vector<HalfPlane> hs;
    int k = int(testutil::rand_ll(g, 1, 5));
    for (int i = 0; i < k; ++i) {
      Vec2Q n{testutil::rand_rat(g, -3, 3), testutil::rand_rat(g, -3, 3)};
      if (n.is_zero()) n.x = 1;
      hs.push_back({n, dot(n, p) + testutil::rand_rat(g, 0, 2) + Rat(1, 7)});
    }
    REQUIRE(feasible(hs));
    auto q = interior_point(hs);
    REQUIRE(q.has_value());
    for (const HalfPlane& h : hs) CHECK(dot(h.n, *q) < h.c);
  }
  CHECK(!interior_point({hp(1, 0, 0), hp(-1, 0, 0)}).has_value());
}

TEST_CASE("sup_linear is exact at constructed vertices") {
  auto g = testutil::rng();
  for (int iter = 0; iter < 60; ++iter) {
    Vec2Q n1, n2;
    do {
      n1 = {testutil::rand_rat(g, -3, 3), testutil::rand_rat(g, -3, 3)};
      n2 = {testutil::rand_rat(g, -3, 3), testutil::rand_rat(g, -3, 3)};
    } while (cross(n1, n2) == 0);
    Rat c1 = testutil::rand_rat(g, -4, 4), c2 = testutil::rand_rat(g, -4, 4);
    Rat a = testutil::rand_rat(g, 1, 3), b = testutil::rand_rat(g, 1, 3);
    std::vector<HalfPlane> hs{{n1, c1}, {n2, c2}};
    SupResult s = sup_linear(hs, n1 * a + n2 * b);
    CHECK(s.feasible);
    CHECK(s.bounded);
    CHECK(s.value == a * c1 + b * c2);
    s = sup_linear(hs, -n1);
    CHECK(s.feasible);
    CHECK(!s.bounded);
  }
}

TEST_CASE("cone_from_halfplanes pinned shapes") {
  CHECK(cone_from_halfplanes({}) == Cone2::plane());
  CHECK(cone_from_halfplanes(quadrant()) == Cone2::wedge(kMinusE1, kMinusE2));
  CHECK(cone_from_halfplanes({hp(1, 2, 3)}) == Cone2::half_plane(Direction2::of(Vec2Q{-1, -2})));
  CHECK(cone_from_halfplanes(strip()) == Cone2::line(Direction2::of(Vec2Q{1, 0})));
  CHECK(cone_from_halfplanes(triangle()) == Cone2::zero());
  CHECK(cone_from_halfplanes(slab_ray()) == Cone2::ray(kMinusE1));
  CHECK(cone_from_halfplanes({hp(1, 0, 1), hp(1, 0, 5), hp(0, 1, 2)}) ==
        Cone2::wedge(kMinusE1, kMinusE2));
  CHECK(cone_from_halfplanes({hp(1, 0, 1), hp(-1, 0, 1), hp(0, 1, 1), hp(0, -1, 1)}) ==
        Cone2::zero());
}

TEST_CASE("cone_from_halfplanes matches the defining normal test") {
  auto g = testutil::rng();
  for (int iter = 0; iter < 150; ++iter) {
    std::vector<HalfPlane> hs;
    int k = int(testutil::rand_ll(g, 1, 4));
    for (int i = 0; i < k; ++i) {
      Vec2Q n{Rat(testutil::rand_ll(g, -3, 3)), Rat(testutil::rand_ll(g, -3, 3))};
      if (n.is_zero()) continue;
      hs.push_back({n, Rat(testutil::rand_ll(g, -5, 5))});
    }
    if (hs.empty()) continue;
    Cone2 c = cone_from_halfplanes(hs);
    Mat2Z U = rand_unimodular(g);
    Cone2 ct = c.transformed(U);
    for (long long i = -3; i <= 3; ++i)
      for (long long j = -3; j <= 3; ++j) {
        Vec2Q u{Rat(i), Rat(j)};
        bool expect = true;
        for (const HalfPlane& h : hs)
          if (dot(h.n, u) > 0) expect = false;
        CHECK(c.contains(Vec2S(u)) == expect);
        CHECK(ct.contains(U.apply(Vec2S(u))) == expect);
      }
  }
}

TEST_CASE("phi profiles: pinned values and scaling law") {
  PhiSpec fl = PhiSpec::a_over_t(Rat(3));
  CHECK(phi_eval(fl, 6.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(phi_eval_exact(fl, QuadraticSurd(6)) == QuadraticSurd(Rat(1, 2)));
  CHECK(thrown_code([&] { phi_eval(fl, 0.0); }) == Err::DomainSignViolation);
  CHECK(thrown_code([&] { phi_eval_exact(fl, QuadraticSurd(-1)); }) == Err::DomainSignViolation);
  CHECK(phi_eval(PhiSpec::zero(), 17.25) == 0.0);

  QuadraticSurd lam(Rat(3, 2), Rat(1, 2), 5);
  // Exact scaling for the closed forms.
  auto g = testutil::rng();
  for (int i = 0; i < 100; ++i) {
    QuadraticSurd t = QuadraticSurd(testutil::rand_rat(g, 1, 40)) + QuadraticSurd(Rat(1, 3));
    CHECK(phi_eval_exact(fl, t * lam) * lam == phi_eval_exact(fl, t));
  }

  LogDomainModel m = make_hyperbolic(kFib, inv_t_table(), 1, {});
  const PhiSpec& tab = std::get<HyperbolicModel>(m.v).phi;
  CHECK(tab.lambda == lam);
  CHECK(phi_eval(tab, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(phi_eval(tab, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(phi_eval(tab, 1.75) == doctest::Approx(7.0 / 12).epsilon(1e-14));

  double lamd = lam.to_double();
  for (int i = 0; i < 100; ++i) {
    double t0 = 1.0 + 1.6 * testutil::rand_unit(g);
    int k = int(testutil::rand_ll(g, -6, 6));
    double lhs = phi_eval(tab, t0 * std::pow(lamd, k));
    double rhs = phi_eval(tab, t0) * std::pow(lamd, -k);
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
  }
  for (const PhiSpec& phi : {fl, tab})
    for (int i = 0; i < 1000; ++i) {
      double t1 = 0.05 + 20 * testutil::rand_unit(g);
      double t2 = 0.05 + 20 * testutil::rand_unit(g);
      CHECK(phi_eval(phi, (t1 + t2) / 2) <=
            (phi_eval(phi, t1) + phi_eval(phi, t2)) / 2 + 1e-12);
    }
}

TEST_CASE("psi profiles: pinned values and shear law") {
  PsiSpec can = PsiSpec::canonical();
  CHECK(psi_eval_exact(can, Rat(2), Rat(3)) == Rat(3, 4));
  CHECK(psi_eval(can, Rat(2), 3.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(psi_eval_exact(can, Rat(2), QuadraticSurd::sqrt_of(Rat(3))) ==
        QuadraticSurd(Rat(3, 4), Rat(-1, 2), 3));

  PsiSpec tp = pl_psi_pos(), tn = pl_psi_neg();
  validate_psi(tp, Rat(1));
  validate_psi(tn, Rat(-1));
  CHECK(psi_eval_exact(tp, Rat(1), Rat(9, 4)) == Rat(45, 32));
  CHECK(psi_eval_exact(tn, Rat(-1), Rat(-7, 4)) == Rat(-21, 32));
  // The knots sample the canonical parabola on a quarter-integer grid, so the
  // PL table agrees with it at grid points after any number of reductions.
  CHECK(psi_eval_exact(tn, Rat(-1), Rat(-7, 4)) == psi_eval_exact(can, Rat(-1), Rat(-7, 4)));
  CHECK(psi_eval_exact(tp, Rat(1), QuadraticSurd::sqrt_of(Rat(2))) ==
        QuadraticSurd(Rat(-15, 16), Rat(7, 8), 2));

  auto g = testutil::rng();
  for (int i = 0; i < 100; ++i) {
    Rat t = testutil::rand_rat(g, -20, 20);
    for (const Rat& b2 : {Rat(2), Rat(-3, 2)})
      CHECK(psi_eval_exact(can, b2, t + b2) == psi_eval_exact(can, b2, t) + t);
    CHECK(psi_eval_exact(tp, Rat(1), t + 1) == psi_eval_exact(tp, Rat(1), t) + t);
    CHECK(psi_eval_exact(tn, Rat(-1), t - 1) == psi_eval_exact(tn, Rat(-1), t) + t);
  }
  for (int i = 0; i < 1000; ++i) {
    double t1 = -40 + 80 * testutil::rand_unit(g);
    double t2 = -40 + 80 * testutil::rand_unit(g);
    double mid = (t1 + t2) / 2;
    CHECK(psi_eval(tp, Rat(1), mid) <= (psi_eval(tp, Rat(1), t1) + psi_eval(tp, Rat(1), t2)) / 2 + 1e-9);
    CHECK(psi_eval(tn, Rat(-1), mid) >=
          (psi_eval(tn, Rat(-1), t1) + psi_eval(tn, Rat(-1), t2)) / 2 - 1e-9);
    double lhs = psi_eval(tp, Rat(1), t1 + 1), rhs = psi_eval(tp, Rat(1), t1) + t1;
    CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST_CASE("profile validation rejects broken tables") {
  auto hyp = [](PhiSpec p) { return make_hyperbolic(kFib, std::move(p), 1, {}); };
  CHECK(thrown_code([&] { hyp(PhiSpec::a_over_t(Rat(-1))); }) == Err::InvalidModel);
  CHECK(thrown_code([&] { hyp(PhiSpec::table({{Rat(3, 2), Rat(1)}})); }) == Err::InvalidModel);
  CHECK(thrown_code([&] { hyp(PhiSpec::table({{Rat(1), Rat(1)}, {Rat(3), Rat(1, 3)}})); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([&] { hyp(PhiSpec::table({{Rat(1), Rat(-1)}})); }) == Err::InvalidModel);
  CHECK(thrown_code([&] {
          hyp(PhiSpec::table({{Rat(1), Rat(1)}, {Rat(3, 2), Rat(3, 4)}, {Rat(2), Rat(0)}}));
        }) == Err::InvalidModel);
  CHECK(thrown_code([&] { hyp(PhiSpec::table({{Rat(1), Rat(1)}, {Rat(2), Rat(1, 5)}})); }) ==
        Err::InvalidModel);
  CHECK(!thrown_code([&] { hyp(inv_t_table()); }));

  auto par = [](const Rat& b2, PsiSpec p) { return make_parabolic(kShear, b2, std::move(p)); };
  CHECK(thrown_code([&] { par(Rat(0), PsiSpec::canonical()); }) == Err::InvalidModel);
  CHECK(thrown_code([&] { par(Rat(1), PsiSpec::table({})); }) == Err::InvalidModel);
  CHECK(thrown_code([&] { par(Rat(1), PsiSpec::table({{Rat(1, 2), Rat(0)}})); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([&] { par(Rat(-1), PsiSpec::table({{Rat(-1, 2), Rat(1, 8)}})); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([&] {
          par(Rat(1), PsiSpec::table({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 4)}}));
        }) == Err::InvalidModel);
  CHECK(thrown_code([&] {
          par(Rat(1), PsiSpec::table({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(-1)}}));
        }) == Err::InvalidModel);
  CHECK(!thrown_code([&] { par(Rat(1), pl_psi_pos()); }));
  CHECK(!thrown_code([&] { par(Rat(-1), pl_psi_neg()); }));
}

TEST_CASE("model constructors validate their data") {
  CHECK(thrown_code([] { make_hyperbolic(Mat2Z{0, -1, 1, 0}, PhiSpec::zero(), 1, {}); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([] { make_hyperbolic(Mat2Z{-2, -1, -1, -1}, PhiSpec::zero(), 1, {}); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([] { make_hyperbolic(Mat2Z{1, 1, 0, 1}, PhiSpec::zero(), 1, {}); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([] { make_hyperbolic(kFib, PhiSpec::zero(), 2, {}); }) == Err::InvalidModel);
  CHECK(thrown_code([] { make_parabolic(Mat2Z::identity(), Rat(1), PsiSpec::canonical()); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([] { make_parabolic(Mat2Z{-1, 1, 0, -1}, Rat(1), PsiSpec::canonical()); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([] { make_parabolic(kFib, Rat(1), PsiSpec::canonical()); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([] { make_model4(Rat(-1, 2)); }) == Err::InvalidModel);
  CHECK(thrown_code([] { make_model4(Rat(1)); }) == Err::InvalidModel);
  CHECK(thrown_code([] { make_model5(Rat(0)); }) == Err::InvalidModel);
  CHECK(thrown_code([] { make_polyhedral({hp(1, 0, 0), hp(-1, 0, -1)}); }) ==
        Err::EmptyPolyhedron);
  CHECK(thrown_code([] { make_bounded_origin({hp(-1, 0, 1), hp(1, 1, 0)}); }) ==
        Err::InvalidModel);
  CHECK(thrown_code([] { make_bounded_origin({hp(1, 1, 0)}); }) == Err::UnboundedModel);
  CHECK(thrown_code([] { make_bounded_origin({hp(1, 0, 0), hp(-1, 0, -1)}); }) ==
        Err::EmptyPolyhedron);

  // The parabolic factory reads the eigenstructure off the matrix.
  LogDomainModel mp = make_parabolic(kShear, Rat(1), PsiSpec::canonical());
  const ParabolicModel& p = std::get<ParabolicModel>(mp.v);
  CHECK(p.w == Vec2Q{Rat(0), Rat(1)});
  CHECK(p.v == Vec2Q{Rat(1, 2), Rat(0)});

  LogDomainModel mh = make_hyperbolic(kFib, PhiSpec::zero(), 1, {});
  const HyperbolicModel& h = std::get<HyperbolicModel>(mh.v);
  CHECK(h.lambda == QuadraticSurd(Rat(3, 2), Rat(1, 2), 5));
  CHECK(h.v == Vec2S{QuadraticSurd(1), QuadraticSurd(Rat(-1, 2), Rat(1, 2), 5)});
  CHECK(h.w == Vec2S{QuadraticSurd(1), QuadraticSurd(Rat(-1, 2), Rat(-1, 2), 5)});
}

TEST_CASE("recession cones pinned") {
  CHECK(recession_cone(make_polyhedral(quadrant())) == Cone2::wedge(kMinusE1, kMinusE2));
  CHECK(recession_cone(make_polyhedral(slab_ray())) == Cone2::ray(kMinusE1));
  CHECK(recession_cone(make_model6()) == Cone2::wedge(kMinusE1, kMinusE2));
  CHECK(recession_cone(make_model5(Rat(1))) == Cone2::wedge(kMinusE1, kMinusE2));
  CHECK(recession_cone(make_model4(Rat(1, 4))) == Cone2::ray(kMinusE1));
  CHECK(recession_cone(make_model4(Rat(0))) == Cone2::wedge(kMinusE1, kMinusE2));
  CHECK(recession_cone(make_bounded_origin(origin_box())) == Cone2::wedge(kMinusE1, kMinusE2));

  CHECK(recession_cone(make_parabolic(kShear, Rat(-1), PsiSpec::canonical())) ==
        Cone2::ray(kMinusE2));
  CHECK(recession_cone(make_parabolic(kShear, Rat(1), PsiSpec::canonical())) == Cone2::ray(kW));

  EigenSystem es = eigensystem(kFib);
  CHECK(recession_cone(make_hyperbolic(kFib, PhiSpec::zero(), 1, {})) ==
        Cone2::wedge(es.dir1, es.dir2));
  CHECK(recession_cone(make_hyperbolic(kFib, PhiSpec::a_over_t(Rat(1)), -1, {})) ==
        Cone2::wedge(es.dir1.opposite(), es.dir2));

  Mat2Z swap{0, 1, 1, 0};
  LogDomainModel m4t = apply_monomial(make_model4(Rat(1, 4)), swap, {});
  CHECK(std::string(m4t.kind()) == "transformed");
  CHECK(recession_cone(m4t) == Cone2::ray(kMinusE2));
}

namespace {

struct ShootCase {
  LogDomainModel model;
  double x1, x2;
};

std::vector<ShootCase> shoot_cases() {
  const double s5 = std::sqrt(5.0);
  std::vector<ShootCase> cs;
  cs.push_back({make_polyhedral(quadrant()), 0, 0});
  cs.push_back({make_polyhedral(slab_ray()), -1, 0});
  cs.push_back({make_polyhedral({hp(1, 2, 3)}), 0, 0});
  cs.push_back({make_polyhedral(strip()), 0, 0});
  cs.push_back({make_polyhedral(triangle()), 0, 0});
  cs.push_back({make_hyperbolic(kFib, PhiSpec::a_over_t(Rat(1)), 1, {}), 3.0,
                (s5 - 1) / 2 - (1 + s5)});
  cs.push_back({make_hyperbolic(kFib, PhiSpec::a_over_t(Rat(1)), -1, {}), 1.0,
                -(s5 - 1) / 2 - (1 + s5)});
  cs.push_back({make_hyperbolic(kFib, inv_t_table(), 1, {}), 3.0, (s5 - 1) / 2 - (1 + s5)});
  cs.push_back({make_parabolic(kShear, Rat(1), PsiSpec::canonical()), 0, 1});
  cs.push_back({make_parabolic(kShear, Rat(-1), PsiSpec::canonical()), 0, -1});
  cs.push_back({make_parabolic(kShear, Rat(1), pl_psi_pos()), 0, 1});
  cs.push_back({make_model4(Rat(1, 4)), -1, -0.5});
  cs.push_back({make_model4(Rat(0)), -1, -1});
  cs.push_back({make_model5(Rat(1)), -1, -3});
  cs.push_back({make_model6(), 0, -2});
  cs.push_back({make_bounded_origin(origin_box()), -2, -2});
  cs.push_back({apply_monomial(make_model4(Rat(1, 4)), Mat2Z{0, 1, 1, 0}, {}), -0.5, -1});
  return cs;
}

}  // namespace

TEST_CASE("recession cone matches ray shooting") {
  auto g = testutil::rng();
  for (const ShootCase& c : shoot_cases()) {
    REQUIRE(contains_log(c.model, c.x1, c.x2));
    Cone2 cone = recession_cone(c.model);
    std::vector<std::pair<double, double>> bases{{c.x1, c.x2}};
    for (int tries = 0; tries < 40 && bases.size() < 4; ++tries) {
      double dx = 0.4 * (testutil::rand_unit(g) - 0.5), dy = 0.4 * (testutil::rand_unit(g) - 0.5);
      if (contains_log(c.model, c.x1 + dx, c.x2 + dy)) bases.push_back({c.x1 + dx, c.x2 + dy});
    }
    CHECK(bases.size() >= 2);
    for (auto [bx, by] : bases)
      for (long long i = -2; i <= 2; ++i)
        for (long long j = -2; j <= 2; ++j) {
          if (i == 0 && j == 0) continue;
          bool expect = cone.contains(Vec2S(Vec2Q{Rat(i), Rat(j)}));
          bool stays = true;
          for (double tau : {1.0, 1e3, 1e6})
            stays = stays && contains_log(c.model, bx + tau * double(i), by + tau * double(j));
          CHECK(expect == stays);
        }
  }
}

TEST_CASE("axis bookkeeping") {
  CHECK(axis_count(make_hyperbolic(kFib, PhiSpec::zero(), 1, {})) == 0);
  CHECK(axis_count(make_parabolic(kShear, Rat(1), PsiSpec::canonical())) == 0);
  CHECK(axis_count(make_model4(Rat(1, 4))) == 1);
  CHECK(axis_count(make_model5(Rat(2))) == 1);
  CHECK(axis_count(make_model6()) == 1);
  CHECK(axis_count(make_bounded_origin(origin_box())) == 2);
  CHECK(met_axes(make_model6()) == std::array<bool, 2>{true, false});

  CHECK(axis_count(make_polyhedral(quadrant(), {true, true})) == 2);
  CHECK(axis_count(make_polyhedral(quadrant(), {false, false})) == 0);
  CHECK(axis_count(make_polyhedral(slab_ray(), {true, false})) == 1);
  CHECK(thrown_code([] { axis_count(make_polyhedral(slab_ray(), {false, true})); }) ==
        Err::InconsistentAxisFlags);

  LogDomainModel m4t = apply_monomial(make_model4(Rat(1, 4)), Mat2Z{0, 1, 1, 0}, {});
  CHECK(met_axes(m4t) == std::array<bool, 2>{false, true});
  CHECK(axis_count(m4t) == 1);
  CHECK(is_hyperbolic_domain(m4t));

  CHECK(is_hyperbolic_domain(make_polyhedral(quadrant())));
  CHECK(!is_hyperbolic_domain(make_polyhedral(strip())));
  CHECK(!is_hyperbolic_domain(make_polyhedral({hp(1, 2, 3)})));
  CHECK(is_hyperbolic_domain(make_model6()));
  CHECK(is_hyperbolic_domain(make_hyperbolic(kFib, PhiSpec::zero(), 1, {})));
}

TEST_CASE("log membership pinned") {
  LogDomainModel mh = make_hyperbolic(kFib, PhiSpec::a_over_t(Rat(1)), 1, {});
  const HyperbolicModel& h = std::get<HyperbolicModel>(mh.v);
  CHECK(contains_log_exact(mh, h.v + h.w * QuadraticSurd(2)));
  CHECK(!contains_log_exact(mh, h.v + h.w));
  CHECK(!contains_log_exact(mh, -h.v + h.w * QuadraticSurd(2)));
  CHECK(contains_log(mh, 3.0, (std::sqrt(5.0) - 1) / 2 - (1 + std::sqrt(5.0))));
  CHECK(!contains_log(mh, 2.0, -1.0));  // t = s = 1 sits on the boundary

  LogDomainModel mflip = make_hyperbolic(kFib, PhiSpec::a_over_t(Rat(1)), -1, {});
  CHECK(contains_log_exact(mflip, -h.v + h.w * QuadraticSurd(2)));
  CHECK(!contains_log_exact(mflip, h.v + h.w * QuadraticSurd(2)));

  LogDomainModel moff = make_hyperbolic(kFib, PhiSpec::a_over_t(Rat(1)), 1, Vec2Q{Rat(10), Rat(0)});
  CHECK(contains_log_exact(moff, h.v + h.w * QuadraticSurd(2) + Vec2S(Vec2Q{Rat(10), Rat(0)})));
  CHECK(!contains_log_exact(moff, h.v + h.w * QuadraticSurd(2)));

  LogDomainModel mp = make_parabolic(kShear, Rat(1), PsiSpec::canonical());
  CHECK(contains_log(mp, 0.0, 1.0));
  CHECK(!contains_log(mp, 0.0, -0.5));
  CHECK(contains_log_exact(mp, Vec2S(Vec2Q{Rat(1), Rat(2)})));   // t=2, s=2 > psi(2)=1
  CHECK(!contains_log_exact(mp, Vec2S(Vec2Q{Rat(1), Rat(1)})));  // boundary
  LogDomainModel mpn = make_parabolic(kShear, Rat(-1), PsiSpec::canonical());
  CHECK(contains_log(mpn, 0.0, -1.0));
  CHECK(!contains_log(mpn, 0.0, 1.0));

  LogDomainModel mpt = make_parabolic(kShear, Rat(1), pl_psi_pos());
  CHECK(contains_log_exact(mpt, Vec2S(Vec2Q{Rat(9, 8), Rat(23, 16)})));
  CHECK(!contains_log_exact(mpt, Vec2S(Vec2Q{Rat(9, 8), Rat(11, 8)})));

  LogDomainModel m4 = make_model4(Rat(1, 4));
  CHECK(contains_log(m4, -1, -1));
  CHECK(!contains_log(m4, -1, -1.5));
  CHECK(!contains_log(m4, 0.0, -1));
  CHECK(!contains_log(m4, -1, 0.0));
  CHECK(contains_log(make_model4(Rat(0)), -1, -100));

  CHECK(contains_log(make_model5(Rat(2)), -1, -0.2));
  CHECK(!contains_log(make_model5(Rat(2)), -1, -0.1));
  CHECK(contains_log(make_model6(), 0, -1.01));
  CHECK(!contains_log(make_model6(), 0, -0.99));
  CHECK(contains_log(make_model6(), -10, -0.1));

  LogDomainModel bo = make_bounded_origin(origin_box());
  CHECK(contains_log(bo, -2, -2));
  CHECK(!contains_log(bo, -0.4, -0.4));
  CHECK(contains_log_exact(bo, Vec2S(Vec2Q{Rat(-2), Rat(-2)})));

  LogDomainModel quad = make_polyhedral(quadrant());
  CHECK(contains_log_exact(quad, Vec2S{-QuadraticSurd::sqrt_of(Rat(2)), QuadraticSurd(-1)}));

  LogDomainModel m4t = apply_monomial(make_model4(Rat(1, 4)), Mat2Z{0, 1, 1, 0}, {});
  CHECK(contains_log(m4t, -0.5, -1));
  CHECK(!contains_log(m4t, -1.5, -1));
  CHECK(thrown_code([&] { contains_log_exact(m4t, Vec2S(Vec2Q{Rat(-1), Rat(-1)})); }) ==
        Err::UnsupportedModel);
  CHECK(thrown_code([&] { contains_log_exact(make_model5(Rat(1)), Vec2S(Vec2Q{Rat(-1), Rat(-1)})); }) ==
        Err::UnsupportedModel);
}

TEST_CASE("monomial images") {
  CHECK(thrown_code([] { apply_monomial(make_model6(), Mat2Z{2, 0, 0, 1}, {}); }) ==
        Err::NonUnimodular);

  LogDomainModel mh = make_hyperbolic(kFib, PhiSpec::a_over_t(Rat(1)), 1, {});
  const HyperbolicModel& h = std::get<HyperbolicModel>(mh.v);

  LogDomainModel mneg = apply_monomial(mh, -Mat2Z::identity(), {});
  const HyperbolicModel& hn = std::get<HyperbolicModel>(mneg.v);
  CHECK(hn.t_sign == -1);
  CHECK(hn.A == kFib);
  CHECK(hn.v == h.v);
  CHECK(hn.w == -h.w);
  CHECK(recession_cone(mneg) == recession_cone(mh).transformed(-Mat2Z::identity()));

  LogDomainModel mself = apply_monomial(mh, kFib, {});
  const HyperbolicModel& hs = std::get<HyperbolicModel>(mself.v);
  CHECK(hs.t_sign == 1);
  CHECK(Direction2::of(hs.v) == Direction2::of(h.v));
  CHECK(recession_cone(mself) == recession_cone(mh));

  for (long long ti = -2; ti <= 3; ++ti)
    for (long long si = -2; si <= 3; ++si) {
      Rat t(2 * ti + 1, 2), s(2 * si + 1, 2);
      Vec2S x = h.v * QuadraticSurd(t) + h.w * QuadraticSurd(s);
      CHECK(contains_log_exact(mself, x) == contains_log_exact(mh, x));
      CHECK(contains_log_exact(mneg, -x) == contains_log_exact(mh, x));
    }

  LogDomainModel msh = apply_monomial(mh, Mat2Z::identity(), Vec2Q{Rat(3), Rat(-2)});
  CHECK(recession_cone(msh) == recession_cone(mh));
  CHECK(contains_log_exact(msh, h.v + h.w * QuadraticSurd(2) + Vec2S(Vec2Q{Rat(3), Rat(-2)})));
  CHECK(!contains_log_exact(msh, h.v + h.w * QuadraticSurd(2)));

  // The shear-model invariance map x -> Ax + beta2 * v fixes the domain as a set.
  LogDomainModel mp = make_parabolic(kShear, Rat(1), PsiSpec::canonical());
  const ParabolicModel& p = std::get<ParabolicModel>(mp.v);
  LogDomainModel minv = apply_monomial(mp, kShear, p.v * p.beta2);
  for (long long ti = -3; ti <= 3; ++ti)
    for (long long si = -3; si <= 3; ++si) {
      Rat t(ti), s = Rat(t * (t - 1) / 2) + Rat(2 * si + 1, 8);
      Vec2S x = Vec2S(p.v) * QuadraticSurd(t) + Vec2S(p.w) * QuadraticSurd(s);
      CHECK(contains_log_exact(minv, x) == contains_log_exact(mp, x));
    }

  Mat2Z swap{0, 1, 1, 0};
  LogDomainModel mq = make_polyhedral(quadrant(), {true, false});
  LogDomainModel mqs = apply_monomial(mq, swap, {});
  CHECK(met_axes(mqs) == std::array<bool, 2>{false, true});
  CHECK(contains_log(mqs, 1.5, 0.5));
  CHECK(!contains_log(mqs, 0.5, 1.5));
  CHECK(thrown_code([&] { apply_monomial(mq, Mat2Z{1, 0, 1, 1}, {}); }) == Err::UnsupportedImage);
  CHECK(!thrown_code([&] { apply_monomial(make_polyhedral(quadrant()), Mat2Z{1, 0, 1, 1}, {}); }));

  LogDomainModel m4 = make_model4(Rat(1, 4));
  CHECK(std::string(apply_monomial(m4, Mat2Z::identity(), {}).kind()) == "model4");
  CHECK(std::string(apply_monomial(m4, Mat2Z{1, 1, 0, 1}, {}).kind()) == "transformed");
  CHECK(thrown_code([&] { apply_monomial(m4, Mat2Z{1, 0, 1, 1}, {}); }) == Err::UnsupportedImage);
  LogDomainModel m4u = apply_monomial(m4, Mat2Z{1, 1, 0, 1}, {});
  CHECK(contains_log(m4u, -1.5, -0.5));  // preimage (-1, -0.5)

  LogDomainModel bo = make_bounded_origin(origin_box());
  CHECK(std::string(apply_monomial(bo, swap, {}).kind()) == "bounded_origin");
  CHECK(thrown_code([&] { apply_monomial(bo, Mat2Z{1, 1, 0, 1}, {}); }) == Err::UnsupportedImage);

  LogDomainModel m4t = apply_monomial(m4, swap, {});
  CHECK(std::string(apply_monomial(m4t, swap, {}).kind()) == "model4");
  LogDomainModel m4shift = apply_monomial(m4, Mat2Z::identity(), Vec2Q{Rat(1), Rat(2)});
  CHECK(std::string(m4shift.kind()) == "transformed");
  CHECK(std::string(apply_monomial(m4shift, Mat2Z::identity(), Vec2Q{Rat(-1), Rat(-2)}).kind()) ==
        "model4");
}

TEST_CASE("Reinhardt membership over complex points") {
  using C = std::complex<double>;
  LogDomainModel m4 = make_model4(Rat(1, 4));
  CHECK(contains(m4, C(0), C(0.5)));
  CHECK(!contains(m4, C(0), C(0.2)));
  CHECK(!contains(m4, C(0), C(1.0)));
  CHECK(thrown_code([&] { contains(m4, C(0.5), C(0)); }) == Err::AxisViolation);
  CHECK(thrown_code([&] { contains(m4, C(0), C(0)); }) == Err::AxisViolation);

  LogDomainModel mh = make_hyperbolic(kFib, PhiSpec::zero(), 1, {});
  CHECK(thrown_code([&] { contains(mh, C(0), C(1)); }) == Err::AxisViolation);

  LogDomainModel bo = make_bounded_origin(origin_box());
  CHECK(contains(bo, C(0), C(0)));
  CHECK(contains(bo, C(0), C(0.5)));
  CHECK(!contains(bo, C(0), C(2)));
  CHECK(contains(bo, C(0.1), C(0.1)));

  LogDomainModel m4t = apply_monomial(m4, Mat2Z{0, 1, 1, 0}, {});
  CHECK(contains(m4t, C(0.5), C(0)));
  CHECK(!contains(m4t, C(0.2), C(0)));
  CHECK(thrown_code([&] { contains(m4t, C(0), C(0.5)); }) == Err::AxisViolation);

  auto g = testutil::rng();
  std::vector<LogDomainModel> models;
  models.push_back(make_model5(Rat(1)));
  models.push_back(make_hyperbolic(kFib, PhiSpec::a_over_t(Rat(1)), 1, {}));
  models.push_back(make_polyhedral(quadrant()));
  for (int i = 0; i < 1000; ++i) {
    const LogDomainModel& m = models[size_t(testutil::rand_ll(g, 0, 2))];
    double r1 = 3 * testutil::rand_unit(g) + 1e-3, r2 = 3 * testutil::rand_unit(g) + 1e-3;
    double a1 = 6.283 * testutil::rand_unit(g), a2 = 6.283 * testutil::rand_unit(g);
    CHECK(contains(m, std::polar(r1, a1), std::polar(r2, a2)) == contains(m, C(r1), C(r2)));
  }
}
