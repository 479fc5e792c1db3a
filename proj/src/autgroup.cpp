#include "serre/autgroup.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "serre/error.hpp"
#include "serre/intmat.hpp"
#include "serre/serreclass.hpp"

namespace serre {

namespace {

double u01(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

struct BasisCoords {
  QuadraticSurd c11, c12, c21, c22, q1, q2;
};

// Coordinates of x -> Ax + tau in the frame (e1, e2): t e1 + s e2 maps to
// (c11 t + c12 s + q1) e1 + (c21 t + c22 s + q2) e2.
BasisCoords basis_coords(const Vec2S& e1, const Vec2S& e2, const Mat2Z& A, const Vec2S& tau) {
  QuadraticSurd den = cross(e1, e2);
  Vec2S f1 = A.apply(e1), f2 = A.apply(e2);
  return {cross(f1, e2) / den, cross(f2, e2) / den, cross(e1, f1) / den,
          cross(e1, f2) / den, cross(tau, e2) / den, cross(e1, tau) / den};
}

Vec2S offset_shift(const Vec2Q& offset, const Mat2Z& A, const Vec2S& btilde) {
  return A.apply(Vec2S(offset)) + btilde - Vec2S(offset);
}

// phi = 0 and phi = a/t carry the same symmetry group: the map must fix the apex
// and permute the edge rays with positive factors (unimodularity then forces the
// scaling products to be 1, so both regions are preserved).
PreserveCheck hyperbolic_exact(const HyperbolicModel& h, const Mat2Z& A, const Vec2S& btilde) {
  Vec2S sv = h.t_sign == 1 ? h.v : -h.v;
  BasisCoords bc = basis_coords(sv, h.w, A, offset_shift(h.offset, A, btilde));
  if (!bc.q1.is_zero() || !bc.q2.is_zero()) return {false, true};
  if (bc.c21.is_zero() && bc.c12.is_zero())
    return {bc.c11.sign() > 0 && bc.c22.sign() > 0, true};
  if (bc.c11.is_zero() && bc.c22.is_zero())
    return {bc.c12.sign() > 0 && bc.c21.sign() > 0, true};
  return {false, true};
}

// Maps preserving {s > psi(t)} for quadratic psi: matching boundary graphs kills
// the s-component of t' (degree), forces p22 = p11^2, and unimodularity then
// pins p11 to +-1; the shear and translation entries follow from psi.
PreserveCheck parabolic_exact(const ParabolicModel& p, const Mat2Z& A, const Vec2S& btilde) {
  BasisCoords bc = basis_coords(Vec2S(p.v), Vec2S(p.w), A, offset_shift(p.offset, A, btilde));
  QuadraticSurd one{1}, half{Rat(1, 2)};
  if (!bc.c12.is_zero() || bc.c22 != one) return {false, true};
  if (bc.c11 != one && bc.c11 != QuadraticSurd(-1)) return {false, true};
  QuadraticSurd b2{p.beta2};
  if (bc.c21 != bc.c11 * bc.q1 / b2 + (one - bc.c11) * half) return {false, true};
  return {bc.q2 == bc.q1 * bc.q1 / (b2 * QuadraticSurd(2)) - bc.q1 * half, true};
}

// Open region of hs inside every halfplane of outer (sups are never attained).
bool region_inside(const std::vector<HalfPlane>& hs, const std::vector<HalfPlane>& outer) {
  for (const HalfPlane& h : outer) {
    SupResult s = sup_linear(hs, h.n);
    if (!s.bounded || s.value > h.c) return false;
  }
  return true;
}

bool poly_preserves(const std::vector<HalfPlane>& hs, const Mat2Z& A, const Vec2Q& btilde) {
  std::vector<HalfPlane> image = transform_halfplanes(hs, A, btilde);
  return region_inside(hs, image) && region_inside(image, hs);
}

double phi_at_one(const PhiSpec& phi) {
  switch (phi.family) {
    case PhiSpec::Family::Zero: return 0.0;
    case PhiSpec::Family::AOverT: return to_double(phi.a);
    case PhiSpec::Family::Table: return to_double(phi.knots.front().second);
  }
  return 0.0;
}

Rat psi_at_zero(const PsiSpec& psi, const Rat& beta2) {
  if (psi.family == PsiSpec::Family::CanonicalQuadratic) return Rat(0);
  return beta2 > 0 ? psi.knots.front().second : psi.knots.back().second;
}

struct AnchorV {
  std::pair<double, double> operator()(const PolyhedralModel& p) const {
    std::optional<Vec2Q> ip = interior_point(p.halfplanes);
    check(ip.has_value(), Err::EmptyPolyhedron, "no interior point");
    return {to_double(ip->x), to_double(ip->y)};
  }
  std::pair<double, double> operator()(const HyperbolicModel& h) const {
    Vec2S sv = h.t_sign == 1 ? h.v : -h.v;
    double s = phi_at_one(h.phi) + 1.0;
    return {to_double(h.offset.x) + sv.x.to_double() + s * h.w.x.to_double(),
            to_double(h.offset.y) + sv.y.to_double() + s * h.w.y.to_double()};
  }
  std::pair<double, double> operator()(const ParabolicModel& p) const {
    double s = to_double(psi_at_zero(p.psi, p.beta2)) + (p.beta2 > 0 ? 1.0 : -1.0);
    return {to_double(p.offset.x) + s * to_double(p.w.x),
            to_double(p.offset.y) + s * to_double(p.w.y)};
  }
  std::pair<double, double> operator()(const Model4& m) const {
    return {-1.0, m.r > 0 ? std::log(to_double(m.r)) / 2 : -1.0};
  }
  std::pair<double, double> operator()(const Model5& m) const {
    return {-1.0, to_double(m.p) / 2 * std::log1p(-std::exp(-2.0)) - 1.0};
  }
  std::pair<double, double> operator()(const Model6&) const { return {0.0, -2.0}; }
  std::pair<double, double> operator()(const BoundedOriginModel& b) const {
    std::optional<Vec2Q> ip = interior_point(b.halfplanes);
    check(ip.has_value(), Err::EmptyPolyhedron, "no interior point");
    return {to_double(ip->x), to_double(ip->y)};
  }
  std::pair<double, double> operator()(const TransformedModel& t) const {
    auto [x, y] = std::visit(AnchorV{}, t.base->v);
    return {to_double(t.U.a) * x + to_double(t.U.b) * y + to_double(t.btilde.x),
            to_double(t.U.c) * x + to_double(t.U.d) * y + to_double(t.btilde.y)};
  }
};

bool flips_near(const LogDomainModel& m, double x, double y, bool val) {
  double eps = 1e-6 * std::max({1.0, std::fabs(x), std::fabs(y)});
  const double dx[4] = {eps, -eps, 0.0, 0.0}, dy[4] = {0.0, 0.0, eps, -eps};
  for (int i = 0; i < 4; ++i)
    if (contains_log(m, x + dx[i], y + dy[i]) != val) return true;
  return false;
}

// Two-sided membership agreement on a deterministic cloud around an interior
// anchor; samples whose membership flips within jitter distance are skipped.
PreserveCheck sampled_preserves(const LogDomainModel& m, const Mat2Z& A, double bx, double by) {
  auto [ax, ay] = std::visit(AnchorV{}, m.v);
  double a = to_double(A.a), b = to_double(A.b), c = to_double(A.c), d = to_double(A.d);
  std::mt19937_64 gen(0x5EEDC0DEull);
  for (int i = 0; i < 10000; ++i) {
    double r = std::pow(4.0, double(i & 3));
    double x = ax + r * (2.0 * u01(gen) - 1.0), y = ay + r * (2.0 * u01(gen) - 1.0);
    double xi = a * x + b * y + bx, yi = c * x + d * y + by;
    bool in0 = contains_log(m, x, y), in1 = contains_log(m, xi, yi);
    if (in0 == in1) continue;
    if (flips_near(m, x, y, in0) || flips_near(m, xi, yi, in1)) continue;
    return {false, false};
  }
  return {true, false};
}

// Apex of a polyhedral region that is exactly a translated open wedge.
std::optional<Vec2Q> wedge_apex(const std::vector<HalfPlane>& hs, const Cone2& cone) {
  if (!cone.dir1().rational() || !cone.dir2().rational()) return std::nullopt;
  Vec2Q d1 = cone.dir1().vec().to_rational(), d2 = cone.dir2().vec().to_rational();
  auto edge_normal = [](const Vec2Q& d, const Vec2Q& other) {
    Vec2Q p{-d.y, d.x};
    if (dot(p, other) > 0) p = -p;
    return p;
  };
  Vec2Q n1 = edge_normal(d1, d2), n2 = edge_normal(d2, d1);
  SupResult s1 = sup_linear(hs, n1), s2 = sup_linear(hs, n2);
  if (!s1.bounded || !s2.bounded) return std::nullopt;
  Rat det = cross(n1, n2);
  Vec2Q apex{Rat((s1.value * n2.y - s2.value * n1.y) / det),
             Rat((n1.x * s2.value - n2.x * s1.value) / det)};
  // The region sits inside this wedge by construction; equality needs the reverse.
  std::vector<HalfPlane> wedge{{n1, s1.value}, {n2, s2.value}};
  return region_inside(wedge, hs) ? std::optional<Vec2Q>(apex) : std::nullopt;
}

}  // namespace

AffineMapD induced_affine(const AlgAut& aut) {
  check(aut.A.unimodular(), Err::NonUnimodular, "monomial exponents must be unimodular");
  double m1 = std::abs(aut.b1), m2 = std::abs(aut.b2);
  check(m1 > 0 && m2 > 0, Err::InvalidModel, "monomial coefficients must be nonzero");
  return {aut.A, std::log(m1), std::log(m2)};
}

PreserveCheck preserves(const LogDomainModel& m, const Mat2Z& A, const Vec2S& btilde) {
  check(A.unimodular(), Err::NonUnimodular, "self-maps must be unimodular");
  if (const auto* t = std::get_if<TransformedModel>(&m.v)) {
    Mat2Z inv = t->U.inverse();
    Mat2Z Ac = inv * A * t->U;
    Vec2S bc = inv.apply(A.apply(Vec2S(t->btilde)) + btilde - Vec2S(t->btilde));
    return preserves(*t->base, Ac, bc);
  }
  Cone2 cone = recession_cone(m);
  if (!(cone.transformed(A) == cone)) return {false, true};
  if (const auto* p = std::get_if<PolyhedralModel>(&m.v)) {
    if (btilde.rational()) return {poly_preserves(p->halfplanes, A, btilde.to_rational()), true};
  } else if (const auto* b = std::get_if<BoundedOriginModel>(&m.v)) {
    if (btilde.rational()) return {poly_preserves(b->halfplanes, A, btilde.to_rational()), true};
  } else if (const auto* h = std::get_if<HyperbolicModel>(&m.v)) {
    if (h->phi.exact()) return hyperbolic_exact(*h, A, btilde);
  } else if (const auto* p2 = std::get_if<ParabolicModel>(&m.v)) {
    if (p2->psi.exact()) return parabolic_exact(*p2, A, btilde);
  }
  return sampled_preserves(m, A, btilde.x.to_double(), btilde.y.to_double());
}

PreserveCheck preserves(const LogDomainModel& m, const AffineMapD& f) {
  check(f.A.unimodular(), Err::NonUnimodular, "self-maps must be unimodular");
  if (f.b1 == 0.0 && f.b2 == 0.0) return preserves(m, f.A, Vec2S{});
  if (const auto* t = std::get_if<TransformedModel>(&m.v)) {
    Mat2Z inv = t->U.inverse();
    double b0x = to_double(t->btilde.x), b0y = to_double(t->btilde.y);
    double sx = to_double(f.A.a) * b0x + to_double(f.A.b) * b0y + f.b1 - b0x;
    double sy = to_double(f.A.c) * b0x + to_double(f.A.d) * b0y + f.b2 - b0y;
    AffineMapD g{inv * f.A * t->U, to_double(inv.a) * sx + to_double(inv.b) * sy,
                 to_double(inv.c) * sx + to_double(inv.d) * sy};
    return preserves(*t->base, g);
  }
  Cone2 cone = recession_cone(m);
  if (!(cone.transformed(f.A) == cone)) return {false, true};
  return sampled_preserves(m, f.A, f.b1, f.b2);
}

const char* AutClass::tag() const {
  struct V {
    const char* operator()(const CompactOnly&) const { return "compact_only"; }
    const char* operator()(const ParabolicType&) const { return "parabolic_type"; }
    const char* operator()(const HyperbolicType&) const { return "hyperbolic_type"; }
  };
  return std::visit(V{}, v);
}

AutClass classify_aut_structure(const LogDomainModel& m) {
  check(is_hyperbolic_domain(m), Err::NotHyperbolicDomain,
        "the automorphism trichotomy needs a hyperbolic domain");
  if (const auto* h = std::get_if<HyperbolicModel>(&m.v))
    return {HyperbolicType{h->A, h->lambda, h->v, h->w, h->t_sign}};
  if (const auto* p = std::get_if<ParabolicModel>(&m.v))
    return {ParabolicType{p->beta2, p->w, p->v}};
  if (const auto* t = std::get_if<TransformedModel>(&m.v)) return classify_aut_structure(*t->base);
  if (const auto* p = std::get_if<PolyhedralModel>(&m.v)) {
    if (axis_count(m) == 0) {
      Cone2 cone = recession_cone(m);
      if (cone.kind() == ConeKind::Wedge && wedge_apex(p->halfplanes, cone)) {
        if (std::optional<Mat2Z> A = find_hyperbolic_matrix(cone)) {
          EigenSystem es = eigensystem(*A);
          bool d1_dominant = cross(es.dir1.vec(), cone.dir1().vec()).is_zero();
          Direction2 on_l = d1_dominant ? cone.dir1() : cone.dir2();
          Direction2 on_m = d1_dominant ? cone.dir2() : cone.dir1();
          int sigma = on_l == es.dir1 ? 1 : -1;
          return {HyperbolicType{*A, es.lambda1, es.dir1.vec(), on_m.vec(), sigma}};
        }
      }
    }
    return {CompactOnly{}};
  }
  return {CompactOnly{}};
}

std::optional<OrbitWitness> noncompactness_witness(const LogDomainModel& m) {
  OrbitWitness wit;
  if (const auto* t = std::get_if<TransformedModel>(&m.v)) {
    std::optional<OrbitWitness> base = noncompactness_witness(*t->base);
    if (!base) return std::nullopt;
    wit.A = t->U * base->A * t->U.inverse();
    wit.btilde = t->U.apply(base->btilde) + t->btilde - wit.A.apply(t->btilde);
    wit.x = t->U.apply(base->x) + Vec2S(t->btilde);
  } else if (const auto* h = std::get_if<HyperbolicModel>(&m.v)) {
    wit.A = h->A;
    wit.btilde = h->offset - h->A.apply(h->offset);
    Vec2S sv = h->t_sign == 1 ? h->v : -h->v;
    Rat s1 = h->phi.family == PhiSpec::Family::Zero
                 ? Rat(0)
                 : (h->phi.family == PhiSpec::Family::AOverT ? h->phi.a
                                                             : h->phi.knots.front().second);
    wit.x = Vec2S(h->offset) + sv + h->w * QuadraticSurd(Rat(s1 + 1));
  } else if (const auto* p = std::get_if<ParabolicModel>(&m.v)) {
    wit.A = p->A;
    wit.btilde = p->v * p->beta2 + p->offset - p->A.apply(p->offset);
    Rat s = psi_at_zero(p->psi, p->beta2) + (p->beta2 > 0 ? Rat(1) : Rat(-1));
    wit.x = Vec2S(p->offset) + Vec2S(p->w) * QuadraticSurd(s);
  } else {
    AutClass cls = classify_aut_structure(m);
    const auto* hy = std::get_if<HyperbolicType>(&cls.v);
    if (!hy) return std::nullopt;
    const auto* poly = std::get_if<PolyhedralModel>(&m.v);
    std::optional<Vec2Q> apex = wedge_apex(poly->halfplanes, recession_cone(m));
    wit.A = hy->A;
    wit.btilde = *apex - hy->A.apply(*apex);
    wit.x = Vec2S(*apex) + hy->v * QuadraticSurd(hy->t_sign) + hy->w;
  }
  std::vector<QuadraticSurd> n2;
  for (long k = 0; k <= 60; ++k) {
    Vec2S y = orbit(wit.A, wit.btilde, wit.x, k);
    n2.push_back(dot(y, y));
    wit.norms.push_back(std::sqrt(n2.back().to_double()));
  }
  int k0 = 0;
  for (int k = 0; k < 60; ++k)
    if (!(n2[k + 1] > n2[k])) k0 = k + 1;
  check(k0 < 60, Err::FormViolation, "witness orbit failed to diverge");
  wit.k0 = k0;
  return wit;
}

const char* parabolic_form_name(ParabolicFormCase c) {
  switch (c) {
    case ParabolicFormCase::IdentityCase: return "identity";
    case ParabolicFormCase::UnipotentCase: return "unipotent";
    case ParabolicFormCase::ReflectionCase: return "reflection";
  }
  return "";
}

ParabolicAutForm parabolic_form_check(const LogDomainModel& m, const Mat2Z& A,
                                      const Vec2S& btilde) {
  const auto* pp = std::get_if<ParabolicModel>(&m.v);
  check(pp != nullptr, Err::UnsupportedModel, "the trichotomy applies to parabolic models");
  const ParabolicModel& p = *pp;
  check(preserves(m, A, btilde).preserved, Err::NotPreserving,
        "the affine map does not preserve the model");
  check(A.apply(p.w) == p.w, Err::FormViolation, "the linear part must fix w");
  Vec2S tau = offset_shift(p.offset, A, btilde);
  BasisCoords bc = basis_coords(Vec2S(p.v), Vec2S(p.w), A, tau);
  check(bc.c11.is_rational() && bc.c21.is_rational(), Err::FormViolation,
        "linear part must be rational in the (v, w) frame");

  ParabolicAutForm out;
  QuadraticSurd one{1};
  if (A == Mat2Z::identity() && tau.is_zero()) {
    out.form = ParabolicFormCase::IdentityCase;
  } else if (bc.c11 == one) {
    Rat p21 = bc.c21.rat();
    check(p21 != 0, Err::FormViolation, "a nontrivial shear needs a v-to-w component");
    Vec2Q vt = p.v * Rat(Rat(1) / p21);
    check(A.apply(vt) == vt + p.w, Err::FormViolation, "unipotent witness failed");
    out.form = ParabolicFormCase::UnipotentCase;
    out.vtilde = vt;
  } else if (bc.c11 == QuadraticSurd(-1)) {
    Rat p21 = bc.c21.rat();
    Vec2Q vt = p.v - p.w * Rat(p21 / 2);
    check(A.apply(vt) == -vt, Err::FormViolation, "reflection witness failed");
    out.form = ParabolicFormCase::ReflectionCase;
    out.vtilde = vt;
  } else {
    fail(Err::FormViolation, "no trichotomy case matches the linear part");
  }

  // The invariance identity s' - psi(t') = s - psi(t) must hold exactly.
  std::mt19937_64 gen(0xF0F0F0F0ull);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rat t(long(gen() % 401) - 200, long(gen() % 8) + 1);
    Rat ds(long(gen() % 32) + 1, long(gen() % 8) + 1);
    Rat s = psi_eval_exact(p.psi, p.beta2, t) + (p.beta2 > 0 ? ds : Rat(-ds));
    QuadraticSurd t2 = bc.c11 * QuadraticSurd(t) + bc.q1;
    QuadraticSurd s2 = bc.c21 * QuadraticSurd(t) + QuadraticSurd(s) + bc.q2;
    QuadraticSurd res = (s2 - psi_eval_exact(p.psi, p.beta2, t2)) -
                        QuadraticSurd(Rat(s - psi_eval_exact(p.psi, p.beta2, t)));
    worst = std::max(worst, std::fabs(res.to_double()));
    check(res.is_zero(), Err::FormViolation, "invariance identity violated");
  }
  out.residual = worst;
  return out;
}

}  // namespace serre
