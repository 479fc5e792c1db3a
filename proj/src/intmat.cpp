#include "serre/intmat.hpp"

namespace serre {

const char* mat_kind_name(MatKind k) {
  switch (k) {
    case MatKind::Identity: return "Identity";
    case MatKind::MinusIdentity: return "MinusIdentity";
    case MatKind::EllipticFiniteOrder: return "EllipticFiniteOrder";
    case MatKind::ParabolicUnipotent: return "ParabolicUnipotent";
    case MatKind::ParabolicMinus: return "ParabolicMinus";
    case MatKind::Reflection: return "Reflection";
    case MatKind::Hyperbolic: return "Hyperbolic";
    case MatKind::HyperbolicNegative: return "HyperbolicNegative";
  }
  return "?";
}

namespace {

QuadraticSurd dominant_eigenvalue(const Int& tr, const Int& det) {
  // Roots of x^2 - tr x + det; the one of larger modulus. Radicand tr^2 - 4 det > 0
  // in every caller.
  QuadraticSurd root = QuadraticSurd::sqrt_of(Rat(tr * tr - 4 * det));
  QuadraticSurd half(Rat(1, 2));
  if (tr >= 0) return (QuadraticSurd(Rat(tr)) + root) * half;
  return (QuadraticSurd(Rat(tr)) - root) * half;
}

}  // namespace

MatClass classify(const Mat2Z& A) {
  Int det = A.det();
  check(det == 1 || det == -1, Err::NonUnimodular, "matrix " + A.str() + " has det " + det.str());
  Int tr = A.trace();

  if (det == -1) {
    if (tr == 0) return {MatKind::Reflection, 2, std::nullopt};  // eigenvalues 1, -1
    return {MatKind::Reflection, 0, dominant_eigenvalue(tr, det)};
  }
  if (tr == 2) {
    if (A == Mat2Z::identity()) return {MatKind::Identity, 1, std::nullopt};
    return {MatKind::ParabolicUnipotent, 0, std::nullopt};
  }
  if (tr == -2) {
    if (A == -Mat2Z::identity()) return {MatKind::MinusIdentity, 2, std::nullopt};
    return {MatKind::ParabolicMinus, 0, std::nullopt};
  }
  if (tr > 2) return {MatKind::Hyperbolic, 0, dominant_eigenvalue(tr, det)};
  if (tr < -2) return {MatKind::HyperbolicNegative, 0, dominant_eigenvalue(tr, det)};
  // |tr| < 2, det 1: finite order. tr 0: A^2 = -I; tr 1: A^3 = -I; tr -1: A^3 = I.
  int order = tr == 0 ? 4 : (tr == 1 ? 6 : 3);
  return {MatKind::EllipticFiniteOrder, order, std::nullopt};
}

namespace {

// Primitive integer kernel vector of the rank-one integer matrix M, first nonzero
// coordinate positive.
Vec2Q primitive_kernel(const Mat2Z& M) {
  Vec2Q k;
  if (M.a != 0 || M.b != 0)
    k = {Rat(M.b), Rat(-M.a)};
  else
    k = {Rat(M.d), Rat(-M.c)};
  Direction2 d = Direction2::of(k);
  Vec2Q p = d.vec().to_rational();
  if (p.x < 0 || (p.x == 0 && p.y < 0)) p = -p;
  return p;
}

Direction2 eigendirection(const Mat2Z& A, const QuadraticSurd& mu) {
  // Kernel direction of A - mu I, normalized with leading component positive,
  // i.e. (1, slope) when the slope is irrational.
  Direction2 d;
  if (A.b != 0)
    d = Direction2::of(Vec2S{QuadraticSurd(Rat(A.b)), mu - QuadraticSurd(Rat(A.a))});
  else if (A.c != 0)
    d = Direction2::of(Vec2S{mu - QuadraticSurd(Rat(A.d)), QuadraticSurd(Rat(A.c))});
  else if (mu == QuadraticSurd(Rat(A.a)))
    return Direction2::of(Vec2Q{1, 0});
  else
    return Direction2::of(Vec2Q{0, 1});
  const Vec2S& u = d.vec();
  if (u.x.sign() < 0 || (u.x.sign() == 0 && u.y.sign() < 0)) return d.opposite();
  return d;
}

}  // namespace

EigenSystem eigensystem(const Mat2Z& A) {
  MatClass cls = classify(A);
  EigenSystem es;
  switch (cls.kind) {
    case MatKind::EllipticFiniteOrder:
      fail(Err::ComplexSpectrum, "elliptic matrix " + A.str() + " has no real eigenvalues");
    case MatKind::Identity:
    case MatKind::MinusIdentity: {
      QuadraticSurd e(Rat(cls.kind == MatKind::Identity ? 1 : -1));
      es.lambda1 = es.lambda2 = e;
      es.dir1 = Direction2::of(Vec2Q{1, 0});
      es.dir2 = Direction2::of(Vec2Q{0, 1});
      return es;
    }
    case MatKind::ParabolicUnipotent:
    case MatKind::ParabolicMinus: {
      int eps = cls.kind == MatKind::ParabolicUnipotent ? 1 : -1;
      es.lambda1 = es.lambda2 = QuadraticSurd(Rat(eps));
      es.jordan = true;
      Mat2Z M{A.a - eps, A.b, A.c, A.d - eps};
      es.w = primitive_kernel(M);
      // (A - eps I) maps w-perp onto a nonzero multiple of w; rescale to hit w itself.
      Vec2Q perp{-es.w.y, es.w.x};
      Vec2Q img = M.apply(perp);
      Rat c = es.w.x != 0 ? img.x / es.w.x : img.y / es.w.y;
      check(c != 0, Err::SingularSystem, "defective eigensystem rescale failed");
      es.v = perp * (Rat(1) / c);
      es.dir1 = Direction2::of(es.w);
      es.dir2 = es.dir1;
      return es;
    }
    default: {
      // Involutive reflections have eigenvalues +1, -1 and carry no dominant lambda.
      QuadraticSurd l1 = cls.lambda ? *cls.lambda : QuadraticSurd(Rat(1));
      QuadraticSurd l2 = QuadraticSurd(Rat(A.trace())) - l1;  // sum of roots = trace
      es.lambda1 = l1;
      es.lambda2 = l2;
      es.dir1 = eigendirection(A, l1);
      es.dir2 = eigendirection(A, l2);
      return es;
    }
  }
}

Vec2S orbit(const Mat2Z& A, const Vec2Q& btilde, const Vec2S& x, long k) {
  check(A.unimodular(), Err::NonUnimodular, "orbit of a non-unimodular map");
  Vec2S p = x;
  Vec2S b{QuadraticSurd(btilde.x), QuadraticSurd(btilde.y)};
  if (k >= 0) {
    for (long i = 0; i < k; ++i) p = A.apply(p) + b;
  } else {
    Mat2Z inv = A.inverse();
    for (long i = 0; i > k; --i) p = inv.apply(p - b);
  }
  return p;
}

std::optional<Vec2Q> fixed_point(const Mat2Z& A, const Vec2Q& btilde) {
  Mat2Z M{A.a - 1, A.b, A.c, A.d - 1};
  Int det = M.det();
  if (det != 0) {
    // Cramer solve of (A - I)x = -btilde.
    Rat dx = (-btilde.x) * Rat(M.d) - Rat(M.b) * (-btilde.y);
    Rat dy = Rat(M.a) * (-btilde.y) - (-btilde.x) * Rat(M.c);
    return Vec2Q{dx / Rat(det), dy / Rat(det)};
  }
  if (A == Mat2Z::identity() && btilde.is_zero()) return Vec2Q{0, 0};
  return std::nullopt;
}

Mat2Z dloussky(const std::vector<Int>& ks) {
  Mat2Z M = Mat2Z::identity();
  for (const Int& k : ks) M = M * Mat2Z{0, 1, k, 1};
  return M;
}

}  // namespace serre
