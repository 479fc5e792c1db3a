#pragma once

#include <optional>
#include <vector>

#include "serre/mat2z.hpp"

namespace serre {

enum class MatKind {
  Identity,
  MinusIdentity,
  EllipticFiniteOrder,   // det 1, |trace| < 2; order 3, 4 or 6
  ParabolicUnipotent,    // det 1, trace 2, A != I
  ParabolicMinus,        // det 1, trace -2, A != -I
  Reflection,            // det -1; trace 0 is an involution, otherwise a glide with |lambda|>1
  Hyperbolic,            // det 1, trace > 2; lambda > 1
  HyperbolicNegative,    // det 1, trace < -2; lambda < -1
};

const char* mat_kind_name(MatKind k);

struct MatClass {
  MatKind kind;
  int order = 0;  // k with A^k = I when finite, 0 otherwise
  std::optional<QuadraticSurd> lambda;  // dominant eigenvalue when real with |lambda| != 1
};

// Throws NonUnimodular when |det A| != 1.
MatClass classify(const Mat2Z& A);

struct EigenSystem {
  QuadraticSurd lambda1, lambda2;  // |lambda1| >= |lambda2|
  Direction2 dir1, dir2;           // eigendirections for lambda1, lambda2 (diagonalizable case)
  bool jordan = false;             // repeated eigenvalue eps = +-1 with a defective A
  Vec2Q w{}, v{};                  // jordan case: Aw = eps*w (primitive), Av = eps*v + w, v orthogonal to w
};

// Exact eigendata; throws ComplexSpectrum on the elliptic case. For A = +-I the two
// coordinate directions are returned as a conventional basis of eigendirections.
EigenSystem eigensystem(const Mat2Z& A);

// k-fold composite of x -> Ax + btilde (k may be negative; A must be unimodular).
Vec2S orbit(const Mat2Z& A, const Vec2Q& btilde, const Vec2S& x, long k);

// Unique solution of Ax + btilde = x when det(A - I) != 0; the conventional (0,0)
// for the identity map; nullopt otherwise (the parabolic/identity normalization path).
std::optional<Vec2Q> fixed_point(const Mat2Z& A, const Vec2Q& btilde);

// Product of [[0,1],[k_j,1]] in word order.
Mat2Z dloussky(const std::vector<Int>& ks);

}  // namespace serre
