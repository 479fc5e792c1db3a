#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "serre/model.hpp"

namespace serre {

// Algebraic automorphism z -> (b1 z1^a z2^b, b2 z1^c z2^d); on log-moduli it acts as
// x -> Ax + (log|b1|, log|b2|).
struct AlgAut {
  Mat2Z A;
  std::complex<double> b1{1.0, 0.0};
  std::complex<double> b2{1.0, 0.0};
};

struct AffineMapD {
  Mat2Z A;
  double b1 = 0.0;
  double b2 = 0.0;
};

AffineMapD induced_affine(const AlgAut& aut);

struct PreserveCheck {
  bool preserved = false;
  bool exact = false;  // false means decided by the sampled two-sided membership test
};

// Does x -> Ax + btilde map the log image onto itself?
PreserveCheck preserves(const LogDomainModel& m, const Mat2Z& A, const Vec2S& btilde);
PreserveCheck preserves(const LogDomainModel& m, const AffineMapD& f);

struct CompactOnly {};

struct ParabolicType {
  Rat beta2;
  Vec2Q w, v;
};

struct HyperbolicType {
  Mat2Z A;
  QuadraticSurd lambda;
  Vec2S v, w;
  int t_sign = 1;
};

struct AutClass {
  std::variant<CompactOnly, ParabolicType, HyperbolicType> v;
  const char* tag() const;
};

// Structure of the algebraic automorphism group of the associated Reinhardt domain:
// compact-only, or noncompact of parabolic / hyperbolic affine type.
AutClass classify_aut_structure(const LogDomainModel& m);

// Diverging orbit of an accepted affine self-map; norms are Euclidean, k = 0..60.
struct OrbitWitness {
  Mat2Z A;
  Vec2Q btilde;
  Vec2S x;
  int k0 = 0;  // norms strictly increase from this index on
  std::vector<double> norms;
};

std::optional<OrbitWitness> noncompactness_witness(const LogDomainModel& m);

enum class ParabolicFormCase { IdentityCase, UnipotentCase, ReflectionCase };

const char* parabolic_form_name(ParabolicFormCase c);

struct ParabolicAutForm {
  ParabolicFormCase form = ParabolicFormCase::IdentityCase;
  std::optional<Vec2Q> vtilde;
  double residual = 0.0;  // max |(s'-psi(t')) - (s-psi(t))| over the sample set
};

// Sorts an accepted self-map of a parabolic model into the identity / unipotent /
// reflection trichotomy and verifies the invariance identity exactly.
ParabolicAutForm parabolic_form_check(const LogDomainModel& m, const Mat2Z& A,
                                      const Vec2S& btilde);

}  // namespace serre
