#pragma once

#include <array>
#include <complex>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "serre/intmat.hpp"
#include "serre/polyhedra.hpp"

namespace serre {

// Boundary profile for the lambda-invariant models, defined for t > 0 and
// extended everywhere by phi(lambda * t) = phi(t) / lambda.
struct PhiSpec {
  enum class Family { Zero, AOverT, Table };
  Family family = Family::Zero;
  Rat a;                                   // AOverT: phi(t) = a / t, a >= 0
  std::vector<std::pair<Rat, Rat>> knots;  // Table: (t, phi(t)) on [1, lambda), first t = 1
  QuadraticSurd lambda;                    // the model's lambda; required for Table

  static PhiSpec zero() { return {}; }
  static PhiSpec a_over_t(const Rat& a);
  static PhiSpec table(std::vector<std::pair<Rat, Rat>> knots);
  bool exact() const { return family != Family::Table; }
};

// Boundary profile for the shear-invariant models; psi(t + beta2) = psi(t) + t,
// convex when beta2 > 0 and concave when beta2 < 0.
struct PsiSpec {
  enum class Family { CanonicalQuadratic, Table };
  Family family = Family::CanonicalQuadratic;
  std::vector<std::pair<Rat, Rat>> knots;  // Table: on [0, beta2) or (beta2, 0], one knot at t = 0

  static PsiSpec canonical() { return {}; }
  static PsiSpec table(std::vector<std::pair<Rat, Rat>> knots);
  bool exact() const { return family != Family::Table; }
};

void validate_phi(const PhiSpec& phi, const QuadraticSurd& lambda);
void validate_psi(const PsiSpec& psi, const Rat& beta2);

double phi_eval(const PhiSpec& phi, double t);
QuadraticSurd phi_eval_exact(const PhiSpec& phi, const QuadraticSurd& t);
double psi_eval(const PsiSpec& psi, const Rat& beta2, double t);
Rat psi_eval_exact(const PsiSpec& psi, const Rat& beta2, const Rat& t);
QuadraticSurd psi_eval_exact(const PsiSpec& psi, const Rat& beta2, const QuadraticSurd& t);

// Log image offset + {t v + s w : t_sign * t > 0, s > phi(t_sign * t)} with
// A v = lambda v, A w = (1/lambda) w, lambda > 1.
struct HyperbolicModel {
  Mat2Z A;
  QuadraticSurd lambda;
  Vec2S v, w;
  int t_sign = 1;
  PhiSpec phi;
  Vec2Q offset;
};

// Log image offset + {t v + s w : s > psi(t)} (beta2 > 0) or {s < psi(t)}
// (beta2 < 0) with A w = w, A v = v + w; invariant under x -> Ax + beta2 v.
struct ParabolicModel {
  Mat2Z A;
  Vec2Q v, w;
  Rat beta2;
  PsiSpec psi;
  Vec2Q offset;
};

struct PolyhedralModel {
  std::vector<HalfPlane> halfplanes;
  std::array<bool, 2> axis_flags{false, false};
};

struct Model4 {
  Rat r;  // disk times annulus P(r,1), 0 <= r < 1
};

struct Model5 {
  Rat p;  // 0 < |z2| < (1 - |z1|^2)^{p/2}, p > 0
};

struct Model6 {};  // 0 < |z2| < exp(-|z1|^2)

// Bounded Reinhardt domain containing the origin: every normal is componentwise
// >= 0 and both coordinates are bounded above on the log image.
struct BoundedOriginModel {
  std::vector<HalfPlane> halfplanes;
};

struct LogDomainModel;

// Image of a named model under the log-affine map x -> U x + btilde; used when a
// monomial change of coordinates leaves the named family.
struct TransformedModel {
  std::shared_ptr<const LogDomainModel> base;
  Mat2Z U;
  Vec2Q btilde;
};

struct LogDomainModel {
  std::variant<PolyhedralModel, HyperbolicModel, ParabolicModel, Model4, Model5, Model6,
               BoundedOriginModel, TransformedModel>
      v;

  const char* kind() const;
};

LogDomainModel make_polyhedral(std::vector<HalfPlane> hs, std::array<bool, 2> axis_flags = {false, false});
LogDomainModel make_hyperbolic(const Mat2Z& A, PhiSpec phi, int t_sign, const Vec2Q& offset = {});
LogDomainModel make_parabolic(const Mat2Z& A, const Rat& beta2, PsiSpec psi, const Vec2Q& offset = {});
LogDomainModel make_model4(const Rat& r);
LogDomainModel make_model5(const Rat& p);
LogDomainModel make_model6();
LogDomainModel make_bounded_origin(std::vector<HalfPlane> hs);

Cone2 recession_cone(const LogDomainModel& m);
bool is_hyperbolic_domain(const LogDomainModel& m);
int axis_count(const LogDomainModel& m);
std::array<bool, 2> met_axes(const LogDomainModel& m);

bool contains_log(const LogDomainModel& m, double x1, double x2);
bool contains_log_exact(const LogDomainModel& m, const Vec2S& x);
bool contains(const LogDomainModel& m, const std::complex<double>& z1,
              const std::complex<double>& z2);

LogDomainModel apply_monomial(const LogDomainModel& m, const Mat2Z& U, const Vec2Q& btilde);

}  // namespace serre
