#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "serre/model.hpp"

namespace serre {

using Cx = std::complex<double>;

struct Z2 {
  Cx z1, z2;
};

inline constexpr std::uint64_t kStehleSeed = 0xC0EFFEE;

// Explicit exhaustion functions attached to the models with noncompact
// automorphism groups.  rho(t) = -1/t promotes an invariant that tends to 0
// at the boundary into one that tends to +infinity.
struct U4 {
  double r = 0;  // max{-log(1-|z1|^2), -log dist(z2, C \ P(r,1))}
};
struct U5 {
  double p = 1;  // max{log|z2| - (p/2) log(1-|z1|^2), -log|z2|}
};
struct UTilde6 {};  // log|z2| + |z1|^2, the invariant of the exp-profile model
struct U6 {};       // max{rho(utilde), log+ |z1|}
struct UParabolic {
  // max{rho(-depth), log|z1|, -log|z1|} in the frame (v, w); requires w
  // parallel to e2 with the deep direction pointing at z2 = 0
  PsiSpec psi;
  Rat beta2;
  Vec2Q v, w, offset;

  // frame data converted to double once; rational-to-double conversion is far
  // too slow for the inner loops of the grid and sampling checks
  struct Frame {
    double vx, vy, wx, wy, ox, oy, b2;
  };
  UParabolic(PsiSpec psi_, const Rat& beta2_, const Vec2Q& v_, const Vec2Q& w_,
             const Vec2Q& offset_);
  const Frame& frame() const { return frame_; }

 private:
  Frame frame_;
};

struct ExhaustionFn {
  std::variant<U4, U5, UTilde6, U6, UParabolic> v;
  const char* name() const;
};

// The function matching the model's own boundary data; throws
// IncompatibleExhaustion when the model has none or is not in normal position.
ExhaustionFn exhaustion_for(const LogDomainModel& m);

double rho(double t);

bool in_domain(const ExhaustionFn& fn, const Z2& z, double margin = 0.0);
std::vector<double> eval_branches(const ExhaustionFn& fn, const Z2& z);
double eval_u(const ExhaustionFn& fn, const Z2& z);  // throws OutsideDomain

Z2 sample_domain_point(const ExhaustionFn& fn, std::mt19937_64& rng);

struct GridSpec {
  int n_abs1 = 20, n_arg1 = 20, n_abs2 = 20, n_arg2 = 20;
  double inset = 0.08;  // fractional distance kept from each boundary stratum
};

struct PshReport {
  double min_estimate = 0;
  bool pass = false;
  long points = 0;   // stencils evaluated
  long skipped = 0;  // grid points inside a max-branch kink margin
};

// Four-point finite-difference Laplacian along 8 complex lines, normalized so
// -|z1|^2 scores -1 in the z1 direction; branch list is the max decomposition.
PshReport fd_min_hessian(const std::vector<std::function<double(const Z2&)>>& branches,
                         const std::vector<Z2>& pts, double h, double tol);
PshReport check_psh(const ExhaustionFn& fn, const LogDomainModel& m, const GridSpec& gs,
                    double h = 1e-3, double tol = 1e-6);

// Self-maps of the named models: a Mobius factor in z1 paired with the forced
// z2 factor; invert is the annulus swap of the disk x annulus model.
struct ModelAut {
  Cx alpha{1.0, 0.0}, beta{0.0, 0.0}, gamma{1.0, 0.0};
  bool invert = false;
};
// Monomial self-map recorded at the log level, for the shear-invariant models.
struct AlgebraicAut {
  Mat2Z A;
  Vec2Q btilde;
};
using AutSpec = std::variant<ModelAut, AlgebraicAut>;

Z2 apply_model_aut(const ExhaustionFn& fn, const ModelAut& f, const Z2& z);

struct BoundReport {
  double sup_estimate = 0;  // empirical sup of u(F(z)) - u(z)
  double sup_abs = 0;       // empirical sup of |u(F(z)) - u(z)|
  bool monotone_stable = false;
  std::array<double, 3> stage_sups{};
  std::array<long, 3> stage_counts{};
  std::uint64_t seed = 0;
};
BoundReport check_bounded_above(const ExhaustionFn& fn, const LogDomainModel& m,
                                const AutSpec& aut, long n_samples = 100000,
                                std::uint64_t seed = kStehleSeed);

struct ExhaustionReport {
  bool pass = false;
  std::vector<double> levels;
  std::vector<double> sublevel_max_norm;   // per level, max |z| over the sampled sublevel set
  std::vector<double> sublevel_min_slack;  // per level, min boundary slack over the sublevel set
  std::vector<std::string> strata;         // boundary-approach families driven to the boundary
  std::vector<bool> stratum_diverges;
  std::vector<std::string> excluded_strata;  // boundary pieces the function does not exhaust
  std::uint64_t seed = 0;
};
ExhaustionReport check_exhaustion(const ExhaustionFn& fn, const LogDomainModel& m,
                                  const std::vector<double>& levels, long n_samples = 4000,
                                  std::uint64_t seed = kStehleSeed);

}  // namespace serre
