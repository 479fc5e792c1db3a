#pragma once

#include <complex>
#include <string>
#include <vector>

#include "serre/model.hpp"

namespace serre {

using Cx = std::complex<double>;

// Inputs of the disc-bundle counterexample over a hyperbolic-type domain: the
// matrix with eigenvalue lambda > 1, the eigenframe, the boundary profile, the
// dominating constant a with a/t > phi(t), and the branch sign of Im zeta1.
struct CLParams {
  Mat2Z A;
  QuadraticSurd lambda;
  double lambda_d = 0;
  Vec2S v, w;
  PhiSpec phi;
  double a = 1;       // signed with the branch: a > 0 for sign +1, a < 0 for sign -1
  double margin = 0;  // |a| - sup t phi(t) over the fundamental interval
  int sign = 1;
};

CLParams cl_params_for(const LogDomainModel& m);

// |a| with a/t > phi(t) for t > 0: sup of t phi(t) over [1, lambda) plus 1.
// t phi(t) is invariant under t -> lambda t, so the fundamental interval caps it.
double choose_a(const PhiSpec& phi);

// log i (R + zeta) / (R - zeta), principal branch: 0 < Im < pi on the closed
// disk and Re vanishes at 0.
Cx f_R(double R, const Cx& zeta);

// Holomorphic function on the disk recovered from its prescribed boundary
// imaginary part at n roots of unity, normalized by Re(0) = 0. Interior values
// come from the truncated Taylor series; tail records the spectral energy
// fraction above mode n/4.
struct DiskFn {
  int n = 0;
  std::vector<double> boundary_im;
  std::vector<Cx> coeff;
  double tail = 0;

  Cx eval(const Cx& z) const;
};

DiskFn conjugate_extend(std::vector<double> boundary_im);

// Trapezoidal Schwarz-kernel quadrature over the stored boundary samples; the
// independent evaluation path used to cross-check DiskFn::eval.
Cx schwarz_eval(const DiskFn& fn, const Cx& z);

// Central-difference Cauchy-Riemann residual of eval on a fixed 32-point grid.
double cauchy_riemann_residual(const DiskFn& fn, double h = 1e-5);

struct GHPair {
  DiskFn g, h;
};

// Boundary data Im g = sign e^{Re f_R}, Im h = |a| e^{-Re f_R} at N roots of
// unity, extended holomorphically. Throws ResolutionTooLow when the spectral
// tail is too heavy to certify interior evaluation at the scan radius.
GHPair solve_gh(const CLParams& p, double R, int N);

struct MembershipReport {
  bool pass = false;
  double min_margin = 0;
  Cx argmin;
  long points = 0;
};

// Asserts phi(Im g) - Im h < 0 on a polar grid (interior radii up to the scan
// radius by series, the boundary row by exact data); throws MarginViolation at
// the first non-positive margin.
MembershipReport membership_scan(const CLParams& p, double R, const GHPair& gh,
                                 int n_radial = 16, int n_angular = 128);

struct ReductionReport {
  bool pass = false;
  long samples = 0;
  double worst_slack = 0;       // smallest distance inside any target interval
  double gz_residual = 0;       // worst mismatch of the explicit group action
  bool gz_consistent = false;
};

// With k = floor(Re f_R / log lambda) checks, at every boundary sample, that
// sign lambda^{-k} Im g lands in [1, lambda), lambda^k Im h in (|a|/lambda, |a|],
// and the reduced first coordinate in [0,1) x (0, pi/log lambda); endpoints get
// `slack` leeway. Also replays the reduction as the explicit group element
// (zeta - k, A^{-k} b) at interior points and compares.
ReductionReport reduction_check(const CLParams& p, double R, const GHPair& gh,
                                double slack = 1e-9);

struct BlowupRow {
  double R = 0;
  double im_g0 = 0;
  double im_h0 = 0;
  double boundary_integral = 0;  // unnormalized: integral of e^{Re f_R} over the circle
  bool reduction_pass = false;
};

struct BlowupTable {
  std::vector<BlowupRow> rows;
  bool monotone = false;  // sign * im_g0 and im_h0 strictly increase along the list
  std::string summary;
};

// Center values Im g_R(0), Im h_R(0) along R decreasing toward 1: the boundary
// proxies stay in the fixed compact intervals while the center diverges, which
// is the contradiction against a bounded exhaustion.
BlowupTable blowup_table(const CLParams& p, const std::vector<double>& R_list, int N = 4096);

struct BoundaryRow {
  double theta = 0;
  double re_f = 0, im_f = 0;
  double im_g = 0, im_h = 0;
  long k = 0;
  double red_g = 0, red_h = 0;    // lambda^{-k} Im g, lambda^k Im h
  double red1_re = 0, red1_im = 0;  // reduced first coordinate f/log lambda - k
};

std::vector<BoundaryRow> boundary_rows(const CLParams& p, double R, int n);

}  // namespace serre
