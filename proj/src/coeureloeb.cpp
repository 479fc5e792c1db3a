#include "serre/coeureloeb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "serre/error.hpp"

namespace serre {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanRadius = 0.95;  // interior scans stay inside this radius
constexpr double kEvalTol = 1e-10;    // certified series truncation error at kScanRadius

// in-place radix-2 decimation-in-time transform, X[k] = sum_j x[j] e^{-2 pi i jk/n}
void fft(std::vector<Cx>& x) {
  const size_t n = x.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const Cx wl = std::polar(1.0, -2 * kPi / static_cast<double>(len));
    for (size_t i = 0; i < n; i += len) {
      Cx w(1);
      for (size_t j = 0; j < len / 2; ++j, w *= wl) {
        Cx u = x[i + j], v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
      }
    }
  }
}

// sup of t phi(t) over the fundamental interval [1, lambda); invariant under
// t -> lambda t, so this is the global sup over t > 0
double phi_sup(const PhiSpec& phi) {
  switch (phi.family) {
    case PhiSpec::Family::Zero:
      return 0;
    case PhiSpec::Family::AOverT:
      return to_double(phi.a);
    case PhiSpec::Family::Table: {
      const double lam = phi.lambda.to_double();
      check(lam > 1, Err::InvalidModel, "table profile carries no lambda");
      const int n = 4096;
      double sup = 0;
      for (int i = 0; i < n; ++i) {
        double t = 1 + (lam - 1) * i / n;
        sup = std::max(sup, t * phi_eval(phi, t));
      }
      return sup;
    }
  }
  fail(Err::InvalidModel, "unknown phi family");
}

std::vector<double> boundary_re_f(double R, int n) {
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) u[j] = f_R(R, std::polar(1.0, 2 * kPi * j / n)).real();
  return u;
}

}  // namespace

double choose_a(const PhiSpec& phi) { return phi_sup(phi) + 1; }

CLParams cl_params_for(const LogDomainModel& m) {
  const auto* h = std::get_if<HyperbolicModel>(&m.v);
  check(h != nullptr, Err::UnsupportedModel,
        "counterexample parameters exist only for the hyperbolic-type model");
  CLParams p;
  p.A = h->A;
  p.lambda = h->lambda;
  p.lambda_d = h->lambda.to_double();
  p.v = h->v;
  p.w = h->w;
  p.phi = h->phi;
  p.sign = h->t_sign;
  const double sup = phi_sup(h->phi);
  p.a = p.sign * (sup + 1);
  p.margin = std::abs(p.a) - sup;
  return p;
}

Cx f_R(double R, const Cx& zeta) {
  check(R > 1, Err::InvalidModel, "f_R requires R > 1");
  return std::log(Cx(0, 1) * (R + zeta) / (R - zeta));
}

Cx DiskFn::eval(const Cx& z) const {
  Cx acc(0);
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * z + *it;
  return acc;
}

DiskFn conjugate_extend(std::vector<double> boundary_im) {
  const int n = static_cast<int>(boundary_im.size());
  check(n >= 8 && (n & (n - 1)) == 0, Err::InvalidModel,
        "boundary sample count must be a power of two >= 8");
  std::vector<Cx> x(boundary_im.begin(), boundary_im.end());
  fft(x);

  DiskFn fn;
  fn.n = n;
  fn.boundary_im = std::move(boundary_im);
  fn.coeff.assign(n / 2, Cx(0));
  // m(theta) = sum c_k e^{ik theta}, c_{-k} = conj(c_k): Im(i c0 + sum_{k>=1} 2i c_k z^k)
  // restricted to |z| = 1 reproduces m, and the value at 0 has real part 0
  fn.coeff[0] = Cx(0, x[0].real() / n);
  for (int k = 1; k < n / 2; ++k) fn.coeff[k] = Cx(0, 2.0 / n) * x[k];

  double total = 0, high = 0;
  for (int k = 1; k <= n / 2; ++k) {
    double e = std::norm(x[k]) / (static_cast<double>(n) * n);
    total += e;
    if (k > n / 4) high += e;
  }
  fn.tail = total > 0 ? std::sqrt(high / total) : 0.0;
  return fn;
}

Cx schwarz_eval(const DiskFn& fn, const Cx& z) {
  Cx s(0);
  for (int j = 0; j < fn.n; ++j) {
    Cx zj = std::polar(1.0, 2 * kPi * j / fn.n);
    s += fn.boundary_im[j] * (zj + z) / (zj - z);
  }
  return Cx(0, 1) * s / static_cast<double>(fn.n);
}

double cauchy_riemann_residual(const DiskFn& fn, double h) {
  double worst = 0;
  for (double r : {0.25, 0.55}) {
    for (int j = 0; j < 16; ++j) {
      Cx z = std::polar(r, 2 * kPi * j / 16 + 0.1);
      Cx dx = (fn.eval(z + Cx(h, 0)) - fn.eval(z - Cx(h, 0))) / (2 * h);
      Cx dy = (fn.eval(z + Cx(0, h)) - fn.eval(z - Cx(0, h))) / (2 * h);
      worst = std::max(worst, std::abs(dy - Cx(0, 1) * dx));
    }
  }
  return worst;
}

GHPair solve_gh(const CLParams& p, double R, int N) {
  const std::vector<double> u = boundary_re_f(R, N);
  std::vector<double> gim(N), him(N);
  const double amag = std::abs(p.a);
  for (int j = 0; j < N; ++j) {
    gim[j] = p.sign * std::exp(u[j]);
    him[j] = amag * std::exp(-u[j]);
  }
  GHPair out{conjugate_extend(std::move(gim)), conjugate_extend(std::move(him))};
  const double att = std::pow(kScanRadius, N / 2);
  const double worst = std::max(out.g.tail, out.h.tail) * att;
  if (worst > kEvalTol) {
    std::ostringstream os;
    os << "spectral tail too heavy at R = " << R << ", N = " << N
       << ": truncation bound " << worst << " exceeds " << kEvalTol
       << " at radius " << kScanRadius;
    fail(Err::ResolutionTooLow, os.str());
  }
  return out;
}

MembershipReport membership_scan(const CLParams& p, double R, const GHPair& gh,
                                 int n_radial, int n_angular) {
  check(n_radial >= 1 && n_angular >= 1, Err::InvalidModel, "empty membership grid");
  MembershipReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();

  auto probe = [&](const Cx& z, double img, double imh) {
    const double t = p.sign * img;
    if (!(t > 0)) {
      std::ostringstream os;
      os << "Im zeta1 left its half-plane at z = (" << z.real() << ", " << z.imag()
         << "): sign * Im g = " << t;
      fail(Err::MarginViolation, os.str());
    }
    const double margin = imh - phi_eval(p.phi, t);
    if (!(margin > 0)) {
      std::ostringstream os;
      os << "phi(Im g) - Im h >= 0 at z = (" << z.real() << ", " << z.imag()
         << "): margin = " << margin;
      fail(Err::MarginViolation, os.str());
    }
    if (margin < rep.min_margin) {
      rep.min_margin = margin;
      rep.argmin = z;
    }
    ++rep.points;
  };

  probe(Cx(0), gh.g.eval(Cx(0)).imag(), gh.h.eval(Cx(0)).imag());
  for (int i = 1; i <= n_radial; ++i) {
    const double r = kScanRadius * i / n_radial;
    for (int j = 0; j < n_angular; ++j) {
      Cx z = std::polar(r, 2 * kPi * j / n_angular);
      probe(z, gh.g.eval(z).imag(), gh.h.eval(z).imag());
    }
  }
  // boundary row from the exact data; the truncated series is not certified at |z| = 1
  const double amag = std::abs(p.a);
  for (int j = 0; j < n_angular; ++j) {
    Cx z = std::polar(1.0, 2 * kPi * j / n_angular);
    const double u = f_R(R, z).real();
    probe(z, p.sign * std::exp(u), amag * std::exp(-u));
  }
  rep.pass = true;
  return rep;
}

ReductionReport reduction_check(const CLParams& p, double R, const GHPair& gh, double slack) {
  check(gh.g.n == gh.h.n && gh.g.n > 0, Err::InvalidModel, "mismatched disk functions");
  const double lam = p.lambda_d;
  check(lam > 1, Err::InvalidModel, "reduction requires lambda > 1");
  const double loglam = std::log(lam);
  const double amag = std::abs(p.a);

  ReductionReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  const int n = gh.g.n;

  auto require = [&](double dist, double theta, const char* what, double value) {
    rep.worst_slack = std::min(rep.worst_slack, dist);
    if (dist < -slack) {
      std::ostringstream os;
      os << what << " violated at theta = " << theta << ": value " << value
         << " misses its interval by " << -dist;
      fail(Err::IntervalViolation, os.str());
    }
  };

  for (int j = 0; j < n; ++j) {
    const double theta = 2 * kPi * j / n;
    const Cx f = f_R(R, std::polar(1.0, theta));
    const double u = f.real();
    const long k = static_cast<long>(std::floor(u / loglam));
    const double lamk = p.lambda.pow_int(k).to_double();

    // sign lambda^{-k} Im g = e^{u - k log lambda} lands in [1, lambda)
    const double red_g = std::exp(u) / lamk;
    require(red_g - 1, theta, "lambda^{-k} Im g in [1, lambda)", red_g);
    require(lam - red_g, theta, "lambda^{-k} Im g in [1, lambda)", red_g);

    // lambda^{k} Im h = |a| e^{-(u - k log lambda)} lands in (|a|/lambda, |a|]
    const double red_h = amag * std::exp(-u) * lamk;
    require(red_h - amag / lam, theta, "lambda^{k} Im h in (|a|/lambda, |a|]", red_h);
    require(amag - red_h, theta, "lambda^{k} Im h in (|a|/lambda, |a|]", red_h);

    // reduced first coordinate f/log lambda - k in [0,1) x (0, pi/log lambda)
    const double re1 = u / loglam - static_cast<double>(k);
    const double im1 = f.imag() / loglam;
    require(re1, theta, "Re of the reduced first coordinate in [0,1)", re1);
    require(1 - re1, theta, "Re of the reduced first coordinate in [0,1)", re1);
    require(im1, theta, "Im of the reduced first coordinate in (0, pi/log lambda)", im1);
    require(kPi / loglam - im1, theta, "Im of the reduced first coordinate in (0, pi/log lambda)", im1);
    ++rep.samples;
  }

  // replay the reduction as the explicit group element (zeta - k, A^{-k} b),
  // b = g v + h w: the matrix action must match scaling the frame coordinates
  const double vx = p.v.x.to_double(), vy = p.v.y.to_double();
  const double wx = p.w.x.to_double(), wy = p.w.y.to_double();
  for (int j = 0; j < 16; ++j) {
    const Cx z = std::polar(0.9, 2 * kPi * j / 16);
    const double u = f_R(R, z).real();
    const long k = static_cast<long>(std::floor(u / loglam));
    const Cx g0 = gh.g.eval(z), h0 = gh.h.eval(z);

    const Mat2Z M = p.A.pow(-k);
    const Cx bx = g0 * vx + h0 * wx, by = g0 * vy + h0 * wy;
    const Cx mx = to_double(M.a) * bx + to_double(M.b) * by;
    const Cx my = to_double(M.c) * bx + to_double(M.d) * by;

    const double lamk = p.lambda.pow_int(k).to_double();
    const Cx ex = (g0 / lamk) * vx + (h0 * lamk) * wx;
    const Cx ey = (g0 / lamk) * vy + (h0 * lamk) * wy;
    rep.gz_residual = std::max({rep.gz_residual, std::abs(mx - ex), std::abs(my - ey)});
  }
  rep.gz_consistent = rep.gz_residual <= 1e-9;
  if (!rep.gz_consistent) {
    std::ostringstream os;
    os << "group-action replay disagrees with the eigenframe scaling: residual "
       << rep.gz_residual;
    fail(Err::IntervalViolation, os.str());
  }
  rep.pass = true;
  return rep;
}

BlowupTable blowup_table(const CLParams& p, const std::vector<double>& R_list, int N) {
  check(!R_list.empty(), Err::InvalidModel, "empty R list");
  for (size_t i = 0; i < R_list.size(); ++i) {
    check(R_list[i] > 1, Err::InvalidModel, "R values must exceed 1");
    if (i > 0) check(R_list[i] < R_list[i - 1], Err::InvalidModel, "R list must strictly decrease");
  }

  BlowupTable tab;
  for (double R : R_list) {
    GHPair gh = solve_gh(p, R, N);
    BlowupRow row;
    row.R = R;
    row.im_g0 = gh.g.eval(Cx(0)).imag();
    row.im_h0 = gh.h.eval(Cx(0)).imag();
    const std::vector<double> u = boundary_re_f(R, N);
    double sum = 0;
    for (double uj : u) sum += std::exp(uj);
    row.boundary_integral = 2 * kPi * sum / N;
    try {
      row.reduction_pass = reduction_check(p, R, gh).pass;
    } catch (const Error& e) {
      if (e.code() != Err::IntervalViolation) throw;
      row.reduction_pass = false;
    }
    tab.rows.push_back(row);
  }

  tab.monotone = true;
  for (size_t i = 1; i < tab.rows.size(); ++i) {
    const bool g_up = p.sign * tab.rows[i].im_g0 > p.sign * tab.rows[i - 1].im_g0;
    const bool h_up = tab.rows[i].im_h0 > tab.rows[i - 1].im_h0;
    if (!g_up || !h_up) tab.monotone = false;
  }

  const double amag = std::abs(p.a);
  std::ostringstream os;
  os << "as R falls " << tab.rows.front().R << " -> " << tab.rows.back().R
     << ", every boundary reduction stays in [1, " << p.lambda_d << ") x ("
     << amag / p.lambda_d << ", " << amag << "], yet the center values grow |Im g(0)|: "
     << std::abs(tab.rows.front().im_g0) << " -> " << std::abs(tab.rows.back().im_g0)
     << " and Im h(0): " << tab.rows.front().im_h0 << " -> " << tab.rows.back().im_h0
     << "; no finite bound on an invariant exhaustion at the center survives the limit";
  tab.summary = os.str();
  return tab;
}

std::vector<BoundaryRow> boundary_rows(const CLParams& p, double R, int n) {
  check(n > 0, Err::InvalidModel, "empty boundary grid");
  const double loglam = std::log(p.lambda_d);
  const double amag = std::abs(p.a);
  std::vector<BoundaryRow> rows;
  rows.reserve(n);
  for (int j = 0; j < n; ++j) {
    BoundaryRow r;
    r.theta = 2 * kPi * j / n;
    const Cx f = f_R(R, std::polar(1.0, r.theta));
    r.re_f = f.real();
    r.im_f = f.imag();
    r.im_g = p.sign * std::exp(r.re_f);
    r.im_h = amag * std::exp(-r.re_f);
    r.k = static_cast<long>(std::floor(r.re_f / loglam));
    const double lamk = p.lambda.pow_int(r.k).to_double();
    r.red_g = r.im_g / lamk;
    r.red_h = r.im_h * lamk;
    r.red1_re = r.re_f / loglam - static_cast<double>(r.k);
    r.red1_im = r.im_f / loglam;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace serre
