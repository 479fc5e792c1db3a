#include "serre/stehle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "serre/autgroup.hpp"
#include "serre/error.hpp"

namespace serre {

UParabolic::UParabolic(PsiSpec psi_, const Rat& beta2_, const Vec2Q& v_, const Vec2Q& w_,
                       const Vec2Q& offset_)
    : psi(std::move(psi_)),
      beta2(beta2_),
      v(v_),
      w(w_),
      offset(offset_),
      frame_{to_double(v_.x),      to_double(v_.y),      to_double(w_.x), to_double(w_.y),
             to_double(offset_.x), to_double(offset_.y), to_double(beta2_)} {}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double u01(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

double lin(double a, double b, int n, int i) {
  return n < 2 ? 0.5 * (a + b) : a + (b - a) * double(i) / double(n - 1);
}

// frame coordinates x = offset + t v + s w of the shear-invariant profile
void frame_ts(const UParabolic& f, double x1, double x2, double& t, double& s) {
  const auto& fr = f.frame();
  double den = fr.vx * fr.wy - fr.vy * fr.wx;
  double dx = x1 - fr.ox, dy = x2 - fr.oy;
  t = (dx * fr.wy - dy * fr.wx) / den;
  s = (fr.vx * dy - fr.vy * dx) / den;
}

double psi_at(const UParabolic& f, double t) {
  double b = f.frame().b2;
  if (f.psi.family == PsiSpec::Family::CanonicalQuadratic) return t * (t - b) / (2 * b);
  return psi_eval(f.psi, f.beta2, t);
}

// negative inside the domain, zero on the boundary graph
double parabolic_gap(const UParabolic& f, double t, double s) {
  double ps = psi_at(f, t);
  return f.frame().b2 > 0 ? ps - s : s - ps;
}

double parabolic_gap_z(const UParabolic& f, const Z2& z) {
  double t, s;
  frame_ts(f, std::log(std::abs(z.z1)), std::log(std::abs(z.z2)), t, s);
  return parabolic_gap(f, t, s);
}

// max{rho(gap), |x1|} evaluated purely at the log level
double parabolic_ulog(const UParabolic& f, double x1, double t, double s) {
  return std::max(rho(parabolic_gap(f, t, s)), std::abs(x1));
}

double model6_cap(const Z2& z) {
  double a = std::abs(z.z1);
  return std::exp(-a * a);
}

// exp(-|z1|^2) underflows for |z1|^2 > 745 while z2 = 0 stays strictly inside,
// so the origin of the fiber needs its own positive slack.
double model6_slack(const Z2& z) {
  double b = std::abs(z.z2);
  double cap = model6_cap(z);
  if (b == 0.0) return std::max(cap, std::numeric_limits<double>::min());
  return cap - b;
}

}  // namespace

const char* ExhaustionFn::name() const {
  struct V {
    const char* operator()(const U4&) const { return "U4"; }
    const char* operator()(const U5&) const { return "U5"; }
    const char* operator()(const UTilde6&) const { return "UTilde6"; }
    const char* operator()(const U6&) const { return "U6"; }
    const char* operator()(const UParabolic&) const { return "UParabolic"; }
  };
  return std::visit(V{}, v);
}

ExhaustionFn exhaustion_for(const LogDomainModel& m) {
  struct V {
    ExhaustionFn operator()(const Model4& m4) const { return {U4{to_double(m4.r)}}; }
    ExhaustionFn operator()(const Model5& m5) const { return {U5{to_double(m5.p)}}; }
    ExhaustionFn operator()(const Model6&) const { return {U6{}}; }
    ExhaustionFn operator()(const ParabolicModel& p) const {
      check(p.w.x.is_zero(), Err::IncompatibleExhaustion,
            "shear frame vector w must be parallel to the z2 axis");
      Rat deep_y = p.beta2 > 0 ? p.w.y : Rat(-p.w.y);
      check(deep_y < 0, Err::IncompatibleExhaustion,
            "deep direction of the shear model must point at z2 = 0");
      return {UParabolic{p.psi, p.beta2, p.v, p.w, p.offset}};
    }
    ExhaustionFn operator()(const PolyhedralModel&) const { return none(); }
    ExhaustionFn operator()(const HyperbolicModel&) const { return none(); }
    ExhaustionFn operator()(const BoundedOriginModel&) const { return none(); }
    ExhaustionFn operator()(const TransformedModel&) const { return none(); }
    ExhaustionFn none() const {
      fail(Err::IncompatibleExhaustion, "no exhaustion function attached to this model kind");
    }
  };
  return std::visit(V{}, m.v);
}

double rho(double t) {
  check(t < 0, Err::DomainSignViolation, "rho is defined on negative arguments only");
  return -1.0 / t;
}

bool in_domain(const ExhaustionFn& fn, const Z2& z, double margin) {
  struct V {
    const Z2& z;
    double slack(const U4& f) const {
      double a = std::abs(z.z1), b = std::abs(z.z2);
      return std::min({1.0 - a, b - f.r, 1.0 - b});
    }
    double slack(const U5& f) const {
      double a = std::abs(z.z1), b = std::abs(z.z2);
      if (a >= 1.0) return 1.0 - a;
      double cap = std::pow(1.0 - a * a, f.p / 2.0);
      return std::min({1.0 - a, b, cap - b});
    }
    double slack(const UTilde6&) const { return model6_slack(z); }
    double slack(const U6&) const { return model6_slack(z); }
    double slack(const UParabolic& f) const {
      if (z.z1 == Cx(0.0) || z.z2 == Cx(0.0)) return -kInf;
      return -parabolic_gap_z(f, z);
    }
  };
  return std::visit([&](const auto& f) { return V{z}.slack(f); }, fn.v) > margin;
}

std::vector<double> eval_branches(const ExhaustionFn& fn, const Z2& z) {
  struct V {
    const Z2& z;
    std::vector<double> operator()(const U4& f) const {
      double a = std::abs(z.z1), b = std::abs(z.z2);
      return {-std::log1p(-a * a), -std::log(b - f.r), -std::log(1.0 - b)};
    }
    std::vector<double> operator()(const U5& f) const {
      double a = std::abs(z.z1), b = std::abs(z.z2);
      return {std::log(b) - f.p / 2.0 * std::log1p(-a * a), -std::log(b)};
    }
    std::vector<double> operator()(const UTilde6&) const {
      double a = std::abs(z.z1);
      return {std::log(std::abs(z.z2)) + a * a};
    }
    std::vector<double> operator()(const U6&) const {
      double a = std::abs(z.z1);
      double ut = std::log(std::abs(z.z2)) + a * a;
      return {rho(ut), std::log(a), 0.0};
    }
    std::vector<double> operator()(const UParabolic& f) const {
      double x1 = std::log(std::abs(z.z1));
      return {rho(parabolic_gap_z(f, z)), x1, -x1};
    }
  };
  return std::visit(V{z}, fn.v);
}

double eval_u(const ExhaustionFn& fn, const Z2& z) {
  check(in_domain(fn, z, 0.0), Err::OutsideDomain, "point outside the model domain");
  std::vector<double> b = eval_branches(fn, z);
  return *std::max_element(b.begin(), b.end());
}

Z2 sample_domain_point(const ExhaustionFn& fn, std::mt19937_64& rng) {
  struct V {
    std::mt19937_64& g;
    Cx polar(double m) { return std::polar(m, 2.0 * M_PI * u01(g)); }
    Z2 operator()(const U4& f) {
      double a = std::sqrt(u01(g)) * 0.999;
      double b = f.r + (1.0 - f.r) * (1e-3 + 0.998 * u01(g));
      return {polar(a), polar(b)};
    }
    Z2 operator()(const U5& f) {
      double a = std::sqrt(u01(g)) * 0.999;
      double b = std::pow(1.0 - a * a, f.p / 2.0) * (1e-3 + 0.998 * u01(g));
      return {polar(a), polar(b)};
    }
    Z2 model6() {
      double a = 2.2 * u01(g);
      double b = std::exp(-a * a) * (1e-3 + 0.998 * u01(g));
      return {polar(a), polar(b)};
    }
    Z2 operator()(const UTilde6&) { return model6(); }
    Z2 operator()(const U6&) { return model6(); }
    Z2 operator()(const UParabolic& f) {
      const auto& fr = f.frame();
      double t = -6.0 + 12.0 * u01(g);
      double depth = 1e-3 + 5.0 * u01(g);
      double s = psi_at(f, t) + (fr.b2 > 0 ? depth : -depth);
      double x1 = fr.ox + t * fr.vx + s * fr.wx;
      double x2 = fr.oy + t * fr.vy + s * fr.wy;
      return {polar(std::exp(x1)), polar(std::exp(x2))};
    }
  };
  return std::visit(V{rng}, fn.v);
}

namespace {

void require_match(const ExhaustionFn& fn, const LogDomainModel& m) {
  struct V {
    const LogDomainModel& m;
    bool operator()(const U4& f) const {
      auto* m4 = std::get_if<Model4>(&m.v);
      return m4 && std::abs(f.r - to_double(m4->r)) <= 1e-12;
    }
    bool operator()(const U5& f) const {
      auto* m5 = std::get_if<Model5>(&m.v);
      return m5 && std::abs(f.p - to_double(m5->p)) <= 1e-12;
    }
    bool operator()(const UTilde6&) const { return std::holds_alternative<Model6>(m.v); }
    bool operator()(const U6&) const { return std::holds_alternative<Model6>(m.v); }
    bool operator()(const UParabolic& f) const {
      auto* p = std::get_if<ParabolicModel>(&m.v);
      return p && p->beta2 == f.beta2 && p->v == f.v && p->w == f.w && p->offset == f.offset &&
             p->psi.family == f.psi.family && p->psi.knots == f.psi.knots;
    }
  };
  check(std::visit(V{m}, fn.v), Err::IncompatibleExhaustion,
        "exhaustion function does not match the model");
}

Z2 grid_point(double m1, double a1, double m2, double a2) {
  return {std::polar(m1, a1), std::polar(m2, a2)};
}

std::vector<Z2> make_grid(const ExhaustionFn& fn, const GridSpec& gs) {
  std::vector<Z2> pts;
  pts.reserve(size_t(gs.n_abs1) * gs.n_arg1 * gs.n_abs2 * gs.n_arg2);
  auto angles = [](int n, int k) { return 2.0 * M_PI * (k + 0.5) / n; };
  struct Radial {
    double m1, m2;
  };
  for (int i = 0; i < gs.n_abs1; ++i)
    for (int j = 0; j < gs.n_abs2; ++j) {
      Radial rr{};
      struct V {
        const GridSpec& gs;
        int i, j;
        Radial operator()(const U4& f) const {
          double m1 = lin(gs.inset, 1.0 - gs.inset, gs.n_abs1, i);
          double m2 = f.r + (1.0 - f.r) * lin(gs.inset, 1.0 - gs.inset, gs.n_abs2, j);
          return {m1, m2};
        }
        Radial operator()(const U5& f) const {
          double m1 = lin(gs.inset, 1.0 - gs.inset, gs.n_abs1, i);
          double cap = std::pow(1.0 - m1 * m1, f.p / 2.0);
          return {m1, cap * lin(gs.inset, 1.0 - gs.inset, gs.n_abs2, j)};
        }
        Radial model6() const {
          double m1 = lin(0.02, 1.6, gs.n_abs1, i);
          double cap = std::exp(-m1 * m1);
          return {m1, cap * lin(gs.inset, 1.0 - gs.inset, gs.n_abs2, j)};
        }
        Radial operator()(const UTilde6&) const { return model6(); }
        Radial operator()(const U6&) const { return model6(); }
        Radial operator()(const UParabolic& f) const {
          const auto& fr = f.frame();
          double t = lin(-2.0, 2.0, gs.n_abs1, i);
          double depth = lin(std::max(gs.inset, 0.05), 2.0, gs.n_abs2, j);
          double s = psi_at(f, t) + (fr.b2 > 0 ? depth : -depth);
          double x1 = fr.ox + t * fr.vx + s * fr.wx;
          double x2 = fr.oy + t * fr.vy + s * fr.wy;
          return {std::exp(x1), std::exp(x2)};
        }
      };
      rr = std::visit(V{gs, i, j}, fn.v);
      for (int k = 0; k < gs.n_arg1; ++k)
        for (int l = 0; l < gs.n_arg2; ++l)
          pts.push_back(grid_point(rr.m1, angles(gs.n_arg1, k), rr.m2, angles(gs.n_arg2, l)));
    }
  return pts;
}

const std::array<std::array<Cx, 2>, 8>& fd_directions() {
  static const double q = std::sqrt(0.5);
  static const std::array<std::array<Cx, 2>, 8> dirs = {{
      {Cx(1, 0), Cx(0, 0)},
      {Cx(0, 0), Cx(1, 0)},
      {Cx(q, 0), Cx(q, 0)},
      {Cx(q, 0), Cx(-q, 0)},
      {Cx(q, 0), Cx(0, q)},
      {Cx(q, 0), Cx(0, -q)},
      {Cx(q, 0), Cx(0.5, 0.5)},
      {Cx(q, 0), Cx(-0.5, 0.5)},
  }};
  return dirs;
}

struct FdScan {
  const std::vector<std::function<double(const Z2&)>>& branches;
  std::function<bool(const Z2&)> inside;  // empty: skip boundary validation
  bool scale_steps = false;
  double h, tol;

  PshReport run(const std::vector<Z2>& pts) const {
    PshReport rep;
    rep.min_estimate = kInf;
    for (const Z2& z : pts) {
      size_t best = 0;
      double top = -kInf, second = -kInf;
      for (size_t b = 0; b < branches.size(); ++b) {
        double val = branches[b](z);
        if (val > top) {
          second = top;
          top = val;
          best = b;
        } else if (val > second) {
          second = val;
        }
      }
      if (branches.size() > 1 && top - second <= h) {
        ++rep.skipped;
        continue;
      }
      // steps proportional to the modulus keep the relative perturbation at h,
      // which bounds the stencil truncation of log-type branches by h^2/4
      double a1 = std::abs(z.z1), a2 = std::abs(z.z2);
      double s1 = scale_steps && a1 > 0 ? a1 : 1.0;
      double s2 = scale_steps && a2 > 0 ? a2 : 1.0;
      const auto& fb = branches[best];
      double center = fb(z);
      for (const auto& d : fd_directions()) {
        Cx dv1 = h * s1 * d[0], dv2 = h * s2 * d[1];
        std::array<Z2, 4> stencil = {
            Z2{z.z1 + dv1, z.z2 + dv2},
            Z2{z.z1 - dv1, z.z2 - dv2},
            Z2{z.z1 + Cx(0, 1) * dv1, z.z2 + Cx(0, 1) * dv2},
            Z2{z.z1 - Cx(0, 1) * dv1, z.z2 - Cx(0, 1) * dv2},
        };
        double sum = 0;
        for (const Z2& p : stencil) {
          if (inside)
            check(inside(p), Err::GridTouchesBoundary,
                  "finite-difference stencil left the domain; shrink h or grow the inset");
          sum += fb(p);
        }
        rep.min_estimate = std::min(rep.min_estimate, (sum - 4.0 * center) / (4.0 * h * h));
      }
      ++rep.points;
    }
    rep.pass = rep.points > 0 && rep.min_estimate >= -tol;
    return rep;
  }
};

std::vector<std::function<double(const Z2&)>> max_decomposition(const ExhaustionFn& fn) {
  size_t n = 0;
  struct Count {
    size_t operator()(const U4&) const { return 3; }
    size_t operator()(const U5&) const { return 2; }
    size_t operator()(const UTilde6&) const { return 1; }
    size_t operator()(const U6&) const { return 3; }
    size_t operator()(const UParabolic&) const { return 3; }
  };
  n = std::visit(Count{}, fn.v);
  std::vector<std::function<double(const Z2&)>> out;
  for (size_t b = 0; b < n; ++b)
    out.push_back([fn, b](const Z2& z) { return eval_branches(fn, z)[b]; });
  return out;
}

}  // namespace

PshReport fd_min_hessian(const std::vector<std::function<double(const Z2&)>>& branches,
                         const std::vector<Z2>& pts, double h, double tol) {
  check(!branches.empty() && h > 0, Err::ResolutionTooLow, "need branches and a positive step");
  return FdScan{branches, {}, false, h, tol}.run(pts);
}

PshReport check_psh(const ExhaustionFn& fn, const LogDomainModel& m, const GridSpec& gs,
                    double h, double tol) {
  require_match(fn, m);
  check(h > 0 && gs.n_abs1 > 0 && gs.n_arg1 > 0 && gs.n_abs2 > 0 && gs.n_arg2 > 0,
        Err::ResolutionTooLow, "grid spec and step must be positive");
  std::vector<Z2> pts = make_grid(fn, gs);
  for (const Z2& z : pts)
    check(in_domain(fn, z, 0.0), Err::GridTouchesBoundary, "grid point left the domain");
  FdScan scan{max_decomposition(fn), [&fn](const Z2& z) { return in_domain(fn, z, 0.0); }, true,
              h, tol};
  return scan.run(pts);
}

Z2 apply_model_aut(const ExhaustionFn& fn, const ModelAut& f, const Z2& z) {
  struct V {
    const ModelAut& f;
    const Z2& z;
    Cx mobius() const { return f.alpha * (z.z1 - f.beta) / (1.0 - std::conj(f.beta) * z.z1); }
    Z2 operator()(const U4& u) const {
      Cx z2 = f.invert ? f.gamma * (u.r / z.z2) : f.gamma * z.z2;
      return {mobius(), z2};
    }
    Z2 operator()(const U5& u) const {
      Cx den = 1.0 - std::conj(f.beta) * z.z1;
      double nb = std::norm(f.beta);
      Cx factor = f.gamma * std::pow(1.0 - nb, u.p / 2.0) / std::pow(den, Cx(u.p, 0.0));
      return {mobius(), factor * z.z2};
    }
    Z2 model6() const {
      Cx z1 = f.alpha * z.z1 + f.beta;
      Cx arg = -2.0 * f.alpha * std::conj(f.beta) * z.z1 - Cx(std::norm(f.beta), 0.0);
      return {z1, f.gamma * std::exp(arg) * z.z2};
    }
    Z2 operator()(const UTilde6&) const { return model6(); }
    Z2 operator()(const U6&) const { return model6(); }
    Z2 operator()(const UParabolic&) const {
      fail(Err::AutomorphismRejected, "shear-invariant models take monomial self-maps");
    }
  };
  return std::visit([&](const auto& u) { return V{f, z}(u); }, fn.v);
}

namespace {

void validate_model_aut(const ExhaustionFn& fn, const ModelAut& f) {
  check(std::abs(std::abs(f.alpha) - 1.0) <= 1e-12 && std::abs(std::abs(f.gamma) - 1.0) <= 1e-12,
        Err::AutomorphismRejected, "rotation factors must have unit modulus");
  struct V {
    const ModelAut& f;
    void operator()(const U4& u) const {
      check(std::abs(f.beta) < 1.0, Err::AutomorphismRejected, "Mobius center must lie in the disk");
      check(!f.invert || u.r > 0, Err::AutomorphismRejected,
            "annulus swap needs a positive inner radius");
    }
    void operator()(const U5&) const {
      check(std::abs(f.beta) < 1.0, Err::AutomorphismRejected, "Mobius center must lie in the disk");
      check(!f.invert, Err::AutomorphismRejected, "no annulus swap on this model");
    }
    void operator()(const UTilde6&) const {
      check(!f.invert, Err::AutomorphismRejected, "no annulus swap on this model");
    }
    void operator()(const U6&) const {
      check(!f.invert, Err::AutomorphismRejected, "no annulus swap on this model");
    }
    void operator()(const UParabolic&) const {
      fail(Err::AutomorphismRejected, "shear-invariant models take monomial self-maps");
    }
  };
  std::visit([&](const auto& u) { V{f}(u); }, fn.v);
}

}  // namespace

BoundReport check_bounded_above(const ExhaustionFn& fn, const LogDomainModel& m,
                                const AutSpec& aut, long n_samples, std::uint64_t seed) {
  require_match(fn, m);
  check(n_samples > 0, Err::ResolutionTooLow, "need at least one sample");
  BoundReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);

  long n1 = std::max(n_samples / 100, 1L);
  long n2 = std::max(n_samples / 10, n1);
  std::array<long, 3> marks = {n1, n2, n_samples};

  std::function<double(std::mt19937_64&)> draw_diff;
  if (const ModelAut* ma = std::get_if<ModelAut>(&aut)) {
    validate_model_aut(fn, *ma);
    draw_diff = [&fn, ma](std::mt19937_64& g) {
      Z2 z = sample_domain_point(fn, g);
      Z2 w = apply_model_aut(fn, *ma, z);
      check(in_domain(fn, w, 0.0), Err::AutomorphismRejected, "image point left the domain");
      return eval_u(fn, w) - eval_u(fn, z);
    };
  } else {
    const AlgebraicAut& aa = std::get<AlgebraicAut>(aut);
    const UParabolic* up = std::get_if<UParabolic>(&fn.v);
    check(up != nullptr, Err::AutomorphismRejected,
          "monomial self-maps attach to the shear-invariant models");
    check(preserves(m, aa.A, Vec2S(aa.btilde)).preserved, Err::AutomorphismRejected,
          "map does not preserve the model");
    double a = to_double(aa.A.a), b = to_double(aa.A.b);
    double c = to_double(aa.A.c), d = to_double(aa.A.d);
    double b1 = to_double(aa.btilde.x), b2 = to_double(aa.btilde.y);
    draw_diff = [up, a, b, c, d, b1, b2](std::mt19937_64& g) {
      const auto& fr = up->frame();
      double t = -6.0 + 12.0 * u01(g);
      double depth = 1e-3 + 5.0 * u01(g);
      double s = psi_at(*up, t) + (fr.b2 > 0 ? depth : -depth);
      double x1 = fr.ox + t * fr.vx + s * fr.wx;
      double x2 = fr.oy + t * fr.vy + s * fr.wy;
      double y1 = a * x1 + b * x2 + b1, y2 = c * x1 + d * x2 + b2;
      double tt, ss;
      frame_ts(*up, y1, y2, tt, ss);
      return parabolic_ulog(*up, y1, tt, ss) - parabolic_ulog(*up, x1, t, s);
    };
  }

  double sup = -kInf, sup_abs = 0;
  int stage = 0;
  for (long i = 1; i <= n_samples; ++i) {
    double du = draw_diff(rng);
    sup = std::max(sup, du);
    sup_abs = std::max(sup_abs, std::abs(du));
    while (stage < 3 && i == marks[size_t(stage)]) {
      rep.stage_sups[size_t(stage)] = sup;
      rep.stage_counts[size_t(stage)] = i;
      ++stage;
    }
  }
  rep.sup_estimate = sup;
  rep.sup_abs = sup_abs;
  rep.monotone_stable =
      rep.stage_sups[2] - rep.stage_sups[1] <= 0.05 * (1.0 + std::abs(rep.stage_sups[1]));
  return rep;
}

namespace {

struct Stratum {
  std::string name;
  std::vector<double> u_along;
};

// boundary-approach sequences with epsilon = 2^-k, k = 1..40
std::vector<Stratum> boundary_strata(const ExhaustionFn& fn, std::mt19937_64& rng,
                                     std::vector<std::string>& excluded) {
  std::vector<Stratum> out;
  auto push = [&](std::string name, const std::function<double(double)>& u_of_eps) {
    Stratum st{std::move(name), {}};
    for (int k = 1; k <= 40; ++k) st.u_along.push_back(u_of_eps(std::ldexp(1.0, -k)));
    out.push_back(std::move(st));
  };
  struct V {
    std::mt19937_64& g;
    const ExhaustionFn& fn;
    decltype(push)& add;
    std::vector<std::string>& excluded;
    void operator()(const U4& f) const {
      double a0 = 0.3 + 0.4 * u01(g);
      double m0 = f.r + (1.0 - f.r) * (0.3 + 0.4 * u01(g));
      add("z1_to_unit_circle",
          [&, m0](double e) { return eval_u(fn, {Cx(1.0 - e, 0), Cx(m0, 0)}); });
      add("z2_to_inner_edge",
          [&, a0](double e) { return eval_u(fn, {Cx(a0, 0), Cx(f.r + e * (1.0 - f.r), 0)}); });
      add("z2_to_outer_edge",
          [&, a0](double e) { return eval_u(fn, {Cx(a0, 0), Cx(1.0 - e * (1.0 - f.r), 0)}); });
    }
    void operator()(const U5& f) const {
      double a0 = 0.3 + 0.4 * u01(g);
      double f0 = 0.3 + 0.4 * u01(g);
      double cap0 = std::pow(1.0 - a0 * a0, f.p / 2.0);
      add("z1_to_unit_circle", [&, f0](double e) {
        double a = 1.0 - e;
        return eval_u(fn, {Cx(a, 0), Cx(f0 * std::pow(1.0 - a * a, f.p / 2.0), 0)});
      });
      add("z2_to_axis", [&, a0, cap0](double e) { return eval_u(fn, {Cx(a0, 0), Cx(e * cap0, 0)}); });
      excluded.push_back("outer_graph");  // both branches stay bounded there
    }
    void model6_strata(bool tilde) const {
      double a0 = 0.3 + 0.6 * u01(g);
      double f0 = 0.3 + 0.4 * u01(g);
      add("z1_to_infinity", [&, f0](double e) {
        double a = 1.0 / std::sqrt(e);
        return eval_u(fn, {Cx(a, 0), Cx(f0 * std::exp(-a * a), 0)});
      });
      add("outer_graph", [&, a0](double e) {
        return eval_u(fn, {Cx(a0, 0), Cx((1.0 - e) * std::exp(-a0 * a0), 0)});
      });
      if (!tilde) excluded.push_back("z2_axis");  // interior of the enlarged model
    }
    void operator()(const UTilde6&) const { model6_strata(true); }
    void operator()(const U6&) const { model6_strata(false); }
    void operator()(const UParabolic& f) const {
      double t0 = -2.0 + 4.0 * u01(g);
      double d0 = 0.5 + u01(g);
      // the gap is depth by construction; recomputing it as s - psi(t) would
      // cancel catastrophically once |psi(t)| dwarfs the depth (w.x = 0 here,
      // so s never enters x1 either)
      auto ulog_at = [&f](double t, double depth) {
        double x1 = f.frame().ox + t * f.frame().vx;
        return std::max(rho(-depth), std::abs(x1));
      };
      add("t_to_plus_infinity", [&, d0](double e) { return ulog_at(1.0 / e, d0); });
      add("t_to_minus_infinity", [&, d0](double e) { return ulog_at(-1.0 / e, d0); });
      add("gap_to_zero", [&, t0](double e) { return ulog_at(t0, e); });
      excluded.push_back("deep_interior");  // the widening end toward the z2 axis
    }
  };
  std::visit(V{rng, fn, push, excluded}, fn.v);
  return out;
}

double boundary_slack(const ExhaustionFn& fn, const Z2& z) {
  struct V {
    const Z2& z;
    double operator()(const U4& f) const {
      double a = std::abs(z.z1), b = std::abs(z.z2);
      return std::min({1.0 - a, b - f.r, 1.0 - b});
    }
    double operator()(const U5&) const {
      double a = std::abs(z.z1), b = std::abs(z.z2);
      return std::min(1.0 - a, b);  // the outer graph is not exhausted
    }
    double operator()(const UTilde6&) const { return model6_slack(z); }
    double operator()(const U6&) const { return model6_slack(z); }
    double operator()(const UParabolic& f) const { return -parabolic_gap_z(f, z); }
  };
  return std::visit(V{z}, fn.v);
}

}  // namespace

ExhaustionReport check_exhaustion(const ExhaustionFn& fn, const LogDomainModel& m,
                                  const std::vector<double>& levels, long n_samples,
                                  std::uint64_t seed) {
  require_match(fn, m);
  check(!levels.empty() && n_samples > 0, Err::ResolutionTooLow, "need levels and samples");
  ExhaustionReport rep;
  rep.levels = levels;
  rep.seed = seed;
  std::mt19937_64 rng(seed);

  std::vector<double> us, norms, slacks;
  us.reserve(size_t(n_samples));
  for (long i = 0; i < n_samples; ++i) {
    Z2 z = sample_domain_point(fn, rng);
    us.push_back(eval_u(fn, z));
    norms.push_back(std::sqrt(std::norm(z.z1) + std::norm(z.z2)));
    slacks.push_back(boundary_slack(fn, z));
  }
  for (double c : levels) {
    double max_norm = 0, min_slack = kInf;
    for (size_t i = 0; i < us.size(); ++i)
      if (us[i] < c) {
        max_norm = std::max(max_norm, norms[i]);
        min_slack = std::min(min_slack, slacks[i]);
      }
    rep.sublevel_max_norm.push_back(max_norm);
    rep.sublevel_min_slack.push_back(min_slack);
  }

  double top = *std::max_element(levels.begin(), levels.end());
  bool all_diverge = true;
  for (const Stratum& st : boundary_strata(fn, rng, rep.excluded_strata)) {
    double last = st.u_along.back();
    double mid = st.u_along[st.u_along.size() / 2];
    bool div = last > top && last >= mid;
    rep.strata.push_back(st.name);
    rep.stratum_diverges.push_back(div);
    all_diverge = all_diverge && div;
  }
  rep.pass = all_diverge && !rep.strata.empty();
  return rep;
}

}  // namespace serre
