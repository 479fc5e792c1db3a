#include "serre/model.hpp"

#include <algorithm>
#include <cmath>

#include "serre/error.hpp"

namespace serre {

PhiSpec PhiSpec::a_over_t(const Rat& a) {
  PhiSpec p;
  p.family = Family::AOverT;
  p.a = a;
  return p;
}

PhiSpec PhiSpec::table(std::vector<std::pair<Rat, Rat>> knots) {
  PhiSpec p;
  p.family = Family::Table;
  p.knots = std::move(knots);
  return p;
}

PsiSpec PsiSpec::table(std::vector<std::pair<Rat, Rat>> knots) {
  PsiSpec p;
  p.family = Family::Table;
  p.knots = std::move(knots);
  return p;
}

void validate_phi(const PhiSpec& phi, const QuadraticSurd& lambda) {
  check(lambda > QuadraticSurd(1), Err::InvalidModel, "phi extension needs lambda > 1");
  switch (phi.family) {
    case PhiSpec::Family::Zero: return;
    case PhiSpec::Family::AOverT:
      check(phi.a >= 0, Err::InvalidModel, "a/t profile needs a >= 0");
      return;
    case PhiSpec::Family::Table: break;
  }
  const auto& ks = phi.knots;
  check(!ks.empty() && ks.front().first == 1, Err::InvalidModel,
        "phi table must start at t = 1");
  check(phi.lambda == lambda, Err::InvalidModel, "phi table bound to a different lambda");
  for (size_t i = 0; i < ks.size(); ++i) {
    check(ks[i].second >= 0, Err::InvalidModel, "phi values must be nonnegative");
    if (i) check(ks[i - 1].first < ks[i].first, Err::InvalidModel, "phi knots must increase");
    check(QuadraticSurd(ks[i].first) < lambda, Err::InvalidModel,
          "phi knots must lie in [1, lambda)");
  }
  // Convexity of the extension: chords nondecreasing through the implicit end
  // knot (lambda, y1/lambda), and across the seam the next period starts with
  // slope (first chord)/lambda^2.
  std::vector<Rat> chords;
  for (size_t i = 0; i + 1 < ks.size(); ++i)
    chords.push_back((ks[i + 1].second - ks[i].second) / (ks[i + 1].first - ks[i].first));
  for (size_t i = 0; i + 1 < chords.size(); ++i)
    check(chords[i] <= chords[i + 1], Err::InvalidModel, "phi table not convex");
  QuadraticSurd last = (QuadraticSurd(ks.front().second) / lambda - QuadraticSurd(ks.back().second)) /
                       (lambda - QuadraticSurd(ks.back().first));
  if (!chords.empty())
    check(QuadraticSurd(chords.back()) <= last, Err::InvalidModel, "phi table not convex");
  QuadraticSurd next_first = (chords.empty() ? last : QuadraticSurd(chords.front())) / (lambda * lambda);
  check(last <= next_first, Err::InvalidModel, "phi extension not convex across the seam");
}

void validate_psi(const PsiSpec& psi, const Rat& beta2) {
  check(beta2 != 0, Err::InvalidModel, "psi extension needs beta2 != 0");
  if (psi.family == PsiSpec::Family::CanonicalQuadratic) return;
  const auto& ks = psi.knots;
  check(!ks.empty(), Err::InvalidModel, "psi table needs knots");
  for (size_t i = 0; i + 1 < ks.size(); ++i)
    check(ks[i].first < ks[i + 1].first, Err::InvalidModel, "psi knots must increase");
  if (beta2 > 0) {
    check(ks.front().first == 0, Err::InvalidModel, "psi table must start at t = 0");
    check(ks.back().first < beta2, Err::InvalidModel, "psi knots must lie in [0, beta2)");
    // Chords through the implicit end knot (beta2, y1); the next period starts
    // with slope (first chord) + 1.
    std::vector<Rat> chords;
    for (size_t i = 0; i + 1 < ks.size(); ++i)
      chords.push_back((ks[i + 1].second - ks[i].second) / (ks[i + 1].first - ks[i].first));
    chords.push_back((ks.front().second - ks.back().second) / (beta2 - ks.back().first));
    for (size_t i = 0; i + 1 < chords.size(); ++i)
      check(chords[i] <= chords[i + 1], Err::InvalidModel, "psi table not convex");
    check(chords.back() <= chords.front() + 1, Err::InvalidModel,
          "psi extension not convex across the seam");
  } else {
    check(ks.back().first == 0, Err::InvalidModel, "psi table must end at t = 0");
    check(ks.front().first > beta2, Err::InvalidModel, "psi knots must lie in (beta2, 0]");
    // Implicit left knot (beta2, y_m); concavity, and moving one period left
    // raises slopes by 1.
    std::vector<Rat> chords;
    chords.push_back((ks.front().second - ks.back().second) / (ks.front().first - beta2));
    for (size_t i = 0; i + 1 < ks.size(); ++i)
      chords.push_back((ks[i + 1].second - ks[i].second) / (ks[i + 1].first - ks[i].first));
    for (size_t i = 0; i + 1 < chords.size(); ++i)
      check(chords[i] >= chords[i + 1], Err::InvalidModel, "psi table not concave");
    check(chords.back() + 1 >= chords.front(), Err::InvalidModel,
          "psi extension not concave across the seam");
  }
}

namespace {

double interp_phi(const PhiSpec& phi, double r, double lam) {
  const auto& ks = phi.knots;
  double t_end = lam, y_end = to_double(ks.front().second) / lam;
  for (size_t i = 0; i + 1 <= ks.size(); ++i) {
    double t0 = to_double(ks[i].first), y0 = to_double(ks[i].second);
    double t1 = i + 1 < ks.size() ? to_double(ks[i + 1].first) : t_end;
    double y1 = i + 1 < ks.size() ? to_double(ks[i + 1].second) : y_end;
    if (r <= t1 || i + 1 == ks.size()) return y0 + (y1 - y0) * (r - t0) / (t1 - t0);
  }
  return y_end;
}

}  // namespace

double phi_eval(const PhiSpec& phi, double t) {
  check(t > 0, Err::DomainSignViolation, "phi is defined for positive arguments");
  switch (phi.family) {
    case PhiSpec::Family::Zero: return 0.0;
    case PhiSpec::Family::AOverT: return to_double(phi.a) / t;
    case PhiSpec::Family::Table: break;
  }
  double lam = phi.lambda.to_double();
  long k = std::lround(std::floor(std::log(t) / std::log(lam)));
  double r = t * std::pow(lam, double(-k));
  while (r < 1.0) {
    r *= lam;
    --k;
  }
  while (r >= lam) {
    r /= lam;
    ++k;
  }
  return interp_phi(phi, r, lam) * std::pow(lam, double(-k));
}

QuadraticSurd phi_eval_exact(const PhiSpec& phi, const QuadraticSurd& t) {
  check(t.sign() > 0, Err::DomainSignViolation, "phi is defined for positive arguments");
  switch (phi.family) {
    case PhiSpec::Family::Zero: return QuadraticSurd(0);
    case PhiSpec::Family::AOverT: return QuadraticSurd(phi.a) / t;
    case PhiSpec::Family::Table:
      fail(Err::UnsupportedModel, "table phi profiles evaluate numerically only");
  }
  return QuadraticSurd(0);
}

namespace {

template <typename Num>
Num interp_psi(const PsiSpec& psi, const Rat& beta2, const Num& r) {
  const auto& ks = psi.knots;
  // Segment endpoints including the implicit knot supplied by the functional
  // equation: (beta2, y_first) on the right for beta2 > 0, (beta2, y_last) on
  // the left for beta2 < 0.
  std::vector<std::pair<Num, Num>> pts;
  if (beta2 < 0) pts.push_back({Num(beta2), Num(ks.back().second)});
  for (const auto& [t, y] : ks) pts.push_back({Num(t), Num(y)});
  if (beta2 > 0) pts.push_back({Num(beta2), Num(ks.front().second)});
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    bool lastseg = i + 2 == pts.size();
    if (r <= pts[i + 1].first || lastseg) {
      const auto& [t0, y0] = pts[i];
      const auto& [t1, y1] = pts[i + 1];
      return y0 + (y1 - y0) * (r - t0) / (t1 - t0);
    }
  }
  return pts.back().second;
}

}  // namespace

double psi_eval(const PsiSpec& psi, const Rat& beta2, double t) {
  double b = to_double(beta2);
  if (psi.family == PsiSpec::Family::CanonicalQuadratic) return t * (t - b) / (2 * b);
  double k = std::floor(t / b);
  double r = t - k * b;
  return interp_psi<double>(psi, beta2, r) + k * r + b * k * (k - 1) / 2;
}

Rat psi_eval_exact(const PsiSpec& psi, const Rat& beta2, const Rat& t) {
  if (psi.family == PsiSpec::Family::CanonicalQuadratic)
    return t * (t - beta2) / (2 * beta2);
  Int k = floor_rat(t / beta2);
  Rat kr(k);
  Rat r = t - kr * beta2;
  return interp_psi<Rat>(psi, beta2, r) + kr * r + beta2 * kr * (kr - 1) / 2;
}

QuadraticSurd psi_eval_exact(const PsiSpec& psi, const Rat& beta2, const QuadraticSurd& t) {
  if (t.is_rational()) return QuadraticSurd(psi_eval_exact(psi, beta2, t.rat()));
  QuadraticSurd b(beta2);
  if (psi.family == PsiSpec::Family::CanonicalQuadratic) return t * (t - b) / (b * 2);
  // floor(t / beta2) guessed in doubles and certified by exact comparison.
  long long k = (long long)std::floor(t.to_double() / to_double(beta2));
  auto in_fund = [&](const QuadraticSurd& r) {
    return beta2 > 0 ? (r.sign() >= 0 && r < b) : (b < r && r.sign() <= 0);
  };
  QuadraticSurd r = t - b * Rat(k);
  for (int guard = 0; guard < 4 && !in_fund(r); ++guard) {
    k += (beta2 > 0) == (r.sign() > 0) ? 1 : -1;
    r = t - b * Rat(k);
  }
  check(in_fund(r), Err::DomainSignViolation, "psi reduction failed to certify");
  Rat kr(k);
  return interp_psi<QuadraticSurd>(psi, beta2, r) + r * kr + QuadraticSurd(beta2 * kr * (kr - 1) / 2);
}

const char* LogDomainModel::kind() const {
  struct V {
    const char* operator()(const PolyhedralModel&) { return "polyhedral"; }
    const char* operator()(const HyperbolicModel&) { return "hyperbolic_model"; }
    const char* operator()(const ParabolicModel&) { return "parabolic_model"; }
    const char* operator()(const Model4&) { return "model4"; }
    const char* operator()(const Model5&) { return "model5"; }
    const char* operator()(const Model6&) { return "model6"; }
    const char* operator()(const BoundedOriginModel&) { return "bounded_origin"; }
    const char* operator()(const TransformedModel&) { return "transformed"; }
  };
  return std::visit(V{}, v);
}

LogDomainModel make_polyhedral(std::vector<HalfPlane> hs, std::array<bool, 2> axis_flags) {
  check(feasible(hs), Err::EmptyPolyhedron, "polyhedral log image is empty");
  // Feasibility already forced c > 0 on any zero-normal row; such rows say nothing.
  std::erase_if(hs, [](const HalfPlane& h) { return h.n.is_zero(); });
  return {PolyhedralModel{std::move(hs), axis_flags}};
}

LogDomainModel make_hyperbolic(const Mat2Z& A, PhiSpec phi, int t_sign, const Vec2Q& offset) {
  MatClass cls = classify(A);
  check(cls.kind == MatKind::Hyperbolic, Err::InvalidModel,
        "hyperbolic model needs a matrix with two positive eigenvalues, lambda > 1");
  check(t_sign == 1 || t_sign == -1, Err::InvalidModel, "t_sign must be +1 or -1");
  EigenSystem es = eigensystem(A);
  phi.lambda = es.lambda1;
  validate_phi(phi, es.lambda1);
  return {HyperbolicModel{A, es.lambda1, es.dir1.vec(), es.dir2.vec(), t_sign,
                          std::move(phi), offset}};
}

LogDomainModel make_parabolic(const Mat2Z& A, const Rat& beta2, PsiSpec psi, const Vec2Q& offset) {
  MatClass cls = classify(A);
  check(cls.kind == MatKind::ParabolicUnipotent, Err::InvalidModel,
        "parabolic model needs a unipotent matrix distinct from the identity");
  validate_psi(psi, beta2);
  EigenSystem es = eigensystem(A);
  return {ParabolicModel{A, es.v, es.w, beta2, std::move(psi), offset}};
}

LogDomainModel make_model4(const Rat& r) {
  check(r >= 0 && r < 1, Err::InvalidModel, "model4 needs 0 <= r < 1");
  return {Model4{r}};
}

LogDomainModel make_model5(const Rat& p) {
  check(p > 0, Err::InvalidModel, "model5 needs p > 0");
  return {Model5{p}};
}

LogDomainModel make_model6() { return {Model6{}}; }

LogDomainModel make_bounded_origin(std::vector<HalfPlane> hs) {
  check(feasible(hs), Err::EmptyPolyhedron, "bounded-origin log image is empty");
  for (const HalfPlane& h : hs)
    check(h.n.x >= 0 && h.n.y >= 0 && !h.n.is_zero(), Err::InvalidModel,
          "bounded-origin normals must be componentwise nonnegative");
  for (const Vec2Q& e : {Vec2Q{1, 0}, Vec2Q{0, 1}}) {
    SupResult s = sup_linear(hs, e);
    check(s.bounded, Err::UnboundedModel, "bounded-origin log image must be bounded above");
  }
  return {BoundedOriginModel{std::move(hs)}};
}

namespace {

const Direction2 kMinusE1 = Direction2::of(Vec2Q{-1, 0});
const Direction2 kMinusE2 = Direction2::of(Vec2Q{0, -1});

Vec2S scaled(const Vec2S& u, int s) { return s == 1 ? u : -u; }

void check_axis_flags(const PolyhedralModel& p) {
  Cone2 c = cone_from_halfplanes(p.halfplanes);
  if (p.axis_flags[0])
    check(c.contains(Vec2S(Vec2Q{-1, 0})), Err::InconsistentAxisFlags,
          "axis 1 flagged but -e1 is not a recession direction");
  if (p.axis_flags[1])
    check(c.contains(Vec2S(Vec2Q{0, -1})), Err::InconsistentAxisFlags,
          "axis 2 flagged but -e2 is not a recession direction");
}

// Column j of U as a standard basis vector: the only exponent patterns that keep
// a met coordinate axis attached to the image domain.
std::optional<int> unit_column(const Mat2Z& U, int j) {
  Int top = j == 0 ? U.a : U.b;
  Int bot = j == 0 ? U.c : U.d;
  if (top == 1 && bot == 0) return 0;
  if (top == 0 && bot == 1) return 1;
  return std::nullopt;
}

}  // namespace

Cone2 recession_cone(const LogDomainModel& m) {
  struct V {
    Cone2 operator()(const PolyhedralModel& p) { return cone_from_halfplanes(p.halfplanes); }
    Cone2 operator()(const HyperbolicModel& h) {
      return Cone2::wedge(Direction2::of(scaled(h.v, h.t_sign)), Direction2::of(h.w));
    }
    Cone2 operator()(const ParabolicModel& p) {
      return Cone2::ray(Direction2::of(scaled(Vec2S(p.w), p.beta2 > 0 ? 1 : -1)));
    }
    Cone2 operator()(const Model4& m4) {
      if (m4.r > 0) return Cone2::ray(kMinusE1);
      return Cone2::wedge(kMinusE1, kMinusE2);
    }
    Cone2 operator()(const Model5&) { return Cone2::wedge(kMinusE1, kMinusE2); }
    Cone2 operator()(const Model6&) { return Cone2::wedge(kMinusE1, kMinusE2); }
    Cone2 operator()(const BoundedOriginModel& b) { return cone_from_halfplanes(b.halfplanes); }
    Cone2 operator()(const TransformedModel& t) {
      return recession_cone(*t.base).transformed(t.U);
    }
  };
  return std::visit(V{}, m.v);
}

std::array<bool, 2> met_axes(const LogDomainModel& m) {
  struct V {
    std::array<bool, 2> operator()(const PolyhedralModel& p) {
      check_axis_flags(p);
      return p.axis_flags;
    }
    std::array<bool, 2> operator()(const HyperbolicModel&) { return {false, false}; }
    std::array<bool, 2> operator()(const ParabolicModel&) { return {false, false}; }
    std::array<bool, 2> operator()(const Model4&) { return {true, false}; }
    std::array<bool, 2> operator()(const Model5&) { return {true, false}; }
    std::array<bool, 2> operator()(const Model6&) { return {true, false}; }
    std::array<bool, 2> operator()(const BoundedOriginModel&) { return {true, true}; }
    std::array<bool, 2> operator()(const TransformedModel& t) {
      std::array<bool, 2> base = met_axes(*t.base);
      std::array<bool, 2> out{false, false};
      for (int j = 0; j < 2; ++j)
        if (base[j]) {
          auto i = unit_column(t.U, j);
          check(i.has_value(), Err::UnsupportedImage, "transformed model lost a met axis");
          out[*i] = true;
        }
      return out;
    }
  };
  return std::visit(V{}, m.v);
}

int axis_count(const LogDomainModel& m) {
  std::array<bool, 2> a = met_axes(m);
  return int(a[0]) + int(a[1]);
}

bool is_hyperbolic_domain(const LogDomainModel& m) {
  if (std::holds_alternative<PolyhedralModel>(m.v))
    return !recession_cone(m).contains_line();
  if (const auto* t = std::get_if<TransformedModel>(&m.v)) return is_hyperbolic_domain(*t->base);
  return true;
}

bool contains_log(const LogDomainModel& m, double x1, double x2) {
  struct V {
    double x1, x2;
    bool polyhedron(const std::vector<HalfPlane>& hs) {
      for (const HalfPlane& h : hs)
        if (!(to_double(h.n.x) * x1 + to_double(h.n.y) * x2 < to_double(h.c))) return false;
      return true;
    }
    bool operator()(const PolyhedralModel& p) { return polyhedron(p.halfplanes); }
    bool operator()(const HyperbolicModel& h) {
      double vx = h.v.x.to_double(), vy = h.v.y.to_double();
      double wx = h.w.x.to_double(), wy = h.w.y.to_double();
      double y1 = x1 - to_double(h.offset.x), y2 = x2 - to_double(h.offset.y);
      double det = vx * wy - vy * wx;
      double t = (y1 * wy - y2 * wx) / det;
      double s = (vx * y2 - vy * y1) / det;
      double st = h.t_sign * t;
      return st > 0 && s > phi_eval(h.phi, st);
    }
    bool operator()(const ParabolicModel& p) {
      double vx = to_double(p.v.x), vy = to_double(p.v.y);
      double wx = to_double(p.w.x), wy = to_double(p.w.y);
      double y1 = x1 - to_double(p.offset.x), y2 = x2 - to_double(p.offset.y);
      double det = vx * wy - vy * wx;
      double t = (y1 * wy - y2 * wx) / det;
      double s = (vx * y2 - vy * y1) / det;
      double b = psi_eval(p.psi, p.beta2, t);
      return p.beta2 > 0 ? s > b : s < b;
    }
    bool operator()(const Model4& m4) {
      if (!(x1 < 0 && x2 < 0)) return false;
      return m4.r == 0 || x2 > std::log(to_double(m4.r));
    }
    bool operator()(const Model5& m5) {
      return x1 < 0 && x2 < to_double(m5.p) / 2 * std::log1p(-std::exp(2 * x1));
    }
    bool operator()(const Model6&) { return x2 < -std::exp(2 * x1); }
    bool operator()(const BoundedOriginModel& b) { return polyhedron(b.halfplanes); }
    bool operator()(const TransformedModel& t) {
      Mat2Z inv = t.U.inverse();
      double y1 = x1 - to_double(t.btilde.x), y2 = x2 - to_double(t.btilde.y);
      return contains_log(*t.base, to_double(inv.a) * y1 + to_double(inv.b) * y2,
                          to_double(inv.c) * y1 + to_double(inv.d) * y2);
    }
  };
  return std::visit(V{x1, x2}, m.v);
}

bool contains_log_exact(const LogDomainModel& m, const Vec2S& x) {
  struct V {
    const Vec2S& x;
    bool polyhedron(const std::vector<HalfPlane>& hs) {
      for (const HalfPlane& h : hs)
        if ((dot(Vec2S(h.n), x) - QuadraticSurd(h.c)).sign() >= 0) return false;
      return true;
    }
    bool operator()(const PolyhedralModel& p) { return polyhedron(p.halfplanes); }
    bool operator()(const HyperbolicModel& h) {
      Vec2S y = x - Vec2S(h.offset);
      QuadraticSurd den = cross(h.v, h.w);
      QuadraticSurd t = cross(y, h.w) / den;
      QuadraticSurd s = cross(h.v, y) / den;
      QuadraticSurd st = h.t_sign == 1 ? t : -t;
      if (st.sign() <= 0) return false;
      switch (h.phi.family) {
        case PhiSpec::Family::Zero: return s.sign() > 0;
        case PhiSpec::Family::AOverT: return s * st > QuadraticSurd(h.phi.a);
        case PhiSpec::Family::Table: return s.to_double() > phi_eval(h.phi, st.to_double());
      }
      return false;
    }
    bool operator()(const ParabolicModel& p) {
      Vec2S y = x - Vec2S(p.offset);
      QuadraticSurd den = cross(Vec2S(p.v), Vec2S(p.w));
      QuadraticSurd t = cross(y, Vec2S(p.w)) / den;
      QuadraticSurd s = cross(Vec2S(p.v), y) / den;
      QuadraticSurd b = psi_eval_exact(p.psi, p.beta2, t);
      return p.beta2 > 0 ? s > b : s < b;
    }
    bool operator()(const Model4&) {
      fail(Err::UnsupportedModel, "model4 membership is numeric; use contains_log");
    }
    bool operator()(const Model5&) {
      fail(Err::UnsupportedModel, "model5 membership is numeric; use contains_log");
    }
    bool operator()(const Model6&) {
      fail(Err::UnsupportedModel, "model6 membership is numeric; use contains_log");
    }
    bool operator()(const BoundedOriginModel& b) { return polyhedron(b.halfplanes); }
    bool operator()(const TransformedModel& t) {
      return contains_log_exact(*t.base, t.U.inverse().apply(x - Vec2S(t.btilde)));
    }
  };
  return std::visit(V{x}, m.v);
}

namespace {

// Membership of an axis point: the fixed coordinate is off-axis, the other tends
// to -infinity; for downward-closed polyhedra only the constraints blind to the
// met coordinate remain.
bool polyhedral_axis_slice(const std::vector<HalfPlane>& hs, int met_axis, double xo) {
  for (const HalfPlane& h : hs) {
    Rat nm = met_axis == 0 ? h.n.x : h.n.y;
    Rat no = met_axis == 0 ? h.n.y : h.n.x;
    if (nm == 0 && !(to_double(no) * xo < to_double(h.c))) return false;
  }
  return true;
}

bool contains_axis_point(const LogDomainModel& m, int met_axis, double xo);

struct AxisV {
  int met_axis;  // index of the vanishing coordinate
  double xo;     // log-modulus of the other coordinate
  bool operator()(const Model4& m4) {
    return xo < 0 && (m4.r == 0 || xo > std::log(to_double(m4.r)));
  }
  bool operator()(const Model5&) { return xo < 0; }
  bool operator()(const Model6&) { return xo < 0; }
  bool operator()(const BoundedOriginModel& b) {
    return polyhedral_axis_slice(b.halfplanes, met_axis, xo);
  }
  bool operator()(const PolyhedralModel& p) {
    return polyhedral_axis_slice(p.halfplanes, met_axis, xo);
  }
  bool operator()(const TransformedModel& t) {
    std::array<bool, 2> base = met_axes(*t.base);
    for (int j = 0; j < 2; ++j) {
      if (!base[j]) continue;
      auto i = unit_column(t.U, j);
      if (!i || *i != met_axis) continue;
      // Row of the surviving coordinate inverts exactly: its met-axis entry is 0,
      // so only the entry over the other base coordinate (a +-1) matters.
      int io = 1 - met_axis, jo = 1 - j;
      Int diag = io == 0 ? (jo == 0 ? t.U.a : t.U.b) : (jo == 0 ? t.U.c : t.U.d);
      double bo = io == 0 ? to_double(t.btilde.x) : to_double(t.btilde.y);
      double xbase = (xo - bo) / to_double(diag);
      return contains_axis_point(*t.base, j, xbase);
    }
    fail(Err::AxisViolation, "vanishing coordinate is not a met axis of the image");
  }
  bool operator()(const HyperbolicModel&) {
    fail(Err::AxisViolation, "model does not meet a coordinate axis");
  }
  bool operator()(const ParabolicModel&) {
    fail(Err::AxisViolation, "model does not meet a coordinate axis");
  }
};

bool contains_axis_point(const LogDomainModel& m, int met_axis, double xo) {
  return std::visit(AxisV{met_axis, xo}, m.v);
}

}  // namespace

bool contains(const LogDomainModel& m, const std::complex<double>& z1,
              const std::complex<double>& z2) {
  std::array<bool, 2> met = met_axes(m);
  bool zero1 = z1 == std::complex<double>(0.0), zero2 = z2 == std::complex<double>(0.0);
  if ((zero1 && !met[0]) || (zero2 && !met[1]))
    fail(Err::AxisViolation, "zero coordinate on an axis the domain does not meet");
  if (zero1 && zero2) return true;  // only t=2 models reach here, and they contain 0
  if (zero1) return contains_axis_point(m, 0, std::log(std::abs(z2)));
  if (zero2) return contains_axis_point(m, 1, std::log(std::abs(z1)));
  return contains_log(m, std::log(std::abs(z1)), std::log(std::abs(z2)));
}

LogDomainModel apply_monomial(const LogDomainModel& m, const Mat2Z& U, const Vec2Q& btilde) {
  check(U.unimodular(), Err::NonUnimodular, "monomial maps need |det| = 1");
  struct V {
    const LogDomainModel& m;
    const Mat2Z& U;
    const Vec2Q& b;

    LogDomainModel wrap_named() const {
      check(unit_column(U, 0).has_value(), Err::UnsupportedImage,
            "exponent matrix detaches the met axis");
      if (U == Mat2Z::identity() && b.is_zero()) return m;
      return {TransformedModel{std::make_shared<LogDomainModel>(m), U, b}};
    }

    LogDomainModel operator()(const PolyhedralModel& p) const {
      std::array<bool, 2> flags{false, false};
      for (int j = 0; j < 2; ++j)
        if (p.axis_flags[j]) {
          auto i = unit_column(U, j);
          check(i.has_value(), Err::UnsupportedImage, "exponent matrix detaches a met axis");
          flags[*i] = true;
        }
      return {PolyhedralModel{transform_halfplanes(p.halfplanes, U, b), flags}};
    }
    LogDomainModel operator()(const HyperbolicModel& h) const {
      Mat2Z A2 = U * h.A * U.inverse();
      EigenSystem es = eigensystem(A2);
      check(es.lambda1 == h.lambda, Err::InvalidModel, "conjugation changed the spectrum");
      Vec2S vr = U.apply(h.v);
      Direction2 dv = Direction2::of(vr);
      int sign = h.t_sign;
      if (dv == es.dir1.opposite()) {
        vr = -vr;
        sign = -sign;
      } else {
        check(dv == es.dir1, Err::InvalidModel, "image vector left the dominant eigenline");
      }
      return {HyperbolicModel{A2, h.lambda, vr, U.apply(h.w), sign, h.phi,
                              U.apply(h.offset) + b}};
    }
    LogDomainModel operator()(const ParabolicModel& p) const {
      Mat2Z A2 = U * p.A * U.inverse();
      return {ParabolicModel{A2, U.apply(p.v), U.apply(p.w), p.beta2, p.psi,
                             U.apply(p.offset) + b}};
    }
    LogDomainModel operator()(const Model4&) const { return wrap_named(); }
    LogDomainModel operator()(const Model5&) const { return wrap_named(); }
    LogDomainModel operator()(const Model6&) const { return wrap_named(); }
    LogDomainModel operator()(const BoundedOriginModel& bo) const {
      check(unit_column(U, 0).has_value() && unit_column(U, 1).has_value(),
            Err::UnsupportedImage, "a model meeting both axes admits only permutations");
      return {BoundedOriginModel{transform_halfplanes(bo.halfplanes, U, b)}};
    }
    LogDomainModel operator()(const TransformedModel& t) const {
      Mat2Z U2 = U * t.U;
      Vec2Q b2 = U.apply(t.btilde) + b;
      std::array<bool, 2> base = met_axes(*t.base);
      for (int j = 0; j < 2; ++j)
        if (base[j])
          check(unit_column(U2, j).has_value(), Err::UnsupportedImage,
                "exponent matrix detaches the met axis");
      if (U2 == Mat2Z::identity() && b2.is_zero()) return *t.base;
      return {TransformedModel{t.base, U2, b2}};
    }
  };
  return std::visit(V{m, U, btilde}, m.v);
}

}  // namespace serre
