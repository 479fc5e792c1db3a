#include "serre/serreclass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <tuple>
#include <utility>

#include "serre/autgroup.hpp"
#include "serre/error.hpp"
#include "serre/intmat.hpp"

namespace serre {

namespace {

std::tuple<int, Int, Int, Int, Int> entry_key(const Mat2Z& m) {
  int neg = int(m.a < 0) + int(m.b < 0) + int(m.c < 0) + int(m.d < 0);
  return {neg, m.a, m.b, m.c, m.d};
}

void egcd(Int a, Int b, Int& g, Int& x, Int& y) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int xt = x0 - q * x1;
    x0 = x1;
    x1 = xt;
    Int yt = y0 - q * y1;
    y0 = y1;
    y1 = yt;
  }
  g = a;
  x = x0;
  y = y0;
  if (g < 0) {
    g = -g;
    x = -x;
    y = -y;
  }
}

std::pair<Int, Int> primitive_direction(const Vec2Q& w) {
  check(!w.is_zero(), Err::InvalidModel, "zero direction has no primitive representative");
  Int L = lcm(denominator(w.x), denominator(w.y));
  Int nx = Int(numerator(w.x) * (L / denominator(w.x)));
  Int ny = Int(numerator(w.y) * (L / denominator(w.y)));
  Int g = gcd(abs(nx), abs(ny));
  return {Int(nx / g), Int(ny / g)};
}

// Unimodular map sending the shear-fixed direction w to the z2 axis with the deep
// end sgn(beta2) * w pointing at z2 = 0, the position the exhaustion is stated in.
Mat2Z shear_normalizer(const ParabolicModel& p) {
  auto [wx, wy] = primitive_direction(p.w);
  Int g, a, b;
  egcd(wx, wy, g, a, b);
  Mat2Z N{wy, -wx, a, b};
  return p.beta2 > 0 ? -N : N;
}

HalfPlane primitive_halfplane(const HalfPlane& h) {
  Int L = lcm(denominator(h.n.x), denominator(h.n.y));
  Int nx = Int(numerator(h.n.x) * (L / denominator(h.n.x)));
  Int ny = Int(numerator(h.n.y) * (L / denominator(h.n.y)));
  Int g = gcd(abs(nx), abs(ny));
  return {Vec2Q{Rat(Int(nx / g)), Rat(Int(ny / g))}, Rat(h.c * L) / Rat(g)};
}

std::vector<HalfPlane> essential_facets(const std::vector<HalfPlane>& hs) {
  std::vector<HalfPlane> prim;
  for (const HalfPlane& h : hs) {
    if (h.n.is_zero()) continue;
    HalfPlane p = primitive_halfplane(h);
    bool merged = false;
    for (HalfPlane& q : prim)
      if (q.n == p.n) {
        q.c = std::min(q.c, p.c);
        merged = true;
        break;
      }
    if (!merged) prim.push_back(p);
  }
  std::vector<HalfPlane> out;
  for (size_t i = 0; i < prim.size(); ++i) {
    std::vector<HalfPlane> probe;
    for (size_t k = 0; k < prim.size(); ++k)
      if (k != i) probe.push_back(prim[k]);
    probe.push_back({-prim[i].n, Rat(-prim[i].c)});
    if (feasible(probe)) out.push_back(prim[i]);
  }
  return out;
}

// Is the log image a unimodular-affine image of halfplane x interval (disk times
// annulus) or of a quadrant (disk times punctured disk)? Such domains carry the
// noncompact Mobius action even though they arrive in polyhedral form.
bool t1_product_form(const std::vector<HalfPlane>& ess, int j) {
  Cone2 c = cone_from_halfplanes(ess);
  if (ess.size() == 3 && c.kind() == ConeKind::Ray) {
    // the ray is the met axis; the two facets perpendicular to it bound the
    // interval, and the slant facet straightens by an integer shear exactly when
    // its primitive axis coefficient is 1
    for (const HalfPlane& h : ess) {
      const Rat& nj = j == 0 ? h.n.x : h.n.y;
      if (nj != 0) return nj == 1;
    }
    return false;
  }
  if (ess.size() == 2 && c.kind() == ConeKind::Wedge) {
    Direction2 mej =
        Direction2::of(j == 0 ? Vec2Q{Rat(-1), Rat(0)} : Vec2Q{Rat(0), Rat(-1)});
    Direction2 other = c.dir1();
    if (c.dir1() == mej)
      other = c.dir2();
    else if (c.dir2() == mej)
      other = c.dir1();
    else
      return false;  // met axis interior to the wedge: outside the trusted slice regime
    const Vec2S& ov = other.vec();
    const QuadraticSurd& comp = j == 0 ? ov.y : ov.x;  // |det(-e_j, other)|
    return comp == QuadraticSurd(1) || comp == QuadraticSurd(-1);
  }
  return false;
}

struct Resolved {
  const LogDomainModel* core;
  Mat2Z U = Mat2Z::identity();  // input = U * core + b at the log level
  Vec2Q b;
};

Resolved resolve(const LogDomainModel& m) {
  if (const auto* t = std::get_if<TransformedModel>(&m.v)) {
    Resolved r = resolve(*t->base);
    return {r.core, t->U * r.U, t->U.apply(r.b) + t->btilde};
  }
  return {&m, Mat2Z::identity(), {}};
}

}  // namespace

struct GeneratorVisitor {
  std::vector<AutSpec> operator()(const Model4& m4) const {
    std::vector<AutSpec> g{ModelAut{Cx(0, 1), Cx(0, 0), Cx(0, 1)},
                           ModelAut{Cx(1, 0), Cx(0.4, 0), std::polar(1.0, 1.0)}};
    if (m4.r > 0) g.push_back(ModelAut{Cx(1, 0), Cx(0.2, 0), Cx(1, 0), true});
    return g;
  }
  std::vector<AutSpec> operator()(const Model5&) const {
    return {ModelAut{Cx(1, 0), Cx(0.3, 0), Cx(-1, 0)},
            ModelAut{Cx(0, 1), Cx(0.25, 0.1), Cx(1, 0)}};
  }
  std::vector<AutSpec> operator()(const Model6&) const {
    return {ModelAut{Cx(1, 0), Cx(0.5, 0), Cx(1, 0)},
            ModelAut{Cx(0, 1), Cx(0.7, -0.2), std::polar(1.0, 1.0)}};
  }
  std::vector<AutSpec> operator()(const ParabolicModel& p) const {
    Vec2Q q = p.v * p.beta2;
    Mat2Z Ainv = p.A.inverse();
    return {AlgebraicAut{p.A, q}, AlgebraicAut{Ainv, -Ainv.apply(q)}};
  }
  template <class T>
  std::vector<AutSpec> operator()(const T&) const {
    return {};
  }
};

std::vector<AutSpec> model_generators(const LogDomainModel& core) {
  return std::visit(GeneratorVisitor{}, core.v);
}

namespace {

StehleCertificate run_stehle(const LogDomainModel& named, const Mat2Z& U, const Vec2Q& btilde,
                             const ClassifyOptions& o) {
  StehleCertificate sc;
  ExhaustionFn fn = exhaustion_for(named);
  sc.exhaustion = fn.name();
  sc.U = U;
  sc.btilde = btilde;
  sc.generators = model_generators(named);
  sc.psh = check_psh(fn, named, o.grid);
  for (const AutSpec& g : sc.generators)
    sc.bounds.push_back(check_bounded_above(fn, named, g, o.bound_samples));
  sc.exhausted = check_exhaustion(fn, named, o.levels, o.exhaustion_samples);
  if (std::holds_alternative<Model6>(named.v)) {
    double worst = 0;
    for (const AutSpec& g : sc.generators)
      worst = std::max(worst,
                       check_bounded_above({UTilde6{}}, named, g, o.bound_samples).sup_abs);
    sc.invariance_residual = worst;
  }
  return sc;
}

struct PhiEq {
  bool exact = false;
  long reductions = 0;
  double max_residual = 0;
};

// phi(lambda t) = phi(t) / lambda over a ladder of reductions t0 * lambda^k.
PhiEq phi_equation_check(const PhiSpec& phi, const QuadraticSurd& lambda, long n) {
  PhiEq out;
  out.exact = phi.exact();
  long bases = 50;
  long ks = std::max<long>(1, n / bases);
  out.reductions = bases * ks;
  if (out.exact) {
    for (long i = 0; i < bases; ++i) {
      QuadraticSurd t = QuadraticSurd(Rat(7 + i, 7)) * lambda.pow_int(-(ks / 2));
      for (long k = 0; k < ks; ++k) {
        QuadraticSurd r = phi_eval_exact(phi, t * lambda) - phi_eval_exact(phi, t) / lambda;
        if (!r.is_zero())
          out.max_residual = std::max(out.max_residual, std::abs(r.to_double()));
        t = t * lambda;
      }
    }
  } else {
    double ld = lambda.to_double();
    for (long i = 0; i < bases; ++i) {
      double t = (1.0 + double(i) / double(bases)) * std::pow(ld, -double(ks / 2));
      for (long k = 0; k < ks; ++k) {
        double r = phi_eval(phi, ld * t) - phi_eval(phi, t) / ld;
        out.max_residual = std::max(out.max_residual, std::abs(r));
        t *= ld;
      }
    }
  }
  return out;
}

const char* kStehleLine =
    "Stehle's criterion: plurisubharmonic exhaustion whose differences along "
    "automorphisms are bounded above";

Verdict make_axiom(CaseLabel label, std::string result, std::vector<std::string> prov) {
  Verdict v;
  v.member = true;
  v.case_label = label;
  v.certificate = AxiomCertificate{std::move(result)};
  v.provenance = std::move(prov);
  return v;
}

Verdict make_stehle(CaseLabel label, StehleCertificate sc, std::string headline) {
  Verdict v;
  v.member = true;
  v.case_label = label;
  v.certificate = std::move(sc);
  v.provenance = {std::move(headline), kStehleLine};
  return v;
}

}  // namespace

const char* case_label_name(CaseLabel c) {
  switch (c) {
    case CaseLabel::T2: return "T2";
    case CaseLabel::T1Compact: return "T1Compact";
    case CaseLabel::T1Model4: return "T1Model4";
    case CaseLabel::T1Model5: return "T1Model5";
    case CaseLabel::T1Model6: return "T1Model6";
    case CaseLabel::T0Compact: return "T0Compact";
    case CaseLabel::T0Parabolic: return "T0Parabolic";
    case CaseLabel::T0Hyperbolic: return "T0Hyperbolic";
  }
  return "?";
}

Verdict classify_serre(const LogDomainModel& m, const ClassifyOptions& o) {
  if (std::holds_alternative<PolyhedralModel>(m.v)) {
    try {
      (void)met_axes(m);
    } catch (const Error& e) {
      if (e.code() == Err::InconsistentAxisFlags)
        fail(Err::UnsupportedModel, "polyhedral axis flags disagree with the recession cone");
      throw;
    }
  }
  check(is_hyperbolic_domain(m), Err::NotHyperbolicDomain,
        "the log image recession cone contains a line");
  int t = axis_count(m);

  if (t == 2)
    return make_axiom(
        CaseLabel::T2, "Caratheodory completeness",
        {"both coordinate axes are met (t = 2): the domain is Caratheodory complete "
         "(Hirschowitz; Pflug)",
         "Caratheodory-complete bounded domains belong to the Serre class"});

  if (t == 1) {
    Resolved r = resolve(m);
    Mat2Z Uinv = r.U.inverse();
    Vec2Q binv = -Uinv.apply(r.b);
    if (std::holds_alternative<Model4>(r.core->v))
      return make_stehle(CaseLabel::T1Model4, run_stehle(*r.core, Uinv, binv, o),
                         "disk times annulus position (one axis met)");
    if (std::holds_alternative<Model5>(r.core->v))
      return make_stehle(CaseLabel::T1Model5, run_stehle(*r.core, Uinv, binv, o),
                         "power-profile disk bundle position (one axis met)");
    if (std::holds_alternative<Model6>(r.core->v))
      return make_stehle(CaseLabel::T1Model6, run_stehle(*r.core, Uinv, binv, o),
                         "exp-profile position (one axis met)");
    if (const auto* pm = std::get_if<PolyhedralModel>(&r.core->v)) {
      int j = met_axes(m)[0] ? 0 : 1;
      check(!t1_product_form(essential_facets(pm->halfplanes), j), Err::UnsupportedModel,
            "axis-meeting polyhedral log image is a disk-fiber product in disguise; supply "
            "it through the named disk-annulus family");
      return make_axiom(
          CaseLabel::T1Compact, "compact symmetry group",
          {"one coordinate axis is met (t = 1) and the symmetry group is compact",
           "differences along a compact group are uniformly bounded, so Stehle's "
           "criterion applies (Konigsberger; Sibony)"});
    }
    fail(Err::UnsupportedModel, "no t = 1 classification for this model kind");
  }

  AutClass ac = classify_aut_structure(m);
  if (std::holds_alternative<CompactOnly>(ac.v))
    return make_axiom(
        CaseLabel::T0Compact, "compact symmetry group",
        {"no coordinate axis is met (t = 0) and the symmetry group is compact",
         "differences along a compact group are uniformly bounded, so Stehle's "
         "criterion applies (Konigsberger; Sibony)"});

  if (const auto* ht = std::get_if<HyperbolicType>(&ac.v)) {
    const auto* hm = std::get_if<HyperbolicModel>(&m.v);
    PhiEq eq = phi_equation_check(hm ? hm->phi : PhiSpec::zero(), ht->lambda,
                                  o.phi_reductions);
    EigenSystem es = eigensystem(ht->A);
    Verdict v;
    v.member = false;
    v.case_label = CaseLabel::T0Hyperbolic;
    v.certificate = HyperbolicCertificate{ht->A,     ht->lambda,    es.dir1, es.dir2,
                                          eq.exact, eq.reductions, eq.max_residual};
    v.provenance = {
        "noncompact symmetry of hyperbolic type: unimodular matrix with eigenvalue "
        "lambda > 1 acting on the log image",
        "Coeure-Loeb disc-bundle construction: a bundle with Stein base and fiber over "
        "this domain that is not Stein"};
    return v;
  }

  const auto* pm = std::get_if<ParabolicModel>(&m.v);
  check(pm != nullptr, Err::UnsupportedModel,
        "shear-type symmetry outside the parabolic graph family");
  Mat2Z N = shear_normalizer(*pm);
  Vec2Q bn = -N.apply(pm->offset);
  LogDomainModel nm = apply_monomial(m, N, bn);
  return make_stehle(CaseLabel::T0Parabolic, run_stehle(nm, N, bn, o),
                     "noncompact symmetry of shear type, moved to shear normal position");
}

VerifyReport verify_certificate(const Verdict& vd, const LogDomainModel& m) {
  check(vd.member == (vd.case_label != CaseLabel::T0Hyperbolic), Err::CertificateMismatch,
        "membership bit contradicts the case label");
  Verdict fresh = classify_serre(m);
  check(fresh.member == vd.member && fresh.case_label == vd.case_label,
        Err::CertificateMismatch, "verdict disagrees with a fresh classification");

  VerifyReport rep;
  struct V {
    const Verdict& vd;
    const LogDomainModel& m;
    VerifyReport& rep;

    void operator()(const AxiomCertificate& ac) const {
      check(vd.case_label == CaseLabel::T2 || vd.case_label == CaseLabel::T1Compact ||
                vd.case_label == CaseLabel::T0Compact,
            Err::CertificateMismatch, "axiom certificate on a checkable case");
      check(!ac.result.empty(), Err::CertificateMismatch, "empty axiom certificate");
      rep.residuals.emplace_back("structural_recheck", 0.0);
      rep.pass = true;
    }

    void operator()(const HyperbolicCertificate& hc) const {
      check(vd.case_label == CaseLabel::T0Hyperbolic, Err::CertificateMismatch,
            "hyperbolic certificate on a member case");
      check(hc.A.det() == 1 && hc.A.trace() >= 3, Err::CertificateMismatch,
            "certificate matrix is not of hyperbolic type");
      check(hc.lambda > QuadraticSurd(1), Err::CertificateMismatch,
            "certificate eigenvalue must exceed 1");
      EigenSystem es = eigensystem(hc.A);
      check(es.lambda1 == hc.lambda, Err::CertificateMismatch,
            "eigenvalue disagrees with the certificate matrix");
      check(es.dir1 == hc.v && es.dir2 == hc.w, Err::CertificateMismatch,
            "eigendirection mismatch");
      AutClass ac = classify_aut_structure(m);
      const auto* ht = std::get_if<HyperbolicType>(&ac.v);
      check(ht && ht->A == hc.A && ht->lambda == hc.lambda, Err::CertificateMismatch,
            "certificate matrix does not generate the model symmetry");
      const auto* hm = std::get_if<HyperbolicModel>(&m.v);
      PhiEq eq = phi_equation_check(hm ? hm->phi : PhiSpec::zero(), hc.lambda, 1000);
      rep.residuals.emplace_back("phi_functional_equation", eq.max_residual);
      rep.pass = eq.exact ? eq.max_residual == 0.0 : eq.max_residual <= 1e-12;
    }

    void operator()(const StehleCertificate& sc) const {
      check(vd.member, Err::CertificateMismatch, "exhaustion certificate on a non-member");
      LogDomainModel named = apply_monomial(m, sc.U, sc.btilde);
      ExhaustionFn fn = exhaustion_for(named);
      check(sc.exhaustion == fn.name(), Err::CertificateMismatch,
            "exhaustion id does not match the normalized model");
      check(!sc.generators.empty(), Err::CertificateMismatch, "no generators recorded");
      bool ok = true;
      PshReport psh = check_psh(fn, named, GridSpec{});
      rep.residuals.emplace_back("psh_min_hessian", psh.min_estimate);
      ok = ok && psh.pass;
      for (size_t i = 0; i < sc.generators.size(); ++i) {
        BoundReport b = check_bounded_above(fn, named, sc.generators[i]);
        rep.residuals.emplace_back("difference_sup_" + std::to_string(i), b.sup_estimate);
        ok = ok && b.monotone_stable;
      }
      ExhaustionReport ex = check_exhaustion(fn, named, {1, 2, 4, 8});
      rep.residuals.emplace_back("exhaustion_strata", double(ex.strata.size()));
      ok = ok && ex.pass;
      if (sc.invariance_residual) {
        double worst = 0;
        for (const AutSpec& g : sc.generators)
          worst = std::max(worst, check_bounded_above({UTilde6{}}, named, g).sup_abs);
        rep.residuals.emplace_back("invariant_residual", worst);
        ok = ok && worst <= 1e-10;
      }
      rep.pass = ok;
    }
  };
  std::visit(V{vd, m, rep}, vd.certificate);
  return rep;
}

std::optional<Mat2Z> find_hyperbolic_matrix(const Cone2& cone, long entry_bound) {
  check(entry_bound >= 1, Err::InvalidModel, "entry bound must be positive");
  if (cone.kind() != ConeKind::Wedge) return std::nullopt;
  if (cone.dir1().rational() || cone.dir2().rational()) return std::nullopt;
  Vec2S u1 = cone.dir1().vec(), u2 = cone.dir2().vec();

  for (long tr = 3; tr <= 2 * entry_bound; ++tr) {
    std::optional<Mat2Z> best;
    for (long a = std::max(tr - entry_bound, -entry_bound); a <= entry_bound; ++a) {
      long d = tr - a;
      long long bc = (long long)a * d - 1;
      if (bc == 0) continue;
      for (long b = -entry_bound; b <= entry_bound; ++b) {
        if (b == 0 || bc % b != 0) continue;
        long long c = bc / b;
        if (std::llabs(c) > entry_bound) continue;
        Mat2Z A{a, b, c, d};
        if (!cross(A.apply(u1), u1).is_zero() || !cross(A.apply(u2), u2).is_zero()) continue;
        if (!best || entry_key(A) < entry_key(*best)) best = A;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace serre
