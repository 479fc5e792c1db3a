#include "serre/polyhedra.hpp"

#include <algorithm>

#include "serre/error.hpp"

namespace serre {

namespace {

// One-variable strict system {alpha * u < gamma}.
struct System1 {
  std::vector<std::pair<Rat, Rat>> cs;

  void add(const Rat& alpha, const Rat& gamma) { cs.push_back({alpha, gamma}); }

  Interval1 solve() const {
    Interval1 r;
    std::optional<Rat> lo, hi;
    for (const auto& [alpha, gamma] : cs) {
      if (alpha == 0) {
        if (!(gamma > 0)) return r;  // 0 < gamma violated
      } else if (alpha > 0) {
        Rat b = gamma / alpha;
        if (!hi || b < *hi) hi = b;
      } else {
        Rat b = gamma / alpha;
        if (!lo || b > *lo) lo = b;
      }
    }
    if (lo && hi && !(*lo < *hi)) return r;
    r.feasible = true;
    r.lo = lo;
    r.hi = hi;
    return r;
  }
};

// Eliminate the second coordinate of {m.u < c} by pairing lower and upper bounds.
System1 eliminate_second(const std::vector<HalfPlane>& hs) {
  System1 out;
  std::vector<std::pair<Rat, Rat>> uppers, lowers;  // (m1, c) with m2 > 0 / m2 < 0, scaled
  for (const HalfPlane& h : hs) {
    if (h.n.y == 0) {
      out.add(h.n.x, h.c);
    } else if (h.n.y > 0) {
      uppers.push_back({h.n.x / h.n.y, h.c / h.n.y});  // u2 < c' - m' u1
    } else {
      lowers.push_back({h.n.x / h.n.y, h.c / h.n.y});  // u2 > c' - m' u1
    }
  }
  for (const auto& [ml, cl] : lowers)
    for (const auto& [mu, cu] : uppers)
      out.add(mu - ml, cu - cl);  // lower(u1) < upper(u1)
  return out;
}

Rat pick_in(const Interval1& iv) {
  if (iv.lo && iv.hi) return (*iv.lo + *iv.hi) / 2;
  if (iv.lo) return *iv.lo + 1;
  if (iv.hi) return *iv.hi - 1;
  return 0;
}

}  // namespace

Interval1 project_onto(const std::vector<HalfPlane>& hs, const Vec2Q& f) {
  check(!f.is_zero(), Err::SchemaViolation, "projection direction must be nonzero");
  // Coordinates u = (f.x, g.x) with g = perp(f); constraint n.x < c becomes m.u < c
  // with m = T^{-T} n for T = [f; g].
  Vec2Q g{-f.y, f.x};
  Rat det = f.x * g.y - f.y * g.x;  // = |f|^2 > 0
  std::vector<HalfPlane> m;
  m.reserve(hs.size());
  for (const HalfPlane& h : hs) {
    // T^{-T} = (1/det) [[g2, -g1], [-f2, f1]]
    Vec2Q mm{(g.y * h.n.x - g.x * h.n.y) / det, (-f.y * h.n.x + f.x * h.n.y) / det};
    m.push_back({mm, h.c});
  }
  return eliminate_second(m).solve();
}

bool feasible(const std::vector<HalfPlane>& hs) {
  return project_onto(hs, Vec2Q{1, 0}).feasible;
}

std::optional<Vec2Q> interior_point(const std::vector<HalfPlane>& hs) {
  Interval1 px = project_onto(hs, Vec2Q{1, 0});
  if (!px.feasible) return std::nullopt;
  Rat x0 = pick_in(px);
  System1 ys;
  for (const HalfPlane& h : hs) ys.add(h.n.y, h.c - h.n.x * x0);
  Interval1 py = ys.solve();
  check(py.feasible, Err::EmptyPolyhedron, "projection witness lost in substitution");
  return Vec2Q{x0, pick_in(py)};
}

SupResult sup_linear(const std::vector<HalfPlane>& hs, const Vec2Q& f) {
  Interval1 p = project_onto(hs, f);
  SupResult r;
  r.feasible = p.feasible;
  if (!p.feasible) return r;
  // project_onto used u1 = f.x without normalizing |f|; the interval is already in
  // functional units.
  if (p.hi) {
    r.bounded = true;
    r.value = *p.hi;
  }
  return r;
}

const char* cone_kind_name(ConeKind k) {
  switch (k) {
    case ConeKind::Zero: return "zero";
    case ConeKind::Ray: return "ray";
    case ConeKind::Wedge: return "wedge";
    case ConeKind::HalfPlane: return "half_plane";
    case ConeKind::Line: return "line";
    case ConeKind::Plane: return "plane";
  }
  return "?";
}

Cone2 Cone2::zero() { return Cone2{}; }

Cone2 Cone2::plane() {
  Cone2 c;
  c.kind_ = ConeKind::Plane;
  return c;
}

Cone2 Cone2::ray(const Direction2& d) {
  Cone2 c;
  c.kind_ = ConeKind::Ray;
  c.d1_ = d;
  return c;
}

Cone2 Cone2::line(const Direction2& d) {
  Cone2 c;
  c.kind_ = ConeKind::Line;
  // A line has no preferred orientation; keep the lexicographically smaller ray.
  Direction2 o = d.opposite();
  c.d1_ = o.str() < d.str() ? o : d;
  return c;
}

Cone2 Cone2::wedge(const Direction2& a, const Direction2& b) {
  check(a != b && a != b.opposite(), Err::InvalidModel, "wedge rays must span");
  Cone2 c;
  c.kind_ = ConeKind::Wedge;
  c.d1_ = a;
  c.d2_ = b;
  if (c.d2_.str() < c.d1_.str()) std::swap(c.d1_, c.d2_);
  return c;
}

Cone2 Cone2::half_plane(const Direction2& inner_normal) {
  Cone2 c;
  c.kind_ = ConeKind::HalfPlane;
  c.n_ = inner_normal;
  const Vec2S& n = inner_normal.vec();
  Direction2 e = Direction2::of(Vec2S{-n.y, n.x});
  c.d1_ = e;
  c.d2_ = e.opposite();
  if (c.d2_.str() < c.d1_.str()) std::swap(c.d1_, c.d2_);
  return c;
}

bool Cone2::contains(const Vec2S& u) const {
  if (u.is_zero()) return true;
  switch (kind_) {
    case ConeKind::Zero: return false;
    case ConeKind::Plane: return true;
    case ConeKind::Ray: return Direction2::of(u) == d1_;
    case ConeKind::Line: {
      Direction2 d = Direction2::of(u);
      return d == d1_ || d == d1_.opposite();
    }
    case ConeKind::HalfPlane: return dot(n_.vec(), u).sign() >= 0;
    case ConeKind::Wedge: {
      int s = cross(d1_.vec(), d2_.vec()).sign();
      return cross(d1_.vec(), u).sign() * s >= 0 && cross(u, d2_.vec()).sign() * s >= 0;
    }
  }
  return false;
}

Cone2 Cone2::transformed(const Mat2Z& U) const {
  check(U.unimodular(), Err::NonUnimodular, "cone transform requires |det| = 1");
  auto map = [&](const Direction2& d) { return Direction2::of(U.apply(d.vec())); };
  switch (kind_) {
    case ConeKind::Zero:
    case ConeKind::Plane: return *this;
    case ConeKind::Ray: return ray(map(d1_));
    case ConeKind::Line: return line(map(d1_));
    case ConeKind::Wedge: return wedge(map(d1_), map(d2_));
    case ConeKind::HalfPlane: {
      // Inner normal transforms by the inverse transpose.
      Mat2Z inv = U.inverse();
      const Vec2S& n = n_.vec();
      Vec2S nt{n.x * Rat(inv.a) + n.y * Rat(inv.c), n.x * Rat(inv.b) + n.y * Rat(inv.d)};
      return half_plane(Direction2::of(nt));
    }
  }
  return *this;
}

bool Cone2::operator==(const Cone2& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case ConeKind::Zero:
    case ConeKind::Plane: return true;
    case ConeKind::Ray:
    case ConeKind::Line: return d1_ == o.d1_;
    case ConeKind::Wedge: return d1_ == o.d1_ && d2_ == o.d2_;
    case ConeKind::HalfPlane: return n_ == o.n_;
  }
  return false;
}

std::string Cone2::str() const {
  switch (kind_) {
    case ConeKind::Zero: return "zero";
    case ConeKind::Plane: return "plane";
    case ConeKind::Ray: return "ray(" + d1_.str() + ")";
    case ConeKind::Line: return "line(" + d1_.str() + ")";
    case ConeKind::Wedge: return "wedge(" + d1_.str() + ", " + d2_.str() + ")";
    case ConeKind::HalfPlane: return "half_plane(normal " + n_.str() + ")";
  }
  return "?";
}

Cone2 cone_from_halfplanes(const std::vector<HalfPlane>& hs) {
  std::vector<Direction2> nd;
  for (const HalfPlane& h : hs) {
    if (h.n.is_zero()) continue;
    Direction2 d = Direction2::of(h.n);
    if (std::find(nd.begin(), nd.end(), d) == nd.end()) nd.push_back(d);
  }
  if (nd.empty()) return Cone2::plane();
  if (nd.size() == 1) return Cone2::half_plane(nd[0].opposite());

  auto inside = [&](const Vec2S& u) {
    for (const Direction2& n : nd)
      if (dot(n.vec(), u).sign() > 0) return false;
    return true;
  };

  for (size_t i = 0; i < nd.size(); ++i)
    for (size_t j = i + 1; j < nd.size(); ++j)
      if (nd[i] == nd[j].opposite()) {
        // The cone lies inside the line orthogonal to this normal pair.
        const Vec2S& n = nd[i].vec();
        Direction2 l = Direction2::of(Vec2S{-n.y, n.x});
        bool plus = inside(l.vec()), minus = inside(l.opposite().vec());
        if (plus && minus) return Cone2::line(l);
        if (plus) return Cone2::ray(l);
        if (minus) return Cone2::ray(l.opposite());
        return Cone2::zero();
      }

  // Salient case: extreme rays are among the boundary directions of the normals.
  std::vector<Direction2> cand;
  for (const Direction2& n : nd) {
    const Vec2S& v = n.vec();
    for (const Vec2S& u : {Vec2S{-v.y, v.x}, Vec2S{v.y, -v.x}}) {
      if (!inside(u)) continue;
      Direction2 d = Direction2::of(u);
      if (std::find(cand.begin(), cand.end(), d) == cand.end()) cand.push_back(d);
    }
  }
  if (cand.empty()) return Cone2::zero();
  if (cand.size() == 1) return Cone2::ray(cand[0]);
  for (const Direction2& a : cand)
    for (const Direction2& b : cand) {
      if (a == b || cross(a.vec(), b.vec()).sign() == 0) continue;
      Cone2 w = Cone2::wedge(a, b);
      bool all = true;
      for (const Direction2& c : cand)
        if (!w.contains(c.vec())) {
          all = false;
          break;
        }
      if (all) return w;
    }
  fail(Err::EmptyPolyhedron, "no extreme pair found for a salient cone");
}

std::vector<HalfPlane> transform_halfplanes(const std::vector<HalfPlane>& hs, const Mat2Z& U,
                                            const Vec2Q& b) {
  Mat2Z inv = U.inverse();
  std::vector<HalfPlane> out;
  out.reserve(hs.size());
  for (const HalfPlane& h : hs) {
    Vec2Q n{Rat(inv.a) * h.n.x + Rat(inv.c) * h.n.y, Rat(inv.b) * h.n.x + Rat(inv.d) * h.n.y};
    out.push_back({n, h.c + n.x * b.x + n.y * b.y});
  }
  return out;
}

}  // namespace serre
