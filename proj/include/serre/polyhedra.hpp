#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serre/mat2z.hpp"
#include "serre/rational.hpp"
#include "serre/surd.hpp"

namespace serre {

// Open halfplane {x : n.x < c}.
struct HalfPlane {
  Vec2Q n;
  Rat c;
  bool operator==(const HalfPlane&) const = default;
};

// Open interval, the exact projection of an open polyhedron onto a line.
struct Interval1 {
  bool feasible = false;
  std::optional<Rat> lo, hi;
};

// Projection {f.x : x in the open intersection} computed by Fourier-Motzkin
// elimination; exact for strict systems.
Interval1 project_onto(const std::vector<HalfPlane>& hs, const Vec2Q& f);

bool feasible(const std::vector<HalfPlane>& hs);
std::optional<Vec2Q> interior_point(const std::vector<HalfPlane>& hs);

struct SupResult {
  bool feasible = false;
  bool bounded = false;
  Rat value;  // sup f.x when feasible and bounded (never attained: open set)
};
SupResult sup_linear(const std::vector<HalfPlane>& hs, const Vec2Q& f);

enum class ConeKind { Zero, Ray, Wedge, HalfPlane, Line, Plane };
const char* cone_kind_name(ConeKind k);

// Closed convex cone in R^2. Ray and Line carry dir1; Wedge is salient with
// dir1, dir2 in a deterministic order; HalfPlane is {u : normal.u >= 0} with
// dir1, dir2 the boundary rays.
class Cone2 {
 public:
  Cone2() = default;

  static Cone2 zero();
  static Cone2 plane();
  static Cone2 ray(const Direction2& d);
  static Cone2 line(const Direction2& d);
  static Cone2 wedge(const Direction2& a, const Direction2& b);
  static Cone2 half_plane(const Direction2& inner_normal);

  ConeKind kind() const { return kind_; }
  const Direction2& dir1() const { return d1_; }
  const Direction2& dir2() const { return d2_; }
  const Direction2& inner_normal() const { return n_; }

  bool contains_line() const {
    return kind_ == ConeKind::HalfPlane || kind_ == ConeKind::Line || kind_ == ConeKind::Plane;
  }
  bool contains(const Vec2S& u) const;
  Cone2 transformed(const Mat2Z& U) const;
  bool operator==(const Cone2& o) const;
  std::string str() const;

 private:
  ConeKind kind_ = ConeKind::Zero;
  Direction2 d1_, d2_, n_;
};

// Recession cone {u : n_i.u <= 0 for all i} of a nonempty open polyhedron.
Cone2 cone_from_halfplanes(const std::vector<HalfPlane>& hs);

// Image halfplanes under x -> Ux + b: normals by the inverse transpose, offsets shifted.
std::vector<HalfPlane> transform_halfplanes(const std::vector<HalfPlane>& hs, const Mat2Z& U,
                                            const Vec2Q& b);

}  // namespace serre
