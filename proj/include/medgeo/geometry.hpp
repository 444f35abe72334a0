#pragma once
// Planar vector/point types, angles, deterministic sampling sequences, and
// the error type shared by the whole library.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace medgeo {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class Err {
  NotG1,
  OutOfRange,
  OnSet,
  MultipleProjections,
  GridTooLarge,
  ReachExceeded,
  DegenerateLoop,
  NormalAmbiguous,
  NotOnSet,
  EmptyDomain,
  NormalUndefined,
  NotConvex,
  NotApplicable,
  SchemaError,
  IOFailure,
  InvalidArgument,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NotG1: return "NotG1";
    case Err::OutOfRange: return "OutOfRange";
    case Err::OnSet: return "OnSet";
    case Err::MultipleProjections: return "MultipleProjections";
    case Err::GridTooLarge: return "GridTooLarge";
    case Err::ReachExceeded: return "ReachExceeded";
    case Err::DegenerateLoop: return "DegenerateLoop";
    case Err::NormalAmbiguous: return "NormalAmbiguous";
    case Err::NotOnSet: return "NotOnSet";
    case Err::EmptyDomain: return "EmptyDomain";
    case Err::NormalUndefined: return "NormalUndefined";
    case Err::NotConvex: return "NotConvex";
    case Err::NotApplicable: return "NotApplicable";
    case Err::SchemaError: return "SchemaError";
    case Err::IOFailure: return "IOFailure";
    case Err::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

  constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
  constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

  Vec2& operator+=(const Vec2& r) { x += r.x; y += r.y; return *this; }
  Vec2& operator-=(const Vec2& r) { x -= r.x; y -= r.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

  constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
  constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  constexpr bool finite() const { return std::isfinite(x) && std::isfinite(y); }

  constexpr bool operator==(const Vec2&) const = default;
};

using Point2 = Vec2;

inline double dist(const Point2& a, const Point2& b) { return (a - b).norm(); }
inline double dist2(const Point2& a, const Point2& b) { return (a - b).norm2(); }

// Unit-length direction. Callers either construct from a known-unit pair or
// go through of()/from_angle() which normalize.
struct UnitVec {
  double x{1.0};
  double y{0.0};

  static UnitVec of(const Vec2& v) {
    double n = v.norm();
    if (n < 1e-300) throw Error(Err::InvalidArgument, "cannot normalize zero vector");
    return UnitVec{v.x / n, v.y / n};
  }
  static UnitVec from_angle(double a) { return UnitVec{std::cos(a), std::sin(a)}; }

  constexpr Vec2 vec() const { return {x, y}; }
  double angle() const { return std::atan2(y, x); }
  // +pi/2 rotation.
  constexpr UnitVec rot90() const { return UnitVec{-y, x}; }
  constexpr UnitVec flipped() const { return UnitVec{-x, -y}; }
  constexpr double dot(const UnitVec& r) const { return x * r.x + y * r.y; }
};

inline Point2 operator+(const Point2& p, const UnitVec& u) = delete;
inline Point2 advance(const Point2& p, const UnitVec& u, double t) { return p + u.vec() * t; }

// Wrap to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

// Wrap to [0, 2pi).
inline double norm_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

struct BBox {
  Point2 lo{1e300, 1e300};
  Point2 hi{-1e300, -1e300};

  void grow(const Point2& p) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
  }
  void grow(const BBox& b) { grow(b.lo); grow(b.hi); }
  BBox inflated(double m) const { return BBox{{lo.x - m, lo.y - m}, {hi.x + m, hi.y + m}}; }
  double diag() const { return dist(lo, hi); }
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  bool valid() const { return lo.x <= hi.x && lo.y <= hi.y; }
  bool contains(const Point2& p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
};

// splitmix64: deterministic, seedable, good enough for probe scattering.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

// R2 low-discrepancy sequence (plastic-constant rotation), offset by seed so
// distinct seeds give distinct deterministic point streams.
struct R2Seq {
  std::uint64_t index;
  explicit R2Seq(std::uint64_t seed = 0) : index(seed * 0x9e3779b9ULL + 1) {}
  Point2 next_unit() {
    constexpr double g = 1.32471795724474602596;  // plastic constant
    constexpr double a1 = 1.0 / g;
    constexpr double a2 = 1.0 / (g * g);
    double n = static_cast<double>(index++);
    double u = std::fmod(0.5 + a1 * n, 1.0);
    double v = std::fmod(0.5 + a2 * n, 1.0);
    return {u, v};
  }
  Point2 next_in(const BBox& b) {
    Point2 u = next_unit();
    return {b.lo.x + u.x * (b.hi.x - b.lo.x), b.lo.y + u.y * (b.hi.y - b.lo.y)};
  }
};

}  // namespace medgeo
