#include "mmwave/geometry.hpp"

#include <algorithm>

#include "mmwave/model.hpp"

namespace mmwave {

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

// p assumed collinear with [a, b]
bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Vec2 p, Vec2 q, const Segment& s) {
  const int d1 = orientation(p, q, s.a);
  const int d2 = orientation(p, q, s.b);
  const int d3 = orientation(s.a, s.b, p);
  const int d4 = orientation(s.a, s.b, q);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(p, q, s.a)) return true;
  if (d2 == 0 && on_segment(p, q, s.b)) return true;
  if (d3 == 0 && on_segment(s.a, s.b, p)) return true;
  if (d4 == 0 && on_segment(s.a, s.b, q)) return true;
  return false;
}

double angle_diff(double a, double b) {
  double d = std::fmod(a - b + kPi, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return std::abs(d - kPi);
}

bool beam_covers(Vec2 from, Vec2 to, double bore, double theta) {
  const Vec2 d = to - from;
  if (d.x == 0.0 && d.y == 0.0) return true;  // degenerate: on top of it
  return angle_diff(std::atan2(d.y, d.x), bore) <= 0.5 * theta;
}

}  // namespace mmwave
