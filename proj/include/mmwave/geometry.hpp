#pragma once

#include <cmath>

namespace mmwave {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

struct Segment {
  Vec2 a;
  Vec2 b;
};

// true when segment [p, q] and s share at least one point; touching at an
// endpoint counts (a grazing obstacle still blocks)
bool segments_intersect(Vec2 p, Vec2 q, const Segment& s);

// smallest absolute difference between two direction angles, in [0, pi]
double angle_diff(double a, double b);

// true when the direction from `from` toward `to` falls inside a beam of
// width theta aimed along direction `bore` (boundary inclusive; theta = 2*pi
// covers everything)
bool beam_covers(Vec2 from, Vec2 to, double bore, double theta);

}  // namespace mmwave
