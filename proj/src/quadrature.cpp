#include "mmwave/quadrature.hpp"

#include <cmath>

#include "mmwave/model.hpp"

namespace mmwave {

namespace {

constexpr int kMaxDepth = 40;

struct Ctx {
  const std::function<double(double)>& f;
  long evaluations = 0;
  double error = 0.0;
  bool failed = false;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(Ctx& c, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = c.f(lm);
  const double frm = c.f(rm);
  c.evaluations += 2;

  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;

  // |delta|/15 is the standard Richardson estimate of the refined error
  if (std::abs(delta) <= 15.0 * tol || depth >= kMaxDepth) {
    const double err = std::abs(delta) / 15.0;
    if (!(err <= tol)) c.failed = true;  // also trips on NaN
    c.error += std::isnan(err) ? 0.0 : err;
    return left + right + delta / 15.0;
  }
  const double lv = adapt(c, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
  const double rv = adapt(c, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  return lv + rv;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol) {
  if (!(abs_tol > 0.0)) {
    throw Error(ErrorCode::InvalidParameter,
                "quadrature tolerance must be positive");
  }
  if (a == b) return {0.0, 0.0, 0};

  Ctx c{f};
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  c.evaluations = 3;
  const double whole = simpson(a, b, fa, fm, fb);
  const double value = adapt(c, a, b, fa, fm, fb, whole, abs_tol, 0);

  if (c.failed || !std::isfinite(value)) {
    throw Error(ErrorCode::QuadratureFailure,
                "integral did not converge to the requested tolerance");
  }
  return {value, c.error, c.evaluations};
}

}  // namespace mmwave
