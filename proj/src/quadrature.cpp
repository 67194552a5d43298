#include "advgame/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace advgame {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  QuadratureResult& out;

  double eval(double x) {
    ++out.evaluations;
    return f(x);
  }

  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
      if (depth <= 0 && std::abs(delta) > 15.0 * tol) out.depth_limited = true;
      out.error_estimate += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol, int max_depth) {
  if (!(tol > 0) || max_depth < 0) throw std::invalid_argument("bad quadrature settings");
  QuadratureResult out;
  if (a == b) return out;
  Simpson s{f, out};
  const double fa = s.eval(a), fb = s.eval(b), fm = s.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  out.value = s.refine(a, b, fa, fm, fb, whole, tol, max_depth);
  return out;
}

}  // namespace advgame
