// Orientation / in-circle predicates: a floating-point filter with Shewchuk's
// static error bounds, falling back to exact rational evaluation (every
// double is an exact rational, so the fallback sign is the true sign).

#include <gmpxx.h>

#include <cmath>
#include <limits>

#include "kissgeo/error.hpp"
#include "kissgeo/geometry.hpp"

namespace kissgeo::geom {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kInCircleBound = (10.0 + 96.0 * kEps) * kEps;

int sign_of(const mpq_class& v) { return sgn(v); }

int orientation_exact(Point p, Point q, Point r) {
  const mpq_class px(p.x), py(p.y), qx(q.x), qy(q.y), rx(r.x), ry(r.y);
  const mpq_class det = (px - rx) * (qy - ry) - (py - ry) * (qx - rx);
  return sign_of(det);
}

int incircle_exact(Point a, Point b, Point c, Point d) {
  const mpq_class adx = mpq_class(a.x) - d.x, ady = mpq_class(a.y) - d.y;
  const mpq_class bdx = mpq_class(b.x) - d.x, bdy = mpq_class(b.y) - d.y;
  const mpq_class cdx = mpq_class(c.x) - d.x, cdy = mpq_class(c.y) - d.y;
  const mpq_class alift = adx * adx + ady * ady;
  const mpq_class blift = bdx * bdx + bdy * bdy;
  const mpq_class clift = cdx * cdx + cdy * cdy;
  const mpq_class det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                        clift * (adx * bdy - bdx * ady);
  return sign_of(det);
}

}  // namespace

int orientation(Point p, Point q, Point r) {
  const double detleft = (p.x - r.x) * (q.y - r.y);
  const double detright = (p.y - r.y) * (q.x - r.x);
  const double det = detleft - detright;
  const double detsum = std::abs(detleft) + std::abs(detright);
  const double bound = kOrientBound * detsum;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  if (detsum == 0.0) return 0;
  return orientation_exact(p, q, r);
}

int incircle_raw(Point a, Point b, Point c, Point d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kInCircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  if (permanent == 0.0) return 0;
  return incircle_exact(a, b, c, d);
}

int in_circumcircle(Point p, Point q, Point r, Point s) {
  if (orientation(p, q, r) <= 0)
    throw Error(ErrorKind::DegenerateTriangle, "in_circumcircle needs a counterclockwise non-degenerate triangle");
  return incircle_raw(p, q, r, s);
}

bool circumradius_below_one(Point p, Point q, Point r) {
  if (orientation(p, q, r) == 0) return false;
  // R < 1  <=>  |pq|^2 |qr|^2 |rp|^2 < 4 cross^2
  const Vec u = q - p, v = r - p, w = r - q;
  const double lhs = dot(u, u) * dot(v, v) * dot(w, w);
  const double c = cross(u, v);
  const double rhs = 4.0 * c * c;
  const double scale = std::max(lhs, rhs);
  if (lhs < rhs - 1e-12 * scale) return true;
  if (lhs > rhs + 1e-12 * scale) return false;
  const mpq_class px(p.x), py(p.y), qx(q.x), qy(q.y), rx(r.x), ry(r.y);
  const mpq_class ux = qx - px, uy = qy - py, vx = rx - px, vy = ry - py, wx = rx - qx, wy = ry - qy;
  const mpq_class el = (ux * ux + uy * uy) * (vx * vx + vy * vy) * (wx * wx + wy * wy);
  const mpq_class ec = ux * vy - uy * vx;
  return el < 4 * ec * ec;
}

}  // namespace kissgeo::geom
