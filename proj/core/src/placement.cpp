#include "uavcov/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "uavcov/channel.hpp"
#include "uavcov/errors.hpp"

namespace uavcov {
namespace {

constexpr double kMinCellMass = 1e-12;

// Cell points with nonzero mass, flattened for the hot loops.
struct WeightedPoints {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> w;
};

WeightedPoints gather(const DensityField& f, const Cell& cell) {
  WeightedPoints pts;
  const auto& lat = f.lattice();
  for (std::size_t p : cell.points) {
    const double m = f.mass(p);
    if (m == 0.0) continue;
    pts.x.push_back(lat.x(p));
    pts.y.push_back(lat.y(p));
    pts.w.push_back(m);
  }
  return pts;
}

double loss_integral(const Environment& env, const WeightedPoints& pts, double ux, double uy,
                     double h) {
  std::vector<double> terms(pts.w.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double dx = pts.x[k] - ux;
    const double dy = pts.y[k] - uy;
    terms[k] = mean_path_loss(env, LinkGeometry::from(dx * dx + dy * dy, h)) * pts.w[k];
  }
  return pairwise_sum(terms);
}

// Mass moments of a cell about a local origin.
struct Moments {
  double m = 0, x = 0, y = 0, xx = 0, yy = 0, xy = 0;
  double xxx = 0, yyy = 0, xyy = 0, xxy = 0;
};

Moments moments(const WeightedPoints& pts, double ox, double oy) {
  Moments s;
  for (std::size_t k = 0; k < pts.w.size(); ++k) {
    const double X = pts.x[k] - ox;
    const double Y = pts.y[k] - oy;
    const double w = pts.w[k];
    s.m += w;
    s.x += w * X;
    s.y += w * Y;
    s.xx += w * X * X;
    s.yy += w * Y * Y;
    s.xy += w * X * Y;
    s.xxx += w * X * X * X;
    s.yyy += w * Y * Y * Y;
    s.xyy += w * X * Y * Y;
    s.xxy += w * X * X * Y;
  }
  return s;
}

// One axis of the system: F-moments along the solved axis (u) and the
// orthogonal axis (v), plus the orthogonal unknown.
struct AxisMoments {
  double m, u, uu, uuu, v, vv, uv, uvv;
};

struct AxisCubic {
  std::array<double, 4> c;  // cubic coefficients in the solved unknown
  double dc2_dv;            // d(c[2])/d(other unknown)
  double dc3_dv;            // d(c[3])/d(other unknown)
};

AxisCubic axis_cubic(const AxisMoments& s, double other, double q, double lambda, double h,
                     CoefficientForm form) {
  const double h2 = h * h;
  // Int (v - other)^2 f and Int u (v - other)^2 f
  const double fvv = s.vv - 2.0 * other * s.v + other * other * s.m;
  const double fuvv = s.uvv - 2.0 * other * s.uv + other * other * s.u;
  const double dfvv = -2.0 * s.v + 2.0 * other * s.m;
  const double dfuvv = -2.0 * s.uv + 2.0 * other * s.u;

  AxisCubic out{};
  out.c[0] = 4.0 * lambda * s.m;
  out.c[1] = -12.0 * lambda * s.u;
  if (form == CoefficientForm::kDerived) {
    out.c[2] = (2.0 * q + 2.0 * lambda * h2) * s.m + 12.0 * lambda * s.uu + 4.0 * lambda * fvv;
    out.c[3] = -((2.0 * q + 2.0 * lambda * h2) * s.u + 4.0 * lambda * s.uuu + 4.0 * lambda * fuvv);
    out.dc2_dv = 4.0 * lambda * dfvv;
    out.dc3_dv = -4.0 * lambda * dfuvv;
  } else {
    out.c[2] = (2.0 * q + 4.0 * q * h2) * s.m + 12.0 * lambda * s.uu + 4.0 * lambda * fuvv;
    out.c[3] = -(2.0 * q * s.u + 4.0 * lambda * s.uuu + 4.0 * lambda * h2 * s.u +
                 4.0 * lambda * fuvv);
    out.dc2_dv = 4.0 * lambda * dfuvv;
    out.dc3_dv = -4.0 * lambda * dfuvv;
  }
  return out;
}

double cubic(const std::array<double, 4>& c, double t) {
  return ((c[0] * t + c[1]) * t + c[2]) * t + c[3];
}

double cubic_scale(const std::array<double, 4>& c, double s) {
  return std::abs(c[0]) * s * s * s + std::abs(c[1]) * s * s + std::abs(c[2]) * s +
         std::abs(c[3]);
}

void check_altitude(double h) {
  if (!(h >= 100.0 && h <= 2000.0)) {
    throw DomainError("newton_raphson_location: h outside [100, 2000] m");
  }
}

struct LocalFrame {
  WeightedPoints pts;
  Region box;
  double ox, oy, span;
  Moments mom;
};

LocalFrame local_frame(const DensityField& f, const Cell& cell) {
  LocalFrame lf;
  lf.pts = gather(f, cell);
  lf.box = bounding_box(f.lattice(), cell);
  lf.ox = 0.5 * (lf.box.x_lo + lf.box.x_hi);
  lf.oy = 0.5 * (lf.box.y_lo + lf.box.y_hi);
  lf.span = std::max(lf.box.width(), lf.box.height());
  lf.mom = moments(lf.pts, lf.ox, lf.oy);
  if (!(lf.mom.m >= kMinCellMass)) throw EmptyCell("cell carries no user mass");
  return lf;
}

CubicSystemValue evaluate_local(const Environment& env, const LocalFrame& lf, double h,
                                double X, double Y, const NewtonOptions& opts) {
  const double q = env.eta + (1.0 - env.eta) * los_surrogate_intercept(h);
  const double lambda = opts.zero_slope ? 0.0 : (1.0 - env.eta) * los_surrogate_slope(h);
  const Moments& s = lf.mom;

  const AxisMoments ax{s.m, s.x, s.xx, s.xxx, s.y, s.yy, s.xy, s.xyy};
  const AxisMoments ay{s.m, s.y, s.yy, s.yyy, s.x, s.xx, s.xy, s.xxy};
  const AxisCubic cx = axis_cubic(ax, Y, q, lambda, h, opts.form);
  const AxisCubic cy = axis_cubic(ay, X, q, lambda, h, opts.form);

  CubicSystemValue v;
  v.a = cx.c;
  v.b = cy.c;
  v.g1 = cubic(cx.c, X);
  v.g2 = cubic(cy.c, Y);
  v.jacobian = {3.0 * cx.c[0] * X * X + 2.0 * cx.c[1] * X + cx.c[2],
                cx.dc2_dv * X + cx.dc3_dv,
                cy.dc2_dv * Y + cy.dc3_dv,
                3.0 * cy.c[0] * Y * Y + 2.0 * cy.c[1] * Y + cy.c[2]};
  const double sx = cubic_scale(cx.c, std::max(lf.span, std::abs(X)));
  const double sy = cubic_scale(cy.c, std::max(lf.span, std::abs(Y)));
  const double r1 = sx > 0.0 ? std::abs(v.g1) / sx : std::abs(v.g1);
  const double r2 = sy > 0.0 ? std::abs(v.g2) / sy : std::abs(v.g2);
  v.residual = std::max(r1, r2);
  return v;
}

bool in_box(const Region& box, double x, double y) { return box.contains(x, y); }

}  // namespace

Region bounding_box(const Lattice& lattice, const Cell& cell) {
  if (cell.empty()) throw EmptyCell("bounding_box: empty cell");
  Region box{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t p : cell.points) {
    box.x_lo = std::min(box.x_lo, lattice.x(p));
    box.x_hi = std::max(box.x_hi, lattice.x(p));
    box.y_lo = std::min(box.y_lo, lattice.y(p));
    box.y_hi = std::max(box.y_hi, lattice.y(p));
  }
  return box;
}

double cell_loss_integral(const Environment& env, const UavState& uav, const Cell& cell,
                          const DensityField& f) {
  return loss_integral(env, gather(f, cell), uav.x, uav.y, uav.h);
}

double expected_power_over_cell(const Environment& env, const UavState& uav, const Cell& cell,
                                const DensityField& f, double w, double beta) {
  return min_power_per_user(env, w, beta, cell_loss_integral(env, uav, cell, f));
}

Point2 centroid_location(const DensityField& f, const Cell& cell) {
  const auto& lat = f.lattice();
  std::vector<double> m, mx, my;
  m.reserve(cell.points.size());
  mx.reserve(cell.points.size());
  my.reserve(cell.points.size());
  for (std::size_t p : cell.points) {
    m.push_back(f.mass(p));
    mx.push_back(f.mass(p) * lat.x(p));
    my.push_back(f.mass(p) * lat.y(p));
  }
  const double mass = pairwise_sum(m);
  if (!(mass >= kMinCellMass)) throw EmptyCell("centroid_location: cell carries no user mass");
  return {pairwise_sum(mx) / mass, pairwise_sum(my) / mass};
}

CubicSystemValue evaluate_cubic_system(const Environment& env, const DensityField& f,
                                       const Cell& cell, double h, double x, double y,
                                       const NewtonOptions& opts) {
  check_altitude(h);
  const LocalFrame lf = local_frame(f, cell);
  return evaluate_local(env, lf, h, x - lf.ox, y - lf.oy, opts);
}

PlacementResult newton_raphson_location(const Environment& env, const DensityField& f,
                                        const Cell& cell, double h,
                                        const NewtonOptions& opts) {
  check_altitude(h);
  const LocalFrame lf = local_frame(f, cell);
  const Region box{lf.box.x_lo - lf.ox, lf.box.x_hi - lf.ox, lf.box.y_lo - lf.oy,
                   lf.box.y_hi - lf.oy};

  double X = lf.mom.x / lf.mom.m;
  double Y = lf.mom.y / lf.mom.m;
  PlacementResult res;
  res.method = PlacementMethod::kNewtonRaphson;

  for (int it = 0; it <= opts.max_iterations; ++it) {
    const CubicSystemValue v = evaluate_local(env, lf, h, X, Y, opts);
    if (!std::isfinite(v.residual)) break;
    if (v.residual < opts.tolerance) {
      res.x_opt = X + lf.ox;
      res.y_opt = Y + lf.oy;
      res.iterations = it;
      res.residual = v.residual;
      return res;
    }
    if (it == opts.max_iterations) break;

    const auto& J = v.jacobian;
    const double det = J[0] * J[3] - J[1] * J[2];
    if (det == 0.0 || !std::isfinite(det)) break;
    double sx = -(J[3] * v.g1 - J[1] * v.g2) / det;
    double sy = -(-J[2] * v.g1 + J[0] * v.g2) / det;
    int halvings = 0;
    while (!in_box(box, X + sx, Y + sy) && halvings < 60) {
      sx *= 0.5;
      sy *= 0.5;
      ++halvings;
    }
    if (!in_box(box, X + sx, Y + sy)) break;
    X += sx;
    Y += sy;
  }
  throw NoConvergence("newton_raphson_location: no root within tolerance");
}

PlacementResult brute_force_location(const Environment& env, const DensityField& f,
                                     const Cell& cell, double h, std::size_t resolution) {
  if (resolution < 8) throw DomainError("brute_force_location: resolution must be >= 8");
  const WeightedPoints pts = gather(f, cell);
  const Region box = bounding_box(f.lattice(), cell);
  const double n = static_cast<double>(resolution - 1);
  const double px = box.width() / n;
  const double py = box.height() / n;

  double best = std::numeric_limits<double>::infinity();
  double bx = 0.5 * (box.x_lo + box.x_hi);
  double by = 0.5 * (box.y_lo + box.y_hi);
  int evaluations = 0;
  auto consider = [&](double x, double y) {
    const double v = loss_integral(env, pts, x, y, h);
    ++evaluations;
    if (v < best) {
      best = v;
      bx = x;
      by = y;
    }
  };

  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; j < resolution; ++j) {
      consider(box.x_lo + static_cast<double>(i) * px, box.y_lo + static_cast<double>(j) * py);
    }
  }
  if (expected_users(f, cell, 1.0) >= kMinCellMass) {
    const Point2 c = centroid_location(f, cell);
    consider(c.x, c.y);
  }
  const double cx = bx;
  const double cy = by;
  for (int i = -4; i <= 4; ++i) {
    for (int j = -4; j <= 4; ++j) {
      if (i == 0 && j == 0) continue;
      const double x = cx + i * 0.25 * px;
      const double y = cy + j * 0.25 * py;
      if (box.contains(x, y)) consider(x, y);
    }
  }

  PlacementResult res;
  res.x_opt = bx;
  res.y_opt = by;
  res.method = PlacementMethod::kBruteForce;
  res.iterations = evaluations;
  return res;
}

PlacementResult place_uav(const Environment& env, const DensityField& f, const Cell& cell,
                          const UavState& uav, PlacementMethod method) {
  switch (method) {
    case PlacementMethod::kCentroid: {
      const Point2 c = centroid_location(f, cell);
      return {c.x, c.y, PlacementMethod::kCentroid, 0, 0.0};
    }
    case PlacementMethod::kNewtonRaphson:
      try {
        return newton_raphson_location(env, f, cell, uav.h);
      } catch (const NoConvergence&) {
      } catch (const DomainError&) {
      }
      [[fallthrough]];
    case PlacementMethod::kBruteForce:
      return brute_force_location(env, f, cell, uav.h);
  }
  return brute_force_location(env, f, cell, uav.h);
}

}  // namespace uavcov
