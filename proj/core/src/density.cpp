#include "uavcov/density.hpp"

#include <cmath>

#include "uavcov/errors.hpp"

namespace uavcov {

Lattice::Lattice(const Region& region, const GridSpec& grid)
    : region_(region),
      grid_(grid),
      dx_(region.width() / static_cast<double>(grid.nx)),
      dy_(region.height() / static_cast<double>(grid.ny)) {
  if (grid.nx < 1 || grid.ny < 1) throw DomainError("Lattice: empty grid");
  xs_.resize(grid.nx);
  ys_.resize(grid.ny);
  for (std::size_t i = 0; i < grid.nx; ++i) {
    xs_[i] = region.x_lo + (static_cast<double>(i) + 0.5) * dx_;
  }
  for (std::size_t j = 0; j < grid.ny; ++j) {
    ys_[j] = region.y_lo + (static_cast<double>(j) + 0.5) * dy_;
  }
}

Cell Cell::whole(const Lattice& lattice) {
  Cell c;
  c.points.resize(lattice.size());
  for (std::size_t p = 0; p < lattice.size(); ++p) c.points[p] = p;
  return c;
}

Cell Cell::inside(const Lattice& lattice, const Region& rect) {
  Cell c;
  for (std::size_t p = 0; p < lattice.size(); ++p) {
    if (rect.contains(lattice.x(p), lattice.y(p))) c.points.push_back(p);
  }
  return c;
}

DensityField::DensityField(const DensitySpec& spec, const Region& region, const GridSpec& grid)
    : spec_(spec), lattice_(region, grid), point_mass_(lattice_.size()) {
  if (spec.kind == DensityKind::kTruncatedGaussian &&
      !(spec.sigma_x > 0.0 && spec.sigma_y > 0.0)) {
    throw DomainError("DensityField: sigma must be positive");
  }
  std::vector<double> raw(lattice_.size());
  for (std::size_t p = 0; p < raw.size(); ++p) {
    raw[p] = shape(lattice_.x(p), lattice_.y(p)) * lattice_.cell_area();
  }
  norm_ = pairwise_sum(raw);
  if (!(norm_ > 0.0) || !std::isfinite(norm_)) {
    throw DomainError("DensityField: density vanishes on the region grid");
  }
  for (std::size_t p = 0; p < raw.size(); ++p) point_mass_[p] = raw[p] / norm_;
}

double DensityField::shape(double x, double y) const {
  if (spec_.kind == DensityKind::kUniform) return 1.0;
  const double u = (x - spec_.mu_x) / spec_.sigma_x;
  const double v = (y - spec_.mu_y) / spec_.sigma_y;
  return std::exp(-0.5 * u * u) * std::exp(-0.5 * v * v);
}

double DensityField::at(double x, double y) const {
  if (!lattice_.region().contains(x, y)) {
    throw OutOfRegion("DensityField::at: point outside region");
  }
  if (spec_.kind == DensityKind::kUniform) return 1.0 / lattice_.region().area();
  return shape(x, y) / norm_;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 64;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double integrate(const DensityField& f, const Cell& cell, const WeightFn& weight_fn) {
  const auto& lat = f.lattice();
  std::vector<double> terms;
  terms.reserve(cell.points.size());
  for (std::size_t p : cell.points) {
    terms.push_back(weight_fn(lat.x(p), lat.y(p)) * f.mass(p));
  }
  return pairwise_sum(terms);
}

double integrate(const DensityField& f, const WeightFn& weight_fn) {
  return integrate(f, Cell::whole(f.lattice()), weight_fn);
}

double expected_users(const DensityField& f, const Cell& cell, double n_users) {
  if (cell.empty()) return 0.0;
  return n_users * integrate(f, cell, [](double, double) { return 1.0; });
}

}  // namespace uavcov
