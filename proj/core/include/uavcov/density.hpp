#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "uavcov/model.hpp"

namespace uavcov {

/// Uniform midpoint lattice over a region. Point p = ix * ny + iy sits at the
/// centre of its cell; every cell has the same area.
class Lattice {
 public:
  Lattice(const Region& region, const GridSpec& grid);

  const Region& region() const { return region_; }
  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return grid_.size(); }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double cell_area() const { return dx_ * dy_; }

  double x(std::size_t p) const { return xs_[p / grid_.ny]; }
  double y(std::size_t p) const { return ys_[p % grid_.ny]; }
  std::size_t index(std::size_t ix, std::size_t iy) const { return ix * grid_.ny + iy; }

 private:
  Region region_;
  GridSpec grid_;
  double dx_;
  double dy_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Grid points owned by one UAV. Quadrature weights come from the lattice.
struct Cell {
  std::vector<std::size_t> points;

  bool empty() const { return points.empty(); }
  static Cell whole(const Lattice& lattice);
  static Cell inside(const Lattice& lattice, const Region& rect);
};

/// User density over a region, normalized to unit mass on its lattice.
///
/// The truncated Gaussian is normalized numerically (midpoint sum over the
/// lattice) so any rectangle and any grid integrate to exactly one; the
/// density at a point is the unnormalized Gaussian divided by that sum.
class DensityField {
 public:
  DensityField(const DensitySpec& spec, const Region& region, const GridSpec& grid);

  const DensitySpec& spec() const { return spec_; }
  const Lattice& lattice() const { return lattice_; }
  double norm() const { return norm_; }

  /// Density in 1/m^2. Throws OutOfRegion outside the region.
  double at(double x, double y) const;

  /// Probability mass carried by lattice point p (density x cell area).
  double mass(std::size_t p) const { return point_mass_[p]; }
  std::span<const double> masses() const { return point_mass_; }

 private:
  double shape(double x, double y) const;

  DensitySpec spec_;
  Lattice lattice_;
  double norm_ = 1.0;
  std::vector<double> point_mass_;
};

using WeightFn = std::function<double(double x, double y)>;

/// Midpoint-rule integral of weight_fn * f over the cell.
double integrate(const DensityField& f, const Cell& cell, const WeightFn& weight_fn);

/// Same over the whole region.
double integrate(const DensityField& f, const WeightFn& weight_fn);

/// Expected user count N * Int_cell f; zero for an empty cell.
double expected_users(const DensityField& f, const Cell& cell, double n_users);

/// Deterministic pairwise sum.
double pairwise_sum(std::span<const double> values);

}  // namespace uavcov
