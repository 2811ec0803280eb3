#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontflow {

/// Uniform periodic grid on the unit torus [0,1)^dim.
///
/// Axis sizes are powers of two so that transforms, 3/2-rule padding and
/// resolution doubling stay exact. dim 1 grids exist only as transverse
/// profiles of shear flows; user-facing grids are 2-D or 3-D (make_grid).
struct Grid {
  int dim = 0;
  std::array<int, 3> n{1, 1, 1};  // points per axis, trailing axes = 1

  /// Sharp constant in ||w||_2 <= C ||grad w||_2 for mean-zero w on the torus
  /// (lowest nonzero wavenumber is 2*pi).
  static constexpr double poincare_constant = 1.0 / (2.0 * std::numbers::pi);

  std::size_t points() const {
    return static_cast<std::size_t>(n[0]) * n[1] * n[2];
  }
  double spacing(int axis) const { return 1.0 / n[axis]; }
  double coordinate(int axis, int index) const { return index * spacing(axis); }

  /// Row-major flat index (last axis contiguous, matching the FFT layout).
  std::size_t index(int i0, int i1 = 0, int i2 = 0) const {
    return (static_cast<std::size_t>(i0) * n[1] + i1) * n[2] + i2;
  }

  /// Integer wavevector of a flat spectral index; component j lies in
  /// [-n[j]/2, n[j]/2 - 1] (frequency bin m maps to m or m - n[j]).
  std::array<int, 3> wavevector(std::size_t flat) const {
    std::array<int, 3> k{0, 0, 0};
    int i2 = static_cast<int>(flat % n[2]);
    int i1 = static_cast<int>((flat / n[2]) % n[1]);
    int i0 = static_cast<int>(flat / (static_cast<std::size_t>(n[1]) * n[2]));
    const std::array<int, 3> idx{i0, i1, i2};
    for (int a = 0; a < 3; ++a)
      k[a] = idx[a] <= n[a] / 2 - 1 || n[a] == 1 ? idx[a] : idx[a] - n[a];
    return k;
  }

  bool operator==(const Grid&) const = default;
};

namespace detail {

inline bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

inline Grid make_grid_any_dim(int dim, const std::vector<int>& n_per_axis) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("grid: dim must be 1, 2 or 3");
  if (static_cast<int>(n_per_axis.size()) != dim)
    throw std::invalid_argument("grid: need one axis size per dimension");
  Grid g;
  g.dim = dim;
  for (int a = 0; a < dim; ++a) {
    const int n = n_per_axis[a];
    if (!is_power_of_two(n) || n < 8 || n > 4096)
      throw std::invalid_argument("grid: axis size " + std::to_string(n) +
                                  " must be a power of two in [8, 4096]");
    g.n[a] = n;
  }
  return g;
}

}  // namespace detail

/// Public constructor: periodic grid on the 2- or 3-torus.
inline Grid make_grid(int dim, const std::vector<int>& n_per_axis) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("make_grid: dim must be 2 or 3");
  return detail::make_grid_any_dim(dim, n_per_axis);
}

/// Transverse-profile grids (the (dim-1)-torus of a shear flow) may be 1-D.
inline Grid make_profile_grid(const std::vector<int>& n_per_axis) {
  return detail::make_grid_any_dim(static_cast<int>(n_per_axis.size()),
                                   n_per_axis);
}

}  // namespace frontflow
