#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontflow/field.hpp"
#include "frontflow/grid.hpp"

namespace frontflow {

enum class FlowKind { shear, cellular, fourier_general };

/// One Fourier mode of a profile or stream function: amplitude *
/// sin(2*pi*wavevector.x + phase). Wavevector entries beyond the carrier
/// field's dimension are ignored.
struct FourierMode {
  std::array<int, 3> wavevector{0, 0, 0};
  double amplitude = 0.0;
  double phase = 0.0;
};

/// Divergence-free periodic velocity field with unit-amplitude normalization
/// left to the caller; solver amplitudes A are always passed separately.
struct FlowField {
  Grid grid;
  FlowKind kind = FlowKind::fourier_general;
  VectorField velocity;
  int shear_axis = -1;
  /// Shear flows carry their transverse profile alpha on the (dim-1)-torus;
  /// transverse axes appear in increasing order.
  std::optional<ScalarField> shear_profile;
};

namespace detail {

inline void check_mode_band(const Grid& g, const std::array<int, 3>& k,
                            int dims) {
  for (int a = 0; a < dims; ++a)
    if (std::abs(k[a]) > g.n[a] / 2 - 1)
      throw std::invalid_argument(
          "flow mode wavevector exceeds the resolvable band");
}

}  // namespace detail

/// Shear flow u(x) = alpha(x') * e_axis with alpha given by sine modes on the
/// transverse torus. Modes with zero transverse wavevector are rejected
/// (they would give the flow a mean drift).
inline FlowField shear_flow(const Grid& grid,
                            const std::vector<FourierMode>& alpha_modes,
                            int axis = 0) {
  if (axis < 0 || axis >= grid.dim)
    throw std::invalid_argument("shear_flow: axis out of range");
  std::vector<int> trans_axes;
  for (int a = 0; a < grid.dim; ++a)
    if (a != axis) trans_axes.push_back(a);

  std::vector<int> trans_n;
  for (int a : trans_axes) trans_n.push_back(grid.n[a]);
  const Grid tgrid = make_profile_grid(trans_n);

  for (const auto& m : alpha_modes) {
    bool zero = true;
    for (int j = 0; j < tgrid.dim; ++j)
      if (m.wavevector[j] != 0) zero = false;
    if (zero)
      throw std::invalid_argument(
          "shear_flow: transverse wavevector must be nonzero");
    detail::check_mode_band(tgrid, m.wavevector, tgrid.dim);
  }

  auto alpha_at = [&](const std::array<double, 3>& xt) {
    double v = 0.0;
    for (const auto& m : alpha_modes) {
      double ph = m.phase;
      for (int j = 0; j < tgrid.dim; ++j)
        ph += detail::two_pi * m.wavevector[j] * xt[j];
      v += m.amplitude * std::sin(ph);
    }
    return v;
  };

  FlowField flow;
  flow.grid = grid;
  flow.kind = FlowKind::shear;
  flow.shear_axis = axis;
  flow.velocity = VectorField(grid);

  ScalarField profile(tgrid);
  {
    auto& pv = profile.mutable_values();
    for (int i0 = 0; i0 < tgrid.n[0]; ++i0)
      for (int i1 = 0; i1 < tgrid.n[1]; ++i1)
        for (int i2 = 0; i2 < tgrid.n[2]; ++i2)
          pv[tgrid.index(i0, i1, i2)] =
              alpha_at({tgrid.coordinate(0, i0), tgrid.coordinate(1, i1),
                        tgrid.coordinate(2, i2)});
  }
  flow.shear_profile = profile;

  ScalarField ualong(grid);
  {
    auto& uv = ualong.mutable_values();
    for (int i0 = 0; i0 < grid.n[0]; ++i0)
      for (int i1 = 0; i1 < grid.n[1]; ++i1)
        for (int i2 = 0; i2 < grid.n[2]; ++i2) {
          const std::array<int, 3> idx{i0, i1, i2};
          std::array<double, 3> xt{0.0, 0.0, 0.0};
          for (std::size_t j = 0; j < trans_axes.size(); ++j)
            xt[j] = grid.coordinate(trans_axes[j], idx[trans_axes[j]]);
          uv[grid.index(i0, i1, i2)] = alpha_at(xt);
        }
  }
  flow.velocity.comp[axis] = ualong;
  return flow;
}

/// 2-D flow from a stream function psi given by sine modes:
/// u = (-dpsi/dy, dpsi/dx). Divergence-free by construction.
inline FlowField flow_from_streamfunction(
    const Grid& grid, const std::vector<FourierMode>& psi_modes) {
  if (grid.dim != 2)
    throw std::invalid_argument(
        "flow_from_streamfunction: stream functions are 2-D");
  for (const auto& m : psi_modes) {
    if (m.wavevector[0] == 0 && m.wavevector[1] == 0)
      throw std::invalid_argument(
          "flow_from_streamfunction: wavevector must be nonzero");
    detail::check_mode_band(grid, m.wavevector, 2);
  }

  FlowField flow;
  flow.grid = grid;
  flow.kind = FlowKind::cellular;
  flow.velocity = VectorField(grid);
  auto& ux = flow.velocity.comp[0].mutable_values();
  auto& uy = flow.velocity.comp[1].mutable_values();
  for (int i0 = 0; i0 < grid.n[0]; ++i0)
    for (int i1 = 0; i1 < grid.n[1]; ++i1) {
      const double x = grid.coordinate(0, i0), y = grid.coordinate(1, i1);
      double vx = 0.0, vy = 0.0;
      for (const auto& m : psi_modes) {
        const double ph =
            detail::two_pi * (m.wavevector[0] * x + m.wavevector[1] * y) +
            m.phase;
        const double c = m.amplitude * std::cos(ph);
        vx -= detail::two_pi * m.wavevector[1] * c;  // -dpsi/dy
        vy += detail::two_pi * m.wavevector[0] * c;  // +dpsi/dx
      }
      ux[grid.index(i0, i1)] = vx;
      uy[grid.index(i0, i1)] = vy;
    }
  return flow;
}

/// General solenoidal flow from vector Fourier modes: each mode contributes
/// P_k a sin(2*pi*k.x + phase) with P_k the projection onto the plane
/// orthogonal to k, so every mode is individually divergence-free.
struct VectorMode {
  std::array<int, 3> wavevector{0, 0, 0};
  std::array<double, 3> amplitude{0.0, 0.0, 0.0};
  double phase = 0.0;
};

inline FlowField solenoidal_fourier_flow(const Grid& grid,
                                         const std::vector<VectorMode>& modes) {
  FlowField flow;
  flow.grid = grid;
  flow.kind = FlowKind::fourier_general;
  flow.velocity = VectorField(grid);

  std::vector<std::array<double, 3>> proj;
  for (const auto& m : modes) {
    double k2 = 0.0;
    for (int a = 0; a < grid.dim; ++a)
      k2 += static_cast<double>(m.wavevector[a]) * m.wavevector[a];
    if (k2 == 0.0)
      throw std::invalid_argument(
          "solenoidal_fourier_flow: wavevector must be nonzero");
    detail::check_mode_band(grid, m.wavevector, grid.dim);
    double ka = 0.0;
    for (int a = 0; a < grid.dim; ++a) ka += m.wavevector[a] * m.amplitude[a];
    std::array<double, 3> p{0.0, 0.0, 0.0};
    for (int a = 0; a < grid.dim; ++a)
      p[a] = m.amplitude[a] - ka * m.wavevector[a] / k2;
    proj.push_back(p);
  }

  for (int a = 0; a < grid.dim; ++a) {
    auto& uv = flow.velocity.comp[a].mutable_values();
    for (int i0 = 0; i0 < grid.n[0]; ++i0)
      for (int i1 = 0; i1 < grid.n[1]; ++i1)
        for (int i2 = 0; i2 < grid.n[2]; ++i2) {
          const std::array<double, 3> x{grid.coordinate(0, i0),
                                        grid.coordinate(1, i1),
                                        grid.coordinate(2, i2)};
          double v = 0.0;
          for (std::size_t j = 0; j < modes.size(); ++j) {
            double ph = modes[j].phase;
            for (int b = 0; b < grid.dim; ++b)
              ph += detail::two_pi * modes[j].wavevector[b] * x[b];
            v += proj[j][a] * std::sin(ph);
          }
          uv[grid.index(i0, i1, i2)] = v;
        }
  }
  return flow;
}

inline FlowField zero_flow(const Grid& grid) {
  FlowField flow;
  flow.grid = grid;
  flow.kind = FlowKind::fourier_general;
  flow.velocity = VectorField(grid);
  return flow;
}

/// The standard cellular flow with stream function (A/2pi) sin(2pix) sin(2piy),
/// i.e. u = amplitude * (-sin(2pix)cos(2piy), cos(2pix)sin(2piy)).
inline FlowField standard_cellular_flow(const Grid& grid,
                                        double amplitude = 1.0) {
  const double a = amplitude / (4.0 * std::numbers::pi);
  const double half_pi = std::numbers::pi / 2.0;
  return flow_from_streamfunction(
      grid, {FourierMode{{1, -1, 0}, a, half_pi},
             FourierMode{{1, 1, 0}, -a, half_pi}});
}

// ---------------------------------------------------------------------------

inline ScalarField divergence(const VectorField& u) {
  const Grid& g = u.grid;
  Spectrum out(g.points(), 0.0);
  for (int a = 0; a < g.dim; ++a) {
    const auto spec = u.comp[a].spectrum();
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto k = g.wavevector(i);
      out[i] += (*spec)[i] * std::complex<double>(0.0, detail::two_pi * k[a]);
    }
  }
  return ScalarField::from_spectrum(g, out);
}

/// u . grad(w), dealiased. Exactly skew:  <advect(u,f), g> = -<f, advect(u,g)>
/// for divergence-free u and band-limited f, g.
inline ScalarField advect(const VectorField& u, const ScalarField& w) {
  if (!(u.grid == w.grid()))
    throw std::invalid_argument("advect: grid mismatch");
  const Grid& g = u.grid;
  const Grid pg = detail::padded_grid(g);
  const auto wspec = w.spectrum();

  std::vector<double> acc(pg.points(), 0.0);
  Spectrum comp(g.points()), padded;
  std::vector<double> phys;
  for (int a = 0; a < g.dim; ++a) {
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const auto k = g.wavevector(i);
      comp[i] = (*wspec)[i] * std::complex<double>(0.0, detail::two_pi * k[a]);
    }
    detail::pad_spectrum(g, comp, pg, padded);
    fft::inverse(pg, padded, phys);
    detail::pad_spectrum(g, *u.comp[a].spectrum(), pg, padded);
    std::vector<double> up;
    fft::inverse(pg, padded, up);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += up[i] * phys[i];
  }
  Spectrum prod, trunc;
  fft::forward(pg, acc, prod);
  detail::truncate_spectrum(pg, prod, g, trunc);
  return ScalarField::from_spectrum(g, trunc);
}

/// Pointwise u(x).e for a constant unit vector e (a linear combination of
/// components, hence band-limited with no dealiasing needed).
inline ScalarField direction_component(const VectorField& u,
                                       const std::array<double, 3>& e) {
  ScalarField out(u.grid);
  auto& ov = out.mutable_values();
  for (int a = 0; a < u.grid.dim; ++a) {
    if (e[a] == 0.0) continue;
    const auto& cv = u.comp[a].values();
    for (std::size_t i = 0; i < ov.size(); ++i) ov[i] += e[a] * cv[i];
  }
  return out;
}

/// Pointwise speed bound sup_x |u(x)|_2, used by stability estimates.
inline double max_point_speed(const VectorField& u) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.grid.points(); ++i) {
    double s = 0.0;
    for (int a = 0; a < u.grid.dim; ++a) {
      const double v = u.comp[a].values()[i];
      s += v * v;
    }
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

struct FlowValidation {
  double div_residual = 0.0;       // ||div u||_2
  double div_relative = 0.0;       // ||div u||_2 / ||u||_2
  std::array<double, 3> mean_residuals{0.0, 0.0, 0.0};
  std::array<double, 3> max_speed{0.0, 0.0, 0.0};  // max |u_a| per axis
  double max_point_speed = 0.0;
  bool ok = false;
};

inline FlowValidation validate_flow(const FlowField& flow) {
  FlowValidation v;
  const auto& u = flow.velocity;
  double unorm2 = 0.0;
  for (int a = 0; a < flow.grid.dim; ++a) {
    const double n = l2_norm(u.comp[a]);
    unorm2 += n * n;
    v.mean_residuals[a] = std::abs(mean(u.comp[a]));
    v.max_speed[a] = max_abs(u.comp[a]);
  }
  const double unorm = std::sqrt(unorm2);
  v.div_residual = l2_norm(divergence(u));
  v.div_relative = unorm > 0.0 ? v.div_residual / unorm : 0.0;
  v.max_point_speed = frontflow::max_point_speed(u);
  v.ok = (unorm == 0.0 || v.div_relative <= 1e-10);
  for (int a = 0; a < flow.grid.dim; ++a)
    if (v.mean_residuals[a] > 1e-12) v.ok = false;
  return v;
}

}  // namespace frontflow
