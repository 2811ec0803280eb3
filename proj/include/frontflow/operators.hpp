#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "frontflow/field.hpp"
#include "frontflow/flow.hpp"

namespace frontflow {

inline std::array<double, 3> require_unit(const std::array<double, 3>& e,
                                          int dim) {
  double n2 = 0.0;
  for (int a = 0; a < 3; ++a) n2 += e[a] * e[a];
  for (int a = dim; a < 3; ++a)
    if (e[a] != 0.0)
      throw std::invalid_argument("direction has components beyond dim");
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
    throw std::invalid_argument("direction must be a unit vector");
  return e;
}

namespace detail {

/// Advection-diffusion-reaction operator
///   G phi = (sigma - Laplace) phi + adv u.grad phi + drift e.grad phi
///           - pot (u.e) phi
/// discretized spectrally with 3/2-rule dealiasing of the products, together
/// with the symmetrically preconditioned form
///   T y = y + S^{-1} R S^{-1} y,   S = (sigma - Laplace)^{1/2},  R = G - (sigma - Laplace),
/// whose advective part is exactly skew-adjoint. apply_* methods reuse
/// internal scratch space and must not be called concurrently on one instance.
class AdvectionOperator {
 public:
  AdvectionOperator(const FlowField& flow, const std::array<double, 3>& e,
                    double adv, double drift, double pot, bool project_mean)
      : grid_(flow.grid),
        pgrid_(padded_grid(flow.grid)),
        e_(e),
        adv_(adv),
        drift_(drift),
        pot_(pot),
        project_mean_(project_mean) {
    const bool needs_padding = adv_ != 0.0 || pot_ != 0.0;
    if (needs_padding) {
      Spectrum tmp;
      u_pad_.resize(grid_.dim);
      for (int a = 0; a < grid_.dim; ++a) {
        pad_spectrum(grid_, *flow.velocity.comp[a].spectrum(), pgrid_, tmp);
        fft::inverse(pgrid_, tmp, u_pad_[a]);
      }
      if (pot_ != 0.0) {
        const ScalarField ue = direction_component(flow.velocity, e_);
        pad_spectrum(grid_, *ue.spectrum(), pgrid_, tmp);
        fft::inverse(pgrid_, tmp, ue_pad_);
      }
    }
    set_sigma(0.0);
  }

  const Grid& grid() const { return grid_; }
  double sigma() const { return sigma_; }

  void set_sigma(double sigma) {
    sigma_ = sigma;
    const std::size_t m = grid_.points();
    diag_.resize(m);
    inv_sqrt_diag_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double d = sigma_ + sq_wavenumber(grid_, i);
      diag_[i] = d;
      inv_sqrt_diag_[i] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
    }
    if (project_mean_) inv_sqrt_diag_[0] = 0.0;
  }

  /// out = G in (physical in/out), with the currently set sigma.
  void apply_full(const std::vector<double>& in, std::vector<double>& out) {
    fft::forward(grid_, in, zh_);
    apply_r(zh_, wh_, /*adjoint=*/false);
    for (std::size_t i = 0; i < zh_.size(); ++i) wh_[i] += diag_[i] * zh_[i];
    if (project_mean_) wh_[0] = 0.0;
    fft::inverse(grid_, wh_, out);
  }

  void apply_T(const std::vector<double>& in, std::vector<double>& out) {
    apply_transformed(in, out, false);
  }
  void apply_Tt(const std::vector<double>& in, std::vector<double>& out) {
    apply_transformed(in, out, true);
  }

  /// y = S phi (physical), the change of variables into the preconditioned
  /// system; to_field inverts it.
  void to_transformed(const std::vector<double>& phi,
                      std::vector<double>& y) {
    fft::forward(grid_, phi, zh_);
    for (std::size_t i = 0; i < zh_.size(); ++i)
      zh_[i] = inv_sqrt_diag_[i] > 0.0 ? zh_[i] / inv_sqrt_diag_[i] : 0.0;
    zero_nyquist(grid_, zh_);
    fft::inverse(grid_, zh_, y);
  }

  void from_transformed(const std::vector<double>& y,
                        std::vector<double>& phi) {
    fft::forward(grid_, y, zh_);
    for (std::size_t i = 0; i < zh_.size(); ++i) zh_[i] *= inv_sqrt_diag_[i];
    zero_nyquist(grid_, zh_);
    fft::inverse(grid_, zh_, phi);
  }

 private:
  void apply_transformed(const std::vector<double>& in,
                         std::vector<double>& out, bool adjoint) {
    fft::forward(grid_, in, yh_);
    zero_nyquist(grid_, yh_);
    zh_.resize(yh_.size());
    for (std::size_t i = 0; i < yh_.size(); ++i)
      zh_[i] = yh_[i] * inv_sqrt_diag_[i];
    apply_r(zh_, wh_, adjoint);
    for (std::size_t i = 0; i < yh_.size(); ++i)
      yh_[i] += wh_[i] * inv_sqrt_diag_[i];
    fft::inverse(grid_, yh_, out);
  }

  /// out = R in (spectral): R = adv u.grad + drift e.grad - pot (u.e);
  /// the adjoint flips the sign of the two (skew) transport terms.
  void apply_r(const Spectrum& in, Spectrum& out, bool adjoint) {
    const std::size_t m = grid_.points();
    out.assign(m, 0.0);
    const double s = adjoint ? -1.0 : 1.0;

    if (adv_ != 0.0 || pot_ != 0.0) {
      acc_.assign(pgrid_.points(), 0.0);
      if (adv_ != 0.0) {
        grad_.resize(m);
        for (int a = 0; a < grid_.dim; ++a) {
          for (std::size_t i = 0; i < m; ++i) {
            const auto k = grid_.wavevector(i);
            grad_[i] = in[i] * std::complex<double>(0.0, two_pi * k[a]);
          }
          pad_spectrum(grid_, grad_, pgrid_, pad_);
          fft::inverse(pgrid_, pad_, phys_);
          const double c = s * adv_;
          for (std::size_t i = 0; i < phys_.size(); ++i)
            acc_[i] += c * u_pad_[a][i] * phys_[i];
        }
      }
      if (pot_ != 0.0) {
        pad_spectrum(grid_, in, pgrid_, pad_);
        fft::inverse(pgrid_, pad_, phys_);
        for (std::size_t i = 0; i < phys_.size(); ++i)
          acc_[i] -= pot_ * ue_pad_[i] * phys_[i];
      }
      fft::forward(pgrid_, acc_, pad_);
      truncate_spectrum(pgrid_, pad_, grid_, out);
    }

    if (drift_ != 0.0) {
      for (std::size_t i = 0; i < m; ++i) {
        const auto k = grid_.wavevector(i);
        double ke = 0.0;
        for (int a = 0; a < grid_.dim; ++a) ke += e_[a] * k[a];
        out[i] += in[i] * std::complex<double>(0.0, s * drift_ * two_pi * ke);
      }
    }
    zero_nyquist(grid_, out);
  }

  Grid grid_, pgrid_;
  std::array<double, 3> e_;
  double adv_, drift_, pot_, sigma_ = 0.0;
  bool project_mean_;
  std::vector<std::vector<double>> u_pad_;
  std::vector<double> ue_pad_;
  std::vector<double> diag_, inv_sqrt_diag_;
  // scratch
  Spectrum yh_, zh_, wh_, pad_, grad_;
  std::vector<double> phys_, acc_;
};

}  // namespace detail

}  // namespace frontflow
