#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "frontflow/fft.hpp"
#include "frontflow/grid.hpp"

namespace frontflow {

using Spectrum = std::vector<std::complex<double>>;

namespace detail {

inline std::mutex& field_cache_mutex() {
  static std::mutex m;
  return m;
}

/// Zero the Nyquist rows (k_a = -n_a/2). All constructors and operators keep
/// spectra inside the band |k_a| <= n_a/2 - 1, which makes grid quadrature of
/// quadratic products exact and derivative operators real.
inline void zero_nyquist(const Grid& g, Spectrum& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto k = g.wavevector(i);
    for (int a = 0; a < g.dim; ++a)
      if (g.n[a] > 1 && k[a] == -g.n[a] / 2) {
        s[i] = 0.0;
        break;
      }
  }
}

}  // namespace detail

/// Real scalar field on a torus grid. Physical point values are the source of
/// truth; the spectrum is a lazily computed cache, dropped on mutation.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0)
      : grid_(g), values_(g.points(), fill) {}
  ScalarField(const Grid& g, std::vector<double> values)
      : grid_(g), values_(std::move(values)) {
    if (values_.size() != grid_.points())
      throw std::invalid_argument("ScalarField: value count != grid points");
  }

  static ScalarField from_spectrum(const Grid& g, Spectrum spec) {
    if (spec.size() != g.points())
      throw std::invalid_argument("from_spectrum: size mismatch");
    detail::zero_nyquist(g, spec);
    ScalarField f(g);
    fft::inverse(g, spec, f.values_);
    f.spectrum_cache_ =
        std::make_shared<const Spectrum>(std::move(spec));
    return f;
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }

  /// Mutable access drops the spectral cache.
  std::vector<double>& mutable_values() {
    std::lock_guard<std::mutex> lock(detail::field_cache_mutex());
    spectrum_cache_.reset();
    return values_;
  }

  /// Spectral coefficients of the trigonometric interpolant (computed once,
  /// safe under concurrent readers).
  std::shared_ptr<const Spectrum> spectrum() const {
    {
      std::lock_guard<std::mutex> lock(detail::field_cache_mutex());
      if (spectrum_cache_) return spectrum_cache_;
    }
    auto spec = std::make_shared<Spectrum>();
    fft::forward(grid_, values_, *spec);
    std::shared_ptr<const Spectrum> owned = std::move(spec);
    std::lock_guard<std::mutex> lock(detail::field_cache_mutex());
    if (!spectrum_cache_) spectrum_cache_ = owned;
    return spectrum_cache_;
  }

 private:
  Grid grid_;
  std::vector<double> values_;
  mutable std::shared_ptr<const Spectrum> spectrum_cache_;
};

/// Real vector field: one scalar component per grid dimension.
struct VectorField {
  Grid grid;
  std::vector<ScalarField> comp;

  VectorField() = default;
  explicit VectorField(const Grid& g) : grid(g), comp(g.dim, ScalarField(g)) {}
};

// ---------------------------------------------------------------------------
// Quadrature functionals. The uniform-grid average is exact for trigonometric
// polynomials inside the band, so these agree with the continuum integrals
// for every field produced by the operators below.

inline double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.values().size());
}

inline double l2_inner(const ScalarField& f, const ScalarField& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("l2_inner: grid mismatch");
  double s = 0.0;
  const auto& a = f.values();
  const auto& b = g.values();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s / static_cast<double>(a.size());
}

inline double l2_norm(const ScalarField& f) {
  return std::sqrt(l2_inner(f, f));
}

inline double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------
// Spectral operators.

namespace detail {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// Grid carrying the 3/2-rule padding of g (sizes 3 n_a / 2).
inline Grid padded_grid(const Grid& g) {
  Grid p = g;
  for (int a = 0; a < g.dim; ++a) p.n[a] = 3 * g.n[a] / 2;
  return p;
}

inline Grid doubled_grid(const Grid& g) {
  Grid p = g;
  for (int a = 0; a < g.dim; ++a) p.n[a] = 2 * g.n[a];
  return p;
}

/// Embed a band-limited spectrum into a finer grid (zero padding).
inline void pad_spectrum(const Grid& src, const Spectrum& in, const Grid& dst,
                         Spectrum& out) {
  out.assign(dst.points(), 0.0);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == std::complex<double>(0.0)) continue;
    const auto k = src.wavevector(i);
    std::size_t j = 0;
    bool drop = false;
    for (int a = 0; a < 3; ++a) {
      if (src.n[a] > 1 && k[a] == -src.n[a] / 2) drop = true;  // Nyquist row
      const int idx = k[a] >= 0 ? k[a] : k[a] + dst.n[a];
      j = j * dst.n[a] + idx;
    }
    if (!drop) out[j] = in[i];
  }
}

/// Restrict a spectrum to a coarser grid (band truncation, Nyquist zeroed).
inline void truncate_spectrum(const Grid& src, const Spectrum& in,
                              const Grid& dst, Spectrum& out) {
  out.assign(dst.points(), 0.0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto k = dst.wavevector(j);
    bool nyq = false;
    std::size_t i = 0;
    for (int a = 0; a < 3; ++a) {
      if (dst.n[a] > 1 && k[a] == -dst.n[a] / 2) nyq = true;
      const int idx = k[a] >= 0 ? k[a] : k[a] + src.n[a];
      i = i * src.n[a] + idx;
    }
    if (!nyq) out[j] = in[i];
  }
}

inline double sq_wavenumber(const Grid& g, std::size_t flat) {
  const auto k = g.wavevector(flat);
  double s = 0.0;
  for (int a = 0; a < g.dim; ++a) s += static_cast<double>(k[a]) * k[a];
  return two_pi * two_pi * s;
}

}  // namespace detail

/// Spectral gradient; exact for band-limited fields.
inline VectorField gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto spec = f.spectrum();
  VectorField out(g);
  Spectrum comp(g.points());
  for (int a = 0; a < g.dim; ++a) {
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const auto k = g.wavevector(i);
      comp[i] = (*spec)[i] * std::complex<double>(0.0, detail::two_pi * k[a]);
    }
    out.comp[a] = ScalarField::from_spectrum(g, comp);
  }
  return out;
}

inline ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto spec = f.spectrum();
  Spectrum out(g.points());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = -(*spec)[i] * detail::sq_wavenumber(g, i);
  return ScalarField::from_spectrum(g, out);
}

inline double h1_seminorm(const ScalarField& f) {
  const Grid& g = f.grid();
  const auto spec = f.spectrum();
  double s = 0.0;
  for (std::size_t i = 0; i < spec->size(); ++i)
    s += detail::sq_wavenumber(g, i) * std::norm((*spec)[i]);
  return std::sqrt(s);
}

inline double h1_norm(const ScalarField& f) {
  const double l2 = l2_norm(f), h1 = h1_seminorm(f);
  return std::sqrt(l2 * l2 + h1 * h1);
}

/// Solve -Laplace(u) = f with mean-zero u. The right-hand side must be
/// mean-free: |mean(f)| <= 1e-10 * ||f||_2 or the call is rejected.
inline ScalarField solve_poisson(const ScalarField& f) {
  const double m = mean(f), nrm = l2_norm(f);
  if (std::abs(m) > 1e-10 * nrm)
    throw std::invalid_argument(
        "solve_poisson: right-hand side has nonzero mean");
  const Grid& g = f.grid();
  const auto spec = f.spectrum();
  Spectrum out(g.points(), 0.0);
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double k2 = detail::sq_wavenumber(g, i);
    if (k2 > 0.0) out[i] = (*spec)[i] / k2;
  }
  return ScalarField::from_spectrum(g, out);
}

/// Pointwise product with 3/2-rule dealiasing: exact projection of f*g onto
/// the resolved band.
inline ScalarField multiply_dealiased(const ScalarField& f,
                                      const ScalarField& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("multiply_dealiased: grid mismatch");
  const Grid& grid = f.grid();
  const Grid pg = detail::padded_grid(grid);
  Spectrum fp, gp, prod;
  detail::pad_spectrum(grid, *f.spectrum(), pg, fp);
  detail::pad_spectrum(grid, *g.spectrum(), pg, gp);
  std::vector<double> fv, gv;
  fft::inverse(pg, fp, fv);
  fft::inverse(pg, gp, gv);
  for (std::size_t i = 0; i < fv.size(); ++i) fv[i] *= gv[i];
  fft::forward(pg, fv, prod);
  Spectrum trunc;
  detail::truncate_spectrum(pg, prod, grid, trunc);
  return ScalarField::from_spectrum(grid, trunc);
}

/// Spectral resampling onto a finer grid (exact for band-limited fields).
inline ScalarField resample(const ScalarField& f, const Grid& fine) {
  Spectrum out;
  detail::pad_spectrum(f.grid(), *f.spectrum(), fine, out);
  return ScalarField::from_spectrum(fine, out);
}

inline double h1_distance(const ScalarField& f, const ScalarField& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("h1_distance: grid mismatch");
  ScalarField d(f.grid());
  auto& dv = d.mutable_values();
  for (std::size_t i = 0; i < dv.size(); ++i)
    dv[i] = f.values()[i] - g.values()[i];
  return h1_norm(d);
}

}  // namespace frontflow
