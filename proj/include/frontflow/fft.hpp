#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include <fftw3.h>

#include "frontflow/grid.hpp"

namespace frontflow::fft {

// FFTW plan creation is not thread safe; execution on distinct buffers is.
// Plans are cached per shape, created with FFTW_ESTIMATE (deterministic) and
// FFTW_UNALIGNED so they can run on arbitrary vector storage.

namespace detail {

struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans;

  fftw_plan get(const Grid& g, int sign) {
    const std::tuple<int, int, int, int> key{g.n[0], g.n[1], g.n[2], sign};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::vector<std::complex<double>> dummy(g.points());
    int dims[3] = {g.n[0], g.n[1], g.n[2]};
    fftw_plan p = fftw_plan_dft(
        g.dim, dims, reinterpret_cast<fftw_complex*>(dummy.data()),
        reinterpret_cast<fftw_complex*>(dummy.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }
};

inline PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace detail

/// physical -> spectral, normalized so that coefficients are the amplitudes
/// of exp(2*pi*i k.x) (forward carries the 1/points factor).
inline void forward(const Grid& g, const std::vector<double>& phys,
                    std::vector<std::complex<double>>& spec) {
  const std::size_t m = g.points();
  thread_local std::vector<std::complex<double>> buf;
  buf.assign(phys.begin(), phys.end());
  spec.resize(m);
  fftw_plan p = detail::cache().get(g, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(spec.data()));
  const double scale = 1.0 / static_cast<double>(m);
  for (auto& c : spec) c *= scale;
}

/// spectral -> physical; imaginary parts (roundoff for Hermitian input) are
/// discarded.
inline void inverse(const Grid& g, const std::vector<std::complex<double>>& spec,
                    std::vector<double>& phys) {
  const std::size_t m = g.points();
  thread_local std::vector<std::complex<double>> in, out;
  in = spec;
  out.resize(m);
  fftw_plan p = detail::cache().get(g, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  phys.resize(m);
  for (std::size_t i = 0; i < m; ++i) phys[i] = out[i].real();
}

}  // namespace frontflow::fft
