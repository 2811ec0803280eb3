#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace frontflow::detail {

struct CglsResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
  bool stalled = false;  // plateau: < 2x reduction over the last 50 iterations
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void axpy(double alpha, const std::vector<double>& x,
                 std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

/// CGLS (conjugate gradient on the normal equations, residual-recurrence
/// form) for min ||T x - b||_2. Since T here is identity-plus-skew up to a
/// bounded symmetric part, T*T is SPD and convergence is monotone in the
/// residual of the normal equations; ||b - Tx|| is tracked explicitly and
/// bounds the preconditioned residual of the original system.
///
/// Op must provide apply_T(in, out) and apply_Tt(in, out).
template <class Op>
CglsResult cgls(Op& op, const std::vector<double>& b, std::vector<double>& x,
                double rel_tol, int max_iter) {
  const std::size_t m = b.size();
  std::vector<double> r(m), s(m), p(m), q(m);

  const double bnorm = std::sqrt(dot(b, b));
  CglsResult res;
  if (bnorm == 0.0) {
    x.assign(m, 0.0);
    res.converged = true;
    return res;
  }
  if (x.size() != m) x.assign(m, 0.0);

  op.apply_T(x, q);
  for (std::size_t i = 0; i < m; ++i) r[i] = b[i] - q[i];
  op.apply_Tt(r, s);
  p = s;
  double gamma = dot(s, s);
  double rnorm = std::sqrt(dot(r, r));
  double window_rnorm = rnorm;

  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it;
    res.relative_residual = rnorm / bnorm;
    if (rnorm <= rel_tol * bnorm) {
      res.converged = true;
      return res;
    }
    if (it > 0 && it % 50 == 0) {
      if (rnorm > 0.5 * window_rnorm) {
        res.stalled = true;
        return res;
      }
      window_rnorm = rnorm;
    }
    if (gamma == 0.0) break;  // exact least-squares stationary point

    op.apply_T(p, q);
    const double qq = dot(q, q);
    if (qq == 0.0) break;
    const double alpha = gamma / qq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    rnorm = std::sqrt(dot(r, r));
    op.apply_Tt(r, s);
    const double gamma_new = dot(s, s);
    const double beta = gamma_new / gamma;
    gamma = gamma_new;
    for (std::size_t i = 0; i < m; ++i) p[i] = s[i] + beta * p[i];
  }
  res.relative_residual = rnorm / bnorm;
  res.converged = rnorm <= rel_tol * bnorm;
  return res;
}

}  // namespace frontflow::detail
