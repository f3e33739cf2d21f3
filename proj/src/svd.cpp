#include "rigidity/svd.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace rigidity {

namespace {

// One-sided Jacobi on a tall matrix (m >= n): orthogonalize column pairs in a
// fixed cyclic order until all cross products vanish relative to the column
// norms. W ends as U * Sigma, the accumulated rotations form V.
SvdResult jacobi_tall(const Eigen::MatrixXcd& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Eigen::MatrixXcd w = a;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);

  const double eps = 1e-15;
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app = w.col(p).squaredNorm();
        const double aqq = w.col(q).squaredNorm();
        const std::complex<double> apq = w.col(p).dot(w.col(q));
        const double mag = std::abs(apq);
        if (app == 0.0 || aqq == 0.0) continue;
        const double rel = mag / std::sqrt(app * aqq);
        if (rel <= eps) continue;
        off = std::max(off, rel);

        const double phi = std::arg(apq);
        const std::complex<double> phase = std::polar(1.0, phi);
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        // column rotation [cp', cq'] = [cp, cq] * [[c, s*phase],[-s*conj(phase), c]]
        for (int i = 0; i < m; ++i) {
          const std::complex<double> wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * std::conj(phase) * wq;
          w(i, q) = s * phase * wp + c * wq;
        }
        for (int i = 0; i < n; ++i) {
          const std::complex<double> vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * std::conj(phase) * vq;
          v(i, q) = s * phase * vp + c * vq;
        }
      }
    }
    if (off <= eps) break;
  }

  std::vector<double> norms(n);
  for (int j = 0; j < n; ++j) norms[j] = w.col(j).norm();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return norms[i] > norms[j]; });

  SvdResult result;
  result.u = Eigen::MatrixXcd::Zero(m, n);
  result.sigma = Eigen::VectorXd::Zero(n);
  result.v = Eigen::MatrixXcd::Zero(n, n);
  double sigma_max = n ? norms[order[0]] : 0.0;
  int filled = 0;
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    result.sigma(j) = norms[src];
    result.v.col(j) = v.col(src);
    if (norms[src] > sigma_max * 1e-14 && norms[src] > 0.0) {
      result.u.col(j) = w.col(src) / norms[src];
      ++filled;
    }
  }
  // complete U on (numerically) null columns so U always has orthonormal
  // columns; the corresponding sigmas are zero
  for (int j = filled; j < n; ++j) {
    Eigen::VectorXcd best = Eigen::VectorXcd::Zero(m);
    double best_norm = -1.0;
    for (int seed = 0; seed < m; ++seed) {
      Eigen::VectorXcd cand = Eigen::VectorXcd::Zero(m);
      cand(seed) = 1.0;
      for (int prev = 0; prev < j; ++prev)
        cand -= result.u.col(prev) * (result.u.col(prev).dot(cand));
      const double norm = cand.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = cand;
      }
    }
    result.u.col(j) = best / best_norm;
  }
  return result;
}

}  // namespace

SvdResult jacobi_svd(const Eigen::MatrixXcd& a) {
  if (a.rows() >= a.cols()) return jacobi_tall(a);
  SvdResult tall = jacobi_tall(a.adjoint());
  return {tall.v, tall.sigma, tall.u};
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& a) { return jacobi_svd(a).sigma; }

}  // namespace rigidity
