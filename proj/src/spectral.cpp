#include "rigidity/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "rigidity/format.hpp"

namespace rigidity {

namespace {

int rank_of(const Eigen::VectorXd& sigmas, double rel_tol) {
  if (sigmas.size() == 0) return 0;
  const double cutoff = rel_tol * sigmas(0);
  int rank = 0;
  for (int i = 0; i < sigmas.size(); ++i)
    if (sigmas(i) > cutoff && sigmas(i) > 0.0) ++rank;
  return rank;
}

}  // namespace

SingularSpectrum singular_spectrum(const RigidityPolynomial& r, const Momentum& k,
                                   double rel_tol) {
  if (rel_tol <= 0) throw input_error("tolerance must be positive");
  SingularSpectrum out;
  out.k = k;
  Eigen::VectorXd sigmas = singular_values(r.evaluate(k));
  out.sigmas.assign(sigmas.data(), sigmas.data() + sigmas.size());
  out.rank = rank_of(sigmas, rel_tol);
  return out;
}

MaxwellReport maxwell_index(const RigidityPolynomial& r, int samples, double rel_tol) {
  MaxwellReport report;
  report.nu = r.cols() - r.rows();

  // rank-nullity at random momenta: nul r(k) - nul r^dag(k) = N - M exactly
  std::mt19937 rng(0x52494749u);
  std::uniform_real_distribution<double> uniform(-M_PI, M_PI);
  const RigidityPolynomial rd = r.dagger();
  for (int s = 0; s < samples; ++s) {
    std::vector<double> k(r.dim());
    for (double& x : k) x = uniform(rng);
    const Momentum momentum{k};
    const int rank_r = singular_spectrum(r, momentum, rel_tol).rank;
    const int rank_rd = singular_spectrum(rd, momentum, rel_tol).rank;
    const int nul_r = r.cols() - rank_r;
    const int nul_rd = r.rows() - rank_rd;
    if (nul_r - nul_rd != report.nu)
      throw numerical_error("rank-nullity identity violated at " + momentum.to_string() +
                            " (internal SVD bug): nul r - nul r^dag = " +
                            std::to_string(nul_r - nul_rd) + ", expected " +
                            std::to_string(report.nu));
    ++report.samples_checked;
  }
  return report;
}

GapTable gap_map(const RigidityPolynomial& r, int per_axis, double rel_tol, ExecMode mode) {
  GapTable table;
  table.dim = r.dim();
  table.per_axis = per_axis;
  table.n_sigmas = std::min(r.rows(), r.cols());
  table.rows.resize(grid_size(r.dim(), per_axis));
  grid_sweep(r.dim(), per_axis, mode, [&](std::size_t flat, const Momentum& k) {
    table.rows[flat] = singular_spectrum(r, k, rel_tol);
  });
  return table;
}

void GapTable::write_csv(std::ostream& out) const {
  out << "# momenta in radians; sigmas descending\n";
  std::vector<std::string> header;
  for (int i = 1; i <= dim; ++i) header.push_back("k" + std::to_string(i));
  for (int i = 1; i <= n_sigmas; ++i) header.push_back("sigma" + std::to_string(i));
  header.push_back("rank");
  out << join(header, ",") << "\n";
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (double k : row.k.k) cells.push_back(fmt_real(k));
    for (double s : row.sigmas) cells.push_back(fmt_real(s));
    cells.push_back(std::to_string(row.rank));
    out << join(cells, ",") << "\n";
  }
}

std::vector<SingularSpectrum> zero_locus(const RigidityPolynomial& r, int per_axis,
                                         double rel_tol, ExecMode mode) {
  GapTable table = gap_map(r, per_axis, rel_tol, mode);
  int max_rank = 0;
  for (const auto& row : table.rows) max_rank = std::max(max_rank, row.rank);
  std::vector<SingularSpectrum> locus;
  for (const auto& row : table.rows)
    if (row.rank < max_rank) locus.push_back(row);
  return locus;
}

StiefelFrame flatten(const Eigen::MatrixXcd& a, double tol) {
  StiefelFrame frame;
  frame.from_adjoint = a.rows() < a.cols();
  const Eigen::MatrixXcd work = frame.from_adjoint ? Eigen::MatrixXcd(a.adjoint()) : a;
  SvdResult svd = jacobi_svd(work);
  const double sigma_min = svd.sigma(svd.sigma.size() - 1);
  if (sigma_min <= tol)
    throw numerical_error("rank-deficient; flattening undefined on zero locus (sigma_min = " +
                          fmt_real(sigma_min) + ")");
  frame.q = svd.u * svd.v.adjoint();
  return frame;
}

Eigen::MatrixXcd retraction_path(const Eigen::MatrixXcd& a, double t, double tol) {
  if (t < 0.0 || t > 1.0) throw input_error("retraction parameter must lie in [0, 1]");
  SvdResult svd = jacobi_svd(a);
  const double sigma_min = svd.sigma(svd.sigma.size() - 1);
  if (sigma_min <= tol)
    throw numerical_error("rank-deficient; flattening undefined on zero locus (sigma_min = " +
                          fmt_real(sigma_min) + ")");
  Eigen::VectorXd interpolated = svd.sigma + t * (Eigen::VectorXd::Ones(svd.sigma.size()) - svd.sigma);
  return svd.u * interpolated.asDiagonal() * svd.v.adjoint();
}

std::vector<double> spinwave_spectrum(const RigidityPolynomial& r, const Momentum& k) {
  const Matrix at_k = r.evaluate(k);
  const Matrix h = at_k.adjoint() * at_k;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw numerical_error("eigensolver failed on the spin-wave Hamiltonian");
  Eigen::VectorXd evs = solver.eigenvalues();  // ascending
  std::vector<double> out(evs.size());
  for (int i = 0; i < evs.size(); ++i) out[i] = std::max(0.0, evs(evs.size() - 1 - i));
  return out;
}

}  // namespace rigidity
