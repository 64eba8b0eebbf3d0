#include "xyvort/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <lapacke.h>

#include "xyvort/error.hpp"

namespace xyvort {

std::size_t SpectralData::kernel_count(double tol) const {
  return static_cast<std::size_t>((eigenvalues.array().abs() < tol).count());
}

std::size_t SpectralData::count_in(double lo, double hi) const {
  return static_cast<std::size_t>(
      ((eigenvalues.array() >= lo) && (eigenvalues.array() <= hi)).count());
}

namespace {

struct Decomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

std::optional<Decomposition> lapack_eigh(const Eigen::MatrixXd& dense) {
  const auto n = static_cast<lapack_int>(dense.rows());
  Decomposition d;
  d.values.resize(n);
  d.vectors = dense;  // dsyevd overwrites the input with the eigenvectors
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, d.vectors.data(), n, d.values.data());
  if (info != 0) return std::nullopt;
  return d;
}

std::optional<Decomposition> eigen_eigh(const Eigen::MatrixXd& dense) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) return std::nullopt;
  return Decomposition{solver.eigenvalues(), solver.eigenvectors()};
}

// Residual max_k |H v_k - lambda_k v_k| and an orthogonality defect measured on a few fixed probe
// vectors, |V^T V x - x| / |x|; both avoid dense n^3 products.
std::pair<double, double> check(const Eigen::SparseMatrix<double>& h, const Decomposition& d) {
  const Eigen::MatrixXd r = h * d.vectors - d.vectors * d.values.asDiagonal();
  const Eigen::Index n = d.vectors.rows();
  double orth = 0.0;
  for (int probe = 0; probe < 3; ++probe) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x(i) = std::cos(0.7 * static_cast<double>(i * (probe + 1)) + probe);
    }
    const Eigen::VectorXd y = d.vectors.transpose() * (d.vectors * x);
    orth = std::max(orth, (y - x).norm() / x.norm());
  }
  return {r.colwise().norm().maxCoeff(), orth};
}

}  // namespace

SpectralData diagonalize(const BlockHamiltonian& h) {
  const Eigen::MatrixXd dense = h.dense();
  SpectralData out;
  out.sites = h.sites();
  if (dense.rows() == 0) {
    out.eigenvectors = std::make_shared<const Eigen::MatrixXd>();
    return out;
  }
  const double tol = 1e-8 * std::max(1.0, dense.norm());

  // Some optimized LAPACK builds return garbage on particular CPUs, so every result is checked
  // and the slower Eigen solver is the fallback.
  std::string failure;
  for (auto* solve : {&lapack_eigh, &eigen_eigh}) {
    auto d = solve(dense);
    if (!d) {
      failure = "eigensolver did not converge";
      continue;
    }
    const auto [residual, orth] = check(h.sparse(), *d);
    if (residual <= tol && orth <= 1e-8) {
      out.eigenvalues = std::move(d->values);
      out.eigenvectors = std::make_shared<const Eigen::MatrixXd>(std::move(d->vectors));
      out.residual = residual;
      return out;
    }
    failure = "eigendecomposition check failed (residual " + std::to_string(residual) +
              ", orthogonality " + std::to_string(orth) + ")";
  }
  throw NumericalError(failure + ", dim " + std::to_string(dense.rows()));
}

std::size_t idos(const SpectralData& spectral, double lambda) {
  const auto* begin = spectral.eigenvalues.data();
  const auto* end = begin + spectral.eigenvalues.size();
  return static_cast<std::size_t>(std::lower_bound(begin, end, lambda) - begin);
}

std::vector<std::pair<double, std::size_t>> idos_curve(const SpectralData& spectral,
                                                       const std::vector<double>& grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw ValidationError("IDOS grid must be ascending");
  }
  std::vector<std::pair<double, std::size_t>> out;
  out.reserve(grid.size());
  for (double lambda : grid) out.emplace_back(lambda, idos(spectral, lambda));
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  std::vector<double> g;
  if (points == 0) return g;
  if (points == 1) return {lo};
  g.reserve(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g.push_back(lo + step * static_cast<double>(i));
  g.back() = hi;
  return g;
}

GibbsMatrix gibbs(const SpectralData& spectral, double beta, GibbsSign sign) {
  if (!std::isfinite(beta)) throw ValidationError("beta must be finite");
  const double spread = std::max(std::abs(spectral.min()), std::abs(spectral.max()));
  if (std::abs(beta) * spread > kMaxGibbsExponent) {
    throw NumericalError("|beta| * max|lambda| = " + std::to_string(std::abs(beta) * spread) +
                         " exceeds the exponent guard");
  }
  const double s = sign == GibbsSign::PlusBetaH ? beta : -beta;
  Eigen::VectorXd exps = s * spectral.eigenvalues;
  if (exps.size() == 0) return {beta, sign, spectral, exps};
  const double top = exps.maxCoeff();
  Eigen::VectorXd w = (exps.array() - top).exp();
  w /= w.sum();
  return {beta, sign, spectral, std::move(w)};
}

namespace {

// Equal weights mean G is a multiple of the identity; skip the rounding of V diag(w) V^T.
bool uniform(const Eigen::VectorXd& w) { return w.size() > 0 && w.maxCoeff() == w.minCoeff(); }

}  // namespace

Eigen::MatrixXd GibbsMatrix::dense() const {
  if (uniform(weights_)) return weights_(0) * Eigen::MatrixXd::Identity(weights_.size(), weights_.size());
  const auto& v = spectral_.vectors();
  return v * weights_.asDiagonal() * v.transpose();
}

Mat4 GibbsMatrix::site_block(std::size_t i) const {
  if (uniform(weights_)) return weights_(0) * Mat4::Identity();
  const auto& v = spectral_.vectors();
  const auto rows = v.middleRows(static_cast<Eigen::Index>(4 * i), 4);
  return rows * weights_.asDiagonal() * rows.transpose();
}

}  // namespace xyvort
