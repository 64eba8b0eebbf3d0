#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "xyvort/hamiltonian.hpp"

namespace xyvort {

/// Full eigendecomposition of a block Hamiltonian. Eigenvalues ascending; the eigenvector
/// matrix is shared so copies are cheap.
struct SpectralData {
  Eigen::VectorXd eigenvalues;
  std::shared_ptr<const Eigen::MatrixXd> eigenvectors;
  std::size_t sites = 0;
  double residual = 0.0;  // max_k |H v_k - lambda_k v_k|

  Eigen::Index dim() const { return eigenvalues.size(); }
  const Eigen::MatrixXd& vectors() const { return *eigenvectors; }
  double min() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
  double max() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }

  /// Number of eigenvalues with |lambda| < tol.
  std::size_t kernel_count(double tol = 1e-9) const;
  /// Number of eigenvalues in the closed interval [lo, hi].
  std::size_t count_in(double lo, double hi) const;
};

SpectralData diagonalize(const BlockHamiltonian& h);

/// rho(lambda) = #{k : lambda_k < lambda}.
std::size_t idos(const SpectralData& spectral, double lambda);

std::vector<std::pair<double, std::size_t>> idos_curve(const SpectralData& spectral,
                                                       const std::vector<double>& grid);

/// Evenly spaced grid of `points` values spanning [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

enum class GibbsSign { PlusBetaH, MinusBetaH };

inline constexpr double kMaxGibbsExponent = 1400.0;

/// Unit-trace Gibbs matrix exp(+-beta H)/Z, kept in spectral form. The dense matrix is only
/// materialized on request; site-diagonal blocks are computed directly from the eigenvectors.
class GibbsMatrix {
 public:
  GibbsMatrix(double beta, GibbsSign sign, SpectralData spectral, Eigen::VectorXd weights)
      : beta_(beta), sign_(sign), spectral_(std::move(spectral)), weights_(std::move(weights)) {}

  double beta() const { return beta_; }
  GibbsSign sign() const { return sign_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const SpectralData& spectral() const { return spectral_; }
  std::size_t sites() const { return spectral_.sites; }
  double trace() const { return weights_.sum(); }

  Eigen::MatrixXd dense() const;
  /// The 4x4 diagonal block of site i.
  Mat4 site_block(std::size_t i) const;

 private:
  double beta_;
  GibbsSign sign_;
  SpectralData spectral_;
  Eigen::VectorXd weights_;
};

GibbsMatrix gibbs(const SpectralData& spectral, double beta,
                  GibbsSign sign = GibbsSign::PlusBetaH);

}  // namespace xyvort
