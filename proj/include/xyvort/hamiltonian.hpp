#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "xyvort/boundary.hpp"
#include "xyvort/lattice.hpp"

namespace xyvort {

using Mat4 = Eigen::Matrix4d;

/// Coupling weights of the anisotropic XY model: n on sigma^x sigma^x, k on sigma^y sigma^y.
struct ModelParams {
  double n = 1.0;
  double k = 1.0;

  double prefactor() const { return 1.0 / (2.0 * (n + k)); }
  void validate() const;
};

Mat4 kron(const Mat2& a, const Mat2& b);

/// Real form of sigma^y (x) sigma^y.
Mat4 sigma_yy();
Mat4 sigma_xx();

/// The 4x4 coupling block placed at (a, b) for a bond a < b. For BulkBoundary bonds the
/// boundary endpoint's angle goes in `theta_boundary`; BoundaryBoundary needs both angles.
Mat4 bond_block(BondKind kind, std::optional<double> theta_a, std::optional<double> theta_b,
                const ModelParams& params);

/// Real symmetric matrix of dimension 4N: an N x N grid of 4x4 blocks, one C^2 (x) C^2 slot
/// per site. Block (i, j) is nonzero only for nearest neighbours.
class BlockHamiltonian {
 public:
  BlockHamiltonian() = default;
  BlockHamiltonian(std::size_t sites, Eigen::SparseMatrix<double> matrix)
      : sites_(sites), matrix_(std::move(matrix)) {}

  std::size_t sites() const { return sites_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::SparseMatrix<double>& sparse() const { return matrix_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }
  Mat4 block(std::size_t i, std::size_t j) const;

  /// Writes "row col value" lines (0-based), one per stored nonzero, with a comment header.
  void write_coo(const std::string& path) const;

 private:
  std::size_t sites_ = 0;
  Eigen::SparseMatrix<double> matrix_;
};

inline constexpr std::size_t kDefaultMaxSites = 4096;

/// Assemble H_(n,k) on the lattice. The boundary condition must be present exactly when the
/// lattice has boundary layers.
BlockHamiltonian assemble(const Lattice& lattice, const ModelParams& params,
                          const std::optional<BoundaryCondition>& bc,
                          std::size_t max_sites = kDefaultMaxSites);

/// U^T H U with U = diag(eps_i I_4), eps_i = (-1)^(col + row).
BlockHamiltonian chessboard_flip(const BlockHamiltonian& h, const Lattice& lattice);

}  // namespace xyvort
