#include "xyvort/hamiltonian.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <vector>

#include "xyvort/error.hpp"

namespace xyvort {

void ModelParams::validate() const {
  if (!(n > 0.0) || !(k > 0.0) || !std::isfinite(n) || !std::isfinite(k)) {
    throw ValidationError("model parameters must satisfy n > 0 and k > 0");
  }
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

namespace {

Mat2 pauli_x() {
  Mat2 s;
  s << 0, 1, 1, 0;
  return s;
}

}  // namespace

Mat4 sigma_xx() { return kron(pauli_x(), pauli_x()); }

Mat4 sigma_yy() {
  // sigma^y = [[0,-i],[i,0]]; the Kronecker square has entries (-i)(-i) = -1 at the corners
  // and (-i)(i) = 1 in the middle.
  Mat4 m = Mat4::Zero();
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

Mat4 bond_block(BondKind kind, std::optional<double> theta_a, std::optional<double> theta_b,
                const ModelParams& params) {
  const double c = params.prefactor();
  switch (kind) {
    case BondKind::BulkBulk:
      return -c * (params.n * sigma_xx() + params.k * sigma_yy());
    case BondKind::BulkBoundary: {
      const auto& theta = theta_a ? theta_a : theta_b;
      if (!theta || (theta_a && theta_b)) {
        throw ValidationError("bulk-boundary bond needs exactly one boundary angle");
      }
      return -c * params.n * kron(pauli_x(), sigma_x_compressed(*theta));
    }
    case BondKind::BoundaryBoundary:
      if (!theta_a || !theta_b) {
        throw ValidationError("boundary-boundary bond needs both boundary angles");
      }
      return -c * params.n * kron(sigma_x_compressed(*theta_a), sigma_x_compressed(*theta_b));
  }
  throw ValidationError("unknown bond kind");
}

Mat4 BlockHamiltonian::block(std::size_t i, std::size_t j) const {
  Mat4 out = Mat4::Zero();
  const auto ri = static_cast<Eigen::Index>(4 * i);
  const auto cj = static_cast<Eigen::Index>(4 * j);
  for (Eigen::Index c = 0; c < 4; ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix_, cj + c); it; ++it) {
      if (it.row() >= ri && it.row() < ri + 4) out(it.row() - ri, c) = it.value();
    }
  }
  return out;
}

void BlockHamiltonian::write_coo(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open " + path + " for writing");
  os << "# xyvort block Hamiltonian, coordinate format (0-based)\n";
  os << "# dim " << dim() << " sites " << sites_ << " nnz " << matrix_.nonZeros() << "\n";
  os << "# row col value\n";
  os << std::setprecision(17);
  for (Eigen::Index col = 0; col < matrix_.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix_, col); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

BlockHamiltonian assemble(const Lattice& lattice, const ModelParams& params,
                          const std::optional<BoundaryCondition>& bc, std::size_t max_sites) {
  params.validate();
  if (lattice.free() && bc) {
    throw ValidationError("free lattice takes no boundary condition");
  }
  if (!lattice.free() && !bc) {
    throw ValidationError("lattice with boundary layers needs a boundary condition");
  }
  const std::size_t n_sites = lattice.size();
  if (n_sites > max_sites) {
    throw ValidationError("lattice has " + std::to_string(n_sites) + " sites, above the limit of " +
                          std::to_string(max_sites));
  }

  std::vector<Eigen::Triplet<double>> triplets;
  const auto bonds = lattice.bonds();
  triplets.reserve(bonds.size() * 32);
  for (const Bond& bond : bonds) {
    std::optional<double> ta;
    std::optional<double> tb;
    if (!lattice.site(bond.a).interior()) ta = bc->angle(bond.a);
    if (!lattice.site(bond.b).interior()) tb = bc->angle(bond.b);
    const Mat4 blk = bond_block(bond.kind, ta, tb, params);
    const auto ra = static_cast<Eigen::Index>(4 * bond.a);
    const auto rb = static_cast<Eigen::Index>(4 * bond.b);
    for (Eigen::Index r = 0; r < 4; ++r) {
      for (Eigen::Index c = 0; c < 4; ++c) {
        const double v = blk(r, c);
        if (v == 0.0) continue;
        triplets.emplace_back(ra + r, rb + c, v);
        triplets.emplace_back(rb + c, ra + r, v);
      }
    }
  }
  const auto dim = static_cast<Eigen::Index>(4 * n_sites);
  Eigen::SparseMatrix<double> m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return {n_sites, std::move(m)};
}

BlockHamiltonian chessboard_flip(const BlockHamiltonian& h, const Lattice& lattice) {
  if (h.sites() != lattice.size()) {
    throw ValidationError("Hamiltonian and lattice sizes differ");
  }
  Eigen::SparseMatrix<double> m = h.sparse();
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    const Site& sc = lattice.site(static_cast<std::size_t>(col / 4));
    const int ec = (sc.col + sc.row) % 2 == 0 ? 1 : -1;
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) {
      const Site& sr = lattice.site(static_cast<std::size_t>(it.row() / 4));
      const int er = (sr.col + sr.row) % 2 == 0 ? 1 : -1;
      it.valueRef() *= static_cast<double>(er * ec);
    }
  }
  return {h.sites(), std::move(m)};
}

}  // namespace xyvort
