#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace xyvort {

/// Rectangular lattice: an inner block of sites wrapped by `boundary_layers` rings.
/// `boundary_layers == 0` is the free lattice with no environment.
struct LatticeSpec {
  int inner_width = 1;
  int inner_height = 1;
  int boundary_layers = 2;

  int total_width() const { return inner_width + 2 * boundary_layers; }
  int total_height() const { return inner_height + 2 * boundary_layers; }

  /// Throws ValidationError on non-positive inner sizes or negative layer count.
  void validate() const;
};

/// Layer 0 is the interior; layer l >= 1 is the l-th boundary ring counted from the outside.
struct Site {
  std::size_t index = 0;
  int col = 0;
  int row = 0;
  int layer = 0;
  double omega = 0.0;  // polar angle about the lattice center, in (-pi, pi]

  bool interior() const { return layer == 0; }
};

enum class BondKind { BulkBulk, BulkBoundary, BoundaryBoundary };

/// Unordered nearest-neighbour pair, stored with a < b.
struct Bond {
  std::size_t a = 0;
  std::size_t b = 0;
  BondKind kind = BondKind::BulkBulk;
};

/// Closed, counterclockwise ring of site indices. The last site neighbours the first.
struct Contour {
  std::vector<std::size_t> sites;
  int m = 0;

  std::size_t size() const { return sites.size(); }
};

class Lattice {
 public:
  explicit Lattice(const LatticeSpec& spec);

  const LatticeSpec& spec() const { return spec_; }
  const std::vector<Site>& sites() const { return sites_; }
  const Site& site(std::size_t index) const { return sites_.at(index); }
  std::size_t size() const { return sites_.size(); }
  int width() const { return spec_.total_width(); }
  int height() const { return spec_.total_height(); }
  bool free() const { return spec_.boundary_layers == 0; }

  std::size_t index_of(int col, int row) const;
  std::optional<std::size_t> find(int col, int row) const;

  /// Number of boundary sites.
  std::size_t boundary_count() const;

  /// Distance from an interior site to the environment: 1 for first neighbours of the boundary
  /// (or of the lattice edge on a free lattice), 2 for the next ring, and so on. Returns 0 for
  /// boundary sites.
  int ring(std::size_t index) const;

  /// Every nearest-neighbour pair exactly once, sorted by (a, b).
  std::vector<Bond> bonds() const;

  /// Interior ring at distance m from the boundary, counterclockwise from its lower-left corner.
  Contour contour_at(int m) const;

 private:
  LatticeSpec spec_;
  std::vector<Site> sites_;
};

/// Convenience wrapper returning the site list only.
std::vector<Site> build_lattice(const LatticeSpec& spec);

}  // namespace xyvort
