#include "xyvort/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xyvort/error.hpp"

namespace xyvort {

void LatticeSpec::validate() const {
  if (inner_width < 1 || inner_height < 1) {
    throw ValidationError("lattice inner dimensions must be >= 1, got " +
                          std::to_string(inner_width) + "x" + std::to_string(inner_height));
  }
  if (boundary_layers < 0) {
    throw ValidationError("boundary_layers must be >= 0, got " + std::to_string(boundary_layers));
  }
}

Lattice::Lattice(const LatticeSpec& spec) : spec_(spec) {
  spec_.validate();
  const int w = spec_.total_width();
  const int h = spec_.total_height();
  const int b = spec_.boundary_layers;
  // Half-integer center for even sizes, so no site sits on the origin unless the size is odd.
  const double cx = 0.5 * (w - 1);
  const double cy = 0.5 * (h - 1);

  sites_.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      Site s;
      s.index = sites_.size();
      s.col = col;
      s.row = row;
      const int edge = std::min({col, row, w - 1 - col, h - 1 - row});
      s.layer = edge < b ? edge + 1 : 0;
      const double dx = col - cx;
      const double dy = row - cy;
      // atan2(0, 0) = 0 for the center site of an odd lattice; atan2 never returns -pi for -0.0 here.
      s.omega = std::atan2(dy, dx);
      if (s.omega <= -M_PI) s.omega += 2.0 * M_PI;
      sites_.push_back(s);
    }
  }
}

std::vector<Site> build_lattice(const LatticeSpec& spec) { return Lattice(spec).sites(); }

std::size_t Lattice::index_of(int col, int row) const {
  auto idx = find(col, row);
  if (!idx) {
    throw ValidationError("site (" + std::to_string(col) + ", " + std::to_string(row) +
                          ") is outside the lattice");
  }
  return *idx;
}

std::optional<std::size_t> Lattice::find(int col, int row) const {
  if (col < 0 || row < 0 || col >= width() || row >= height()) return std::nullopt;
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(width()) +
         static_cast<std::size_t>(col);
}

std::size_t Lattice::boundary_count() const {
  return sites_.size() -
         static_cast<std::size_t>(spec_.inner_width) * static_cast<std::size_t>(spec_.inner_height);
}

int Lattice::ring(std::size_t index) const {
  const Site& s = site(index);
  if (!s.interior()) return 0;
  const int edge = std::min({s.col, s.row, width() - 1 - s.col, height() - 1 - s.row});
  return edge - spec_.boundary_layers + 1;
}

std::vector<Bond> Lattice::bonds() const {
  std::vector<Bond> out;
  const int w = width();
  const int h = height();
  auto classify = [&](std::size_t a, std::size_t b) {
    const bool ia = sites_[a].interior();
    const bool ib = sites_[b].interior();
    if (ia && ib) return BondKind::BulkBulk;
    if (ia || ib) return BondKind::BulkBoundary;
    return BondKind::BoundaryBoundary;
  };
  // Row-major traversal visits (a, a+1) and (a, a+w) with a < b, already in sorted order.
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      const std::size_t a = index_of(col, row);
      if (col + 1 < w) {
        const std::size_t b = a + 1;
        out.push_back({a, b, classify(a, b)});
      }
      if (row + 1 < h) {
        const std::size_t b = a + static_cast<std::size_t>(w);
        out.push_back({a, b, classify(a, b)});
      }
    }
  }
  return out;
}

Contour Lattice::contour_at(int m) const {
  const int iw = spec_.inner_width;
  const int ih = spec_.inner_height;
  if (m < 1 || m > std::min(iw, ih) / 2) {
    throw ValidationError("contour distance m = " + std::to_string(m) + " outside [1, " +
                          std::to_string(std::min(iw, ih) / 2) + "]");
  }
  const int lo_col = spec_.boundary_layers + m - 1;
  const int lo_row = spec_.boundary_layers + m - 1;
  const int hi_col = width() - 1 - lo_col;
  const int hi_row = height() - 1 - lo_row;
  if (hi_col - lo_col + 1 < 2 || hi_row - lo_row + 1 < 2) {
    throw ValidationError("contour ring at m = " + std::to_string(m) + " is degenerate");
  }

  Contour c;
  c.m = m;
  for (int col = lo_col; col < hi_col; ++col) c.sites.push_back(index_of(col, lo_row));
  for (int row = lo_row; row < hi_row; ++row) c.sites.push_back(index_of(hi_col, row));
  for (int col = hi_col; col > lo_col; --col) c.sites.push_back(index_of(col, hi_row));
  for (int row = hi_row; row > lo_row; --row) c.sites.push_back(index_of(lo_col, row));
  return c;
}

}  // namespace xyvort
