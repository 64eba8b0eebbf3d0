#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "xyvort/error.hpp"
#include "xyvort/lattice.hpp"

using namespace xyvort;

namespace {

// Independent enumeration: every pair at unit Manhattan distance, classified by region.
std::array<int, 3> brute_force_bonds(const Lattice& l) {
  std::array<int, 3> counts{};
  for (const auto& s : l.sites()) {
    for (const auto& t : l.sites()) {
      if (s.index >= t.index) continue;
      if (std::abs(s.col - t.col) + std::abs(s.row - t.row) != 1) continue;
      const int boundary_ends = (s.interior() ? 0 : 1) + (t.interior() ? 0 : 1);
      ++counts[boundary_ends];
    }
  }
  return counts;
}

std::array<int, 3> bond_counts(const Lattice& l) {
  std::array<int, 3> counts{};
  for (const auto& b : l.bonds()) ++counts[static_cast<int>(b.kind)];
  return counts;
}

}  // namespace

TEST_CASE("smallest lattice with one boundary ring") {
  Lattice l({1, 1, 1});
  CHECK(l.size() == 9);
  int interior = 0, ring1 = 0;
  for (const auto& s : l.sites()) {
    if (s.interior()) ++interior;
    if (s.layer == 1) ++ring1;
  }
  CHECK(interior == 1);
  CHECK(ring1 == 8);
  CHECK(l.boundary_count() == 8);
}

TEST_CASE("19x29 interior with two rings has 23x33 sites") {
  Lattice l({19, 29, 2});
  CHECK(l.width() == 23);
  CHECK(l.height() == 33);
  CHECK(l.size() == 759);
  CHECK(l.boundary_count() == 759 - 19 * 29);
}

TEST_CASE("layers follow distance to the outer edge") {
  Lattice l({5, 7, 3});
  for (const auto& s : l.sites()) {
    const int edge = std::min({s.col, s.row, l.width() - 1 - s.col, l.height() - 1 - s.row});
    if (edge < 3) CHECK(s.layer == edge + 1);
    else CHECK(s.layer == 0);
  }
}

TEST_CASE("polar angle convention") {
  Lattice l({3, 3, 1});  // 5x5, center at (2, 2)
  CHECK(l.site(l.index_of(4, 2)).omega == doctest::Approx(0.0));
  CHECK(l.site(l.index_of(2, 4)).omega == doctest::Approx(std::numbers::pi / 2));
  CHECK(l.site(l.index_of(0, 2)).omega == doctest::Approx(std::numbers::pi));
  CHECK(l.site(l.index_of(2, 0)).omega == doctest::Approx(-std::numbers::pi / 2));
}

TEST_CASE("omega flips by pi under point reflection") {
  Lattice l({4, 6, 2});  // even sizes: the center is not a site
  for (const auto& s : l.sites()) {
    const auto& t = l.site(l.index_of(l.width() - 1 - s.col, l.height() - 1 - s.row));
    const double diff = std::remainder(s.omega - t.omega, 2 * std::numbers::pi);
    CHECK(std::abs(std::abs(diff) - std::numbers::pi) < 1e-12);
    CHECK(s.omega > -std::numbers::pi);
    CHECK(s.omega <= std::numbers::pi);
  }
}

TEST_CASE("bond counts") {
  SUBCASE("3x3 with one ring") {
    Lattice l({1, 1, 1});
    CHECK(l.bonds().size() == 12);
    CHECK(bond_counts(l) == std::array<int, 3>{0, 4, 8});
  }
  SUBCASE("4x4 with one ring") {
    Lattice l({2, 2, 1});
    CHECK(l.bonds().size() == 24);
    CHECK(bond_counts(l) == std::array<int, 3>{4, 8, 12});
    CHECK(bond_counts(l) == brute_force_bonds(l));
  }
  SUBCASE("free 2x1") {
    Lattice l({2, 1, 0});
    REQUIRE(l.bonds().size() == 1);
    CHECK(l.bonds()[0].kind == BondKind::BulkBulk);
  }
  SUBCASE("brute force agrees on larger shapes") {
    for (LatticeSpec spec : {LatticeSpec{3, 5, 2}, LatticeSpec{7, 4, 1}, LatticeSpec{6, 6, 0}}) {
      Lattice l(spec);
      CHECK(bond_counts(l) == brute_force_bonds(l));
    }
  }
  SUBCASE("bonds are ordered nearest neighbours") {
    Lattice l({3, 4, 2});
    for (const auto& b : l.bonds()) {
      CHECK(b.a < b.b);
      const auto& s = l.site(b.a);
      const auto& t = l.site(b.b);
      CHECK(std::abs(s.col - t.col) + std::abs(s.row - t.row) == 1);
    }
  }
}

TEST_CASE("contours") {
  Lattice l({19, 29, 2});
  CHECK(l.contour_at(1).size() == 92);
  CHECK(l.contour_at(2).size() == 84);
  for (int m : {1, 2, 3}) {
    const auto c = l.contour_at(m);
    std::set<std::size_t> seen(c.sites.begin(), c.sites.end());
    CHECK(seen.size() == c.size());
    double signed_area = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& s = l.site(c.sites[i]);
      const auto& t = l.site(c.sites[(i + 1) % c.size()]);
      CHECK(std::abs(s.col - t.col) + std::abs(s.row - t.row) == 1);
      CHECK(s.interior());
      CHECK(l.ring(s.index) == m);
      signed_area += s.col * t.row - t.col * s.row;
    }
    CHECK(signed_area > 0.0);  // counterclockwise
  }
  const auto& first = l.site(l.contour_at(1).sites.front());
  CHECK(first.col == 2);
  CHECK(first.row == 2);
}

TEST_CASE("interior sites next to the boundary lie on the first contour") {
  Lattice l({5, 6, 2});
  const auto c = l.contour_at(1);
  std::set<std::size_t> on(c.sites.begin(), c.sites.end());
  for (const auto& b : l.bonds()) {
    if (b.kind != BondKind::BulkBoundary) continue;
    const auto inner = l.site(b.a).interior() ? b.a : b.b;
    CHECK(on.count(inner) == 1);
  }
}

TEST_CASE("invalid specs and contours") {
  CHECK_THROWS_AS(Lattice({0, 3, 1}), ValidationError);
  CHECK_THROWS_AS(Lattice({3, 3, -1}), ValidationError);
  Lattice l({5, 5, 1});
  CHECK_THROWS_AS(l.contour_at(0), ValidationError);
  CHECK_THROWS_AS(l.contour_at(3), ValidationError);
  CHECK_THROWS(l.index_of(9, 9));
  CHECK_FALSE(l.find(-1, 0).has_value());
  CHECK(build_lattice({2, 2, 1}).size() == 16);
}
