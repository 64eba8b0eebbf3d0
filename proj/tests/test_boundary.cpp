#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "xyvort/boundary.hpp"
#include "xyvort/error.hpp"

using namespace xyvort;
using std::numbers::pi;

namespace {

bool near(const Mat2& a, const Mat2& b, double tol = 1e-12) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

Mat2 m2(double a, double b, double c, double d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("projector values") {
  CHECK(near(projector(0.0), m2(1, 0, 0, 0)));
  CHECK(near(projector(pi / 2), m2(0, 0, 0, 1)));
  CHECK(near(projector(pi / 4), m2(0.5, 0.5, 0.5, 0.5)));
  for (double t : {0.1, 1.0, 2.5, -0.7}) {
    CHECK(is_projector(projector(t)));
    CHECK(near(projector(t + pi), projector(t)));
    Eigen::SelfAdjointEigenSolver<Mat2> es(projector(t));
    const Eigen::Vector2d v = es.eigenvectors().col(1);
    CHECK(std::abs(std::remainder(std::atan2(v.y(), v.x()) - t, pi)) < 1e-12);
  }
}

TEST_CASE("compressed sigma x") {
  CHECK(near(sigma_x_compressed(0.0), Mat2::Zero()));
  CHECK(near(sigma_x_compressed(pi / 4), m2(0.5, 0.5, 0.5, 0.5)));
  const Mat2 s = sigma_x_compressed(pi / 3);
  CHECK(s(0, 0) == doctest::Approx(0.2165).epsilon(1e-3));
  CHECK(s(0, 1) == doctest::Approx(0.3750).epsilon(1e-3));
  CHECK(s(1, 0) == doctest::Approx(0.3750).epsilon(1e-3));
  CHECK(s(1, 1) == doctest::Approx(0.6495).epsilon(1e-3));
  for (int n = -3; n <= 3; ++n) CHECK(near(sigma_x_compressed(n * pi / 2), Mat2::Zero(), 1e-15));
  for (double t : {0.3, 1.1, 2.0}) {
    const Mat2 c = sigma_x_compressed(t);
    Eigen::FullPivLU<Mat2> lu(c);
    CHECK(lu.rank() == 1);
    const Eigen::Vector2d dir(std::cos(t), std::sin(t));
    CHECK((c * Eigen::Vector2d(1.0, 0.0)).normalized().cwiseAbs().isApprox(dir.cwiseAbs(), 1e-12));
  }
}

TEST_CASE("compressed sigma y vanishes") {
  CHECK(sigma_y_compressed(0.0).isZero(0.0));
  CHECK(sigma_y_compressed(1.234).isZero(0.0));
}

TEST_CASE("matrix predicates") {
  CHECK(is_symmetric(m2(1, 2, 2, 3)));
  CHECK_FALSE(is_symmetric(m2(1, 2, 3, 1)));
  CHECK(is_traceless(m2(1, 2, 2, -1)));
  CHECK_FALSE(is_traceless(m2(1, 0, 0, 0)));
  CHECK_FALSE(is_projector(m2(2, 0, 0, 0)));
}

TEST_CASE("boundary angles") {
  Lattice l({3, 3, 2});  // 7x7, center (3, 3)
  SUBCASE("degree zero is the constant phase") {
    const auto bc = boundary_angles(l, 0, 0.7);
    CHECK(bc.angles.size() == l.boundary_count());
    for (const auto& [site, theta] : bc.angles) CHECK(theta == doctest::Approx(0.7));
  }
  SUBCASE("east and north sites") {
    const auto east = l.index_of(6, 3);
    const auto north = l.index_of(3, 6);
    CHECK(boundary_angles(l, 1, 0.0).angle(east) == doctest::Approx(0.0));
    CHECK(boundary_angles(l, 2, pi / 4).angle(north) == doctest::Approx(pi + pi / 4));
  }
  SUBCASE("interior sites carry no angle") {
    const auto bc = boundary_angles(l, 1, 0.0);
    CHECK_THROWS(bc.angle(l.index_of(3, 3)));
  }
  SUBCASE("free lattice is rejected") {
    CHECK_THROWS_AS(boundary_angles(Lattice({3, 3, 0}), 1, 0.0), ValidationError);
  }
}
