#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stdgt/basis.hpp"

using namespace stdgt;

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_triple(const DirectionTriple& t, double tol = 1e-14) {
  CHECK(t.d.norm() == doctest::Approx(1.0).epsilon(tol));
  CHECK(t.e.norm() == doctest::Approx(1.0).epsilon(tol));
  CHECK(t.h.norm() == doctest::Approx(1.0).epsilon(tol));
  CHECK(std::abs(t.d.dot(t.e)) < tol);
  CHECK(std::abs(t.d.dot(t.h)) < tol);
  CHECK(std::abs(t.e.dot(t.h)) < tol);
  CHECK((t.e.cross(t.h) - t.d).norm() < tol);
}

}  // namespace

TEST_CASE("material validates parameters and derives Z and c") {
  const Material vacuum;
  CHECK(vacuum.impedance() == doctest::Approx(1.0));
  CHECK(vacuum.wave_speed() == doctest::Approx(1.0));

  const Material m(4.0, 1.0);
  CHECK(m.impedance() == doctest::Approx(0.5));
  CHECK(m.wave_speed() == doctest::Approx(0.5));

  CHECK_THROWS_AS(Material(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Material(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("2D fan for k=1 and theta0=0") {
  const auto dirs = directions_2d(1, 0.0);
  REQUIRE(dirs.size() == 5);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / 5.0;
    CHECK(dirs[i].d.x() == doctest::Approx(std::cos(theta)).epsilon(1e-14));
    CHECK(dirs[i].d.y() == doctest::Approx(std::sin(theta)).epsilon(1e-14));
    CHECK(dirs[i].d.z() == doctest::Approx(0.0));
    check_triple(dirs[i]);
  }
  // First triple is the canonical one.
  CHECK((dirs[0].d - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((dirs[0].e - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK((dirs[0].h - Vec3(0, -1, 0)).norm() < 1e-15);
}

TEST_CASE("2D fan rotation offset") {
  const auto dirs = directions_2d(2, kPi / 4.0);
  REQUIRE(dirs.size() == 7);
  CHECK(std::atan2(dirs[0].d.y(), dirs[0].d.x()) ==
        doctest::Approx(kPi / 4.0).epsilon(1e-14));
  for (std::size_t i = 1; i < dirs.size(); ++i) {
    // Successive directions differ by 2 pi / 7.
    const double dot = dirs[i].d.dot(dirs[i - 1].d);
    CHECK(dot == doctest::Approx(std::cos(2.0 * kPi / 7.0)).epsilon(1e-13));
  }
}

TEST_CASE("2D fan invariants for k up to 5") {
  for (int k = 1; k <= 5; ++k) {
    const auto dirs = directions_2d(k, 0.37);
    CHECK(dirs.size() == static_cast<std::size_t>(2 * k + 3));
    for (const auto& t : dirs) {
      check_triple(t);
      CHECK(t.d.z() == doctest::Approx(0.0));
      CHECK((t.e - Vec3(0, 0, 1)).norm() < 1e-15);
    }
  }
  CHECK_THROWS_AS(directions_2d(0, 0.0), std::invalid_argument);
}

TEST_CASE("3D direction sets have the stated counts and frame invariants") {
  CHECK(directions_3d(1).size() == 16);
  CHECK(directions_3d(2).size() == 30);
  for (int k = 1; k <= 5; ++k) {
    const auto dirs = directions_3d(k);
    CHECK(dirs.size() == static_cast<std::size_t>(2 * (k + 1) * (k + 3)));
    for (const auto& t : dirs) check_triple(t, 1e-13);
    // Directions come in pairs sharing d with orthogonal polarizations.
    for (std::size_t i = 0; i + 1 < dirs.size(); i += 2) {
      CHECK((dirs[i].d - dirs[i + 1].d).norm() < 1e-15);
      CHECK(std::abs(dirs[i].e.dot(dirs[i + 1].e)) < 1e-13);
    }
  }
  CHECK_THROWS_AS(directions_3d(0), std::invalid_argument);
}

TEST_CASE("space dimensions follow the closed formulas") {
  CHECK(trefftz_dim_2d(0) == 3);
  CHECK(trefftz_dim_2d(1) == 8);
  CHECK(trefftz_dim_2d(2) == 15);
  CHECK(trefftz_dim_2d(3) == 24);
  CHECK(trefftz_dim_2d(4) == 35);
  CHECK(trefftz_dim_2d(5) == 48);

  CHECK(trefftz_dim_3d(0) == 6);
  CHECK(trefftz_dim_3d(1) == 22);
  CHECK(trefftz_dim_3d(2) == 52);
  CHECK(trefftz_dim_3d(3) == 100);
  CHECK(trefftz_dim_3d(4) == 170);
}

TEST_CASE("element basis sizes and anchoring") {
  const Element elem{7, {0.5, 0.5}, {0.5, 0.5}};
  const Material vacuum;

  const auto b0 = build_element_basis(elem, 0.5, 0, vacuum, 0.0);
  CHECK(b0.size() == 3);
  for (const auto& f : b0.functions) CHECK(f.order == 0);

  const auto b3 = build_element_basis(elem, 0.5, 3, vacuum, 0.0);
  CHECK(b3.size() == 24);
  CHECK(b3.element_id == 7);
  CHECK(b3.max_order() == 3);

  // Scale l = max(h_K, c tau) / 2 and anchor at (center, slab begin).
  for (const auto& f : b3.functions) {
    CHECK(f.scale == doctest::Approx(0.5));
    if (f.order >= 1) {
      CHECK(f.phase(Vec3(0.5, 0.5, 0.0), 0.0) == doctest::Approx(0.0));
    }
  }

  // Long slab: the temporal extent sets the scale.
  const auto blong = build_element_basis(elem, 4.0, 1, vacuum, 0.0);
  CHECK(blong.functions.front().scale == doctest::Approx(2.0));

  CHECK_THROWS_AS(build_element_basis(elem, 0.0, 1, vacuum, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_element_basis(elem, 0.5, -1, vacuum, 0.0),
                  std::invalid_argument);
}

TEST_CASE("plane wave evaluation matches the hand-computed example") {
  BasisFunction f;
  f.order = 1;
  f.triple = DirectionTriple::from_d_e(Vec3(1, 0, 0), Vec3(0, 0, 1));
  f.scale = 1.0;
  f.impedance = 1.0;
  f.wave_speed = 1.0;

  const Vec6 v = f.eval(Vec3(2, 0, 0), 1.0);
  CHECK(v(0) == doctest::Approx(0.0));
  CHECK(v(1) == doctest::Approx(0.0));
  CHECK(v(2) == doctest::Approx(1.0));
  CHECK(v(3) == doctest::Approx(0.0));
  CHECK(v(4) == doctest::Approx(-1.0));
  CHECK(v(5) == doctest::Approx(0.0));

  // On the characteristic plane d.r = c t the field vanishes.
  CHECK(f.eval(Vec3(1.0, 3.0, 0.0), 1.0).norm() == doctest::Approx(0.0));

  // Doubling the impedance halves the magnetic part only.
  f.impedance = 2.0;
  const Vec6 v2 = f.eval(Vec3(2, 0, 0), 1.0);
  CHECK(v2(2) == doctest::Approx(1.0));
  CHECK(v2(4) == doctest::Approx(-0.5));
}

TEST_CASE("generated bases solve Maxwell exactly at random points") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  std::uniform_real_distribution<double> tim(0.0, 0.5);

  const Element elem{0, {0.25, -0.5}, {0.375, 0.5}};
  for (const Material& mat : {Material(), Material(2.0, 0.5), Material(1.5, 3.0)}) {
    for (int p = 0; p <= 5; ++p) {
      const auto basis = build_element_basis(elem, 0.5, p, mat, 0.21);
      double worst = 0.0;
      for (int trial = 0; trial < 40; ++trial) {
        const Vec3 r(pos(rng), pos(rng), 0.0);
        const double t = tim(rng);
        for (const auto& f : basis.functions) {
          worst = std::max(worst, maxwell_residual(f, r, t).norm());
        }
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("3D bases solve Maxwell exactly at random points") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  const Box3 box{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
  for (int p = 1; p <= 4; ++p) {
    const auto basis = build_element_basis_3d(box, 1.0, p, Material(1.0, 2.0));
    CHECK(basis.size() == trefftz_dim_3d(p));
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
      const Vec3 r(pos(rng), pos(rng), pos(rng));
      const double t = 0.5 + 0.25 * pos(rng);
      for (const auto& f : basis.functions) {
        worst = std::max(worst, maxwell_residual(f, r, t).norm());
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("residual is invariant under shift and scale changes") {
  BasisFunction f;
  f.order = 3;
  f.triple = DirectionTriple::from_d_e(
      Vec3(0.6, 0.8, 0.0), Vec3(0, 0, 1));
  f.impedance = 1.3;
  f.wave_speed = 0.7;
  for (double scale : {0.25, 1.0, 5.0}) {
    for (double shift : {-2.0, 0.0, 3.5}) {
      f.scale = scale;
      f.shift_r = Vec3(shift, -shift, 0.0);
      f.shift_t = 0.5 * shift;
      CHECK(maxwell_residual(f, Vec3(0.4, 1.7, 0.0), 2.2).norm() < 1e-12);
    }
  }
}

TEST_CASE("breaking the frame orthogonality shows up as a divergence residual") {
  BasisFunction f;
  f.order = 2;
  f.triple.d = Vec3(1, 0, 0);
  f.triple.e = Vec3(0, 0, 1);
  f.triple.h = Vec3(0.6, -0.8, 0.0);  // not orthogonal to d
  f.scale = 0.5;
  f.impedance = 1.0;
  f.wave_speed = 1.0;

  const Vec3 r(0.7, 0.0, 0.0);
  const double t = 0.2;
  const Vec8 res = maxwell_residual(f, r, t);
  // div H = k phi^{k-1} (h.d) / l for the corrupted frame.
  const double expected =
      f.order * std::pow(f.phase(r, t), f.order - 1) * 0.6 / f.scale;
  CHECK(res(7) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(std::abs(res(7)) > 1e-3);
}

TEST_CASE("constants have zero residual") {
  BasisFunction f;
  f.order = 0;
  f.constant << 0.3, -1.0, 2.0, 0.1, 0.0, -0.4;
  CHECK(maxwell_residual(f, Vec3(1, 2, 0), 3.0).norm() == doctest::Approx(0.0));
}

TEST_CASE("gram rank equals the 2D dimension formula") {
  const Element elem{0, {0.5, 0.5}, {0.5, 0.5}};
  for (int p = 0; p <= 5; ++p) {
    const auto basis = build_element_basis(elem, 1.0, p, Material(), 0.0);
    CHECK(gram_rank(basis, elem, 1.0) == trefftz_dim_2d(p));
  }

  // Non-unit element, short slab, non-vacuum material.
  const Element small{3, {0.1, 0.2}, {0.125, 0.125}};
  const auto basis = build_element_basis(small, 0.125, 3, Material(2.0, 1.0), 0.4);
  CHECK(gram_rank(basis, small, 0.125) == trefftz_dim_2d(3));
}

TEST_CASE("gram rank equals the 3D dimension formula") {
  const Box3 box{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
  for (int p = 0; p <= 4; ++p) {
    const auto basis = build_element_basis_3d(box, 1.0, p, Material());
    CHECK(gram_rank_3d(basis, box, 1.0) == trefftz_dim_3d(p));
  }
}

TEST_CASE("duplicating a direction does not raise the rank") {
  const Element elem{0, {0.5, 0.5}, {0.5, 0.5}};
  auto basis = build_element_basis(elem, 1.0, 2, Material(), 0.0);
  const int base_rank = gram_rank(basis, elem, 1.0);
  basis.functions.push_back(basis.functions[4]);
  CHECK(gram_rank(basis, elem, 1.0) == base_rank);
}

TEST_CASE("incoming mask selects directions entering through the face") {
  const Element elem{0, {0.5, 0.5}, {0.5, 0.5}};
  const auto basis = build_element_basis(elem, 0.5, 1, Material(), 0.0);

  // Left boundary, outward normal (-1, 0, 0): directions with positive
  // x-component travel into the domain.
  const auto mask = incoming_mask(basis, Vec3(-1, 0, 0));
  REQUIRE(mask.size() == 8);
  CHECK_FALSE(mask[0]);  // constants never count as incoming
  CHECK_FALSE(mask[1]);
  CHECK_FALSE(mask[2]);
  CHECK(mask[3]);        // angle 0
  CHECK(mask[4]);        // angle 72
  CHECK_FALSE(mask[5]);  // angle 144
  CHECK_FALSE(mask[6]);  // angle 216
  CHECK(mask[7]);        // angle 288

  // A direction aligned with the outward normal is outgoing.
  const auto mask_right = incoming_mask(basis, Vec3(1, 0, 0));
  CHECK_FALSE(mask_right[3]);

  // Grazing directions (d.n == 0) are outgoing.
  const auto basis_up = build_element_basis(elem, 0.5, 1, Material(), kPi / 2.0);
  const auto mask_graze = incoming_mask(basis_up, Vec3(-1, 0, 0));
  CHECK_FALSE(mask_graze[3]);
}

TEST_CASE("frame constructor enforces d = e x h") {
  const Vec3 d = Vec3(1.0, 2.0, -0.5).normalized();
  const Vec3 helper = Vec3(0.0, 1.0, 4.0);
  const Vec3 e = (helper - helper.dot(d) * d).normalized();
  const auto t = DirectionTriple::from_d_e(d, e);
  check_triple(t, 1e-14);
}
