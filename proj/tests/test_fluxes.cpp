#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stdgt/fluxes.hpp"

using namespace stdgt;

namespace {

std::mt19937 rng(2024);

Vec3 random_vec() {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return Vec3(d(rng), d(rng), d(rng));
}

TraceSample random_trace() {
  TraceSample s;
  s.E = random_vec();
  s.H = random_vec();
  return s;
}

TraceSample full_trace(const Vec3& E, const Vec3& H) {
  TraceSample s;
  s.E = E;
  s.H = H;
  s.E_in = E;
  s.H_in = H;
  s.has_incoming = true;
  return s;
}

}  // namespace

TEST_CASE("transparent flux ignores purely outgoing traces") {
  TraceSample outgoing;
  outgoing.E = Vec3(0.0, 0.0, 1.3);
  outgoing.H = Vec3(0.2, -0.7, 0.0);
  outgoing.has_incoming = true;  // incoming part left at zero

  TraceSample test = full_trace(random_vec(), random_vec());
  const Vec3 n(1, 0, 0);
  CHECK(boundary_bilinear_density(Transparent{}, outgoing, test, n, 1.0) ==
        doctest::Approx(0.0));
  CHECK(boundary_bilinear_density(Transparent{}, test, outgoing, n, 1.0) ==
        doctest::Approx(0.0));
}

TEST_CASE("transparent flux at normal incidence gives 2 phi^2") {
  // Wave travelling along +x hits the left boundary (outward normal -x)
  // head-on; with unit impedance E = phi z-hat and H = -phi y-hat.
  const Vec3 n(-1, 0, 0);
  for (double phi : {0.3, -1.2, 2.0}) {
    const TraceSample w = full_trace(Vec3(0, 0, phi), Vec3(0, -phi, 0));
    CHECK(boundary_bilinear_density(Transparent{}, w, w, n, 1.0) ==
          doctest::Approx(2.0 * phi * phi).epsilon(1e-14));
  }
}

TEST_CASE("transparent flux requires incoming parts") {
  TraceSample plain = random_trace();
  TraceSample ok = full_trace(random_vec(), random_vec());
  CHECK_THROWS_AS(
      boundary_bilinear_density(Transparent{}, plain, ok, Vec3(1, 0, 0), 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      boundary_bilinear_density(Transparent{}, ok, plain, Vec3(1, 0, 0), 1.0),
      std::invalid_argument);
}

TEST_CASE("electric wall density vanishes for beta=0 and zero test H") {
  PECLike pec;
  TraceSample trial = random_trace();
  TraceSample test;
  test.E = random_vec();  // test.H stays zero
  CHECK(boundary_bilinear_density(pec, trial, test, Vec3(0, 1, 0), 1.0) ==
        doctest::Approx(0.0));
}

TEST_CASE("negative penalty weights are rejected") {
  TraceSample s = random_trace();
  CHECK_THROWS_AS(boundary_bilinear_density(PECLike{-1.0, nullptr}, s, s,
                                            Vec3(1, 0, 0), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(boundary_bilinear_density(PMCLike{-0.5, nullptr}, s, s,
                                            Vec3(1, 0, 0), 1.0),
                  std::invalid_argument);
}

TEST_CASE("silver-mueller is the impedance-weighted average of the walls") {
  for (double Z : {0.5, 1.0, 2.7}) {
    for (int trial = 0; trial < 20; ++trial) {
      const TraceSample u = random_trace();
      const TraceSample v = random_trace();
      const Vec3 n = random_vec().normalized();
      const double sm = boundary_bilinear_density(SilverMueller{}, u, v, n, Z);
      const double pec =
          boundary_bilinear_density(PECLike{Z, nullptr}, u, v, n, Z);
      const double pmc =
          boundary_bilinear_density(PMCLike{1.0 / Z, nullptr}, u, v, n, Z);
      CHECK(sm == doctest::Approx(0.5 * (pec + pmc)).epsilon(1e-14));
    }
  }
}

TEST_CASE("silver-mueller absorbs normally outgoing plane waves") {
  const Vec3 n(0, 1, 0);
  for (double Z : {1.0, 2.0}) {
    // Plane wave with d = n: E tangential, H = (1/Z) n x E.
    const Vec3 E(0.8, 0.0, -0.3);
    const Vec3 H = n.cross(E) / Z;
    TraceSample w;
    w.E = E;
    w.H = H;
    for (int trial = 0; trial < 10; ++trial) {
      const TraceSample test = random_trace();
      CHECK(std::abs(boundary_bilinear_density(SilverMueller{}, w, test, n, Z)) <
            1e-14);
    }
  }
}

TEST_CASE("wall fluxes are consistent with their impedance data") {
  // For any trace (E, H), the electric wall with datum g = E + beta (n x H)
  // and the magnetic wall with datum g' = H - beta' (n x E) reproduce the
  // bilinear density exactly, for every test function.
  for (int trial = 0; trial < 25; ++trial) {
    const Vec3 n = random_vec().normalized();
    const TraceSample u = random_trace();
    const TraceSample v = random_trace();
    const double beta = 0.7, beta_prime = 1.9;

    const Vec3 g = u.E + beta * n.cross(u.H);
    PECLike pec{beta, [g](const Vec3&, double) { return g; }};
    CHECK(boundary_bilinear_density(pec, u, v, n, 1.0) ==
          doctest::Approx(
              boundary_linear_density(pec, v, n, Vec3::Zero(), 0.0))
              .epsilon(1e-12));

    const Vec3 gp = u.H - beta_prime * n.cross(u.E);
    PMCLike pmc{beta_prime, [gp](const Vec3&, double) { return gp; }};
    CHECK(boundary_bilinear_density(pmc, u, v, n, 1.0) ==
          doctest::Approx(
              boundary_linear_density(pmc, v, n, Vec3::Zero(), 0.0))
              .epsilon(1e-12));
  }
}

TEST_CASE("linear density is zero for absorbing conditions and null data") {
  const TraceSample v = random_trace();
  const Vec3 n(1, 0, 0);
  CHECK(boundary_linear_density(SilverMueller{}, v, n, Vec3(1, 2, 0), 3.0) ==
        doctest::Approx(0.0));
  CHECK(boundary_linear_density(Transparent{}, v, n, Vec3(1, 2, 0), 3.0) ==
        doctest::Approx(0.0));
  CHECK(boundary_linear_density(PECLike{0.5, nullptr}, v, n, Vec3(1, 2, 0),
                                3.0) == doctest::Approx(0.0));
  CHECK(boundary_linear_density(PMCLike{0.5, nullptr}, v, n, Vec3(1, 2, 0),
                                3.0) == doctest::Approx(0.0));
}

TEST_CASE("linear density applies the boundary data at the given point and time") {
  const Vec3 n(0, -1, 0);
  PECLike pec{1.0, [](const Vec3& r, double t) {
                return Vec3(r.x() * t, 0.0, r.y() + t);
              }};
  TraceSample v;
  v.H = Vec3(0.5, -1.0, 0.25);
  const Vec3 point(2.0, 3.0, 0.0);
  const double t = 1.5;
  const Vec3 g(2.0 * 1.5, 0.0, 3.0 + 1.5);
  const double expected = -n.cross(g).dot(v.H);
  CHECK(boundary_linear_density(pec, v, n, point, t) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("dissipation densities reduce to the closed forms") {
  for (int trial = 0; trial < 25; ++trial) {
    const Vec3 n = random_vec().normalized();
    TraceSample w = full_trace(random_vec(), random_vec());
    const double Z = 1.7;
    const double beta = 0.9, beta_prime = 0.4;

    CHECK(dissipation_density(PECLike{beta, nullptr}, w, n, Z) ==
          doctest::Approx(beta * n.cross(w.H).squaredNorm()).epsilon(1e-12));
    CHECK(dissipation_density(PMCLike{beta_prime, nullptr}, w, n, Z) ==
          doctest::Approx(beta_prime * n.cross(w.E).squaredNorm())
              .epsilon(1e-12));
    CHECK(dissipation_density(SilverMueller{}, w, n, Z) ==
          doctest::Approx(0.5 * (Z * n.cross(w.H).squaredNorm() +
                                 n.cross(w.E).squaredNorm() / Z))
              .epsilon(1e-12));
  }
}

TEST_CASE("dissipation is non-negative for homogeneous dissipative conditions") {
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 n = random_vec().normalized();
    const TraceSample w = full_trace(random_vec(), random_vec());
    CHECK(dissipation_density(PECLike{0.0, nullptr}, w, n, 1.3) >= -1e-15);
    CHECK(dissipation_density(PECLike{2.0, nullptr}, w, n, 1.3) >= -1e-15);
    CHECK(dissipation_density(PMCLike{0.7, nullptr}, w, n, 1.3) >= -1e-15);
    CHECK(dissipation_density(SilverMueller{}, w, n, 0.8) >= -1e-15);
  }
}

TEST_CASE("zero traces dissipate nothing") {
  TraceSample zero;
  zero.has_incoming = true;
  const Vec3 n(0, 0, 1);
  CHECK(dissipation_density(PECLike{1.0, nullptr}, zero, n, 1.0) ==
        doctest::Approx(0.0));
  CHECK(dissipation_density(SilverMueller{}, zero, n, 1.0) ==
        doctest::Approx(0.0));
  CHECK(dissipation_density(Transparent{}, zero, n, 1.0) ==
        doctest::Approx(0.0));
}
