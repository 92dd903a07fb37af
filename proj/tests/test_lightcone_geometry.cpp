// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "coorbit/lightcone_geometry.hpp"

using namespace coorbit;
using cone::Vec;

namespace {
double uni(std::mt19937_64& r, double lo, double hi) {
  return lo + (hi - lo) * ((r() >> 11) * 0x1.0p-53);
}
Vec random_cone_point(std::mt19937_64& r, int n) {
  cone::IwasawaCoords co;
  co.gamma = std::exp(uni(r, -1.0, 1.0));
  co.t = uni(r, -1.0, 1.0);
  co.c.resize(n - 2);
  for (auto& v : co.c) v = uni(r, -1.0, 1.0);
  return cone::point_from_coords(co, n);
}
}  // namespace

TEST_CASE("bilinear form") {
  const Vec e = cone::base_point(3);
  CHECK(cone::bform(e, e) == 1.0);
  CHECK(cone::bform(Vec{1, 0, 2}, Vec{1, 0, 2}) == doctest::Approx(3.0));
  CHECK_THROWS_AS(cone::bform(Vec{1, 2, 3}, Vec{1, 2}), std::invalid_argument);

  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    Vec x(4), y(4);
    for (int k = 0; k < 4; ++k) {
      x[k] = uni(rng, -2, 2);
      y[k] = uni(rng, -2, 2);
    }
    CHECK(cone::bform(x, y) == doctest::Approx(cone::bform(y, x)));
  }
}

TEST_CASE("cone membership and determinant") {
  CHECK(cone::cone_determinant(cone::base_point(3)) == doctest::Approx(1.0));
  CHECK(cone::cone_determinant(Vec{0, 0, 3.5}) == doctest::Approx(3.5));
  CHECK(cone::cone_determinant(Vec{1, 0, 2}) == doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(cone::cone_determinant(Vec{2, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(cone::cone_determinant(Vec{0, 0, -1}), std::invalid_argument);
}

TEST_CASE("Iwasawa factors preserve the form") {
  for (int n : {3, 4, 5}) {
    CHECK(cone::bform_defect(cone::boost(0.0, n)) == 0.0);
    const Vec c0(n - 2, 0.0);
    CHECK(cone::bform_defect(cone::shear(c0)) == 0.0);
  }

  const auto at = cone::boost(std::log(2.0), 3);
  const Vec img = at.apply(cone::base_point(3));
  CHECK(img[0] == doctest::Approx(0.75));
  CHECK(img[1] == doctest::Approx(0.0));
  CHECK(img[2] == doctest::Approx(1.25));

  std::mt19937_64 rng(15);
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + static_cast<int>(rng() % 3);
    Vec c(n - 2);
    for (auto& v : c) v = uni(rng, -1.5, 1.5);
    CHECK(cone::bform_defect(cone::boost(uni(rng, -2, 2), n), 20, i) < 1e-10);
    CHECK(cone::bform_defect(cone::shear(c), 20, i) < 1e-10);
    const auto prod = cone::boost(uni(rng, -1, 1), n) * cone::shear(c);
    CHECK(cone::bform_defect(prod, 20, i) < 1e-10);
  }

  SUBCASE("rotation block validation") {
    cone::Matrix rot2;
    rot2.n = 2;
    const double th = 0.37;
    rot2.a = {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    CHECK(cone::bform_defect(cone::rotation(rot2), 100) < 1e-10);

    cone::Matrix reflect;
    reflect.n = 2;
    reflect.a = {1.0, 0.0, 0.0, -1.0};
    CHECK_THROWS_AS(cone::rotation(reflect), std::invalid_argument);

    cone::Matrix skew;
    skew.n = 2;
    skew.a = {1.0, 0.5, 0.0, 1.0};
    CHECK_THROWS_AS(cone::rotation(skew), std::invalid_argument);
  }
}

TEST_CASE("simply transitive coordinates") {
  const auto co_e = cone::coords_from_point(cone::base_point(3));
  CHECK(co_e.gamma == doctest::Approx(1.0));
  CHECK(co_e.t == doctest::Approx(0.0));
  CHECK(co_e.c[0] == doctest::Approx(0.0));

  const auto co_2e = cone::coords_from_point(Vec{0, 0, 2});
  CHECK(co_2e.gamma == doctest::Approx(2.0));
  CHECK(co_2e.t == doctest::Approx(0.0));

  // boost-scaled base point
  cone::IwasawaCoords co{3.0, std::log(2.0), {0.0}};
  const Vec x = cone::point_from_coords(co, 3);
  const auto back = cone::coords_from_point(x);
  CHECK(back.gamma == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(back.t == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(back.c[0]) < 1e-12);

  // boost image of e: (sinh t, 0, cosh t)
  const Vec bt = cone::point_from_coords({1.0, 0.8, {0.0}}, 3);
  CHECK(bt[0] == doctest::Approx(std::sinh(0.8)));
  CHECK(bt[2] == doctest::Approx(std::cosh(0.8)));

  // four-dimensional example with nonzero shear
  const Vec p4 = cone::point_from_coords({2.0, 0.0, {1.0, 0.0}}, 4);
  CHECK(p4[0] == doctest::Approx(1.0));
  CHECK(p4[1] == doctest::Approx(-2.0));
  CHECK(p4[2] == doctest::Approx(0.0));
  CHECK(p4[3] == doctest::Approx(3.0));
  CHECK(cone::bform(p4, p4) == doctest::Approx(4.0));

  std::mt19937_64 rng(16);
  for (int i = 0; i < 500; ++i) {
    const int n = 3 + static_cast<int>(rng() % 2);
    const Vec x0 = random_cone_point(rng, n);
    const auto c0 = cone::coords_from_point(x0);
    const Vec x1 = cone::point_from_coords(c0, n);
    for (int k = 0; k < n; ++k)
      CHECK(x1[k] == doctest::Approx(x0[k]).epsilon(1e-10));
    // frame matrix maps e to the point
    const Vec x2 = cone::frame_matrix(c0, n).apply(cone::base_point(n));
    for (int k = 0; k < n; ++k)
      CHECK(x2[k] == doctest::Approx(x0[k]).epsilon(1e-10));
  }
}

TEST_CASE("modular function") {
  CHECK(cone::modular({1.0, 0.0, {0.0}}, 3) == doctest::Approx(1.0));
  CHECK(cone::modular({5.0, std::log(2.0), {0.3}}, 3) == doctest::Approx(2.0));
  CHECK(cone::modular({1.0, std::log(2.0), {0.3, 0.1}}, 4) == doctest::Approx(4.0));
  CHECK_THROWS_AS(cone::modular({1.0, 0.0, {}}, 2), std::invalid_argument);
}

TEST_CASE("invariant balls") {
  const Vec e = cone::base_point(3);
  CHECK(cone::in_ball(0.1, e, e));
  CHECK(cone::in_ball(std::log(2.0) + 1e-9, e, Vec{0, 0, 2}));
  CHECK_FALSE(cone::in_ball(std::log(2.0) - 1e-9, e, Vec{0, 0, 2}));
  CHECK_THROWS_AS(cone::in_ball(-1.0, e, e), std::invalid_argument);

  std::mt19937_64 rng(18);
  SUBCASE("distance is symmetric and left invariant") {
    for (int i = 0; i < 300; ++i) {
      const Vec w = random_cone_point(rng, 3);
      const Vec x = random_cone_point(rng, 3);
      const double d1 = cone::invariant_distance(w, x);
      const double d2 = cone::invariant_distance(x, w);
      CHECK(d1 == doctest::Approx(d2).epsilon(1e-10));
      // act by a random frame h
      const auto h = cone::frame_matrix(
          {std::exp(uni(rng, -0.7, 0.7)), uni(rng, -0.7, 0.7), {uni(rng, -0.7, 0.7)}},
          3);
      const double d3 = cone::invariant_distance(h.apply(w), h.apply(x));
      CHECK(d3 == doctest::Approx(d1).epsilon(1e-10));
    }
  }
}

TEST_CASE("Whitney covers") {
  CHECK_THROWS_AS(cone::whitney_cover(cone::Region{}, -0.1, 10), std::invalid_argument);

  SUBCASE("degenerate region yields a single point") {
    cone::Region pt{3, 1.3, 1.3, 0.2, 0.2, -0.1, -0.1};
    const auto cov = cone::whitney_cover(pt, 0.5, 1, 3);
    CHECK(cov.points.size() == 1);
    CHECK(cov.overlap == 1);
  }

  SUBCASE("certified cover over the default region") {
    cone::Region reg;
    const auto cov = cone::whitney_cover(reg, 0.55, 34, 1);
    const auto base = cone::certify_cover(cov, 10);
    CHECK(base.half_disjoint);
    CHECK(base.covered);
    const auto dense = cone::certify_cover(cov, 1);  // 10x denser probes
    CHECK(dense.half_disjoint);
    CHECK(dense.covered);
    CHECK(dense.max_overlap <= 20);

    // halving delta grows the count roughly eightfold in three dimensions
    const auto cov2 = cone::whitney_cover(reg, 0.275, 34, 1);
    const double ratio = double(cov2.points.size()) / cov.points.size();
    CHECK(ratio >= 4.0);
    CHECK(ratio <= 16.0);
  }
}

TEST_CASE("invariant measure change of variables") {
  // integral over the cone of f(x) det(x)^{-n} dx equals the coordinate
  // integral of f(gamma a_t n_c e) dgamma dc dt / gamma for compactly
  // supported f (n = 3).
  auto fcoord = [](double lg, double t, double c) {
    auto bump = [](double u) { return u * u >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - u * u)); };
    return bump(lg / 0.5) * bump(t / 0.5) * bump(c / 0.5);
  };
  auto f = [&](const Vec& x) {
    if (!cone::in_cone(x)) return 0.0;
    const auto co = cone::coords_from_point(x);
    return fcoord(std::log(co.gamma), co.t, co.c[0]);
  };

  // coordinate side: midpoint in (log gamma, t, c), measure d(log gamma) dt dc
  double coord = 0.0;
  const int m = 48;
  const double h = 1.0 / m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double lg = -0.5 + (i + 0.5) * h, t = -0.5 + (j + 0.5) * h,
                     c = -0.5 + (k + 0.5) * h;
        coord += fcoord(lg, t, c) * h * h * h;
      }

  // Lebesgue side over a box containing the support image
  double leb = 0.0;
  const int M = 72;
  const double x1lo = -1.6, x1hi = 2.2, x2lo = -1.2, x2hi = 1.2, x3lo = 0.2,
               x3hi = 3.2;
  const double dx1 = (x1hi - x1lo) / M, dx2 = (x2hi - x2lo) / M,
               dx3 = (x3hi - x3lo) / M;
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      for (int k = 0; k < M; ++k) {
        Vec x{x1lo + (i + 0.5) * dx1, x2lo + (j + 0.5) * dx2,
              x3lo + (k + 0.5) * dx3};
        const double fv = f(x);
        if (fv == 0.0) continue;
        leb += fv * std::pow(cone::bform(x, x), -1.5) * dx1 * dx2 * dx3;
      }
  CHECK(leb == doctest::Approx(coord).epsilon(1e-2));
}
