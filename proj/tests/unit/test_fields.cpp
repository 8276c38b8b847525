#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "nsreg/fields/interpolate.hpp"
#include "nsreg/fields/random_fields.hpp"
#include "nsreg/fields/snapshot_io.hpp"
#include "nsreg/fields/spectral.hpp"
#include "support.hpp"

using namespace nsreg;
using nsreg::test::max_diff;

namespace {

const double kPi = std::numbers::pi;

ScalarField scalar(int n, double (*f)(const Vec3&)) { return ScalarField::from_function(PeriodicGrid(n), f); }

}  // namespace

TEST_CASE("grid accepts powers of two from 8") {
  CHECK_NOTHROW(PeriodicGrid(8));
  CHECK_NOTHROW(PeriodicGrid(64));
  CHECK_THROWS_AS(PeriodicGrid(4), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGrid(12), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGrid(0), std::invalid_argument);
  for (int n : {8, 16, 32}) {
    const PeriodicGrid g(n);
    CHECK(static_cast<double>(g.size()) * g.cell_volume() ==
          doctest::Approx(PeriodicGrid::total_measure()).epsilon(1e-14));
  }
}

TEST_CASE("layout puts x1 slowest") {
  const PeriodicGrid g(8);
  const Vec3 p = g.point(g.index(1, 2, 3));
  CHECK(p[0] == doctest::Approx(2 * kPi / 8));
  CHECK(p[1] == doctest::Approx(4 * kPi / 8));
  CHECK(p[2] == doctest::Approx(6 * kPi / 8));
}

TEST_CASE("wrap and minimum image") {
  CHECK(wrap(-0.5) == doctest::Approx(2 * kPi - 0.5));
  CHECK(wrap(2 * kPi + 0.25) == doctest::Approx(0.25));
  const double w = wrap(-1e-18);
  CHECK(w >= 0.0);
  CHECK(w < 2 * kPi);
  const Vec3 d = periodic_difference({0.1, 6.2, 3.0}, {6.2, 0.1, 3.0});
  CHECK(d[0] == doctest::Approx(0.1 + 2 * kPi - 6.2));
  CHECK(d[1] == doctest::Approx(6.2 - 2 * kPi - 0.1));
  CHECK(d[2] == 0.0);
}

TEST_CASE("transform round trip") {
  const PeriodicGrid g(16);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ScalarField f = random_smooth_scalar(g, s);
    CHECK(max_diff(inverse(forward(f)), f) <= 1e-12 * f.max_abs());
  }
}

TEST_CASE("gradient of single modes") {
  const auto f = scalar(32, [](const Vec3& x) { return std::sin(x[0]); });
  const VectorField g = gradient(f);
  const auto expect = VectorField::from_function(f.grid(), [](const Vec3& x) { return Vec3{std::cos(x[0]), 0.0, 0.0}; });
  CHECK(max_diff(g, expect) < 1e-13);

  const auto c = ScalarField(PeriodicGrid(16), 3.5);
  CHECK(gradient(c).max_abs() < 1e-14);

  const auto h = scalar(32, [](const Vec3& x) { return std::sin(x[0]) + std::cos(x[1]); });
  const auto eh = VectorField::from_function(h.grid(), [](const Vec3& x) { return Vec3{std::cos(x[0]), -std::sin(x[1]), 0.0}; });
  CHECK(max_diff(gradient(h), eh) < 1e-13);
}

TEST_CASE("operators reject non-finite input") {
  ScalarField f(PeriodicGrid(8));
  f[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(gradient(f), std::invalid_argument);
  VectorField v(PeriodicGrid(8));
  v[1][3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(curl(v), std::invalid_argument);
  CHECK_THROWS_AS(divergence(v), std::invalid_argument);
  CHECK_THROWS_AS(leray_project(v), std::invalid_argument);
}

TEST_CASE("curl of the shear profile") {
  const PeriodicGrid g(32);
  const auto v = VectorField::from_function(g, [](const Vec3& x) { return Vec3{std::sin(x[1]), 0.0, 0.0}; });
  const auto e = VectorField::from_function(g, [](const Vec3& x) { return Vec3{0.0, 0.0, -std::cos(x[1])}; });
  const VectorField w = curl(v);
  CHECK(max_diff(w, e) < 1e-13);
  CHECK(w.solenoidal());
}

TEST_CASE("vector calculus identities on random fields") {
  const PeriodicGrid g(16);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ScalarField f = random_smooth_scalar(g, s);
    const VectorField gf = gradient(f);
    CHECK(curl(gf).max_abs() <= 1e-12 * gf.max_abs());
    const VectorField v = random_smooth_vector(g, 1000 + s);
    const VectorField cv = curl(v);
    CHECK(divergence(cv).max_abs() <= 1e-12 * cv.max_abs());
  }
}

TEST_CASE("grad tensor entries match partial derivatives") {
  const PeriodicGrid g(16);
  const VectorField v = random_smooth_vector(g, 7);
  const TensorField t = grad_tensor(v);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::array<int, 3> o{0, 0, 0};
      o[j] = 1;
      const ScalarField d = partial_derivative(v[i], o);
      CHECK(max_diff(t(i, j), d) <= 1e-10 * std::max(d.max_abs(), 1e-300));
    }
}

TEST_CASE("Leray projection examples") {
  const PeriodicGrid g(32);
  const VectorField gs = gradient(scalar(32, [](const Vec3& x) { return std::sin(x[0]); }));
  CHECK(leray_project(gs).max_abs() <= 1e-12);

  const auto shear = VectorField::from_function(g, [](const Vec3& x) { return Vec3{std::sin(x[1]), 0.0, 0.0}; });
  const VectorField ps = leray_project(shear);
  CHECK(max_diff(ps, shear) <= 1e-12);
  CHECK(ps.solenoidal());

  const auto mixed = VectorField::from_function(g, [](const Vec3& x) { return Vec3{std::cos(x[0]) + std::sin(x[1]), 0.0, 0.0}; });
  CHECK(max_diff(leray_project(mixed), shear) <= 1e-12);
}

TEST_CASE("Leray keeps the mean mode") {
  const PeriodicGrid g(8);
  VectorField v(g);
  for (std::size_t p = 0; p < g.size(); ++p) v[2][p] = 0.75;
  CHECK(max_diff(leray_project(v), v) < 1e-15);
}

TEST_CASE("Leray is an idempotent orthogonal projection") {
  const PeriodicGrid g(16);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const VectorField v = random_smooth_vector(g, 200 + s);
    const VectorField lv = leray_project(v);
    CHECK(max_diff(leray_project(lv), lv) <= 1e-12 * v.max_abs());
    VectorField rest = v;
    rest -= lv;
    CHECK(std::abs(inner_product(lv, rest)) <= 1e-10 * inner_product(v, v));
    CHECK(divergence(lv).max_abs() <= 1e-10 * lv.max_abs());
  }
}

TEST_CASE("heat semigroup") {
  const PeriodicGrid g(32);
  const auto shear = VectorField::from_function(g, [](const Vec3& x) { return Vec3{std::sin(x[1]), 0.0, 0.0}; });
  const VectorField h = heat_semigroup(shear, 1.0);
  VectorField e = shear;
  e *= std::exp(-1.0);
  CHECK(max_diff(h, e) < 1e-15);
  CHECK(h.max_abs() == doctest::Approx(0.36787944117144233).epsilon(1e-12));
  CHECK(max_diff(heat_semigroup(shear, 0.0), shear) == 0.0);
  const ScalarField c(g, 2.0);
  CHECK(max_diff(heat_semigroup(c, 5.0), c) < 1e-14);
  CHECK_THROWS_AS(heat_semigroup(c, -1e-3), std::invalid_argument);

  const ScalarField f = random_smooth_scalar(g, 3);
  const ScalarField ab = heat_semigroup(heat_semigroup(f, 0.03), 0.05);
  const ScalarField direct = heat_semigroup(f, 0.08);
  CHECK(max_diff(ab, direct) <= 1e-12 * direct.max_abs());
}

TEST_CASE("random solenoidal fields are divergence free and mean free") {
  const PeriodicGrid g(16);
  const VectorField v = random_solenoidal(g, 11);
  CHECK(v.solenoidal());
  CHECK(divergence(v).max_abs() <= 1e-10 * v.max_abs());
  for (int c = 0; c < 3; ++c) CHECK(std::abs(v[c].integral()) < 1e-12);
}

TEST_CASE("trilinear sampling") {
  const PeriodicGrid g(32);
  const auto f = ScalarField::from_function(g, [](const Vec3& x) { return std::sin(x[0]); });
  for (std::size_t p = 0; p < g.size(); p += 97) CHECK(sample_at(f, g.point(p)) == f[p]);
  const ScalarField c(g, -1.25);
  CHECK(sample_at(c, {1.234, 5.1, 0.3}) == doctest::Approx(-1.25).epsilon(1e-15));
  const double h = g.spacing();
  double worst = 0.0;
  for (int i = 0; i < 32; ++i) {
    const Vec3 x{(i + 0.5) * h, 0.37, 1.1};
    worst = std::max(worst, std::abs(sample_at(f, x) - std::sin(x[0])));
  }
  CHECK(worst <= 2.0 * (kPi / 32) * (kPi / 32));
}

TEST_CASE("tricubic and spectral sampling") {
  const PeriodicGrid g(16);
  const auto f = ScalarField::from_function(g, [](const Vec3& x) { return std::sin(x[0]) * std::cos(2 * x[1]) + std::cos(x[2]); });
  const Vec3 x{0.31, 4.02, 2.77};
  const double exact = std::sin(x[0]) * std::cos(2 * x[1]) + std::cos(x[2]);
  const double lin = std::abs(sample_at(f, x, Interpolation::kTrilinear) - exact);
  const double cub = std::abs(sample_at(f, x, Interpolation::kTricubic) - exact);
  CHECK(cub < lin);
  CHECK(cub < 1e-3);
  CHECK(sample_at(f, x, Interpolation::kSpectral) == doctest::Approx(exact).epsilon(1e-12));
  CHECK(evaluate_spectral(forward(f), x) == doctest::Approx(exact).epsilon(1e-12));
  for (std::size_t p = 0; p < g.size(); p += 41)
    CHECK(sample_at(f, g.point(p), Interpolation::kTricubic) == doctest::Approx(f[p]).epsilon(1e-14));
}

TEST_CASE("packed sampling agrees with per-field sampling") {
  const PeriodicGrid g(16);
  const VectorField a = random_smooth_vector(g, 1);
  const VectorField b = random_smooth_vector(g, 2);
  PackedField packed(g, 3);
  const std::vector<const ScalarField*> pa{&a[0], &a[1], &a[2]};
  const std::vector<const ScalarField*> pb{&b[0], &b[1], &b[2]};
  packed.assign_blend(pa, pb, 0.25);
  VectorField blend = a;
  blend *= 0.75;
  blend.axpy(0.25, b);
  const Vec3 x{2.2, 0.05, 6.1};
  for (auto mode : {Interpolation::kTrilinear, Interpolation::kTricubic, Interpolation::kSpectral}) {
    packed.prepare(mode);
    double out[3];
    packed.sample(x, mode, out);
    const Vec3 ref = sample_at(blend, x, mode);
    for (int c = 0; c < 3; ++c) CHECK(out[c] == doctest::Approx(ref[c]).epsilon(1e-12));
  }
}

TEST_CASE("interpolation names") {
  CHECK(interpolation_from_string("trilinear") == Interpolation::kTrilinear);
  CHECK(interpolation_from_string("tricubic") == Interpolation::kTricubic);
  CHECK(interpolation_from_string("spectral") == Interpolation::kSpectral);
  CHECK_THROWS_AS(interpolation_from_string("cubic"), std::invalid_argument);
}

TEST_CASE("snapshot files round trip bit for bit") {
  const auto dir = std::filesystem::temp_directory_path() / "nsreg_test_fields";
  std::filesystem::create_directories(dir);
  const PeriodicGrid g(8);
  const VectorField v = random_smooth_vector(g, 5);
  const auto path = dir / "v.bin";
  write_snapshot(path, "u", 0.125, v);
  double t = 0.0;
  const VectorField back = read_vector_snapshot(path, &t);
  CHECK(t == 0.125);
  for (int c = 0; c < 3; ++c)
    for (std::size_t p = 0; p < g.size(); ++p) CHECK(back[c][p] == v[c][p]);

  std::ifstream in(path, std::ios::binary);
  std::string header;
  std::getline(in, header);
  CHECK(header == R"({"byte_order":"little","components":3,"grid":8,"name":"u","scalar":"float64","time":0.125})");

  const auto size = std::filesystem::file_size(path);
  std::filesystem::resize_file(path, size - 8);
  CHECK_THROWS_AS(read_snapshot(path), std::runtime_error);
  std::filesystem::remove_all(dir);
}
