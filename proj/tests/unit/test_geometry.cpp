#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dimlab/error.hpp"
#include "dimlab/geometry.hpp"
#include "dimlab/linalg.hpp"
#include "dimlab/rng.hpp"

using namespace dimlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Undo the seeded rotation so native chart coordinates can be checked.
Matrix unembed(const PointCloud& cloud, const ManifoldSpec& spec) {
  const Matrix q = random_orthogonal(cloud.p(), spec.embed_seed);
  return cloud.points() * q;
}

double chi2_stat(const std::vector<double>& observed, const std::vector<double>& expected) {
  double s = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) s += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  return s;
}

constexpr double kChi2Crit19 = 43.82;  // 0.999 quantile, 19 degrees of freedom

}  // namespace

TEST_CASE("catalog matches the manifold table") {
  struct Row {
    const char* id;
    ManifoldKind kind;
    int d;
    std::size_t p;
  };
  const Row rows[] = {
      {"M11", ManifoldKind::sphere, 5, 10},           {"M12", ManifoldKind::sphere, 10, 20},
      {"M13", ManifoldKind::sphere, 20, 40},          {"M21", ManifoldKind::ball, 5, 10},
      {"M22", ManifoldKind::ball, 10, 20},            {"M23", ManifoldKind::ball, 20, 40},
      {"M31", ManifoldKind::gaussian_surface, 5, 10}, {"M32", ManifoldKind::gaussian_surface, 10, 20},
      {"M33", ManifoldKind::gaussian_surface, 20, 40}, {"M41", ManifoldKind::deformed_sphere, 3, 6},
      {"M42", ManifoldKind::deformed_sphere, 3, 6},   {"M43", ManifoldKind::deformed_sphere, 3, 6},
      {"M5", ManifoldKind::cylinder, 2, 4},           {"M6", ManifoldKind::helix, 1, 3},
      {"M7", ManifoldKind::swiss_roll, 2, 4},         {"M8", ManifoldKind::mobius, 2, 4},
      {"M9", ManifoldKind::torus, 2, 4},              {"M10", ManifoldKind::hyperboloid, 2, 4},
  };
  REQUIRE(manifold_catalog().size() == 18);
  for (const auto& r : rows) {
    const auto& s = catalog_entry(r.id);
    CHECK(s.kind == r.kind);
    CHECK(s.d == r.d);
    CHECK(s.ambient_p == r.p);
    CHECK(s.ambient_p >= native_dim(s));
  }
  CHECK(catalog_entry("M41").params.c == 0.01);
  CHECK(catalog_entry("M43").params.c == 1.0);
  CHECK(catalog_entry("M11").params.R == 1.0);
  CHECK_THROWS_AS(catalog_entry("M99"), InputError);
}

TEST_CASE("charts") {
  SUBCASE("deformed circle at u = 0") {
    const auto spec = make_deformed_sphere(1, 1.0);
    const auto x = chart_inverse(spec, std::vector<double>{0.0});
    CHECK(x[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(std::abs(x[1]) < 1e-15);
  }
  SUBCASE("2-sphere north pole") {
    const auto x = chart_inverse(make_sphere(2, 3), std::vector<double>{0.0, 0.0});
    CHECK(std::abs(x[0]) < 1e-15);
    CHECK(std::abs(x[1]) < 1e-15);
    CHECK(x[2] == doctest::Approx(1.0));
  }
  SUBCASE("deformed 2-sphere against long double evaluation") {
    const auto spec = make_deformed_sphere(2, 0.1);
    const std::vector<double> u{1.0, -0.5};
    const auto x = chart_inverse(spec, u);
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int j = 0; j < 2; ++j) {
      const long double uj = u[j];
      const long double rho = 1.0L + 0.5L * std::cos(2.0L * 0.1L * pi * uj);
      CHECK(x[j] == doctest::Approx(static_cast<double>(rho * std::cos(2.0L * pi * uj))).epsilon(1e-14));
      CHECK(x[j + 2] == doctest::Approx(static_cast<double>(rho * std::sin(2.0L * pi * uj))).epsilon(1e-14));
    }
  }
  SUBCASE("out of domain") {
    CHECK_THROWS_AS(chart_inverse(make_sphere(2, 3), std::vector<double>{4.0, 0.0}), InputError);
  }
}

TEST_CASE("volume distortion") {
  SUBCASE("cylinder is isometric") {
    for (double t : {0.1, 2.0, 5.0}) CHECK(volume_distortion(catalog_entry("M5"), std::vector<double>{t, 0.3}) == 1.0);
  }
  SUBCASE("2-sphere gives sin of the colatitude") {
    for (double th : {0.2, 1.0, 2.5})
      CHECK(std::abs(volume_distortion(make_sphere(2, 3), std::vector<double>{th, 1.0}) - std::sin(th)) < 1e-6);
  }
  SUBCASE("deformed circle against a finite-difference Gram determinant") {
    const auto spec = make_deformed_sphere(1, 1.0);
    const double u = 0.3, h = 1e-5;
    const auto a = chart_inverse(spec, std::vector<double>{u + h});
    const auto b = chart_inverse(spec, std::vector<double>{u - h});
    const double dx = (a[0] - b[0]) / (2 * h), dy = (a[1] - b[1]) / (2 * h);
    CHECK(std::abs(volume_distortion(spec, std::vector<double>{u}) - std::sqrt(dx * dx + dy * dy)) < 1e-5);
  }
  SUBCASE("analytic factors agree with the numeric Gram determinant") {
    RngStream rng(4, 4);
    for (const auto& spec : manifold_catalog()) {
      const ChartBox box = chart_domain(spec);
      for (int t = 0; t < 5; ++t) {
        std::vector<double> u(box.lo.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
          const double w = box.hi[i] - box.lo[i];
          u[i] = box.lo[i] + w * (0.05 + 0.9 * rng.uniform());
        }
        const double j = volume_distortion(spec, u);
        CHECK_MESSAGE(std::abs(j - volume_distortion_numeric(spec, u)) <= 1e-5 * std::max(1.0, j), spec.id);
      }
    }
  }
  SUBCASE("acceptance probabilities lie in [0, 1]") {
    RngStream rng(6, 6);
    for (const auto& spec : manifold_catalog()) {
      const ChartBox box = chart_domain(spec);
      const double bound = acceptance_bound(spec);
      const int draws = spec.kind == ManifoldKind::mobius || spec.kind == ManifoldKind::hyperboloid ? 20000 : 100000;
      double worst = 0.0;
      std::vector<double> u(box.lo.size());
      for (int t = 0; t < draws; ++t) {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * rng.uniform();
        worst = std::max(worst, volume_distortion(spec, u) / bound);
      }
      CHECK_MESSAGE(worst <= 1.0, spec.id);
    }
  }
}

TEST_CASE("sampling") {
  SUBCASE("sphere points have unit norm after embedding") {
    SampleConfig cfg;
    cfg.n = 1000;
    cfg.seed = 1;
    const auto cloud = sample_manifold(catalog_entry("M11"), cfg);
    REQUIRE(cloud.p() == 10);
    for (std::size_t i = 0; i < cloud.n(); ++i) {
      double s = 0;
      for (double v : cloud.point(i)) s += v * v;
      REQUIRE(std::abs(std::sqrt(s) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("Archimedes: the 2-sphere height is uniform") {
    const auto spec = make_sphere(2, 3);
    SampleConfig cfg;
    cfg.n = 100000;
    cfg.seed = 2;
    const Matrix x = unembed(sample_manifold(spec, cfg), spec);
    std::vector<double> obs(20, 0.0), exp(20, cfg.n / 20.0);
    for (std::size_t i = 0; i < cfg.n; ++i) obs[std::min(19, static_cast<int>((x(i, 2) + 1.0) * 10.0))] += 1;
    CHECK(chi2_stat(obs, exp) < kChi2Crit19);
  }
  SUBCASE("torus tube angle follows R0 + r cos v") {
    const auto& spec = catalog_entry("M9");
    SampleConfig cfg;
    cfg.n = 100000;
    cfg.seed = 3;
    const Matrix x = unembed(sample_manifold(spec, cfg), spec);
    const double R0 = spec.params.R, r = spec.params.r;
    std::vector<double> obs(20, 0.0), exp(20);
    for (int b = 0; b < 20; ++b) {
      const double lo = -kPi + b * kPi / 10, hi = lo + kPi / 10;
      exp[b] = cfg.n * (R0 * (hi - lo) + r * (std::sin(hi) - std::sin(lo))) / (2 * kPi * R0);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.n; ++i) {
      const double rho = std::hypot(x(i, 0), x(i, 1));
      const double res = (rho - R0) * (rho - R0) + x(i, 2) * x(i, 2) - r * r;
      worst = std::max({worst, std::abs(res), std::abs(x(i, 3))});
      const double v = std::atan2(x(i, 2), rho - R0);
      obs[std::clamp(static_cast<int>((v + kPi) / (kPi / 10)), 0, 19)] += 1;
    }
    CHECK(worst <= 1e-9);
    CHECK(chi2_stat(obs, exp) < kChi2Crit19);
  }
  SUBCASE("determinism and stream separation") {
    for (const auto& spec : manifold_catalog()) {
      SampleConfig cfg;
      cfg.n = 50;
      cfg.seed = 9;
      cfg.stream_id = 4;
      const auto a = sample_manifold(spec, cfg);
      const auto b = sample_manifold(spec, cfg);
      CHECK(a.points() == b.points());
      cfg.stream_id = 5;
      CHECK_FALSE(sample_manifold(spec, cfg).points() == a.points());
      cfg.beta = BetaShape{};
      const auto c = sample_manifold(spec, cfg);
      CHECK(c.n() == 50);
      CHECK(c.p() == spec.ambient_p);
    }
  }
  SUBCASE("noise is added in the ambient space") {
    SampleConfig cfg;
    cfg.n = 2000;
    cfg.noise_sigma = 0.05;
    const auto cloud = sample_manifold(catalog_entry("M11"), cfg);
    double s = 0;
    for (std::size_t i = 0; i < cloud.n(); ++i) {
      double nn = 0;
      for (double v : cloud.point(i)) nn += v * v;
      s += nn;
    }
    // E|x + e|^2 = 1 + p sigma^2
    CHECK(s / cfg.n == doctest::Approx(1.0 + 10 * 0.0025).epsilon(0.01));
  }
  SUBCASE("invalid configurations") {
    SampleConfig cfg;
    cfg.n = 1;
    CHECK_THROWS_AS(sample_manifold(catalog_entry("M11"), cfg), InputError);
    cfg.n = 10;
    cfg.noise_sigma = -1;
    CHECK_THROWS_AS(sample_manifold(catalog_entry("M11"), cfg), InputError);
    ManifoldSpec bad = catalog_entry("M11");
    bad.ambient_p = 4;
    CHECK_THROWS_AS(sample_manifold(bad, SampleConfig{}), InputError);
  }
}

TEST_CASE("linear embedding") {
  SUBCASE("same width only rotates") {
    RngStream rng(1, 2);
    Matrix x(20, 4);
    for (double& v : x.data()) v = rng.normal();
    const auto e = embed_linear(x, 4, 17);
    const Matrix g0 = x * x.transposed();
    const Matrix g1 = e.points() * e.points().transposed();
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 20; ++j) CHECK(std::abs(g0(i, j) - g1(i, j)) <= 1e-12);
  }
  SUBCASE("distance 3 survives 3 -> 40") {
    const Matrix x{{0.0, 0.0, 0.0}, {1.0, 2.0, 2.0}};
    const auto e = embed_linear(x, 40, 5);
    CHECK(std::abs(distance(e.point(0), e.point(1)) - 3.0) <= 1e-12);
  }
  SUBCASE("pairwise distances preserved") {
    RngStream rng(3, 3);
    Matrix x(30, 6);
    for (double& v : x.data()) v = rng.normal();
    const auto e = embed_linear(x, 25, 99);
    for (int t = 0; t < 100; ++t) {
      const auto i = rng.below(30), j = rng.below(30);
      CHECK(std::abs(distance(x.row(i), x.row(j)) - distance(e.point(i), e.point(j))) <= 1e-12);
    }
  }
  SUBCASE("seed 42, 8x8 against Gram-Schmidt") {
    const std::size_t p = 8;
    const Matrix q = random_orthogonal(p, 42);
    // Same Gaussian draws, column-wise classical Gram-Schmidt in long double.
    RngStream rng(42, 0x6d626564);
    std::vector<long double> g(p * p);
    for (auto& v : g) v = rng.normal();
    std::vector<long double> gs(p * p);
    for (std::size_t j = 0; j < p; ++j) {
      std::vector<long double> v(p);
      for (std::size_t i = 0; i < p; ++i) v[i] = g[i * p + j];
      for (std::size_t k = 0; k < j; ++k) {
        long double proj = 0;
        for (std::size_t i = 0; i < p; ++i) proj += gs[i * p + k] * g[i * p + j];
        for (std::size_t i = 0; i < p; ++i) v[i] -= proj * gs[i * p + k];
      }
      long double nrm = 0;
      for (auto c : v) nrm += c * c;
      nrm = std::sqrt(nrm);
      for (std::size_t i = 0; i < p; ++i) gs[i * p + j] = v[i] / nrm;
    }
    double orth = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        double s = 0;
        for (std::size_t k = 0; k < p; ++k) s += q(k, i) * q(k, j);
        orth = std::max(orth, std::abs(s - (i == j ? 1.0 : 0.0)));
        diff = std::max(diff, std::abs(q(i, j) - static_cast<double>(gs[i * p + j])));
      }
    CHECK(orth <= 1e-12);
    CHECK(diff <= 1e-12);
  }
  CHECK_THROWS_AS(embed_linear(Matrix(2, 5), 4, 1), InputError);
}

TEST_CASE("deformed sphere tangents") {
  SUBCASE("full rank 2d") {
    for (int d = 1; d <= 3; ++d)
      for (double c : {0.01, 0.1, 0.5, 1.0}) CHECK(tangent_rank_check(make_deformed_sphere(d, c)) == 2 * d);
  }
  SUBCASE("the +-1 / +-1/2 points collapse for half-integer frequencies") {
    // cos(2 pi u) and sin(2 pi u) agree at u = 1 and u = -1, so the two tangents coincide.
    CHECK(tangent_rank_check(make_deformed_sphere(1, 1.0), TangentScheme::unit_steps) < 2);
    CHECK(tangent_rank_check(make_deformed_sphere(2, 0.5), TangentScheme::unit_steps) < 4);
    CHECK(tangent_rank_check(make_deformed_sphere(2, 0.1), TangentScheme::unit_steps) == 4);
  }
  SUBCASE("degenerate tube r = 0") {
    ManifoldSpec spec = make_deformed_sphere(2, 0.5, 1.0, 0.0);
    // Round circle: tangents at u = 0 and 1/4 are 2 pi (0, 1) and 2 pi (-1, 0) per coordinate pair.
    const Matrix t = deformed_sphere_tangents(spec, TangentScheme::quarter_turn);
    const auto sv = singular_values(t);
    for (double s : sv) CHECK(s == doctest::Approx(2 * kPi).epsilon(1e-12));
    CHECK(tangent_rank_check(spec) == 4);
  }
}
