#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "dimlab/error.hpp"
#include "dimlab/estimators.hpp"
#include "dimlab/geometry.hpp"
#include "dimlab/quadrature.hpp"
#include "dimlab/rng.hpp"

using namespace dimlab;

namespace {

PointCloud sphere_cloud(std::size_t n, int d, std::size_t p, std::uint64_t seed, double radius = 1.0) {
  SampleConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  return sample_manifold(make_sphere(d, p, radius), cfg);
}

EstimatorConfig config(Method m, int K = 20) {
  EstimatorConfig c;
  c.method = m;
  c.K = K;
  c.alpha = 2.0;
  c.seed = 3;
  c.danco.d_max = 10;
  return c;
}

// One side of the pair measurement, straight from the circle construction.
long double tle_oracle_side(const std::vector<long double>& x, const std::vector<long double>& v,
                            const std::vector<long double>& w, long double R) {
  long double xv2 = 0, udotxv = 0, wv2 = 0, xvwv = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xv2 += (x[i] - v[i]) * (x[i] - v[i]);
    wv2 += (w[i] - v[i]) * (w[i] - v[i]);
    xvwv += (x[i] - v[i]) * (w[i] - v[i]);
  }
  if (std::abs(std::sqrt(xv2) - R) < 1e-15L) return R * wv2 / (2 * xvwv);
  // u = R (w - v) / (R^2 - |x - v|^2)
  const long double s = R / (R * R - xv2);
  udotxv = s * xvwv;
  const long double udotwv = s * wv2;
  return std::sqrt(udotxv * udotxv + R * udotwv) - udotxv;
}

long double tle_oracle(const std::vector<std::vector<long double>>& nb, const std::vector<long double>& x) {
  long double R = 0;
  for (const auto& v : nb) {
    long double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (v[i] - x[i]) * (v[i] - x[i]);
    R = std::max(R, std::sqrt(s));
  }
  const std::size_t K = nb.size();
  long double sum = 0;
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t b = 0; b < K; ++b) {
      if (a == b) continue;
      std::vector<long double> refl(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) refl[i] = 2 * x[i] - nb[a][i];
      sum += std::log(tle_oracle_side(x, nb[a], nb[b], R) / R) + std::log(tle_oracle_side(x, refl, nb[b], R) / R);
    }
  return -1.0L / (sum / (2.0L * K * (K - 1)));
}

double f_norm(double r, int d, int K) { return K * d * std::pow(r, d - 1) * std::pow(1.0 - std::pow(r, d), K - 1); }

}  // namespace

TEST_CASE("local covariance spectrum") {
  SUBCASE("collinear points have rank one") {
    const PointCloud c(Matrix{{0, 0}, {1, 1}, {3, 3}});
    const auto nb = knn_all(c, 2);
    const auto s = local_cov_spectrum(nb[0], c);
    CHECK(s.values[0] > 0.0);
    CHECK(s.values[1] == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("right isosceles triangle") {
    // mean (1/3, 1/3); scatter [[2/3, -1/3], [-1/3, 2/3]] over divisor K = 2
    const PointCloud c(Matrix{{0, 0}, {1, 0}, {0, 1}});
    const auto s = local_cov_spectrum(knn_all(c, 2)[0], c, LocalCovariance::with_center);
    CHECK(s.values[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.values[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    // neighbors alone: (1,0), (0,1) about (1/2, 1/2), divisor K - 1 = 1
    const auto t = local_cov_spectrum(knn_all(c, 2)[0], c);
    CHECK(t.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.values[1] == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("a single neighbor needs the center") {
    const PointCloud c(Matrix{{0, 0}, {1, 0}, {0, 1}});
    const auto nb = knn_all(c, 1);
    CHECK_THROWS_AS(local_cov_spectrum(nb[0], c), InputError);
    CHECK(local_cov_spectrum(nb[0], c, LocalCovariance::with_center).values[0] == doctest::Approx(0.5));
  }
  SUBCASE("coplanar neighborhood in R^6") {
    RngStream rng(1, 1);
    Matrix x(30, 2);
    for (double& v : x.data()) v = rng.normal();
    const auto c = embed_linear(x, 6, 8);
    const auto s = local_cov_spectrum(knn_all(c, 12)[0], c);
    REQUIRE(s.values.size() == 6);
    for (int i = 2; i < 6; ++i) CHECK(s.values[i] <= 1e-12);
  }
}

TEST_CASE("local PCA threshold") {
  auto spec = [](std::vector<double> v) { return EigenSpectrum{std::move(v), {}}; };
  CHECK(pca_threshold_dim(spec({1, 0, 0})) == 1);
  CHECK(pca_threshold_dim(spec({1, 0.06, 0.04})) == 2);
  CHECK(pca_threshold_dim(spec({1, 0.050000001, 0.05})) == 2);

  RngStream rng(2, 2);
  Matrix x(200, 2);
  for (double& v : x.data()) v = rng.uniform();
  const auto plane = embed_linear(x, 5, 21);
  const auto r = estimate(plane, config(Method::local_pca));
  CHECK(r.d_hat == 2.0);
}

TEST_CASE("curvature-adjusted PCA selection") {
  const double R = 1.3;
  CHECK(capca_select_q(EigenSpectrum{{R * R / 4, R * R / 4, 0, 0}, {}}, R, 4) == 2);
  CHECK(capca_objective(std::vector<double>{R * R / 4, R * R / 4, 0, 0}, R, 2) == doctest::Approx(0.0));
  CHECK(capca_select_q(EigenSpectrum{{R * R / 3, 0, 0, 0}, {}}, R, 4) == 1);

  // exhaustive long double scan
  const std::vector<double> lam{0.21, 0.18, 0.05, 0.012, 0.004, 0.001};
  const long double r = 0.95;
  int best = 0;
  long double best_v = 1e300L;
  for (int q = 1; q <= 6; ++q) {
    long double tail = 0, ss = 0;
    for (int j = q; j < 6; ++j) tail += lam[j];
    for (int j = 0; j < q; ++j) {
      const long double dev = 1.0L / (q + 2) - (lam[j] + (3.0L * q + 4) / (q * (q + 4.0L)) * tail) / (r * r);
      ss += dev * dev;
    }
    const long double v = std::sqrt(ss) + 2 * tail / (r * r);
    CHECK(capca_objective(lam, 0.95, q) == doctest::Approx(static_cast<double>(v)).epsilon(1e-13));
    if (v < best_v) best_v = v, best = q;
  }
  CHECK(capca_select_q(EigenSpectrum{lam, {}}, 0.95, 6) == best);
}

TEST_CASE("MADA and MLE locals") {
  CHECK(mada_local(1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mada_local(1.0, std::sqrt(2.0)) == doctest::Approx(2.0).epsilon(1e-14));

  const double e = std::exp(1.0);
  const std::vector<double> r{1.0 / e, 1.0 / e, 1.0 / e, 1.0 / e, 1.0};
  CHECK(*mle_local(r, false) == doctest::Approx(1.25).epsilon(1e-14));

  const std::vector<double> fx{0.11, 0.17, 0.2, 0.31, 0.33, 0.4, 0.52, 0.6, 0.61, 0.75};
  long double s = 0;
  for (double v : fx) s += std::log(static_cast<long double>(fx.back()) / v);
  CHECK(*mle_local(fx, false) == doctest::Approx(static_cast<double>(10.0L / s)).epsilon(1e-14));
  CHECK(*mle_local(fx, true) == doctest::Approx(static_cast<double>(9.0L / s)).epsilon(1e-14));

  std::size_t dropped = 0;
  const std::vector<double> dup{0.0, 0.5, 1.0};
  CHECK(*mle_local(dup, false, &dropped) == doctest::Approx(2.0 / std::log(2.0)));
  CHECK(dropped == 1);
  CHECK_FALSE(mle_local(std::vector<double>{1.0, 1.0}, false).has_value());
}

TEST_CASE("TLE against the circle formula") {
  SUBCASE("symmetric K = 2") {
    const PointCloud c(Matrix{{0, 0}, {1, 0}, {-2, 0}});
    auto cfg = config(Method::tle, 2);
    const auto rep = estimate(c, cfg);
    const long double oracle = tle_oracle({{1, 0}, {-2, 0}}, {0, 0});
    REQUIRE(rep.locals);
    CHECK((*rep.locals)[0] == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));
  }
  SUBCASE("general position, and scaling by 7") {
    const Matrix m{{0, 0, 0}, {0.6, 0.2, 0.1}, {-0.9, 0.3, 0.2}, {0.1, -1.1, 0.4}, {3, 3, 3}};
    const auto rep = estimate(PointCloud(m), config(Method::tle, 3));
    const long double oracle = tle_oracle({{0.6, 0.2, 0.1}, {-0.9, 0.3, 0.2}, {0.1, -1.1, 0.4}}, {0, 0, 0});
    CHECK((*rep.locals)[0] == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));
    const auto rep7 = estimate(PointCloud(m).scaled(7.0), config(Method::tle, 3));
    CHECK((*rep7.locals)[0] == doctest::Approx((*rep.locals)[0]).epsilon(1e-13));
  }
}

TEST_CASE("TwoNN") {
  CHECK(twonn_from_ratios({2.0, 5.0}) == doctest::Approx(1.0).epsilon(1e-15));
  RngStream rng(5, 0);
  Matrix line(500, 3);
  for (std::size_t i = 0; i < 500; ++i) {
    const double t = rng.uniform() * 10;
    line(i, 0) = t;
    line(i, 1) = 2 * t;
    line(i, 2) = -t;
  }
  const double d = estimate(PointCloud(line), config(Method::twonn)).d_hat;
  CHECK(d >= 0.8);
  CHECK(d <= 1.2);
}

TEST_CASE("DanCo pieces") {
  SUBCASE("corrected density normalizes, the printed one does not") {
    for (int K : {5, 10, 20})
      for (int d = 1; d <= 30; ++d) {
        const double z = quad_1d([&](double r) { return std::exp(danco_log_density(r, d, K, DensityForm::corrected)); },
                                 0.0, 1.0);
        REQUIRE(std::abs(z - 1.0) <= 1e-8);
      }
    const double zp =
        quad_1d([](double r) { return std::exp(danco_log_density(r, 5, 10, DensityForm::as_printed)); }, 0.0, 1.0);
    CHECK(std::abs(zp - 1.0) > 1e-3);
  }
  SUBCASE("norm MLE recovers the generating dimension") {
    RngStream rng(6, 0);
    std::vector<double> ratios(10000);
    for (double& r : ratios) r = std::pow(1.0 - std::pow(1.0 - rng.uniform(), 1.0 / 10), 1.0 / 5);
    CHECK(danco_norm_mle(ratios, 10, 30, DensityForm::corrected) == 5);
    CHECK(danco_norm_mle(std::vector<double>{0.99}, 10, 30, DensityForm::corrected) == 30);
  }
  SUBCASE("KL against the midpoint rule") {
    const int K = 10, N = 1000000;
    long double s = 0;
    for (int i = 0; i < N; ++i) {
      const double r = (i + 0.5) / N;
      const double a = f_norm(r, 5, K), b = f_norm(r, 3, K);
      if (a > 0) s += a * std::log(a / b);
    }
    CHECK(std::abs(danco_kl_norm(5, 3, K, DensityForm::corrected) - static_cast<double>(s / N)) <= 1e-6);
    CHECK(danco_kl_norm(4, 4, K, DensityForm::corrected) == 0.0);

    const VonMisesFit f1{0.9, 3.0}, f2{1.4, 1.2};
    long double v = 0;
    const double h = 2 * std::numbers::pi / N;
    for (int i = 0; i < N; ++i) {
      const double t = -std::numbers::pi + (i + 0.5) * h;
      const double l1 = von_mises_log_density(t, f1), l2 = von_mises_log_density(t, f2);
      v += std::exp(l1) * (l1 - l2);
    }
    CHECK(std::abs(danco_kl_von_mises(f1, f2) - static_cast<double>(v * h)) <= 1e-6);
    CHECK(danco_kl_von_mises(f1, f1) == 0.0);
  }
  SUBCASE("estimate on a 3-sphere") {
    const auto c = sphere_cloud(400, 3, 6, 4);
    auto cfg = config(Method::danco, 10);
    const auto r = estimate(c, cfg);
    CHECK(r.diagnostics.danco_kl.size() == 6);
    CHECK(r.d_hat >= 3.0);
    CHECK(r.d_hat <= 4.0);
  }
}

TEST_CASE("Wasserstein split estimate") {
  CHECK(wasserstein_split_estimate(4.0, 2.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::isnan(wasserstein_split_estimate(2.0, 2.0, 2.0)));
  CHECK(std::isnan(wasserstein_split_estimate(1.0, 2.0, 2.0)));
  const auto c = sphere_cloud(1000, 5, 10, 5);
  EstimatorConfig cfg = config(Method::wasserstein);
  cfg.alpha = 5.0;
  const auto r = estimate(c, cfg);
  CHECK(r.d_hat == estimate(c, cfg).d_hat);
  CHECK(r.d_hat > 4.0);
  CHECK(r.d_hat < 6.0);
  cfg.seed = 4;
  CHECK(estimate(c, cfg).d_hat != r.d_hat);
}

TEST_CASE("estimators are invariant under scaling, embedding and reordering") {
  const auto cloud = sphere_cloud(300, 3, 6, 11);
  Matrix shuffled(cloud.n(), cloud.p());
  std::vector<std::size_t> perm(cloud.n());
  std::iota(perm.begin(), perm.end(), 0);
  RngStream rng(12, 0);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  for (std::size_t i = 0; i < cloud.n(); ++i)
    std::copy(cloud.point(perm[i]).begin(), cloud.point(perm[i]).end(), shuffled.row(i).begin());
  const PointCloud wide = embed_linear(cloud.points(), 15, 77);

  for (Method m : kAllMethods) {
    auto cfg = config(m, m == Method::danco ? 10 : 20);
    const double base = estimate(cloud, cfg).d_hat;
    CAPTURE(to_string(m));
    CHECK(std::abs(estimate(cloud.scaled(8.0), cfg).d_hat - base) == 0.0);
    CHECK(std::abs(estimate(cloud.scaled(0.001), cfg).d_hat - base) <= 1e-9);
    CHECK(std::abs(estimate(cloud.scaled(100.0), cfg).d_hat - base) <= 1e-9);
    auto cfg_wide = cfg;
    cfg_wide.danco.d_max = cfg.danco.d_max;
    CHECK(std::abs(estimate(wide, cfg_wide).d_hat - base) <= 1e-9);
    if (m != Method::wasserstein) CHECK(std::abs(estimate(PointCloud(shuffled), cfg).d_hat - base) <= 1e-9);
  }
}

TEST_CASE("locals are positive and average to the global value") {
  const auto cloud = sphere_cloud(300, 4, 8, 13);
  for (Method m : {Method::local_pca, Method::ca_pca, Method::mada, Method::mle, Method::tle}) {
    const auto r = estimate(cloud, config(m));
    REQUIRE(r.locals);
    double s = 0;
    int k = 0;
    for (double v : *r.locals) {
      if (std::isnan(v)) continue;
      CHECK(v > 0.0);
      CHECK(std::isfinite(v));
      s += v;
      ++k;
    }
    CHECK(std::abs(s / k - r.d_hat) <= 1e-12);
  }
}

TEST_CASE("duplicates are dropped with diagnostics") {
  Matrix m = sphere_cloud(200, 2, 3, 14).points();
  for (std::size_t j = 0; j < 3; ++j) m(1, j) = m(0, j);
  const PointCloud c(m);
  const auto mle = estimate(c, config(Method::mle, 10));
  CHECK(mle.diagnostics.dropped_neighbors >= 2);
  CHECK(std::isfinite(mle.d_hat));
  CHECK(estimate(c, config(Method::twonn)).diagnostics.dropped_points == 2);
  CHECK(std::isfinite(estimate(c, config(Method::mada, 10)).d_hat));
}

TEST_CASE("configuration validation") {
  const auto c = sphere_cloud(50, 2, 3, 15);
  auto cfg = config(Method::mle, 60);
  CHECK_THROWS_AS(estimate(c, cfg), InfeasibleError);
  cfg.K = 1;
  CHECK_THROWS_AS(estimate(c, cfg), InputError);
  cfg = config(Method::wasserstein);
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(estimate(c, cfg), InputError);
  CHECK(method_from_string("ca-pca") == Method::ca_pca);
  CHECK(method_from_string("lpca") == Method::local_pca);
  CHECK_THROWS_AS(method_from_string("isomap"), InputError);
}
