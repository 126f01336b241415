#include "dimlab/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "dimlab/error.hpp"
#include "dimlab/quadrature.hpp"
#include "dimlab/regression.hpp"
#include "dimlab/rng.hpp"

namespace dimlab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPcaThreshold = 0.05;
constexpr int kDancoDefaultCap = 30;
constexpr std::uint64_t kDancoSimTag = 0x44616e43ULL;

struct MethodName {
  Method method;
  std::string_view name;
};

constexpr std::array<MethodName, 8> kMethodNames{{
    {Method::local_pca, "local_pca"},
    {Method::mada, "mada"},
    {Method::mle, "mle"},
    {Method::danco, "danco"},
    {Method::tle, "tle"},
    {Method::twonn, "twonn"},
    {Method::ca_pca, "ca_pca"},
    {Method::wasserstein, "wasserstein"},
}};

std::size_t k_of(const EstimatorConfig& cfg) { return static_cast<std::size_t>(cfg.K); }

// Mean (or vote) over the finite locals; throws when none survive.
double aggregate(const std::vector<double>& locals, Aggregation how, const char* who) {
  std::vector<double> kept;
  kept.reserve(locals.size());
  for (double v : locals)
    if (std::isfinite(v)) kept.push_back(v);
  if (kept.empty()) throw InfeasibleError(std::string(who) + ": every neighborhood was dropped");
  if (how == Aggregation::mean) {
    double s = 0.0;
    for (double v : kept) s += v;
    return s / static_cast<double>(kept.size());
  }
  std::map<long, std::size_t> votes;
  for (double v : kept) ++votes[std::lround(v)];
  long best = votes.begin()->first;
  std::size_t best_count = 0;
  for (const auto& [value, count] : votes)
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  return static_cast<double>(best);
}

EstimateReport make_report(const EstimatorConfig& cfg, std::vector<double> locals, Diagnostics diag, const char* who) {
  EstimateReport r;
  r.method = cfg.method;
  r.config_echo = cfg;
  r.d_hat = aggregate(locals, cfg.aggregation, who);
  for (double v : locals)
    if (!std::isfinite(v)) ++diag.dropped_locals;
  r.locals = std::move(locals);
  r.diagnostics = std::move(diag);
  return r;
}

const std::vector<NeighborSet>& neighbors_for(const PointCloud& cloud, std::size_t K, const std::vector<NeighborSet>* given,
                                              std::vector<NeighborSet>& storage) {
  if (given) {
    if (given->size() != cloud.n()) throw InputError("neighbor sets do not match the cloud");
    for (const auto& ns : *given)
      if (ns.indices.size() < K) throw InputError("neighbor sets are shorter than K");
    return *given;
  }
  storage = knn_all(cloud, K);
  return storage;
}

EstimateReport run_local_pca(const PointCloud& cloud, const EstimatorConfig& cfg, const std::vector<NeighborSet>& nbrs) {
  const std::size_t K = k_of(cfg);
  std::vector<double> locals(cloud.n(), kNaN);
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    const EigenSpectrum s = local_cov_spectrum(nbrs[i], cloud, K, cfg.local_cov);
    if (s.values.empty() || !(s.values[0] > 0.0)) continue;
    locals[i] = pca_threshold_dim(s);
  }
  return make_report(cfg, std::move(locals), {}, "local_pca");
}

EstimateReport run_ca_pca(const PointCloud& cloud, const EstimatorConfig& cfg, const std::vector<NeighborSet>& nbrs) {
  const std::size_t K = k_of(cfg);
  std::vector<double> locals(cloud.n(), kNaN);
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    const auto& d = nbrs[i].distances;
    const double R = 0.5 * (d[K - 1] + d[K - 2]);
    if (!(R > 0.0)) continue;
    const EigenSpectrum s = local_cov_spectrum(nbrs[i], cloud, K, cfg.local_cov);
    locals[i] = capca_select_q(s, R, cloud.p());
  }
  return make_report(cfg, std::move(locals), {}, "ca_pca");
}

EstimateReport run_mada(const PointCloud& cloud, const EstimatorConfig& cfg, const std::vector<NeighborSet>& nbrs) {
  const std::size_t K = k_of(cfg);
  const std::size_t half = (K + 1) / 2;  // ceil(K/2), 1-based
  std::vector<double> locals(cloud.n(), kNaN);
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    const double r1 = nbrs[i].distances[half - 1];
    const double r2 = nbrs[i].distances[K - 1];
    if (r1 == 0.0 || r1 == r2) continue;
    locals[i] = mada_local(r1, r2);
  }
  return make_report(cfg, std::move(locals), {}, "mada");
}

EstimateReport run_mle(const PointCloud& cloud, const EstimatorConfig& cfg, const std::vector<NeighborSet>& nbrs) {
  const std::size_t K = k_of(cfg);
  std::vector<double> locals(cloud.n(), kNaN);
  Diagnostics diag;
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    std::size_t dropped = 0;
    const auto v = mle_local(std::span(nbrs[i].distances).first(K), cfg.mle_k_minus_one, &dropped);
    diag.dropped_neighbors += dropped;
    if (v) locals[i] = *v;
  }
  return make_report(cfg, std::move(locals), std::move(diag), "mle");
}

// One side of the TLE pair measurement. `xv_dot_wv` = (x - v).(w - v),
// `wv2` = |w - v|^2, `dv2` = |v - x|^2. `inside`: v is strictly closer than R.
double tle_side(double R, bool inside, double dv2, double xv_dot_wv, double wv2) {
  const double R2 = R * R;
  if (inside && dv2 < R2) {
    const double ux = R * xv_dot_wv / (R2 - dv2);
    const double uw = R * wv2 / (R2 - dv2);
    const double arg = ux * ux + R * uw;
    if (arg < 0.0) return kNaN;
    return std::sqrt(arg) - ux;
  }
  return R * wv2 / (2.0 * xv_dot_wv);
}

EstimateReport run_tle(const PointCloud& cloud, const EstimatorConfig& cfg, const std::vector<NeighborSet>& nbrs) {
  const std::size_t K = k_of(cfg);
  const std::size_t p = cloud.p();
  std::vector<double> locals(cloud.n(), kNaN);
  Diagnostics diag;
  Matrix a(K, p);
  Matrix g(K, K);
  for (std::size_t k = 0; k < cloud.n(); ++k) {
    const auto x = cloud.point(k);
    for (std::size_t i = 0; i < K; ++i) {
      const auto v = cloud.point(nbrs[k].indices[i]);
      for (std::size_t c = 0; c < p; ++c) a(i, c) = v[c] - x[c];
    }
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = i; j < K; ++j) g(i, j) = g(j, i) = dot(a.row(i), a.row(j));
    const double R = nbrs[k].distances[K - 1];
    if (!(R > 0.0)) continue;
    double sum = 0.0;
    std::size_t valid = 0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) {
        if (i == j) continue;
        const double dv2 = g(i, i);
        const double aij = g(i, j);
        // Decided from the recorded distance so rounding in the Gram entries never
        // moves the farthest neighbor off the boundary branch.
        const bool inside = nbrs[k].distances[i] < R;
        // v itself, then its reflection 2x - v through the center.
        const double s = tle_side(R, inside, dv2, dv2 - aij, dv2 + g(j, j) - 2.0 * aij);
        const double t = tle_side(R, inside, dv2, dv2 + aij, dv2 + g(j, j) + 2.0 * aij);
        if (!(s > 0.0) || !(t > 0.0) || !std::isfinite(s) || !std::isfinite(t)) {
          ++skipped;
          continue;
        }
        sum += std::log(s / R) + std::log(t / R);
        ++valid;
      }
    diag.skipped_pairs += skipped;
    if (2 * skipped > K * (K - 1) || valid == 0 || sum == 0.0) continue;
    const double local = -2.0 * static_cast<double>(valid) / sum;
    if (std::isfinite(local) && local > 0.0) locals[k] = local;
  }
  return make_report(cfg, std::move(locals), std::move(diag), "tle");
}

EstimateReport run_twonn(const PointCloud& cloud, const EstimatorConfig& cfg, const std::vector<NeighborSet>& nbrs) {
  std::vector<double> mu;
  mu.reserve(cloud.n());
  Diagnostics diag;
  for (const auto& ns : nbrs) {
    const double r1 = ns.distances[0];
    const double r2 = ns.distances[1];
    if (r1 == 0.0) {
      ++diag.dropped_points;
      continue;
    }
    mu.push_back(r2 / r1);
  }
  EstimateReport r;
  r.method = cfg.method;
  r.config_echo = cfg;
  r.d_hat = twonn_from_ratios(std::move(mu));
  r.diagnostics = std::move(diag);
  return r;
}

std::vector<double> danco_ratios(std::span<const NeighborSet> nbrs, std::size_t K, std::size_t* dropped) {
  std::vector<double> ratios;
  ratios.reserve(nbrs.size());
  for (const auto& ns : nbrs) {
    const double r = ns.distances[0] / ns.distances[K - 1];
    if (!(r > 0.0) || !(r < 1.0)) {
      if (dropped) ++*dropped;
      continue;
    }
    ratios.push_back(r);
  }
  return ratios;
}

struct DancoStats {
  double d = 0.0;
  VonMisesFit angles;
};

Matrix sample_unit_ball(std::size_t n, int q, RngStream& rng) {
  Matrix m(n, static_cast<std::size_t>(q));
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.row(i);
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& v : row) {
        v = rng.normal();
        norm2 += v * v;
      }
    } while (norm2 == 0.0);
    const double s = std::pow(rng.uniform(), 1.0 / q) / std::sqrt(norm2);
    for (double& v : row) v *= s;
  }
  return m;
}

EstimateReport run_danco(const PointCloud& cloud, const EstimatorConfig& cfg, const std::vector<NeighborSet>& nbrs) {
  const std::size_t K = k_of(cfg);
  const int Ki = cfg.K;
  const std::size_t p = cloud.p();
  const int d_max = cfg.danco.d_max > 0 ? cfg.danco.d_max : static_cast<int>(std::min<std::size_t>(p, kDancoDefaultCap));
  const DensityForm form = cfg.danco.density_form;

  Diagnostics diag;
  const std::vector<double> ratios = danco_ratios(nbrs, K, &diag.dropped_points);
  if (ratios.empty()) throw InfeasibleError("danco: no usable distance ratios");
  const int d_norm = danco_norm_mle(ratios, Ki, d_max, form);
  const VonMisesFit fit = danco_angle_fit(cloud.points(), nbrs, K);
  diag.danco_d_norm = d_norm;
  diag.danco_angles = fit;

  EstimateReport r;
  r.method = cfg.method;
  r.config_echo = cfg;
  if (cfg.danco.skip_threshold && d_norm <= *cfg.danco.skip_threshold) {
    r.d_hat = d_norm;
    r.diagnostics = std::move(diag);
    return r;
  }

  const int q_max = std::min<int>(static_cast<int>(p), d_max);
  const std::size_t n = cloud.n();
  int best_q = 1;
  double best_kl = std::numeric_limits<double>::infinity();
  for (int q = 1; q <= q_max; ++q) {
    double d_sum = 0.0, tau_sum = 0.0, nu_sum = 0.0;
    for (int rep = 0; rep < cfg.danco.n_sim_reps; ++rep) {
      RngStream rng(derive_seed(cfg.seed, kDancoSimTag + static_cast<std::uint64_t>(q)), static_cast<std::uint64_t>(rep));
      const Matrix sim = sample_unit_ball(n, q, rng);
      const auto sim_nbrs = knn_all(sim, K);
      const auto sim_ratios = danco_ratios(sim_nbrs, K, nullptr);
      if (sim_ratios.empty()) throw InfeasibleError("danco: simulated sample has no usable ratios");
      d_sum += danco_norm_mle(sim_ratios, Ki, d_max, form);
      const VonMisesFit sf = danco_angle_fit(sim, sim_nbrs, K);
      tau_sum += sf.tau;
      nu_sum += sf.nu;
    }
    const double reps = cfg.danco.n_sim_reps;
    const VonMisesFit sim_fit{nu_sum / reps, tau_sum / reps};
    const double kl = danco_kl_norm(d_norm, d_sum / reps, Ki, form) + danco_kl_von_mises(fit, sim_fit);
    diag.danco_kl.push_back(kl);
    if (kl < best_kl) {
      best_kl = kl;
      best_q = q;
    }
  }
  r.d_hat = best_q;
  r.diagnostics = std::move(diag);
  return r;
}

Matrix select_rows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = m.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

EstimateReport run_wasserstein(const PointCloud& cloud, const EstimatorConfig& cfg) {
  const std::size_t n = cloud.n();
  const auto m = static_cast<std::size_t>(std::floor(static_cast<double>(n) / (2.0 + 2.0 * cfg.alpha)));
  const auto big = static_cast<std::size_t>(std::floor(cfg.alpha * static_cast<double>(m)));
  if (m < 1) throw InfeasibleError("wasserstein: sample too small for alpha");
  std::vector<std::size_t> perm(n);
  Diagnostics diag;
  double sum = 0.0;
  std::size_t valid = 0;
  for (int s = 0; s < cfg.splits; ++s) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(s));
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    const std::span<const std::size_t> all(perm);
    const Matrix a = select_rows(cloud.points(), all.subspan(0, m));
    const Matrix a2 = select_rows(cloud.points(), all.subspan(m, m));
    const Matrix b = select_rows(cloud.points(), all.subspan(2 * m, big));
    const Matrix b2 = select_rows(cloud.points(), all.subspan(2 * m + big, big));
    const double d =
        wasserstein_split_estimate(w1_empirical(a, a2, cfg.ground_metric), w1_empirical(b, b2, cfg.ground_metric), cfg.alpha);
    if (!std::isfinite(d)) {
      ++diag.invalid_splits;
      continue;
    }
    sum += d;
    ++valid;
  }
  if (valid == 0) throw InfeasibleError("wasserstein: no valid split");
  EstimateReport r;
  r.method = cfg.method;
  r.config_echo = cfg;
  r.d_hat = sum / static_cast<double>(valid);
  r.diagnostics = std::move(diag);
  return r;
}

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& m : kMethodNames)
    if (m.method == method) return m.name;
  return "unknown";
}

Method method_from_string(std::string_view name) {
  for (const auto& m : kMethodNames)
    if (m.name == name) return m.method;
  if (name == "lpca" || name == "pca") return Method::local_pca;
  if (name == "capca" || name == "ca-pca") return Method::ca_pca;
  throw InputError("unknown method: " + std::string(name));
}

bool uses_neighborhoods(Method method) { return method != Method::wasserstein; }

void validate(const EstimatorConfig& cfg, std::size_t n, std::size_t p) {
  if (n < 2 || p < 1) throw InputError("cloud too small");
  switch (cfg.method) {
    case Method::twonn:
      if (n < 3) throw InfeasibleError("twonn needs at least 3 points");
      return;
    case Method::wasserstein: {
      if (!(cfg.alpha > 1.0) || !std::isfinite(cfg.alpha)) throw InputError("alpha must exceed 1");
      if (cfg.splits < 1) throw InputError("splits must be at least 1");
      const double need = 2.0 + 2.0 * std::ceil(cfg.alpha);
      if (static_cast<double>(n) < need) throw InfeasibleError("sample too small for alpha");
      return;
    }
    default:
      break;
  }
  if (cfg.K < 2) throw InputError("K must be at least 2");
  if (static_cast<std::size_t>(cfg.K) > n - 1) throw InfeasibleError("K must not exceed n - 1");
  if (cfg.method == Method::danco) {
    if (cfg.danco.d_max < 0) throw InputError("d_max must be positive");
    if (cfg.danco.n_sim_reps < 1) throw InputError("n_sim_reps must be at least 1");
  }
}

EigenSpectrum local_cov_spectrum(const NeighborSet& ns, const PointCloud& cloud, std::size_t K,
                                 LocalCovariance mode) {
  const bool center = mode == LocalCovariance::with_center;
  if (K < (center ? 1u : 2u) || ns.indices.size() < K) throw InputError("local_cov_spectrum: bad neighborhood size");
  const std::size_t p = cloud.p();
  const std::size_t m = center ? K + 1 : K;
  Matrix x(m, p);
  if (center) {
    const auto c = cloud.point(ns.center_index);
    std::copy(c.begin(), c.end(), x.row(m - 1).begin());
  }
  for (std::size_t l = 0; l < K; ++l) {
    const auto v = cloud.point(ns.indices[l]);
    std::copy(v.begin(), v.end(), x.row(l).begin());
  }
  for (std::size_t j = 0; j < p; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) mean += x(i, j);
    mean /= static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) x(i, j) -= mean;
  }
  const double inv = 1.0 / static_cast<double>(m - 1);
  std::vector<double> values;
  if (m < p) {
    // Same nonzero spectrum from the smaller Gram matrix.
    Matrix g(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) g(a, b) = g(b, a) = dot(x.row(a), x.row(b)) * inv;
    values = sym_eigenvalues(g);
    values.resize(p, 0.0);
  } else {
    Matrix cov(p, p);
    for (std::size_t i = 0; i < m; ++i) {
      const auto r = x.row(i);
      for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a; b < p; ++b) cov(a, b) += r[a] * r[b];
    }
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = a; b < p; ++b) cov(b, a) = cov(a, b) = cov(a, b) * inv;
    values = sym_eigenvalues(cov);
  }
  EigenSpectrum s{std::move(values), Matrix()};
  clamp_nonnegative(s);
  return s;
}

EigenSpectrum local_cov_spectrum(const NeighborSet& ns, const PointCloud& cloud, LocalCovariance mode) {
  return local_cov_spectrum(ns, cloud, ns.indices.size(), mode);
}

int pca_threshold_dim(const EigenSpectrum& spectrum) {
  const auto& l = spectrum.values;
  if (l.empty() || !(l[0] > 0.0)) throw InputError("pca_threshold_dim: spectrum is zero");
  int q = 0;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] > kPcaThreshold * l[0]) q = static_cast<int>(i) + 1;
  return q;
}

double capca_objective(std::span<const double> lambda, double R, std::size_t q) {
  const std::size_t p = lambda.size();
  double tail = 0.0;
  for (std::size_t i = q; i < p; ++i) tail += lambda[i];
  const double R2 = R * R;
  const double qd = static_cast<double>(q);
  const double target = 1.0 / (qd + 2.0);
  const double coef = (3.0 * qd + 4.0) / (qd * (qd + 4.0));
  double ss = 0.0;
  for (std::size_t j = 0; j < q; ++j) {
    const double dev = target - (lambda[j] + coef * tail) / R2;
    ss += dev * dev;
  }
  return std::sqrt(ss) + 2.0 * tail / R2;
}

int capca_select_q(const EigenSpectrum& spectrum, double R, std::size_t p) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InputError("capca_select_q: R must be positive");
  if (p < 1) throw InputError("capca_select_q: p must be positive");
  std::vector<double> lambda(spectrum.values.begin(), spectrum.values.end());
  lambda.resize(p, 0.0);
  int best = 1;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t q = 1; q <= p; ++q) {
    const double v = capca_objective(lambda, R, q);
    if (v < best_val) {
      best_val = v;
      best = static_cast<int>(q);
    }
  }
  return best;
}

double mada_local(double r_half, double r_full) {
  return std::numbers::ln2 / (std::log(r_full) - std::log(r_half));
}

std::optional<double> mle_local(std::span<const double> distances, bool k_minus_one, std::size_t* dropped) {
  if (distances.empty()) return std::nullopt;
  const double R = distances.back();
  if (!(R > 0.0)) {
    if (dropped) *dropped += distances.size();
    return std::nullopt;
  }
  double sum = 0.0;
  std::size_t terms = 0;
  for (double r : distances) {
    if (r == 0.0) {
      if (dropped) ++*dropped;
      continue;
    }
    sum += std::log(R / r);
    ++terms;
  }
  const double divisor = static_cast<double>(terms) - (k_minus_one ? 1.0 : 0.0);
  if (!(sum > 0.0) || !(divisor > 0.0)) return std::nullopt;
  return divisor / sum;
}

double twonn_from_ratios(std::vector<double> mu) {
  if (mu.size() < 2) throw InfeasibleError("twonn: fewer than 2 usable points");
  std::sort(mu.begin(), mu.end());
  const double n = static_cast<double>(mu.size());
  std::vector<double> xs, ys;
  xs.reserve(mu.size());
  ys.reserve(mu.size());
  for (std::size_t i = 0; i + 1 < mu.size(); ++i) {
    xs.push_back(std::log(mu[i]));
    ys.push_back(-std::log(1.0 - static_cast<double>(i + 1) / n));
  }
  return ls_through_origin(xs, ys);
}

double danco_log_density(double r, double d, int K, DensityForm form) {
  const double e = form == DensityForm::corrected ? d : d - 1.0;
  return std::log(static_cast<double>(K)) + std::log(d) + (d - 1.0) * std::log(r) +
         (K - 1.0) * std::log1p(-std::pow(r, e));
}

int danco_norm_mle(std::span<const double> ratios, int K, int d_max, DensityForm form) {
  if (ratios.empty()) throw InputError("danco_norm_mle: no ratios");
  if (d_max < 1) throw InputError("danco_norm_mle: d_max must be positive");
  int best = 1;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int d = 1; d <= d_max; ++d) {
    double ll = 0.0;
    for (double r : ratios) ll += danco_log_density(r, d, K, form);
    if (ll > best_ll) {
      best_ll = ll;
      best = d;
    }
  }
  return best;
}

double danco_kl_norm(double d1, double d2, int K, DensityForm form) {
  if (d1 == d2) return 0.0;
  auto integrand = [&](double r) {
    const double l1 = danco_log_density(r, d1, K, form);
    const double f = std::exp(l1);
    if (f == 0.0) return 0.0;
    return f * (l1 - danco_log_density(r, d2, K, form));
  };
  return quad_1d(integrand, 0.0, 1.0);
}

double danco_kl_von_mises(const VonMisesFit& f1, const VonMisesFit& f2) {
  if (f1.nu == f2.nu && f1.tau == f2.tau) return 0.0;
  auto integrand = [&](double t) {
    const double l1 = von_mises_log_density(t, f1);
    const double f = std::exp(l1);
    if (f == 0.0) return 0.0;
    return f * (l1 - von_mises_log_density(t, f2));
  };
  // Break at both modes so a sharp peak always sits on a panel edge.
  std::vector<double> cuts{-std::numbers::pi, std::numbers::pi, f1.nu, f2.nu};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) total += quad_1d(integrand, cuts[i], cuts[i + 1]);
  return total;
}

VonMisesFit danco_angle_fit(const Matrix& points, std::span<const NeighborSet> nbrs, std::size_t K) {
  const std::size_t p = points.cols();
  Matrix a(K, p);
  std::vector<double> norms(K);
  std::vector<double> angles;
  angles.reserve(K * (K - 1) / 2);
  double tau_sum = 0.0, nu_sum = 0.0;
  std::size_t fits = 0;
  for (const auto& ns : nbrs) {
    const auto x = points.row(ns.center_index);
    for (std::size_t i = 0; i < K; ++i) {
      const auto v = points.row(ns.indices[i]);
      for (std::size_t c = 0; c < p; ++c) a(i, c) = v[c] - x[c];
      norms[i] = std::sqrt(dot(a.row(i), a.row(i)));
    }
    angles.clear();
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = i + 1; j < K; ++j) {
        if (norms[i] == 0.0 || norms[j] == 0.0) continue;
        const double c = std::clamp(dot(a.row(i), a.row(j)) / (norms[i] * norms[j]), -1.0, 1.0);
        angles.push_back(std::acos(c));
      }
    if (angles.empty()) continue;
    VonMisesFit f = angles.size() >= 2 ? fit_von_mises(angles) : VonMisesFit{wrap_angle(angles[0]), kVonMisesTauCap};
    tau_sum += f.tau;
    nu_sum += f.nu;
    ++fits;
  }
  if (fits == 0) throw InfeasibleError("danco: no neighborhood yields angles");
  return {nu_sum / static_cast<double>(fits), tau_sum / static_cast<double>(fits)};
}

double wasserstein_split_estimate(double w_small, double w_big, double alpha) {
  const double diff = std::log(w_small) - std::log(w_big);
  if (!(diff > 0.0) || !std::isfinite(diff)) return kNaN;
  return std::log(alpha) / diff;
}

EstimateReport estimate(const PointCloud& cloud, const EstimatorConfig& cfg, const std::vector<NeighborSet>* nbrs) {
  validate(cfg, cloud.n(), cloud.p());
  if (cfg.method == Method::wasserstein) return run_wasserstein(cloud, cfg);
  const std::size_t K = cfg.method == Method::twonn ? 2 : k_of(cfg);
  std::vector<NeighborSet> storage;
  const auto& nb = neighbors_for(cloud, K, nbrs, storage);
  switch (cfg.method) {
    case Method::local_pca:
      return run_local_pca(cloud, cfg, nb);
    case Method::ca_pca:
      return run_ca_pca(cloud, cfg, nb);
    case Method::mada:
      return run_mada(cloud, cfg, nb);
    case Method::mle:
      return run_mle(cloud, cfg, nb);
    case Method::tle:
      return run_tle(cloud, cfg, nb);
    case Method::twonn:
      return run_twonn(cloud, cfg, nb);
    case Method::danco:
      return run_danco(cloud, cfg, nb);
    case Method::wasserstein:
      break;
  }
  throw InputError("unknown method");
}

namespace {
EstimateReport with_method(const PointCloud& cloud, EstimatorConfig cfg, Method m) {
  cfg.method = m;
  return estimate(cloud, cfg);
}
}  // namespace

EstimateReport estimate_local_pca(const PointCloud& c, const EstimatorConfig& cfg) { return with_method(c, cfg, Method::local_pca); }
EstimateReport estimate_ca_pca(const PointCloud& c, const EstimatorConfig& cfg) { return with_method(c, cfg, Method::ca_pca); }
EstimateReport estimate_mada(const PointCloud& c, const EstimatorConfig& cfg) { return with_method(c, cfg, Method::mada); }
EstimateReport estimate_mle(const PointCloud& c, const EstimatorConfig& cfg) { return with_method(c, cfg, Method::mle); }
EstimateReport estimate_tle(const PointCloud& c, const EstimatorConfig& cfg) { return with_method(c, cfg, Method::tle); }
EstimateReport estimate_twonn(const PointCloud& c, const EstimatorConfig& cfg) { return with_method(c, cfg, Method::twonn); }
EstimateReport estimate_danco(const PointCloud& c, const EstimatorConfig& cfg) { return with_method(c, cfg, Method::danco); }
EstimateReport estimate_wasserstein(const PointCloud& c, const EstimatorConfig& cfg) {
  return with_method(c, cfg, Method::wasserstein);
}

}  // namespace dimlab
