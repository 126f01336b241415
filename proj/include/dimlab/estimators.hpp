#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dimlab/circular.hpp"
#include "dimlab/geometry.hpp"
#include "dimlab/linalg.hpp"
#include "dimlab/neighbors.hpp"
#include "dimlab/transport.hpp"

namespace dimlab {

enum class Method { local_pca, mada, mle, danco, tle, twonn, ca_pca, wasserstein };

inline constexpr Method kAllMethods[] = {Method::local_pca, Method::mada,  Method::mle,   Method::danco,
                                         Method::tle,       Method::twonn, Method::ca_pca, Method::wasserstein};

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);
bool uses_neighborhoods(Method method);

enum class DensityForm {
  corrected,   // K d r^{d-1} (1 - r^d)^{K-1}
  as_printed,  // K d r^{d-1} (1 - r^{d-1})^{K-1}
};

enum class Aggregation { mean, vote };

/// Which points enter a local covariance. `neighbors` uses the K neighbors alone with
/// divisor K-1; `with_center` adds the center point and divides by K.
enum class LocalCovariance { neighbors, with_center };

struct DancoOptions {
  int d_max = 0;  // 0: min(p, 30)
  int n_sim_reps = 1;
  std::optional<int> skip_threshold;
  DensityForm density_form = DensityForm::corrected;
};

struct EstimatorConfig {
  Method method = Method::mle;
  int K = 20;
  double alpha = 2.0;
  DancoOptions danco;
  GroundMetric ground_metric = GroundMetric::l2;
  int splits = 10;
  Aggregation aggregation = Aggregation::mean;
  bool mle_k_minus_one = false;  // divide the MLE log sum by K-1 instead of K
  LocalCovariance local_cov = LocalCovariance::neighbors;  // Local PCA and CA-PCA
  std::uint64_t seed = 0;        // Wasserstein splits and DanCo simulations
};

struct Diagnostics {
  std::size_t dropped_locals = 0;     // neighborhoods that produced no estimate
  std::size_t dropped_neighbors = 0;  // zero-distance neighbors removed (MLE)
  std::size_t skipped_pairs = 0;      // TLE pairs with an invalid geometry
  std::size_t dropped_points = 0;     // points without a usable ratio (TwoNN, DanCo)
  std::size_t invalid_splits = 0;     // Wasserstein
  // DanCo
  int danco_d_norm = 0;
  VonMisesFit danco_angles;
  std::vector<double> danco_kl;  // total divergence for q = 1, 2, ...
};

struct EstimateReport {
  double d_hat = 0.0;
  /// Per-point estimates for the local methods; NaN marks a dropped neighborhood.
  std::optional<std::vector<double>> locals;
  Method method = Method::mle;
  EstimatorConfig config_echo;
  Diagnostics diagnostics;
};

/// Throws InputError when the configuration is unusable for a cloud of n points in R^p.
void validate(const EstimatorConfig& cfg, std::size_t n, std::size_t p);

/// Eigenvalues (length p, non-increasing, clamped at 0) of the sample covariance of
/// the first K neighbors (see LocalCovariance).
EigenSpectrum local_cov_spectrum(const NeighborSet& ns, const PointCloud& cloud, std::size_t K,
                                 LocalCovariance mode = LocalCovariance::neighbors);
EigenSpectrum local_cov_spectrum(const NeighborSet& ns, const PointCloud& cloud,
                                 LocalCovariance mode = LocalCovariance::neighbors);

/// Largest q with lambda_q > 0.05 lambda_1.
int pca_threshold_dim(const EigenSpectrum& spectrum);

/// Curvature-adjusted criterion over q = 1..p (p = number of eigenvalues); ties go
/// to the smaller q.
int capca_select_q(const EigenSpectrum& spectrum, double R, std::size_t p);
double capca_objective(std::span<const double> lambda, double R, std::size_t q);

double mada_local(double r_half, double r_full);
/// Local MLE from one ordered distance list; nullopt when no usable terms remain.
std::optional<double> mle_local(std::span<const double> distances, bool k_minus_one, std::size_t* dropped = nullptr);

/// TwoNN slope from the ratios mu = r2/r1 of the usable points.
double twonn_from_ratios(std::vector<double> mu);

double danco_log_density(double r, double d, int K, DensityForm form);
int danco_norm_mle(std::span<const double> ratios, int K, int d_max, DensityForm form);
double danco_kl_norm(double d1, double d2, int K, DensityForm form);
double danco_kl_von_mises(const VonMisesFit& f1, const VonMisesFit& f2);

/// Von Mises fit averaged over neighborhoods: per neighborhood, the angles between
/// every pair of neighbor directions.
VonMisesFit danco_angle_fit(const Matrix& points, std::span<const NeighborSet> nbrs, std::size_t K);

double wasserstein_split_estimate(double w_small, double w_big, double alpha);

/// Runs cfg.method. Neighborhood methods reuse `nbrs` when given (each set must
/// hold at least cfg.K entries; longer sets are read as prefixes).
EstimateReport estimate(const PointCloud& cloud, const EstimatorConfig& cfg,
                        const std::vector<NeighborSet>* nbrs = nullptr);

EstimateReport estimate_local_pca(const PointCloud& cloud, const EstimatorConfig& cfg);
EstimateReport estimate_ca_pca(const PointCloud& cloud, const EstimatorConfig& cfg);
EstimateReport estimate_mada(const PointCloud& cloud, const EstimatorConfig& cfg);
EstimateReport estimate_mle(const PointCloud& cloud, const EstimatorConfig& cfg);
EstimateReport estimate_tle(const PointCloud& cloud, const EstimatorConfig& cfg);
EstimateReport estimate_twonn(const PointCloud& cloud, const EstimatorConfig& cfg);
EstimateReport estimate_danco(const PointCloud& cloud, const EstimatorConfig& cfg);
EstimateReport estimate_wasserstein(const PointCloud& cloud, const EstimatorConfig& cfg);

}  // namespace dimlab
