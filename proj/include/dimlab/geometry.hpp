#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dimlab/matrix.hpp"

namespace dimlab {

enum class ManifoldKind {
  sphere,
  ball,
  gaussian_surface,
  deformed_sphere,
  cylinder,
  helix,
  swiss_roll,
  mobius,
  torus,
  hyperboloid,
};

std::string_view to_string(ManifoldKind kind);
ManifoldKind manifold_kind_from_string(std::string_view name);

/// Geometric parameters; which ones matter depends on the kind.
///   R       sphere/ball radius, deformed-sphere base radius, torus major radius
///   r       deformed-sphere modulation amplitude, torus tube radius
///   c       deformed-sphere modulation frequency
///   sigma_g standard deviation of the Gaussian whose density graph is sampled
struct ManifoldParams {
  double R = 1.0;
  double r = 0.5;
  double c = 1.0;
  double sigma_g = 0.5;
};

struct ManifoldSpec {
  std::string id;  // catalog name such as "M11"; free-form for custom specs
  ManifoldKind kind = ManifoldKind::sphere;
  int d = 1;
  ManifoldParams params;
  std::size_t ambient_p = 2;
  std::uint64_t embed_seed = 0;
};

struct BetaShape {
  double a = 0.5;
  double b = 3.0;
};

struct SampleConfig {
  std::size_t n = 1000;
  std::optional<BetaShape> beta;  // nullopt: Hausdorff-uniform
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

struct Provenance {
  ManifoldSpec manifold;
  SampleConfig sample;
};

/// n x p matrix of finite observations, n >= 2, p >= 1.
class PointCloud {
 public:
  explicit PointCloud(Matrix points, std::optional<Provenance> provenance = std::nullopt);

  std::size_t n() const { return points_.rows(); }
  std::size_t p() const { return points_.cols(); }
  std::span<const double> point(std::size_t i) const { return points_.row(i); }
  const Matrix& points() const { return points_; }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  /// Copy with every coordinate multiplied by `factor`.
  PointCloud scaled(double factor) const;

 private:
  Matrix points_;
  std::optional<Provenance> provenance_;
};

/// Axis-aligned chart domain.
struct ChartBox {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Width of the native coordinates produced by chart_inverse (before embedding).
std::size_t native_dim(const ManifoldSpec& spec);
ChartBox chart_domain(const ManifoldSpec& spec);
void validate(const ManifoldSpec& spec);
void validate(const SampleConfig& cfg);

/// Inverse chart: coordinates u in the chart domain -> point on the manifold in
/// native coordinates. Sphere charts use hyperspherical angles with u = 0 at the
/// north pole; ball charts are polar (radius first).
std::vector<double> chart_inverse(const ManifoldSpec& spec, std::span<const double> u);

/// Volume distortion J = sqrt(det(D^T D)) of the inverse chart at u.
double volume_distortion(const ManifoldSpec& spec, std::span<const double> u);

/// Same quantity from Richardson-extrapolated central differences of chart_inverse.
double volume_distortion_numeric(const ManifoldSpec& spec, std::span<const double> u, double step = 1e-6);

/// Upper bound on J over the chart domain for the uniform density (grid scan, x1.1).
double acceptance_bound(const ManifoldSpec& spec);

/// Draws a point cloud by rejection on the volume distortion (uniform) or coordinate-space
/// Beta draws, then embeds into R^ambient_p and adds isotropic Gaussian noise.
PointCloud sample_manifold(const ManifoldSpec& spec, const SampleConfig& cfg);

/// Seeded random p x p orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
Matrix random_orthogonal(std::size_t p, std::uint64_t seed);

/// Zero-pads native rows to ambient_p and rotates them by random_orthogonal.
PointCloud embed_linear(const Matrix& native, std::size_t ambient_p, std::uint64_t embed_seed);

enum class TangentScheme {
  quarter_turn,  // u_j in {0, 1/4}
  unit_steps,    // u_j in {+1, -1} if 2c is an integer, {+1/2, -1/2} otherwise
};

/// The 2d tangent vectors d(phi^-1)(e_j) of a deformed sphere, as rows of a 2d x 2d
/// matrix, evaluated at two chart points per coordinate.
Matrix deformed_sphere_tangents(const ManifoldSpec& spec, TangentScheme scheme);

/// Numeric rank (singular values > 1e-8 * max) of deformed_sphere_tangents.
int tangent_rank_check(const ManifoldSpec& spec, TangentScheme scheme = TangentScheme::quarter_turn);

/// The benchmark catalog, in table order: M11 M12 M13 M21 M22 M23 M31 M32 M33
/// M41 M42 M43 M5 M6 M7 M8 M9 M10.
const std::vector<ManifoldSpec>& manifold_catalog();
/// Throws InputError for unknown ids.
const ManifoldSpec& catalog_entry(std::string_view id);

/// Spheres used by the factor sweeps.
ManifoldSpec make_sphere(int d, std::size_t ambient_p, double radius = 1.0);
ManifoldSpec make_deformed_sphere(int d, double c, double R = 1.0, double r = 0.5);

}  // namespace dimlab
