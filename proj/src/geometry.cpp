#include "dimlab/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dimlab/error.hpp"
#include "dimlab/linalg.hpp"
#include "dimlab/rng.hpp"

namespace dimlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kEmbedStream = 0x6d62'6564ULL;
constexpr std::uint64_t kNoiseTag = 0x6e6f'6973'65ULL;
constexpr std::size_t kMaxProposals = 10'000'000;

struct KindInfo {
  ManifoldKind kind;
  std::string_view name;
  int fixed_d;  // 0 when d is free
};

constexpr std::array<KindInfo, 10> kKinds{{
    {ManifoldKind::sphere, "sphere", 0},
    {ManifoldKind::ball, "ball", 0},
    {ManifoldKind::gaussian_surface, "gaussian_surface", 0},
    {ManifoldKind::deformed_sphere, "deformed_sphere", 0},
    {ManifoldKind::cylinder, "cylinder", 2},
    {ManifoldKind::helix, "helix", 1},
    {ManifoldKind::swiss_roll, "swiss_roll", 2},
    {ManifoldKind::mobius, "mobius", 2},
    {ManifoldKind::torus, "torus", 2},
    {ManifoldKind::hyperboloid, "hyperboloid", 2},
}};

const KindInfo& info(ManifoldKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k;
  throw InputError("unknown manifold kind");
}

// Unit-sphere point from hyperspherical angles (theta_1..theta_{m-1}, phi) in R^{m+1},
// north pole (last coordinate) at theta_1 = 0.
void sphere_point(std::span<const double> angles, double radius, std::span<double> out) {
  const std::size_t m = angles.size();
  const std::size_t w = m + 1;
  double s = radius;
  // Coordinates filled from the last one downward.
  for (std::size_t i = 0; i + 1 < m; ++i) {
    out[w - 1 - i] = s * std::cos(angles[i]);
    s *= std::sin(angles[i]);
  }
  const double phi = angles[m - 1];
  out[0] = s * std::cos(phi);
  out[1] = s * std::sin(phi);
}

double sphere_jacobian(std::span<const double> angles, double radius) {
  const std::size_t m = angles.size();
  double j = std::pow(radius, static_cast<double>(m));
  for (std::size_t i = 0; i + 1 < m; ++i) j *= std::pow(std::abs(std::sin(angles[i])), static_cast<double>(m - 1 - i));
  return j;
}

double gaussian_height(const ManifoldParams& prm, int d, double rho2) {
  const double s2 = prm.sigma_g * prm.sigma_g;
  return std::pow(kTwoPi * s2, -0.5 * d) * std::exp(-0.5 * rho2 / s2);
}

double gaussian_jacobian(const ManifoldParams& prm, int d, double rho) {
  const double s2 = prm.sigma_g * prm.sigma_g;
  const double g = gaussian_height(prm, d, rho * rho) * rho / s2;
  return std::sqrt(1.0 + g * g);
}

// Deformed sphere, one coordinate pair: radius and its derivative.
double ds_radius(const ManifoldParams& prm, double u) { return prm.R + prm.r * std::cos(2.0 * prm.c * kPi * u); }
double ds_radius_prime(const ManifoldParams& prm, double u) {
  return -2.0 * prm.c * kPi * prm.r * std::sin(2.0 * prm.c * kPi * u);
}
double ds_factor(const ManifoldParams& prm, double u) {
  const double rho = ds_radius(prm, u);
  const double drho = ds_radius_prime(prm, u);
  return std::sqrt(drho * drho + 4.0 * kPi * kPi * rho * rho);
}

// chart_inverse without the domain check (finite differences step slightly outside).
void chart_eval(const ManifoldSpec& spec, std::span<const double> u, std::span<double> x) {
  const auto& prm = spec.params;
  const int d = spec.d;
  switch (spec.kind) {
    case ManifoldKind::sphere:
      sphere_point(u, prm.R, x);
      return;
    case ManifoldKind::ball:
      if (d == 1) {
        x[0] = u[0];
      } else {
        sphere_point(u.subspan(1), u[0], x);
      }
      return;
    case ManifoldKind::gaussian_surface: {
      double rho2 = 0.0;
      for (int i = 0; i < d; ++i) {
        x[i] = u[i];
        rho2 += u[i] * u[i];
      }
      x[d] = gaussian_height(prm, d, rho2);
      return;
    }
    case ManifoldKind::deformed_sphere:
      for (int j = 0; j < d; ++j) {
        const double rho = ds_radius(prm, u[j]);
        x[j] = rho * std::cos(kTwoPi * u[j]);
        x[j + d] = rho * std::sin(kTwoPi * u[j]);
      }
      return;
    case ManifoldKind::cylinder:
      x[0] = std::cos(u[0]);
      x[1] = std::sin(u[0]);
      x[2] = u[1];
      return;
    case ManifoldKind::helix:
      x[0] = std::cos(6.0 * kPi * u[0]);
      x[1] = std::sin(6.0 * kPi * u[0]);
      x[2] = u[0];
      return;
    case ManifoldKind::swiss_roll:
      x[0] = u[0] * std::cos(u[0]);
      x[1] = u[0] * std::sin(u[0]);
      x[2] = u[1];
      return;
    case ManifoldKind::mobius: {
      const double t = u[0];
      const double w = u[1];
      const double a = 1.0 + 0.5 * w * std::cos(0.5 * t);
      x[0] = a * std::cos(t);
      x[1] = a * std::sin(t);
      x[2] = 0.5 * w * std::sin(0.5 * t);
      return;
    }
    case ManifoldKind::torus: {
      const double a = prm.R + prm.r * std::cos(u[1]);
      x[0] = a * std::cos(u[0]);
      x[1] = a * std::sin(u[0]);
      x[2] = prm.r * std::sin(u[1]);
      return;
    }
    case ManifoldKind::hyperboloid: {
      const double a = std::sqrt(1.0 + u[0] * u[0]);
      x[0] = a * std::cos(u[1]);
      x[1] = a * std::sin(u[1]);
      x[2] = u[0];
      return;
    }
  }
}

void check_domain(const ManifoldSpec& spec, std::span<const double> u) {
  const ChartBox box = chart_domain(spec);
  if (u.size() != box.lo.size()) throw InputError("chart coordinates have the wrong length");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) throw InputError("chart coordinate is not finite");
    const double slack = 1e-12 * std::max(1.0, box.hi[i] - box.lo[i]);
    if (u[i] < box.lo[i] - slack || u[i] > box.hi[i] + slack) throw InputError("chart coordinate out of domain");
  }
}

double gram_determinant(const Matrix& jac) {
  // jac: w x d columns are tangent vectors.
  const std::size_t d = jac.cols();
  Matrix g(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < jac.rows(); ++i) s += jac(i, a) * jac(i, b);
      g(a, b) = g(b, a) = s;
    }
  // Gaussian elimination with partial pivoting.
  double det = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < d; ++i)
      if (std::abs(g(i, k)) > std::abs(g(piv, k))) piv = i;
    if (g(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < d; ++j) std::swap(g(k, j), g(piv, j));
      det = -det;
    }
    det *= g(k, k);
    for (std::size_t i = k + 1; i < d; ++i) {
      const double f = g(i, k) / g(k, k);
      for (std::size_t j = k; j < d; ++j) g(i, j) -= f * g(k, j);
    }
  }
  return det;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ManifoldSpec entry(std::string id, ManifoldKind kind, int d, std::size_t p, ManifoldParams prm = {}) {
  ManifoldSpec s;
  s.embed_seed = fnv1a(id);
  s.id = std::move(id);
  s.kind = kind;
  s.d = d;
  s.ambient_p = p;
  s.params = prm;
  return s;
}

}  // namespace

std::string_view to_string(ManifoldKind kind) { return info(kind).name; }

ManifoldKind manifold_kind_from_string(std::string_view name) {
  for (const auto& k : kKinds)
    if (k.name == name) return k.kind;
  throw InputError("unknown manifold kind: " + std::string(name));
}

PointCloud::PointCloud(Matrix points, std::optional<Provenance> provenance)
    : points_(std::move(points)), provenance_(std::move(provenance)) {
  if (points_.rows() < 2) throw InputError("point cloud needs at least 2 points");
  if (points_.cols() < 1) throw InputError("point cloud needs at least 1 coordinate");
  for (double v : points_.data())
    if (!std::isfinite(v)) throw InputError("point cloud contains a non-finite value");
}

PointCloud PointCloud::scaled(double factor) const {
  Matrix m = points_;
  for (double& v : m.data()) v *= factor;
  return PointCloud(std::move(m), provenance_);
}

std::size_t native_dim(const ManifoldSpec& spec) {
  const auto d = static_cast<std::size_t>(spec.d);
  switch (spec.kind) {
    case ManifoldKind::sphere:
    case ManifoldKind::gaussian_surface:
      return d + 1;
    case ManifoldKind::ball:
      return d;
    case ManifoldKind::deformed_sphere:
      return 2 * d;
    default:
      return 3;
  }
}

ChartBox chart_domain(const ManifoldSpec& spec) {
  const auto d = static_cast<std::size_t>(spec.d);
  const auto& prm = spec.params;
  ChartBox b;
  auto push = [&](double lo, double hi) {
    b.lo.push_back(lo);
    b.hi.push_back(hi);
  };
  switch (spec.kind) {
    case ManifoldKind::sphere:
      for (std::size_t i = 0; i + 1 < d; ++i) push(0.0, kPi);
      push(0.0, kTwoPi);
      break;
    case ManifoldKind::ball:
      if (d == 1) {
        push(-prm.R, prm.R);
      } else {
        push(0.0, prm.R);
        for (std::size_t i = 0; i + 2 < d; ++i) push(0.0, kPi);
        push(0.0, kTwoPi);
      }
      break;
    case ManifoldKind::gaussian_surface:
      for (std::size_t i = 0; i < d; ++i) push(-1.0, 1.0);
      break;
    case ManifoldKind::deformed_sphere:
      for (std::size_t i = 0; i < d; ++i) push(-kPi, kPi);
      break;
    case ManifoldKind::cylinder:
      push(0.0, kTwoPi);
      push(0.0, 1.0);
      break;
    case ManifoldKind::helix:
      push(0.0, 1.0);
      break;
    case ManifoldKind::swiss_roll:
      push(1.5 * kPi, 4.5 * kPi);
      push(0.0, 10.0);
      break;
    case ManifoldKind::mobius:
      push(0.0, kTwoPi);
      push(-1.0, 1.0);
      break;
    case ManifoldKind::torus:
      push(0.0, kTwoPi);
      push(0.0, kTwoPi);
      break;
    case ManifoldKind::hyperboloid:
      push(-1.0, 1.0);
      push(0.0, kTwoPi);
      break;
  }
  return b;
}

void validate(const ManifoldSpec& spec) {
  const auto& k = info(spec.kind);
  if (spec.d < 1) throw InputError("intrinsic dimension must be positive");
  if (k.fixed_d != 0 && spec.d != k.fixed_d)
    throw InputError(std::string(k.name) + " has intrinsic dimension " + std::to_string(k.fixed_d));
  if (spec.ambient_p < native_dim(spec))
    throw InputError("ambient dimension " + std::to_string(spec.ambient_p) + " is below the native width " +
                     std::to_string(native_dim(spec)));
  const auto& prm = spec.params;
  if (!(prm.R > 0.0) || !std::isfinite(prm.R)) throw InputError("R must be positive");
  if (!(prm.r >= 0.0) || !std::isfinite(prm.r)) throw InputError("r must be non-negative");
  if (!(prm.c > 0.0) || !std::isfinite(prm.c)) throw InputError("c must be positive");
  if (!(prm.sigma_g > 0.0) || !std::isfinite(prm.sigma_g)) throw InputError("sigma_g must be positive");
}

void validate(const SampleConfig& cfg) {
  if (cfg.n < 2) throw InputError("sample size must be at least 2");
  if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma)) throw InputError("noise sigma must be >= 0");
  if (cfg.beta && !(cfg.beta->a > 0.0 && cfg.beta->b > 0.0)) throw InputError("Beta shapes must be positive");
}

std::vector<double> chart_inverse(const ManifoldSpec& spec, std::span<const double> u) {
  validate(spec);
  check_domain(spec, u);
  std::vector<double> x(native_dim(spec));
  chart_eval(spec, u, x);
  return x;
}

double volume_distortion_numeric(const ManifoldSpec& spec, std::span<const double> u, double step) {
  const std::size_t d = u.size();
  const std::size_t w = native_dim(spec);
  Matrix jac(w, d);
  std::vector<double> v(u.begin(), u.end());
  std::vector<double> fp(w), fm(w);
  auto central = [&](std::size_t k, double h, std::vector<double>& out) {
    v[k] = u[k] + h;
    chart_eval(spec, v, fp);
    v[k] = u[k] - h;
    chart_eval(spec, v, fm);
    v[k] = u[k];
    for (std::size_t i = 0; i < w; ++i) out[i] = (fp[i] - fm[i]) / (2.0 * h);
  };
  std::vector<double> coarse(w), fine(w);
  for (std::size_t k = 0; k < d; ++k) {
    central(k, step, coarse);
    central(k, 0.5 * step, fine);
    for (std::size_t i = 0; i < w; ++i) jac(i, k) = (4.0 * fine[i] - coarse[i]) / 3.0;
  }
  return std::sqrt(std::max(0.0, gram_determinant(jac)));
}

double volume_distortion(const ManifoldSpec& spec, std::span<const double> u) {
  validate(spec);
  check_domain(spec, u);
  const auto& prm = spec.params;
  const int d = spec.d;
  switch (spec.kind) {
    case ManifoldKind::sphere:
      return sphere_jacobian(u, prm.R);
    case ManifoldKind::ball:
      if (d == 1) return 1.0;
      return sphere_jacobian(u.subspan(1), u[0]);
    case ManifoldKind::gaussian_surface: {
      double rho2 = 0.0;
      for (double x : u) rho2 += x * x;
      return gaussian_jacobian(prm, d, std::sqrt(rho2));
    }
    case ManifoldKind::deformed_sphere: {
      double j = 1.0;
      for (double x : u) j *= ds_factor(prm, x);
      return j;
    }
    case ManifoldKind::cylinder:
      return 1.0;
    case ManifoldKind::helix:
      return std::sqrt(36.0 * kPi * kPi + 1.0);
    case ManifoldKind::swiss_roll:
      return std::sqrt(1.0 + u[0] * u[0]);
    case ManifoldKind::torus:
      return prm.r * (prm.R + prm.r * std::cos(u[1]));
    case ManifoldKind::mobius:
    case ManifoldKind::hyperboloid:
      return volume_distortion_numeric(spec, u);
  }
  return 0.0;
}

double acceptance_bound(const ManifoldSpec& spec) {
  validate(spec);
  constexpr double safety = 1.1;
  const auto& prm = spec.params;
  const int d = spec.d;
  switch (spec.kind) {
    case ManifoldKind::sphere:
      return safety * std::pow(prm.R, d);
    case ManifoldKind::ball:
      return safety * (d == 1 ? 1.0 : std::pow(prm.R, d - 1));
    case ManifoldKind::gaussian_surface: {
      // J depends on |u| only.
      const double rho_max = std::sqrt(static_cast<double>(d));
      constexpr int steps = 20000;
      double m = 0.0;
      for (int i = 0; i <= steps; ++i) m = std::max(m, gaussian_jacobian(prm, d, rho_max * i / steps));
      return safety * m;
    }
    case ManifoldKind::deformed_sphere: {
      // J factorizes over coordinates.
      constexpr int steps = 20000;
      double m = 0.0;
      for (int i = 0; i <= steps; ++i) m = std::max(m, ds_factor(prm, -kPi + kTwoPi * i / steps));
      return safety * std::pow(m, d);
    }
    default: {
      const ChartBox box = chart_domain(spec);
      constexpr int steps = 400;
      double m = 0.0;
      std::vector<double> u(box.lo.size());
      if (u.size() == 1) {
        for (int i = 0; i <= steps; ++i) {
          u[0] = box.lo[0] + (box.hi[0] - box.lo[0]) * i / steps;
          m = std::max(m, volume_distortion(spec, u));
        }
      } else {
        for (int i = 0; i <= steps; ++i)
          for (int j = 0; j <= steps; ++j) {
            u[0] = box.lo[0] + (box.hi[0] - box.lo[0]) * i / steps;
            u[1] = box.lo[1] + (box.hi[1] - box.lo[1]) * j / steps;
            m = std::max(m, volume_distortion(spec, u));
          }
      }
      return safety * m;
    }
  }
}

Matrix random_orthogonal(std::size_t p, std::uint64_t seed) {
  RngStream rng(seed, kEmbedStream);
  Matrix g(p, p);
  for (double& v : g.data()) v = rng.normal();
  return orthogonal_factor(g);
}

PointCloud embed_linear(const Matrix& native, std::size_t ambient_p, std::uint64_t embed_seed) {
  const std::size_t w = native.cols();
  if (ambient_p < w) throw InputError("embed_linear: ambient dimension below native width");
  const Matrix q = random_orthogonal(ambient_p, embed_seed);
  Matrix out(native.rows(), ambient_p);
  for (std::size_t i = 0; i < native.rows(); ++i)
    for (std::size_t a = 0; a < ambient_p; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < w; ++b) s += q(a, b) * native(i, b);
      out(i, a) = s;
    }
  return PointCloud(std::move(out));
}

PointCloud sample_manifold(const ManifoldSpec& spec, const SampleConfig& cfg) {
  validate(spec);
  validate(cfg);
  const std::size_t w = native_dim(spec);
  const auto d = static_cast<std::size_t>(spec.d);
  Matrix native(cfg.n, w);
  RngStream rng(cfg.seed, cfg.stream_id);

  if (cfg.beta) {
    const ChartBox box = chart_domain(spec);
    std::vector<double> u(box.lo.size());
    for (std::size_t i = 0; i < cfg.n; ++i) {
      for (std::size_t k = 0; k < u.size(); ++k)
        u[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * sample_beta(rng, cfg.beta->a, cfg.beta->b);
      chart_eval(spec, u, native.row(i));
    }
  } else if (spec.kind == ManifoldKind::sphere) {
    for (std::size_t i = 0; i < cfg.n; ++i) {
      auto row = native.row(i);
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (double& v : row) {
          v = rng.normal();
          norm2 += v * v;
        }
      } while (norm2 == 0.0);
      const double s = spec.params.R / std::sqrt(norm2);
      for (double& v : row) v *= s;
    }
  } else if (spec.kind == ManifoldKind::ball) {
    for (std::size_t i = 0; i < cfg.n; ++i) {
      auto row = native.row(i);
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (double& v : row) {
          v = rng.normal();
          norm2 += v * v;
        }
      } while (norm2 == 0.0);
      const double radius = spec.params.R * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
      const double s = radius / std::sqrt(norm2);
      for (double& v : row) v *= s;
    }
  } else {
    const ChartBox box = chart_domain(spec);
    const double bound = acceptance_bound(spec);
    std::vector<double> u(box.lo.size());
    for (std::size_t i = 0; i < cfg.n; ++i) {
      std::size_t tries = 0;
      for (;;) {
        if (++tries > kMaxProposals) throw ConvergenceError("sample_manifold: rejection sampler exceeded its proposal budget");
        for (std::size_t k = 0; k < u.size(); ++k) u[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * rng.uniform();
        const double accept = volume_distortion(spec, u) / bound;
        if (accept > 1.0) throw ConvergenceError("sample_manifold: acceptance bound violated");
        if (rng.uniform() < accept) break;
      }
      chart_eval(spec, u, native.row(i));
    }
  }

  PointCloud embedded = embed_linear(native, spec.ambient_p, spec.embed_seed);
  Matrix pts = embedded.points();
  if (cfg.noise_sigma > 0.0) {
    RngStream noise(derive_seed(cfg.seed, kNoiseTag), cfg.stream_id);
    for (double& v : pts.data()) v += cfg.noise_sigma * noise.normal();
  }
  return PointCloud(std::move(pts), Provenance{spec, cfg});
}

Matrix deformed_sphere_tangents(const ManifoldSpec& spec, TangentScheme scheme) {
  if (spec.kind != ManifoldKind::deformed_sphere) throw InputError("tangent vectors need a deformed sphere");
  const auto d = static_cast<std::size_t>(spec.d);
  const auto& prm = spec.params;
  std::array<double, 2> at{0.0, 0.25};
  if (scheme == TangentScheme::unit_steps) {
    const double two_c = 2.0 * prm.c;
    const bool integral = std::abs(two_c - std::round(two_c)) < 1e-12;
    at = integral ? std::array<double, 2>{1.0, -1.0} : std::array<double, 2>{0.5, -0.5};
  }
  Matrix t(2 * d, 2 * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t s = 0; s < 2; ++s) {
      const double u = at[s];
      const double rho = ds_radius(prm, u);
      const double drho = ds_radius_prime(prm, u);
      const double c = std::cos(kTwoPi * u);
      const double sn = std::sin(kTwoPi * u);
      t(2 * j + s, j) = drho * c - kTwoPi * rho * sn;
      t(2 * j + s, j + d) = drho * sn + kTwoPi * rho * c;
    }
  return t;
}

int tangent_rank_check(const ManifoldSpec& spec, TangentScheme scheme) {
  const std::vector<double> sv = singular_values(deformed_sphere_tangents(spec, scheme));
  if (sv.empty() || sv.front() == 0.0) return 0;
  int rank = 0;
  for (double s : sv)
    if (s > 1e-8 * sv.front()) ++rank;
  return rank;
}

ManifoldSpec make_sphere(int d, std::size_t ambient_p, double radius) {
  ManifoldParams prm;
  prm.R = radius;
  return entry("sphere" + std::to_string(d), ManifoldKind::sphere, d, ambient_p, prm);
}

ManifoldSpec make_deformed_sphere(int d, double c, double R, double r) {
  ManifoldParams prm;
  prm.R = R;
  prm.r = r;
  prm.c = c;
  return entry("deformed" + std::to_string(d), ManifoldKind::deformed_sphere, d, static_cast<std::size_t>(2 * d), prm);
}

const std::vector<ManifoldSpec>& manifold_catalog() {
  static const std::vector<ManifoldSpec> catalog = [] {
    std::vector<ManifoldSpec> c;
    const std::array<int, 3> dims{5, 10, 20};
    const std::array<const char*, 3> sphere_ids{"M11", "M12", "M13"};
    const std::array<const char*, 3> ball_ids{"M21", "M22", "M23"};
    const std::array<const char*, 3> gauss_ids{"M31", "M32", "M33"};
    for (int i = 0; i < 3; ++i)
      c.push_back(entry(sphere_ids[i], ManifoldKind::sphere, dims[i], static_cast<std::size_t>(2 * dims[i])));
    for (int i = 0; i < 3; ++i)
      c.push_back(entry(ball_ids[i], ManifoldKind::ball, dims[i], static_cast<std::size_t>(2 * dims[i])));
    for (int i = 0; i < 3; ++i)
      c.push_back(entry(gauss_ids[i], ManifoldKind::gaussian_surface, dims[i], static_cast<std::size_t>(2 * dims[i])));
    const std::array<double, 3> freqs{0.01, 0.1, 1.0};
    const std::array<const char*, 3> ds_ids{"M41", "M42", "M43"};
    for (int i = 0; i < 3; ++i) {
      ManifoldParams prm;
      prm.c = freqs[i];
      c.push_back(entry(ds_ids[i], ManifoldKind::deformed_sphere, 3, 6, prm));
    }
    c.push_back(entry("M5", ManifoldKind::cylinder, 2, 4));
    c.push_back(entry("M6", ManifoldKind::helix, 1, 3));
    c.push_back(entry("M7", ManifoldKind::swiss_roll, 2, 4));
    c.push_back(entry("M8", ManifoldKind::mobius, 2, 4));
    ManifoldParams torus;
    torus.R = 2.0;
    torus.r = 1.0;
    c.push_back(entry("M9", ManifoldKind::torus, 2, 4, torus));
    c.push_back(entry("M10", ManifoldKind::hyperboloid, 2, 4));
    return c;
  }();
  return catalog;
}

const ManifoldSpec& catalog_entry(std::string_view id) {
  for (const auto& s : manifold_catalog())
    if (s.id == id) return s;
  throw InputError("unknown manifold id: " + std::string(id));
}

}  // namespace dimlab
