#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qloc {

struct GridTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MomentDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QuadratureBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularMomentum : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidBoost : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Complex = std::complex<double>;
using Vec3d = std::array<double, 3>;

inline double norm3(const Vec3d& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

/// Deterministic pairwise (cascade) summation; fixed association order
/// independent of any parallel scheduling.
template <typename T>
T pairwise_sum(const std::vector<T>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return T{};
  if (hi - lo == 1) return xs[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}
template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(xs, 0, xs.size());
}

/// Uniform Cartesian momentum grid with an exclusion ball around k = 0
/// (where H^-1 and H^-2 are singular).
struct GridSpec {
  double kmax = 6.0;
  int n = 49;
  double eps_min = 0.0;  // 0 means "use the default 2h"

  GridSpec() = default;
  GridSpec(double kmax_, int n_, double eps = 0.0) : kmax(kmax_), n(n_), eps_min(eps) {
    if (n < 16) throw GridTooSmall("grid must have at least 16 points per axis");
    if (eps_min == 0.0) eps_min = 2.0 * h();
    if (eps_min < 2.0 * h() - 1e-12)
      throw GridTooSmall("exclusion radius must be at least two grid spacings");
  }

  double h() const { return 2.0 * kmax / (n - 1); }
  double coord(int i) const { return -kmax + h() * i; }
  std::size_t size() const {
    return static_cast<std::size_t>(n) * n * n;
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }
  Vec3d node(int i, int j, int k) const { return {coord(i), coord(j), coord(k)}; }
  bool masked(int i, int j, int k) const {
    return norm3(node(i, j, k)) < eps_min;
  }
};

/// Analytic provenance of a Gaussian packet: S(k) = norm_const * exp(-alpha (k-k0)^2).
struct GaussianSpec {
  double alpha = 1.0;
  Vec3d k0{0, 0, 0};
  double norm_const = 1.0;
};

/// Complex samples on the unmasked nodes of a grid (masked nodes hold 0).
struct Wavepacket {
  GridSpec grid;
  std::vector<Complex> samples;
  std::optional<GaussianSpec> spec;

  double quadrature_norm_sq() const {
    std::vector<double> cells(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) cells[s] = std::norm(samples[s]);
    return pairwise_sum(cells) * grid.h() * grid.h() * grid.h();
  }
};

/// L2 inner product <phi|psi> = sum conj(phi) psi h^3 with pairwise reduction.
inline Complex inner_product(const Wavepacket& phi, const std::vector<Complex>& psi) {
  std::vector<Complex> cells(phi.samples.size());
  for (std::size_t s = 0; s < cells.size(); ++s)
    cells[s] = std::conj(phi.samples[s]) * psi[s];
  double h = phi.grid.h();
  return pairwise_sum(cells) * (h * h * h);
}
inline Complex inner_product(const Wavepacket& phi, const Wavepacket& psi) {
  return inner_product(phi, psi.samples);
}

struct GaussianTolerances {
  double box_leak = 1e-6;   // share of mass allowed beyond the box
  double ball_leak = 0.05;  // share of mass allowed inside the exclusion ball
};

/// Normalized Gaussian packet S(k) ~ exp(-alpha (k-k0)^2) under the flat d^3k
/// quadrature measure. Throws GridTooSmall when the analytic packet leaks
/// outside the box or into the exclusion ball beyond tolerance.
inline Wavepacket make_gaussian(double alpha, const Vec3d& k0, const GridSpec& grid,
                                GaussianTolerances tol = {}) {
  if (alpha <= 0) throw GridTooSmall("gaussian width parameter must be positive");
  Wavepacket psi;
  psi.grid = grid;
  psi.samples.assign(grid.size(), Complex{});

  // Box leak: product of three 1D Gaussian tail masses via erfc.
  double inside = 1.0;
  for (int a = 0; a < 3; ++a) {
    double lo = (-grid.kmax - k0[a]) * std::sqrt(2.0 * alpha);
    double hi = (grid.kmax - k0[a]) * std::sqrt(2.0 * alpha);
    inside *= 0.5 * (std::erf(hi) - std::erf(lo));
  }
  if (1.0 - inside > tol.box_leak)
    throw GridTooSmall("gaussian leaks past kmax: outside mass " +
                       std::to_string(1.0 - inside));

  double mass_all = 0, mass_masked = 0;
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      for (int k = 0; k < grid.n; ++k) {
        Vec3d p = grid.node(i, j, k);
        double r2 = 0;
        for (int a = 0; a < 3; ++a) r2 += (p[a] - k0[a]) * (p[a] - k0[a]);
        double cell = std::exp(-2.0 * alpha * r2);
        mass_all += cell;
        if (grid.masked(i, j, k)) {
          mass_masked += cell;
        } else {
          psi.samples[grid.index(i, j, k)] = std::exp(-alpha * r2);
        }
      }

  // Exclusion-ball leak: the share of grid mass removed by the mask.
  double ball_mass = mass_masked / mass_all;
  if (ball_mass > tol.ball_leak)
    throw GridTooSmall("gaussian mass near k=0 exceeds the exclusion tolerance: " +
                       std::to_string(ball_mass));

  double nrm = std::sqrt(psi.quadrature_norm_sq());
  if (!(nrm > 0)) throw GridTooSmall("gaussian vanishes on the unmasked grid");
  for (auto& s : psi.samples) s /= nrm;
  psi.spec = GaussianSpec{alpha, k0, 1.0 / nrm};
  return psi;
}

}  // namespace qloc
