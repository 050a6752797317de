#pragma once

#include <algorithm>
#include <functional>

#include "qloc/moments.hpp"

namespace qloc {

/// Residuals along a refinement ladder with the fitted convergence order
/// (mean of log2 residual ratios between successive levels).
struct ResidualLadder {
  std::vector<double> params;     // h, sigma, ... depending on the study
  std::vector<double> residuals;  // relative L2 residuals
  double fitted_order = 0;
};

namespace detail {

inline double fitted_order(const std::vector<double>& params,
                           const std::vector<double>& residuals) {
  double acc = 0;
  int cnt = 0;
  for (std::size_t k = 0; k + 1 < residuals.size(); ++k) {
    if (residuals[k] <= 0 || residuals[k + 1] <= 0) continue;
    acc += std::log(residuals[k] / residuals[k + 1]) /
           std::log(params[k] / params[k + 1]);
    ++cnt;
  }
  return cnt ? acc / cnt : 0.0;
}

inline double relative_residual(const Wavepacket& num, const Wavepacket& den) {
  return std::sqrt(num.quadrature_norm_sq() / den.quadrature_norm_sq());
}

}  // namespace detail

/// ||[Q_i, Q_j] psi|| / ||psi|| on a ladder of halved grid spacings.
/// The exclusion radius is pinned to twice the coarsest spacing so every
/// level solves the same masked problem.
inline ResidualLadder commutator_residual_study(int i, int j, double alpha,
                                                const Vec3d& k0, double kmax,
                                                const std::vector<int>& ns) {
  ResidualLadder lad;
  double eps = 2.0 * (2.0 * kmax / (ns.front() - 1));
  for (int n : ns) {
    GridSpec g(kmax, n, eps);
    Wavepacket psi = make_gaussian(alpha, k0, g);
    Wavepacket res = commutator_apply({OpKind::Q, i}, {OpKind::Q, j}, psi);
    lad.params.push_back(g.h());
    lad.residuals.push_back(detail::relative_residual(res, psi));
  }
  lad.fitted_order = detail::fitted_order(lad.params, lad.residuals);
  return lad;
}

/// ||([Q_i, P_j] - i H^-2 P_i P_j) psi|| / ||psi|| on the same ladder;
/// checks the deformed canonical commutation relation numerically.
inline ResidualLadder ccr_residual_study(int i, int j, double alpha, const Vec3d& k0,
                                         double kmax, const std::vector<int>& ns) {
  ResidualLadder lad;
  const Complex I{0.0, 1.0};
  double eps = 2.0 * (2.0 * kmax / (ns.front() - 1));
  for (int n : ns) {
    GridSpec g(kmax, n, eps);
    Wavepacket psi = make_gaussian(alpha, k0, g);
    Wavepacket res = commutator_apply({OpKind::Q, i}, {OpKind::P, j}, psi);
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b)
        for (int c = 0; c < g.n; ++c) {
          if (g.masked(a, b, c)) continue;
          std::size_t s = g.index(a, b, c);
          Vec3d p = g.node(a, b, c);
          double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
          res.samples[s] -= I * p[i] * p[j] / r2 * psi.samples[s];
        }
    lad.params.push_back(g.h());
    lad.residuals.push_back(detail::relative_residual(res, psi));
  }
  lad.fitted_order = detail::fitted_order(lad.params, lad.residuals);
  return lad;
}

// ---------------------------------------------------------------------------
// Radial eigenvalue problem: Q_r Phi = q Phi reduces to
//   dPhi/dP = (-i q - 1/P) Phi,  closed form Phi(P) = exp(-i q P) / P.
// ---------------------------------------------------------------------------

struct RadialCheckResult {
  double step = 0;
  double max_rel_error = 0;         // RK4 vs closed form at the given step
  double max_rel_error_halved = 0;  // same with step/2
  double error_ratio = 0;           // expected ~16 for a 4th-order scheme
};

namespace detail {

inline double radial_rk4_error(double q, double p0, double p1, double step) {
  Complex phi = std::exp(Complex{0.0, -q * p0}) / p0;
  auto rhs = [q](double p, Complex y) { return (Complex{0.0, -q} - 1.0 / p) * y; };
  double max_err = 0;
  long nsteps = std::lround((p1 - p0) / step);
  double p = p0;
  for (long s = 0; s < nsteps; ++s) {
    Complex k1 = rhs(p, phi);
    Complex k2 = rhs(p + step / 2, phi + step / 2 * k1);
    Complex k3 = rhs(p + step / 2, phi + step / 2 * k2);
    Complex k4 = rhs(p + step, phi + step * k3);
    phi += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    p = p0 + (s + 1) * step;
    Complex exact = std::exp(Complex{0.0, -q * p}) / p;
    max_err = std::max(max_err, std::abs(phi - exact) / std::abs(exact));
  }
  return max_err;
}

}  // namespace detail

inline RadialCheckResult radial_eigenfunction_check(double q, double p0 = 0.1,
                                                    double p1 = 10.0,
                                                    double step = 1e-3) {
  RadialCheckResult r;
  r.step = step;
  r.max_rel_error = detail::radial_rk4_error(q, p0, p1, step);
  r.max_rel_error_halved = detail::radial_rk4_error(q, p0, p1, step / 2);
  r.error_ratio = r.max_rel_error / std::max(r.max_rel_error_halved, 1e-300);
  return r;
}

// ---------------------------------------------------------------------------
// Regularized 3D eigenfunction: Phi(k) = (1/|k|) exp(-i |k||q|) g_sigma(mu),
// mu = khat . qhat, g_sigma(mu) = exp(-(1 - mu)/sigma^2). The exact
// eigenfunction corresponds to g -> delta at mu = 1; the residual of
// (Q_i - q_i) Phi shrinks linearly with sigma.
// ---------------------------------------------------------------------------

inline Wavepacket make_regularized_eigenfunction(const Vec3d& q, double sigma,
                                                 const GridSpec& grid) {
  double qn = norm3(q);
  if (qn < 1e-12) throw SingularMomentum("eigenvalue vector must be nonzero");
  Vec3d qh{q[0] / qn, q[1] / qn, q[2] / qn};
  Wavepacket phi;
  phi.grid = grid;
  phi.samples.assign(grid.size(), Complex{});
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      for (int k = 0; k < grid.n; ++k) {
        if (grid.masked(i, j, k)) continue;
        Vec3d p = grid.node(i, j, k);
        double r = norm3(p);
        double mu = (p[0] * qh[0] + p[1] * qh[1] + p[2] * qh[2]) / r;
        double g = std::exp(-(1.0 - mu) / (sigma * sigma));
        phi.samples[grid.index(i, j, k)] =
            g / r * std::exp(Complex{0.0, -r * qn});
      }
  double nrm = std::sqrt(phi.quadrature_norm_sq());
  if (!(nrm > 0)) throw GridTooSmall("eigenfunction vanishes on the unmasked grid");
  for (auto& s : phi.samples) s /= nrm;
  return phi;
}

/// sqrt(sum_i ||(Q_i - q_i) Phi||^2) / ||Phi|| along a sigma ladder.
inline ResidualLadder eigenfunction_residual(const Vec3d& q,
                                             const std::vector<double>& sigmas,
                                             const GridSpec& grid) {
  ResidualLadder lad;
  for (double sigma : sigmas) {
    Wavepacket phi = make_regularized_eigenfunction(q, sigma, grid);
    double num = 0;
    for (int a = 0; a < 3; ++a) {
      Wavepacket r = apply_operator({OpKind::Q, a}, phi);
      for (std::size_t s = 0; s < r.samples.size(); ++s)
        r.samples[s] -= q[a] * phi.samples[s];
      num += r.quadrature_norm_sq();
    }
    lad.params.push_back(sigma);
    lad.residuals.push_back(std::sqrt(num / phi.quadrature_norm_sq()));
  }
  lad.fitted_order = detail::fitted_order(lad.params, lad.residuals);
  return lad;
}

// ---------------------------------------------------------------------------
// Position-space transform of the regularized eigenfunction:
//   F(x) = Int d^3P / |P|  Phi(P) exp(+i P.x)
// evaluated by spherical quadrature aligned with qhat: Gauss-Legendre in mu,
// trapezoid in phi, uniform radial steps with a smooth taper that
// regularizes the non-decaying radial oscillation.
// ---------------------------------------------------------------------------

struct TransformOptions {
  int n_mu = 160;
  int n_phi = 64;
  int n_r = 600;
  double r_max = 15.0;
  std::size_t budget = 2'000'000'000;  // total integrand evaluations allowed
};

struct TransformProfile {
  std::vector<double> x_long;    // samples along qhat
  std::vector<double> amp_long;  // |F| on those samples
  double spacing = 0;            // longitudinal sample spacing
  double peak_x = 0;             // argmax of amp_long
  std::vector<double> x_perp;    // transverse offsets at the peak
  std::vector<double> amp_perp;  // |F| on those offsets
  double perp_variation = 0;     // (max-min)/peak over the transverse scan
};

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] via Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

}  // namespace detail

/// |F| along qhat and across a transverse offset scan at the peak.
inline TransformProfile position_space_transform(const Vec3d& q, double sigma,
                                                 int n_long = 61, double x_span = 6.0,
                                                 TransformOptions opt = {}) {
  double qn = norm3(q);
  if (qn < 1e-12) throw SingularMomentum("eigenvalue vector must be nonzero");

  std::size_t evals = static_cast<std::size_t>(opt.n_mu) * opt.n_phi * opt.n_r *
                      (n_long + 9);
  if (evals > opt.budget)
    throw QuadratureBudgetExceeded("transform quadrature exceeds evaluation budget");

  std::vector<double> mu_x, mu_w;
  detail::gauss_legendre(opt.n_mu, mu_x, mu_w);
  double dphi = 2.0 * M_PI / opt.n_phi;
  double dr = opt.r_max / opt.n_r;

  // x in the frame aligned with qhat: (x_par, x_perp, 0).
  auto eval = [&](double x_par, double x_perp) {
    std::vector<Complex> acc;
    acc.reserve(static_cast<std::size_t>(opt.n_mu) * opt.n_phi);
    for (int im = 0; im < opt.n_mu; ++im) {
      double mu = mu_x[im];
      double g = std::exp(-(1.0 - mu) / (sigma * sigma));
      if (g < 1e-300) {
        acc.push_back(Complex{});
        continue;
      }
      double smu = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      for (int ip = 0; ip < opt.n_phi; ++ip) {
        double phi = ip * dphi;
        // omega . x with omega = (mu along qhat, smu cos(phi) transverse)
        double ox = mu * x_par + smu * std::cos(phi) * x_perp;
        double s = ox - qn;  // radial phase rate: exp(i r s)
        // Int_0^R taper(r) exp(i r s) dr with a cos^2 taper on the last 25%,
        // trapezoid rule with a phase recurrence along the ray.
        Complex radial{};
        Complex phase{1.0, 0.0};
        Complex rot = std::exp(Complex{0.0, dr * s});
        for (int ir = 0; ir <= opt.n_r; ++ir) {
          double tail = static_cast<double>(ir) / opt.n_r;
          double taper = 1.0;
          if (tail > 0.75) {
            double u = (tail - 0.75) / 0.25;
            taper = std::cos(0.5 * M_PI * u);
            taper *= taper;
          }
          double trap = (ir == 0 || ir == opt.n_r) ? 0.5 : 1.0;
          radial += (trap * taper) * phase;
          phase *= rot;
        }
        acc.push_back(mu_w[im] * dphi * dr * g * radial);
      }
    }
    return std::abs(pairwise_sum(acc));
  };

  TransformProfile prof;
  prof.spacing = x_span / (n_long - 1);
  double x_lo = qn - x_span / 2.0;
  std::size_t best = 0;
  for (int s = 0; s < n_long; ++s) {
    double xp = x_lo + s * prof.spacing;
    prof.x_long.push_back(xp);
    prof.amp_long.push_back(eval(xp, 0.0));
    if (prof.amp_long.back() > prof.amp_long[best]) best = s;
  }
  prof.peak_x = prof.x_long[best];

  double peak_amp = prof.amp_long[best];
  for (int s = 0; s < 9; ++s) {
    double xp = s * 0.05;
    prof.x_perp.push_back(xp);
    prof.amp_perp.push_back(eval(prof.peak_x, xp));
  }
  double lo = *std::min_element(prof.amp_perp.begin(), prof.amp_perp.end());
  double hi = *std::max_element(prof.amp_perp.begin(), prof.amp_perp.end());
  prof.perp_variation = (hi - lo) / peak_amp;
  return prof;
}

}  // namespace qloc
