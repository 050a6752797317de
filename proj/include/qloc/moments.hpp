#pragma once

#include <limits>

#include "qloc/operators.hpp"

namespace qloc {

using Mat3d = std::array<std::array<double, 3>, 3>;

/// Moments of a packet relevant to the position/momentum uncertainty bound
/// DQ_i DP_j >= (1/2) <H^-2 P_i P_j>.
struct UncertaintyReport {
  double alpha = 0;
  Vec3d k0{0, 0, 0};
  Vec3d dq{0, 0, 0};
  Vec3d dp{0, 0, 0};
  Mat3d tensor{};  // <H^-2 P_i P_j>
  Mat3d bound{};   // tensor / 2
  double trace = 0;
  // Decomposition bound_ij = A delta_ij + B k0_i k0_j along the packet center;
  // coef_par_k2 carries B |k0|^2 so the isotropic limit is finite.
  double coef_iso = 0;      // A
  double coef_par_k2 = 0;   // B |k0|^2
  double robertson_margin_min = 0;  // min over i,j of DQ_i DP_j - bound_ij
};

namespace detail {

inline double real_expectation(const Wavepacket& psi, const std::vector<Complex>& op_psi) {
  double v = inner_product(psi, op_psi).real();
  if (!std::isfinite(v)) throw MomentDivergence("non-finite expectation value");
  return v;
}

}  // namespace detail

/// <psi| H^-2 P_i P_j |psi> for all i,j (pure multiplication operators).
inline Mat3d expectation_tensor(const Wavepacket& psi) {
  const GridSpec& g = psi.grid;
  Mat3d t{};
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      std::vector<Complex> op_psi(g.size(), Complex{});
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
          for (int k = 0; k < g.n; ++k) {
            if (g.masked(i, j, k)) continue;
            std::size_t s = g.index(i, j, k);
            Vec3d p = g.node(i, j, k);
            double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
            op_psi[s] = p[a] * p[b] / r2 * psi.samples[s];
          }
      t[a][b] = t[b][a] = detail::real_expectation(psi, op_psi);
    }
  return t;
}

inline UncertaintyReport uncertainty_report(const Wavepacket& psi) {
  UncertaintyReport rep;
  if (psi.spec) {
    rep.alpha = psi.spec->alpha;
    rep.k0 = psi.spec->k0;
  }
  for (int a = 0; a < 3; ++a) {
    Wavepacket q_psi = apply_operator({OpKind::Q, a}, psi);
    Wavepacket qq_psi = apply_operator({OpKind::Q, a}, q_psi);
    double q1 = detail::real_expectation(psi, q_psi.samples);
    double q2 = detail::real_expectation(psi, qq_psi.samples);
    rep.dq[a] = std::sqrt(std::max(0.0, q2 - q1 * q1));

    Wavepacket p_psi = apply_operator({OpKind::P, a}, psi);
    Wavepacket pp_psi = apply_operator({OpKind::P, a}, p_psi);
    double p1 = detail::real_expectation(psi, p_psi.samples);
    double p2 = detail::real_expectation(psi, pp_psi.samples);
    rep.dp[a] = std::sqrt(std::max(0.0, p2 - p1 * p1));
  }

  rep.tensor = expectation_tensor(psi);
  rep.trace = 0;
  for (int a = 0; a < 3; ++a) {
    rep.trace += 0.5 * rep.tensor[a][a];
    for (int b = 0; b < 3; ++b) rep.bound[a][b] = 0.5 * rep.tensor[a][b];
  }

  double r0 = norm3(rep.k0);
  if (r0 > 1e-12) {
    Vec3d kh{rep.k0[0] / r0, rep.k0[1] / r0, rep.k0[2] / r0};
    double t_par = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) t_par += kh[a] * rep.tensor[a][b] * kh[b];
    rep.coef_iso = 0.25 * (1.0 - t_par);
    rep.coef_par_k2 = 0.25 * (3.0 * t_par - 1.0);
  } else {
    rep.coef_iso = rep.trace / 3.0;
    rep.coef_par_k2 = 0.0;
  }

  rep.robertson_margin_min = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      rep.robertson_margin_min = std::min(
          rep.robertson_margin_min, rep.dq[a] * rep.dp[b] - std::abs(rep.bound[a][b]));
  return rep;
}

}  // namespace qloc
