#pragma once

#include "qloc/grid.hpp"

namespace qloc {

/// Momentum-space realizations on a grid:
///   H      -> |k| (multiplication)
///   P(a)   -> k_a (multiplication)
///   K(a)   -> i (|k| d/dk_a + k_a / (2|k|))
///   Q(a)   -> i k_a |k|^-2 (k . grad + 1)
enum class OpKind { H, P, K, Q };

struct OperatorId {
  OpKind kind;
  int axis = 0;  // 0..2, ignored for H
};

namespace detail {

/// Second-order partial derivative along `axis`; central where both
/// neighbors are usable, one-sided at the box boundary and next to the
/// exclusion ball, zero where no second-order stencil fits.
inline std::vector<Complex> partial(const Wavepacket& psi, int axis) {
  const GridSpec& g = psi.grid;
  std::vector<Complex> out(g.size(), Complex{});
  const double h = g.h();
  auto usable = [&](int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0 || i >= g.n || j >= g.n || k >= g.n) return false;
    return !g.masked(i, j, k);
  };
  auto at = [&](int i, int j, int k) { return psi.samples[g.index(i, j, k)]; };
  auto shift = [&](int i, int j, int k, int d, int& si, int& sj, int& sk) {
    si = i + (axis == 0 ? d : 0);
    sj = j + (axis == 1 ? d : 0);
    sk = k + (axis == 2 ? d : 0);
  };
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        if (g.masked(i, j, k)) continue;
        int pi, pj, pk, mi, mj, mk;
        shift(i, j, k, +1, pi, pj, pk);
        shift(i, j, k, -1, mi, mj, mk);
        bool has_p = usable(pi, pj, pk), has_m = usable(mi, mj, mk);
        Complex d{};
        if (has_p && has_m) {
          d = (at(pi, pj, pk) - at(mi, mj, mk)) / (2.0 * h);
        } else if (has_p || has_m) {
          int dir = has_p ? +1 : -1;
          int ai, aj, ak, bi, bj, bk;
          shift(i, j, k, dir, ai, aj, ak);
          shift(i, j, k, 2 * dir, bi, bj, bk);
          if (usable(bi, bj, bk)) {
            d = static_cast<double>(dir) *
                (-3.0 * at(i, j, k) + 4.0 * at(ai, aj, ak) - at(bi, bj, bk)) /
                (2.0 * h);
          } else {
            d = static_cast<double>(dir) * (at(ai, aj, ak) - at(i, j, k)) / h;
          }
        }
        out[g.index(i, j, k)] = d;
      }
  return out;
}

}  // namespace detail

inline Wavepacket apply_operator(OperatorId op, const Wavepacket& psi) {
  const GridSpec& g = psi.grid;
  Wavepacket out;
  out.grid = g;
  out.samples.assign(g.size(), Complex{});
  const Complex I{0.0, 1.0};

  if (op.kind == OpKind::H || op.kind == OpKind::P) {
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
          if (g.masked(i, j, k)) continue;
          Vec3d p = g.node(i, j, k);
          double f = (op.kind == OpKind::H) ? norm3(p) : p[op.axis];
          out.samples[g.index(i, j, k)] = f * psi.samples[g.index(i, j, k)];
        }
    return out;
  }

  if (op.kind == OpKind::K) {
    auto d = detail::partial(psi, op.axis);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k) {
          if (g.masked(i, j, k)) continue;
          std::size_t s = g.index(i, j, k);
          Vec3d p = g.node(i, j, k);
          double r = norm3(p);
          out.samples[s] = I * (r * d[s] + 0.5 * p[op.axis] / r * psi.samples[s]);
        }
    return out;
  }

  // Q(a) = i k_a |k|^-2 (k . grad + 1)
  std::array<std::vector<Complex>, 3> d{detail::partial(psi, 0),
                                        detail::partial(psi, 1),
                                        detail::partial(psi, 2)};
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) {
        if (g.masked(i, j, k)) continue;
        std::size_t s = g.index(i, j, k);
        Vec3d p = g.node(i, j, k);
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        Complex radial = p[0] * d[0][s] + p[1] * d[1][s] + p[2] * d[2][s] +
                         psi.samples[s];
        out.samples[s] = I * p[op.axis] / r2 * radial;
      }
  return out;
}

inline Wavepacket commutator_apply(OperatorId a, OperatorId b, const Wavepacket& psi) {
  Wavepacket ab = apply_operator(a, apply_operator(b, psi));
  Wavepacket ba = apply_operator(b, apply_operator(a, psi));
  for (std::size_t s = 0; s < ab.samples.size(); ++s) ab.samples[s] -= ba.samples[s];
  return ab;
}

}  // namespace qloc
