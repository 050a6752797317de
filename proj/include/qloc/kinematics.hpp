#pragma once

#include <functional>
#include <limits>

#include "qloc/grid.hpp"

namespace qloc {

/// Classical massless velocity u = dH/dp = phat for H = |p|.
inline Vec3d classical_velocity(const Vec3d& p) {
  double r = norm3(p);
  if (r < 1e-12) throw SingularMomentum("velocity undefined at p = 0");
  return {p[0] / r, p[1] / r, p[2] / r};
}

// ---------------------------------------------------------------------------
// Boosted-frame translation experiment.
//
// A particle moves with velocity u in frame S; boost with v = u1 along axis 1
// so the axis-1 motion is at rest in S'. Transform the arrival event with the
// exact Lorentz map, propagate in S', and map the transverse displacement
// back with the 1/gamma^2 aberration factor. The mismatch against the rigid
// translation u_i t is the observable noncommutative shift
//   dQ_i = u_i t (1/gamma^2 - 1) = -u1^2 u_i t   (transverse i),
// and dQ_i / epsilon with epsilon = u1 t estimates the bracket -u1 u_i.
// ---------------------------------------------------------------------------

struct TranslationExperiment {
  Vec3d u{0, 0, 0};
  double t = 0;
  double gamma = 0;
  double epsilon = 0;        // translation parameter u1 t
  double event_prime_t = 0;  // arrival event in S'
  Vec3d event_prime_x{0, 0, 0};
  Vec3d delta_q{0, 0, 0};
  Vec3d bracket_estimate{0, 0, 0};  // delta_q / epsilon
};

inline TranslationExperiment dynamic_translation_experiment(const Vec3d& u, double t) {
  double speed = norm3(u);
  if (speed > 1.0 + 1e-12) throw InvalidBoost("superluminal velocity");
  TranslationExperiment ex;
  ex.u = u;
  ex.t = t;

  double v = u[0];  // boost velocity along axis 1
  if (std::abs(v) >= 1.0) {
    // Light moving exactly along the boost axis: no transverse motion and no
    // finite rest-frame; the shift vanishes identically.
    if (speed < 1.0 - 1e-12 || std::abs(u[1]) > 1e-12 || std::abs(u[2]) > 1e-12)
      throw InvalidBoost("no frame moves at |v| >= 1 alongside a subluminal particle");
    ex.gamma = std::numeric_limits<double>::infinity();
    ex.epsilon = v * t;
    return ex;
  }

  ex.gamma = 1.0 / std::sqrt(1.0 - v * v);
  ex.epsilon = v * t;

  // Exact event transform of the arrival event (t, u t).
  Vec3d x{u[0] * t, u[1] * t, u[2] * t};
  ex.event_prime_t = ex.gamma * (t - v * x[0]);
  ex.event_prime_x = {ex.gamma * (x[0] - v * t), x[1], x[2]};

  // Velocity aberration, propagation in S', and the 1/gamma^2 map back.
  for (int i = 1; i < 3; ++i) {
    double u_prime = u[i] / (ex.gamma * (1.0 - v * u[0]));
    double disp_prime = u_prime * ex.event_prime_t;
    double mapped = disp_prime / (ex.gamma * ex.gamma);
    ex.delta_q[i] = mapped - u[i] * t;
    if (std::abs(ex.epsilon) > 1e-300) ex.bracket_estimate[i] = ex.delta_q[i] / ex.epsilon;
  }
  return ex;
}

// ---------------------------------------------------------------------------
// Projected Poisson bracket
//   {f, g} = sum_ij Pi_ij (df/dq_i dg/dp_j - dg/dq_i df/dp_j),
//   Pi = phat phat^T,
// the classical shadow of position components that commute only along phat.
// ---------------------------------------------------------------------------

struct Observable {
  std::function<double(const Vec3d& q, const Vec3d& p)> value;
  // Optional analytic gradient: fills dq = df/dq, dp = df/dp.
  std::function<void(const Vec3d& q, const Vec3d& p, Vec3d& dq, Vec3d& dp)> grad;
};

namespace detail {

inline void fd_gradient(const Observable& f, const Vec3d& q, const Vec3d& p,
                        Vec3d& dq, Vec3d& dp, double step) {
  for (int a = 0; a < 3; ++a) {
    Vec3d qp = q, qm = q;
    qp[a] += step;
    qm[a] -= step;
    dq[a] = (f.value(qp, p) - f.value(qm, p)) / (2.0 * step);
    Vec3d pp = p, pm = p;
    pp[a] += step;
    pm[a] -= step;
    dp[a] = (f.value(q, pp) - f.value(q, pm)) / (2.0 * step);
  }
}

inline void gradient(const Observable& f, const Vec3d& q, const Vec3d& p, Vec3d& dq,
                     Vec3d& dp, double step) {
  if (f.grad) {
    f.grad(q, p, dq, dp);
  } else {
    fd_gradient(f, q, p, dq, dp, step);
  }
}

}  // namespace detail

inline double modified_bracket(const Observable& f, const Observable& g,
                               const Vec3d& q, const Vec3d& p, double fd_step = 1e-6) {
  double r = norm3(p);
  if (r < 1e-12) throw SingularMomentum("bracket projector undefined at p = 0");
  Vec3d ph{p[0] / r, p[1] / r, p[2] / r};
  Vec3d fq{}, fp{}, gq{}, gp{};
  detail::gradient(f, q, p, fq, fp, fd_step);
  detail::gradient(g, q, p, gq, gp, fd_step);
  double acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      acc += ph[i] * ph[j] * (fq[i] * gp[j] - gq[i] * fp[j]);
  return acc;
}

/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}} with the inner brackets differentiated
/// by nested central differences.
inline double jacobiator(const Observable& f, const Observable& g, const Observable& h,
                         const Vec3d& q, const Vec3d& p, double outer_step = 1e-5) {
  auto bracket_fn = [&](const Observable& a, const Observable& b) {
    Observable o;
    o.value = [&a, &b](const Vec3d& qq, const Vec3d& pp) {
      return modified_bracket(a, b, qq, pp);
    };
    return o;
  };
  Observable gh = bracket_fn(g, h), hf = bracket_fn(h, f), fg = bracket_fn(f, g);
  return modified_bracket(f, gh, q, p, outer_step) +
         modified_bracket(g, hf, q, p, outer_step) +
         modified_bracket(h, fg, q, p, outer_step);
}

// Coordinate observables with analytic gradients.
inline Observable coordinate_q(int i) {
  Observable o;
  o.value = [i](const Vec3d& q, const Vec3d&) { return q[i]; };
  o.grad = [i](const Vec3d&, const Vec3d&, Vec3d& dq, Vec3d& dp) {
    dq = {0, 0, 0};
    dp = {0, 0, 0};
    dq[i] = 1.0;
  };
  return o;
}
inline Observable coordinate_p(int i) {
  Observable o;
  o.value = [i](const Vec3d&, const Vec3d& p) { return p[i]; };
  o.grad = [i](const Vec3d&, const Vec3d&, Vec3d& dq, Vec3d& dp) {
    dq = {0, 0, 0};
    dp = {0, 0, 0};
    dp[i] = 1.0;
  };
  return o;
}
inline Observable hamiltonian() {
  Observable o;
  o.value = [](const Vec3d&, const Vec3d& p) { return norm3(p); };
  o.grad = [](const Vec3d&, const Vec3d& p, Vec3d& dq, Vec3d& dp) {
    double r = norm3(p);
    if (r < 1e-12) throw SingularMomentum("gradient of |p| undefined at p = 0");
    dq = {0, 0, 0};
    dp = {p[0] / r, p[1] / r, p[2] / r};
  };
  return o;
}

}  // namespace qloc
