#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qloc/algebra.hpp"
#include "qloc/relations.hpp"

namespace qloc {

/// A scalar (1 component) or vector (3 components) operator expression,
/// transcribed exactly as printed, including symmetrized orderings; bodies
/// are not normalized.
struct NamedExpression {
  std::string name;
  Mode mode = Mode::Massive;
  std::vector<NCPolynomial> components;

  const NCPolynomial& scalar() const { return components.at(0); }
  const NCPolynomial& operator[](int i) const { return components.at(i); }
};

namespace detail {

using Vec3 = std::array<NCPolynomial, 3>;

inline NCPolynomial g(Gen x, int p = 1) { return NCPolynomial::gen(x, p); }
inline Vec3 vec(Family f) {
  return {g(make_gen(f, 0)), g(make_gen(f, 1)), g(make_gen(f, 2))};
}
inline NCPolynomial dot(const Vec3& a, const Vec3& b) {
  NCPolynomial r;
  for (int i = 0; i < 3; ++i) r += a[i] * b[i];
  return r;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e = levi_civita(i, j, k);
        if (e == 0) continue;
        NCPolynomial t = a[j] * b[k];
        r[i] += e > 0 ? t : -t;
      }
  return r;
}
inline Vec3 scale(const Vec3& a, const NCPolynomial& s) {
  return {s * a[0], s * a[1], s * a[2]};
}

inline Vec3 foldy_j() {
  Vec3 r = cross(vec(Family::Q), vec(Family::P));
  for (int i = 0; i < 3; ++i) r[i] += g(make_gen(Family::S, i));
  return r;
}

inline Vec3 foldy_k() {
  const GaussianRational half(Rational(1, 2));
  Vec3 q = vec(Family::Q);
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = (g(Gen::H) * q[i] + q[i] * g(Gen::H)).scaled(half);
  // The spin term uses (H+m)^-1 = W, Foldy's operator; see README for why
  // the narrative H^-1 variant cannot satisfy the Casimir identity.
  Vec3 ps = cross(vec(Family::P), vec(Family::S));
  for (int i = 0; i < 3; ++i) {
    r[i] += g(Gen::W) * ps[i];
    r[i] -= NCPolynomial::scalar(GaussianRational(1), /*m_pow=*/0, /*t_pow=*/1) *
            g(make_gen(Family::P, i));
  }
  return r;
}

/// H J + P x K, the vector the helicity relation constrains.
inline Vec3 hj_plus_pxk() {
  Vec3 r = cross(vec(Family::P), vec(Family::K));
  for (int i = 0; i < 3; ++i) r[i] = g(Gen::H) * g(make_gen(Family::J, i)) + r[i];
  return r;
}

inline Vec3 q_pnw() {
  const GaussianRational half_i(Rational(0), Rational(1, 2));
  Vec3 r;
  NCPolynomial t_sym = NCPolynomial::scalar(GaussianRational(1), 0, 1);
  NCPolynomial m_inv = NCPolynomial::scalar(GaussianRational(1), -1, 0);
  Vec3 tail = cross(vec(Family::P), hj_plus_pxk());
  for (int i = 0; i < 3; ++i) {
    NCPolynomial inner = g(make_gen(Family::K, i)) + t_sym * g(make_gen(Family::P, i)) -
                         g(Gen::H, -1).scaled(half_i) * g(make_gen(Family::P, i));
    r[i] = g(Gen::H, -1) * inner - m_inv * g(Gen::H, -1) * g(Gen::W) * tail[i];
  }
  return r;
}

inline Vec3 q_massless() {
  const GaussianRational half(Rational(1, 2));
  NCPolynomial p_dot_k = dot(vec(Family::P), vec(Family::K));
  NCPolynomial k_dot_p = dot(vec(Family::K), vec(Family::P));
  NCPolynomial t_sym = NCPolynomial::scalar(GaussianRational(1), 0, 1);
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    NCPolynomial pi = g(make_gen(Family::P, i));
    r[i] = (g(Gen::H, -3) * pi * p_dot_k + k_dot_p * pi * g(Gen::H, -3)).scaled(half) +
           t_sym * g(Gen::H, -1) * pi;
  }
  return r;
}

inline Vec3 spin_s() {
  Vec3 r = vec(Family::J);
  Vec3 l = cross(vec(Family::Q), vec(Family::P));
  for (int i = 0; i < 3; ++i) r[i] -= l[i];
  return r;
}

}  // namespace detail

/// The expression library: C1, C2, FoldyJ, FoldyK, Q_PNW, Q_MASSLESS, SPIN_S.
inline NamedExpression build_named(const std::string& name) {
  using detail::vec;
  if (name == "C1") {
    NCPolynomial c = NCPolynomial::gen(Gen::H, 2) - detail::dot(vec(Family::P), vec(Family::P));
    return {name, Mode::Massive, {std::move(c)}};
  }
  if (name == "C2") {
    NCPolynomial pj = detail::dot(vec(Family::P), vec(Family::J));
    detail::Vec3 w = detail::hj_plus_pxk();
    NCPolynomial c = pj * pj - detail::dot(w, w);
    return {name, Mode::Massive, {std::move(c)}};
  }
  auto wrap = [&](detail::Vec3 v, Mode mode) {
    return NamedExpression{name, mode, {std::move(v[0]), std::move(v[1]), std::move(v[2])}};
  };
  if (name == "FoldyJ") return wrap(detail::foldy_j(), Mode::Massive);
  if (name == "FoldyK") return wrap(detail::foldy_k(), Mode::Massive);
  if (name == "Q_PNW") return wrap(detail::q_pnw(), Mode::Massive);
  if (name == "Q_MASSLESS") return wrap(detail::q_massless(), Mode::Massless);
  if (name == "SPIN_S") return wrap(detail::spin_s(), Mode::Massive);
  throw UnknownName("no expression named '" + name + "' in the library");
}

/// Replaces whole generator families by supplied expressions (used to turn
/// J/K occurrences into their position/spin realizations). Powers of replaced
/// generators must be positive.
inline NCPolynomial substitute(const NCPolynomial& expr,
                               const std::map<Gen, NCPolynomial>& images) {
  NCPolynomial out;
  for (const auto& [mono, coeff] : expr.terms()) {
    NCPolynomial prod = NCPolynomial::scalar(coeff, mono.m_pow, mono.t_pow);
    for (const auto& f : mono.word.factors) {
      auto it = images.find(f.gen);
      if (it == images.end()) {
        prod = prod * NCPolynomial::gen(f.gen, f.power);
        continue;
      }
      if (f.power < 0)
        throw UnknownGenerator("cannot substitute a negative power of " +
                               std::string(gen_name(f.gen)));
      for (int k = 0; k < f.power; ++k) prod = prod * it->second;
    }
    out += prod;
  }
  return out;
}

/// J/K -> Foldy realization substitution map for massive-mode checks.
inline std::map<Gen, NCPolynomial> foldy_substitution() {
  std::map<Gen, NCPolynomial> map;
  NamedExpression j = build_named("FoldyJ");
  NamedExpression k = build_named("FoldyK");
  for (int i = 0; i < 3; ++i) {
    map.emplace(make_gen(Family::J, i), j[i]);
    map.emplace(make_gen(Family::K, i), k[i]);
  }
  return map;
}

}  // namespace qloc
