#pragma once

#include <optional>
#include <vector>

#include "qloc/algebra.hpp"

namespace qloc {

enum class Mode { Massive, Massless };

namespace detail {
inline NCPolynomial eps_times(int i, int j, Family f, const GaussianRational& c) {
  NCPolynomial r;
  for (int k = 0; k < 3; ++k) {
    int e = levi_civita(i, j, k);
    if (e == 0) continue;
    Word w;
    w.push(make_gen(f, k), 1);
    r.add_term({0, 0, std::move(w)}, e > 0 ? c : -c);
  }
  return r;
}
}  // namespace detail

/// Commutator/ideal relation tables for the two representation modes.
///
/// Massive mode is the Foldy realization: primitives {H, W, P, S, Q} with the
/// canonical CCR, the spin algebra, and H-power rules derived from
/// [Q_i, H] = i P_i H^-1. Massless mode is the abstract boost/rotation algebra
/// on primitives {H, P, J, K} with the mass-shell relations as an ideal.
class ModeRelations {
 public:
  static const ModeRelations& massive() {
    static const ModeRelations rel(Mode::Massive);
    return rel;
  }
  static const ModeRelations& massless() {
    static const ModeRelations rel(Mode::Massless);
    return rel;
  }

  Mode mode() const { return mode_; }

  bool primitive(Gen g) const {
    switch (family_of(g)) {
      case Family::H:
      case Family::P: return true;
      case Family::W:
      case Family::S:
      case Family::Q: return mode_ == Mode::Massive;
      case Family::J:
      case Family::K: return mode_ == Mode::Massless;
    }
    return false;
  }

  /// [X, Y] for single generators; antisymmetric by construction.
  const NCPolynomial& commutator_entry(Gen x, Gen y) const {
    return table_[order_of(x)][order_of(y)];
  }

  bool commute(Gen x, Gen y) const { return commutator_entry(x, y).is_zero(); }

  /// Generators of the mass-shell ideal.
  /// Massive: {H^2 - P^2 - m^2, W(H+m) - 1, (H+m)W - 1}.
  /// Massless: {H^2 - P^2, H J_i + (PxK)_i - P_i H^-1 (P.J)} with the helicity
  /// eliminated via Sigma = H^-1 (P.J).
  const std::vector<NCPolynomial>& ideal_generators() const { return ideal_; }

 private:
  explicit ModeRelations(Mode mode) : mode_(mode) {
    for (int a = 0; a < kGenCount; ++a)
      for (int b = 0; b < kGenCount; ++b)
        table_[a][b] = base_commutator(static_cast<Gen>(a), static_cast<Gen>(b));
    build_ideal();
  }

  NCPolynomial base_commutator(Gen x, Gen y) const {
    const GaussianRational I = GaussianRational::i();
    Family fx = family_of(x), fy = family_of(y);
    int i = axis_of(x), j = axis_of(y);
    if (fx == fy) {
      if (fx == Family::S) return detail::eps_times(i, j, Family::S, I);
      if (fx == Family::J) return detail::eps_times(i, j, Family::J, I);
      if (fx == Family::K) return detail::eps_times(i, j, Family::J, -I);
      return {};
    }
    // Order pairs so fx is the later family; flip sign otherwise.
    if (order_of(x) < order_of(y)) {
      return -base_commutator(y, x);
    }
    switch (fx) {
      case Family::Q:
        if (fy == Family::P && i == j) return NCPolynomial::scalar(I);
        if (fy == Family::H) {  // [Q_i, H] = i P_i H^-1
          Word w;
          w.push(Gen::H, -1);
          w.push(make_gen(Family::P, i), 1);
          NCPolynomial r;
          r.add_term({0, 0, std::move(w)}, I);
          return r;
        }
        if (fy == Family::W) {  // [Q_i, W] = -i H^-1 W^2 P_i
          Word w;
          w.push(Gen::H, -1);
          w.push(Gen::W, 2);
          w.push(make_gen(Family::P, i), 1);
          NCPolynomial r;
          r.add_term({0, 0, std::move(w)}, -I);
          return r;
        }
        return {};
      case Family::J:
        if (fy == Family::P) return detail::eps_times(i, j, Family::P, I);
        return {};  // [J, H] = 0
      case Family::K:
        if (fy == Family::J) return detail::eps_times(i, j, Family::K, I);
        if (fy == Family::P) {  // [K_i, P_j] = i delta_ij H
          if (i != j) return {};
          return NCPolynomial::gen(Gen::H).scaled(I);
        }
        if (fy == Family::H) {  // [K_i, H] = i P_i
          return NCPolynomial::gen(make_gen(Family::P, i)).scaled(I);
        }
        return {};
      default:
        return {};
    }
  }

  void build_ideal() {
    auto P = [](int i) { return NCPolynomial::gen(make_gen(Family::P, i)); };
    NCPolynomial p_sq;
    for (int i = 0; i < 3; ++i) p_sq += P(i) * P(i);
    NCPolynomial h_sq = NCPolynomial::gen(Gen::H, 2);
    if (mode_ == Mode::Massive) {
      ideal_.push_back(h_sq - p_sq -
                       NCPolynomial::scalar(GaussianRational(1), /*m_pow=*/2));
      NCPolynomial h_plus_m =
          NCPolynomial::gen(Gen::H) + NCPolynomial::scalar(GaussianRational(1), 1);
      NCPolynomial w = NCPolynomial::gen(Gen::W);
      ideal_.push_back(w * h_plus_m - NCPolynomial::one());
      ideal_.push_back(h_plus_m * w - NCPolynomial::one());
    } else {
      ideal_.push_back(h_sq - p_sq);
      // H J_i + (P x K)_i - P_i H^-1 (P.J)
      NCPolynomial p_dot_j;
      for (int a = 0; a < 3; ++a)
        p_dot_j += P(a) * NCPolynomial::gen(make_gen(Family::J, a));
      for (int i = 0; i < 3; ++i) {
        NCPolynomial g =
            NCPolynomial::gen(Gen::H) * NCPolynomial::gen(make_gen(Family::J, i));
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            int e = levi_civita(i, a, b);
            if (e == 0) continue;
            NCPolynomial cross = P(a) * NCPolynomial::gen(make_gen(Family::K, b));
            g += e > 0 ? cross : -cross;
          }
        g -= P(i) * NCPolynomial::gen(Gen::H, -1) * p_dot_j;
        ideal_.push_back(std::move(g));
      }
    }
  }

  Mode mode_;
  NCPolynomial table_[kGenCount][kGenCount];
  std::vector<NCPolynomial> ideal_;
};

}  // namespace qloc
