#pragma once

#include <array>
#include <map>
#include <optional>

#include "qloc/rational.hpp"

namespace qloc {

/// Small dense-exponent commutative polynomial over the Gaussian rationals in
/// the variables [H, P1, P2, P3, m, t]. Used only inside the massive-mode
/// shell canonicalization, where the coefficient ring
///   Q(i)[m,t,P][H, H^-1, (H+m)^-1] / (H^2 - P^2 - m^2)
/// has to be brought to a unique reduced-fraction representative.
class CommPoly {
 public:
  static constexpr int kVars = 6;
  enum Var { VH = 0, VP1 = 1, VP2 = 2, VP3 = 3, VM = 4, VT = 5 };
  using Expo = std::array<int, kVars>;

  CommPoly() = default;

  static CommPoly monomial(Expo e, GaussianRational c) {
    CommPoly p;
    p.add(e, std::move(c));
    return p;
  }
  static CommPoly constant(GaussianRational c) { return monomial(Expo{}, std::move(c)); }

  /// P1^2 + P2^2 + P3^2
  static const CommPoly& p_squared() {
    static const CommPoly p = [] {
      CommPoly q;
      q.add({0, 2, 0, 0, 0, 0}, 1);
      q.add({0, 0, 2, 0, 0, 0}, 1);
      q.add({0, 0, 0, 2, 0, 0}, 1);
      return q;
    }();
    return p;
  }
  /// P^2 + m^2 (the on-shell value of H^2)
  static const CommPoly& shell() {
    static const CommPoly p = [] {
      CommPoly q = p_squared();
      q.add({0, 0, 0, 0, 2, 0}, 1);
      return q;
    }();
    return p;
  }

  const std::map<Expo, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(Expo e, GaussianRational c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  CommPoly& operator+=(const CommPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  CommPoly& operator-=(const CommPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend CommPoly operator*(const CommPoly& a, const CommPoly& b) {
    CommPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Expo e;
        for (int v = 0; v < kVars; ++v) e[v] = ea[v] + eb[v];
        r.add(e, ca * cb);
      }
    return r;
  }

  /// Substitutes H^2 -> P^2 + m^2 until every H exponent is 0 or 1.
  CommPoly reduce_h_squared() const {
    CommPoly r;
    for (const auto& [e, c] : terms_) {
      if (e[VH] < 2) {
        r.add(e, c);
        continue;
      }
      int k = e[VH] / 2;
      Expo base = e;
      base[VH] = e[VH] % 2;
      CommPoly piece = monomial(base, c);
      for (int s = 0; s < k; ++s) piece = piece * shell();
      r += piece;
    }
    return r;
  }

  /// Exact division by a divisor of the form v^2 + R with R free of v.
  /// Returns nothing when the division leaves a remainder.
  std::optional<CommPoly> divide_exact(const CommPoly& divisor, Var v) const {
    CommPoly rem = *this;
    CommPoly quot;
    while (true) {
      // Highest v-degree term still >= 2.
      const std::pair<const Expo, GaussianRational>* top = nullptr;
      for (const auto& term : rem.terms_)
        if (term.first[v] >= 2 && (!top || term.first[v] > top->first[v])) top = &term;
      if (!top) break;
      Expo qe = top->first;
      qe[v] -= 2;
      CommPoly qt = monomial(qe, top->second);
      quot += qt;
      rem -= qt * divisor;
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot;
  }

  /// Exact division by a single variable; fails if any term lacks it.
  std::optional<CommPoly> divide_var(Var v) const {
    CommPoly q;
    for (const auto& [e, c] : terms_) {
      if (e[v] < 1) return std::nullopt;
      Expo r = e;
      r[v] -= 1;
      q.add(r, c);
    }
    return q;
  }

  /// Splits into (v_H == 0 part, v_H == 1 part); requires H-degree <= 1.
  std::pair<CommPoly, CommPoly> split_h() const {
    CommPoly n0, n1;
    for (const auto& [e, c] : terms_) {
      Expo r = e;
      r[VH] = 0;
      (e[VH] == 0 ? n0 : n1).add(r, c);
    }
    return {n0, n1};
  }

 private:
  std::map<Expo, GaussianRational> terms_;
};

}  // namespace qloc
