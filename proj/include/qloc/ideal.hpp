#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qloc/normal_form.hpp"

namespace qloc {

enum class IdealStatus { Member, NotMember, Inconclusive };

struct IdealReduceResult {
  NCPolynomial residual;
  IdealStatus status = IdealStatus::Inconclusive;
};

struct IdealOptions {
  // Candidate left/right cofactors are momentum monomials H^a P^alpha with
  // a in [-h_neg, h_pos] and bounded total degree.
  int u_h_neg = 4;
  int u_h_pos = 2;
  int v_max_degree = 2;
  int v_h_neg = 2;
  // NotMember is only asserted when the cutoff exceeds the expression degree
  // by at least this margin; otherwise the truncation verdict is Inconclusive.
  int confidence_margin = 4;
  RewriteBudget budget{};
};

namespace detail {

inline int h_exponent(const Word& w) {
  for (const auto& f : w.factors)
    if (f.gen == Gen::H) return f.power;
  return 0;
}

/// Rewrites every nonnegative H power down to {0,1} by the central relation
/// H^2 ~ P^2 (valid modulo the massless ideal; H^2 - P^2 commutes with all
/// generators, so the substitution may be done in place at the word head).
inline NCPolynomial central_reduce(const NCPolynomial& p) {
  NCPolynomial out;
  for (const auto& [mono, coeff] : p.terms()) {
    int e = h_exponent(mono.word);
    if (e < 2) {
      out.add_term(mono, coeff);
      continue;
    }
    Word rest;
    for (const auto& f : mono.word.factors)
      if (f.gen != Gen::H) rest.push(f.gen, f.power);
    NCPolynomial piece;
    {
      Word w;
      if (e % 2) w.push(Gen::H, 1);
      piece.add_term({mono.m_pow, mono.t_pow, std::move(w)}, coeff);
    }
    NCPolynomial p_sq;
    for (int a = 0; a < 3; ++a) {
      Word w;
      w.push(make_gen(Family::P, a), 2);
      p_sq.add_term({0, 0, std::move(w)}, 1);
    }
    for (int s = 0; s < e / 2; ++s) piece = piece * p_sq;
    NCPolynomial tail;
    tail.add_term({0, 0, rest}, 1);
    piece = piece * tail;
    // Only H/P blocks get reordered here, so this normalization is cheap and
    // introduces no new commutator remainders.
    out += normal_form(piece, ModeRelations::massless());
  }
  return out;
}

/// Left-multiplies by the smallest even H power making every exponent
/// nonnegative, then applies central_reduce. The result represents the same
/// residue class up to the invertible factor H^{2N}.
inline NCPolynomial clear_h(const NCPolynomial& p) {
  int min_e = 0;
  for (const auto& [mono, coeff] : p.terms()) min_e = std::min(min_e, h_exponent(mono.word));
  int shift = 0;
  while (min_e + shift < 0) shift += 2;
  NCPolynomial lifted;
  for (const auto& [mono, coeff] : p.terms()) {
    Word w;
    int e = h_exponent(mono.word) + shift;
    if (e != 0) w.push(Gen::H, e);
    for (const auto& f : mono.word.factors)
      if (f.gen != Gen::H) w.push(f.gen, f.power);
    lifted.add_term({mono.m_pow, mono.t_pow, std::move(w)}, coeff);
  }
  return central_reduce(lifted);
}

inline int grade_of(const NCPolynomial& p) {
  // All callers pass polynomials homogeneous in the signed H/P grading.
  return p.terms().begin()->first.word.grade();
}

/// Momentum monomials H^a P1^x P2^y P3^z with |a|+x+y+z <= max_degree.
inline std::vector<Word> momentum_monomials(int max_degree, int h_neg, int h_pos) {
  std::vector<Word> out;
  for (int a = -h_neg; a <= h_pos; ++a) {
    int rem = max_degree - std::abs(a);
    if (rem < 0) continue;
    for (int x = 0; x <= rem; ++x)
      for (int y = 0; y <= rem - x; ++y)
        for (int z = 0; z <= rem - x - y; ++z) {
          Word w;
          if (a) w.push(Gen::H, a);
          if (x) w.push(Gen::P1, x);
          if (y) w.push(Gen::P2, y);
          if (z) w.push(Gen::P3, z);
          out.push_back(std::move(w));
        }
  }
  return out;
}

using SparseRow = std::map<Mono, GaussianRational>;

inline SparseRow to_row(const NCPolynomial& p) {
  SparseRow r;
  for (const auto& [mono, c] : p.terms()) r.emplace(mono, c);
  return r;
}

/// Incremental exact row-echelon basis keyed by leading (smallest) monomial.
class LinearSpan {
 public:
  SparseRow reduce(SparseRow r) const {
    auto it = r.begin();
    while (it != r.end()) {
      auto b = basis_.find(it->first);
      if (b == basis_.end()) {
        ++it;
        continue;
      }
      GaussianRational c = it->second;
      Mono key = it->first;
      for (const auto& [m, v] : b->second) {
        auto slot = r.find(m);
        GaussianRational nv = (slot == r.end() ? GaussianRational() : slot->second) - c * v;
        if (slot != r.end()) r.erase(slot);
        if (!nv.is_zero()) r.emplace(m, std::move(nv));
      }
      it = r.lower_bound(key);
    }
    return r;
  }

  void insert(SparseRow r) {
    r = reduce(std::move(r));
    if (r.empty()) return;
    GaussianRational lead = r.begin()->second;
    for (auto& [m, v] : r) v = v / lead;
    Mono key = r.begin()->first;
    basis_.emplace(std::move(key), std::move(r));
  }

 private:
  std::map<Mono, SparseRow> basis_;
};

/// Membership test for one (grade, t-power, m-power)-homogeneous component.
inline NCPolynomial reduce_component(const NCPolynomial& component,
                                     const ModeRelations& rel, int degree_cutoff,
                                     const IdealOptions& opt) {
  NCPolynomial target = clear_h(component);
  if (target.is_zero()) return target;
  const int tgrade = grade_of(target);

  LinearSpan span;
  NCPolynomial p_sq;
  for (int a = 0; a < 3; ++a) {
    Word w;
    w.push(make_gen(Family::P, a), 2);
    p_sq.add_term({0, 0, std::move(w)}, 1);
  }

  for (std::size_t gi = 1; gi < rel.ideal_generators().size(); ++gi) {
    const NCPolynomial& g = rel.ideal_generators()[gi];
    int gdeg = g.degree();
    int budget_v = std::min(opt.v_max_degree, degree_cutoff - gdeg);
    if (budget_v < 0) continue;
    for (const Word& v : momentum_monomials(budget_v, opt.v_h_neg, 0)) {
      int budget_u = degree_cutoff - gdeg - v.degree();
      if (budget_u < 0) continue;
      NCPolynomial right;
      right.add_term({0, 0, v}, 1);
      for (const Word& u : momentum_monomials(budget_u, opt.u_h_neg, opt.u_h_pos)) {
        // Signed-grade prefilter: a row can only match the target grade if it
        // sits at or below it with the same parity (H^2 lifts raise by 2).
        int rough = u.grade() + 1 + v.grade();
        if (rough > tgrade || ((tgrade - rough) % 2 != 0)) continue;
        NCPolynomial left;
        left.add_term({0, 0, u}, 1);
        NCPolynomial row = clear_h(normal_form(left * g * right, rel, opt.budget));
        if (row.is_zero()) continue;
        int rg = grade_of(row);
        if (rg > tgrade || ((tgrade - rg) % 2) != 0) continue;
        while (rg < tgrade) {
          row = normal_form(p_sq * row, rel, opt.budget);
          rg += 2;
        }
        span.insert(to_row(row));
      }
    }
  }

  SparseRow reduced = span.reduce(to_row(target));
  NCPolynomial residual;
  for (auto& [m, c] : reduced) residual.add_term(m, std::move(c));
  return residual;
}

}  // namespace detail

/// Decides membership of `expr` in the mode's mass-shell ideal, restricted to
/// combinations of u·g·v with total degree <= degree_cutoff. Massive mode is
/// a complete decision through the shell canonical form; massless mode uses
/// exact bounded-degree linear algebra and may return Inconclusive.
inline IdealReduceResult ideal_reduce(const NCPolynomial& expr, const ModeRelations& rel,
                                      int degree_cutoff, IdealOptions opt = {}) {
  NCPolynomial nf = normal_form(expr, rel, opt.budget);
  if (degree_cutoff < nf.degree())
    throw CutoffTooSmall("degree cutoff " + std::to_string(degree_cutoff) +
                         " is below the expression degree " +
                         std::to_string(nf.degree()));

  if (rel.mode() == Mode::Massive) {
    // The massive canonical form already reduces modulo the shell relations.
    return {nf, nf.is_zero() ? IdealStatus::Member : IdealStatus::NotMember};
  }

  // Split into (grade, m, t)-homogeneous components; the ideal generators are
  // homogeneous in the signed H/P grading and free of m and t, so membership
  // must hold componentwise.
  std::map<std::tuple<int, int, int>, NCPolynomial> components;
  for (const auto& [mono, coeff] : nf.terms())
    components[{mono.word.grade(), mono.m_pow, mono.t_pow}].add_term(mono, coeff);

  NCPolynomial residual;
  for (auto& [key, comp] : components) {
    const auto [grade, m_pow, t_pow] = key;
    NCPolynomial stripped;
    for (const auto& [mono, coeff] : comp.terms())
      stripped.add_term({0, 0, mono.word}, coeff);
    NCPolynomial part = detail::reduce_component(stripped, rel, degree_cutoff, opt);
    for (const auto& [mono, coeff] : part.terms())
      residual.add_term({m_pow, t_pow, mono.word}, coeff);
  }

  if (residual.is_zero()) return {residual, IdealStatus::Member};
  IdealStatus status = degree_cutoff >= nf.degree() + opt.confidence_margin
                           ? IdealStatus::NotMember
                           : IdealStatus::Inconclusive;
  return {std::move(residual), status};
}

}  // namespace qloc
