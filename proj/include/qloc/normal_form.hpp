#pragma once

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "qloc/algebra.hpp"
#include "qloc/commpoly.hpp"
#include "qloc/relations.hpp"

namespace qloc {

struct RewriteBudget {
  long long steps = 10'000'000;
};

namespace detail {

/// One pending word with its scalar weight during normalization.
struct Pending {
  Mono mono;
  GaussianRational coeff;
};

inline Word word_with(const std::vector<Factor>& fs) {
  Word w;
  for (const auto& f : fs) w.push(f.gen, f.power);
  return w;
}

/// Rebuilds prefix + mid... + suffix where mid pieces are given as factor runs.
inline Word splice(const Word& src, std::size_t lo, std::size_t hi,
                   const std::vector<Factor>& mid) {
  Word w;
  for (std::size_t k = 0; k < lo; ++k) w.push(src.factors[k].gen, src.factors[k].power);
  for (const auto& f : mid) w.push(f.gen, f.power);
  for (std::size_t k = hi; k < src.factors.size(); ++k)
    w.push(src.factors[k].gen, src.factors[k].power);
  return w;
}

/// True when every power of `g` commutes with the commutator [X, g] for all
/// primitive X, so the whole power block can be jumped in one rewrite step.
/// This holds exactly for the invertible scalars of each mode (H, W): their
/// commutators with any generator are built from momentum-like letters that
/// commute with H and W again.
inline bool block_jump_ok(Gen g) {
  Family f = family_of(g);
  return f == Family::H || f == Family::W;
}

}  // namespace detail

/// Massive-mode shell canonicalization: rewrites a PBW-ordered polynomial as a
/// unique reduced fraction over the on-shell coefficient ring, independently
/// for each spin/position tail.
namespace detail {

struct ShellGroup {
  // For each term: H exponent (any sign), W exponent (>= 0 after PBW since W
  // has no inverse letter... actually W^-1 = H + m never appears as a letter;
  // negative W powers are permitted in input and handled via (H + m) powers).
  struct Entry {
    int h = 0, w = 0;
    std::array<int, 3> p{0, 0, 0};
    int m_pow = 0, t_pow = 0;
    GaussianRational coeff;
  };
  std::vector<Entry> entries;
};

inline NCPolynomial shell_canonicalize(const NCPolynomial& poly) {
  using Expo = CommPoly::Expo;
  // Group terms by the (S,Q) tail of each word.
  std::map<Word, ShellGroup> groups;
  for (const auto& [mono, coeff] : poly.terms()) {
    ShellGroup::Entry e;
    e.m_pow = mono.m_pow;
    e.t_pow = mono.t_pow;
    e.coeff = coeff;
    Word tail;
    for (const auto& f : mono.word.factors) {
      switch (family_of(f.gen)) {
        case Family::H: e.h = f.power; break;
        case Family::W: e.w = f.power; break;
        case Family::P: e.p[axis_of(f.gen)] = f.power; break;
        default: tail.push(f.gen, f.power); break;
      }
    }
    groups[tail].entries.push_back(std::move(e));
  }

  NCPolynomial out;
  for (auto& [tail, group] : groups) {
    // Common denominator H^dh * (H+m)^du * m^dm * t^dt.
    int dh = 0, du = 0, dm = 0, dt = 0;
    for (const auto& e : group.entries) {
      dh = std::max(dh, -e.h);
      du = std::max(du, e.w);
      dm = std::max(dm, -e.m_pow);
      dt = std::max(dt, -e.t_pow);
    }
    CommPoly hm;  // H + m
    hm.add(Expo{1, 0, 0, 0, 0, 0}, 1);
    hm.add(Expo{0, 0, 0, 0, 1, 0}, 1);

    CommPoly numer;
    for (const auto& e : group.entries) {
      Expo ex{};
      ex[CommPoly::VH] = e.h + dh;
      ex[CommPoly::VP1] = e.p[0];
      ex[CommPoly::VP2] = e.p[1];
      ex[CommPoly::VP3] = e.p[2];
      ex[CommPoly::VM] = e.m_pow + dm;
      ex[CommPoly::VT] = e.t_pow + dt;
      CommPoly piece = CommPoly::monomial(ex, e.coeff);
      for (int k = 0; k < du - e.w; ++k) piece = piece * hm;
      numer += piece;
    }
    numer = numer.reduce_h_squared();

    // Minimize the fraction. H and H+m are prime in the on-shell domain, so
    // greedy exact division yields the unique reduced representative.
    bool progress = true;
    while (progress) {
      progress = false;
      if (dh > 0) {
        // n / H = n1 + (n0 / shell) * H when shell | n0 (H^-1 = H / shell).
        auto [n0, n1] = numer.split_h();
        if (auto q = n0.divide_exact(CommPoly::shell(), CommPoly::VM)) {
          CommPoly h1 = CommPoly::monomial(Expo{1, 0, 0, 0, 0, 0}, 1);
          numer = n1;
          numer += *q * h1;
          --dh;
          progress = true;
          continue;
        }
      }
      if (du > 0) {
        // n / (H+m) = n (H-m) / P^2 on shell, when P^2 divides exactly.
        CommPoly hminusm;
        hminusm.add(Expo{1, 0, 0, 0, 0, 0}, 1);
        hminusm.add(Expo{0, 0, 0, 0, 1, 0}, GaussianRational(-1));
        CommPoly prod = (numer * hminusm).reduce_h_squared();
        if (auto q = prod.divide_exact(CommPoly::p_squared(), CommPoly::VP1)) {
          numer = *q;
          --du;
          progress = true;
          continue;
        }
      }
      if (dm > 0) {
        if (auto q = numer.divide_var(CommPoly::VM)) {
          numer = *q;
          --dm;
          progress = true;
          continue;
        }
      }
      if (dt > 0) {
        if (auto q = numer.divide_var(CommPoly::VT)) {
          numer = *q;
          --dt;
          progress = true;
          continue;
        }
      }
    }

    for (const auto& [ex, c] : numer.terms()) {
      Mono mono;
      mono.m_pow = ex[CommPoly::VM] - dm;
      mono.t_pow = ex[CommPoly::VT] - dt;
      Word w;
      if (ex[CommPoly::VH] - dh != 0) w.push(Gen::H, ex[CommPoly::VH] - dh);
      if (du != 0) w.push(Gen::W, du);
      if (ex[CommPoly::VP1] != 0) w.push(Gen::P1, ex[CommPoly::VP1]);
      if (ex[CommPoly::VP2] != 0) w.push(Gen::P2, ex[CommPoly::VP2]);
      if (ex[CommPoly::VP3] != 0) w.push(Gen::P3, ex[CommPoly::VP3]);
      for (const auto& f : tail.factors) w.push(f.gen, f.power);
      mono.word = std::move(w);
      out.add_term(std::move(mono), c);
    }
  }
  return out;
}

}  // namespace detail

/// Rewrites `expr` into the canonical normal form of the given mode:
/// generators sorted ascending within every word, and (massive mode) the
/// scalar part reduced to the unique on-shell fraction representative.
/// Throws UnknownGenerator for letters outside the mode's primitive set and
/// BudgetExceeded when the rewriting step budget runs out.
inline NCPolynomial normal_form(const NCPolynomial& expr, const ModeRelations& rel,
                                RewriteBudget budget = {}) {
  for (const auto& [mono, coeff] : expr.terms())
    for (const auto& f : mono.word.factors)
      if (!rel.primitive(f.gen))
        throw UnknownGenerator(std::string(gen_name(f.gen)) +
                               " is not a primitive generator of this mode");

  long long steps = budget.steps;
  NCPolynomial out;
  std::deque<detail::Pending> work;
  for (const auto& [mono, coeff] : expr.terms()) work.push_back({mono, coeff});

  while (!work.empty()) {
    detail::Pending cur = std::move(work.front());
    work.pop_front();
    const Word& w = cur.mono.word;

    std::size_t bad = w.factors.size();
    for (std::size_t k = 0; k + 1 < w.factors.size(); ++k) {
      if (order_of(w.factors[k].gen) > order_of(w.factors[k + 1].gen)) {
        bad = k;
        break;
      }
    }
    if (bad == w.factors.size()) {
      out.add_term(cur.mono, cur.coeff);
      continue;
    }

    if (--steps < 0) throw BudgetExceeded("rewrite step budget exhausted");

    const Factor X = w.factors[bad];
    const Factor Y = w.factors[bad + 1];
    const NCPolynomial& comm = rel.commutator_entry(X.gen, Y.gen);

    if (comm.terms().empty()) {
      // Commuting letters: swap whole blocks at once.
      Mono m = cur.mono;
      m.word = detail::splice(w, bad, bad + 2, {{Y.gen, Y.power}, {X.gen, X.power}});
      work.push_back({std::move(m), cur.coeff});
      continue;
    }

    if (detail::block_jump_ok(Y.gen)) {
      // [X, Y] commutes with Y, so X Y^b = Y^b X + b Y^{b-1} [X, Y].
      // Applied to one X letter: X^a Y^b = X^{a-1} Y^b X + b X^{a-1} Y^{b-1} [X,Y].
      {
        std::vector<Factor> mid;
        mid.push_back({X.gen, X.power - 1});
        mid.push_back({Y.gen, Y.power});
        mid.push_back({X.gen, 1});
        Mono m = cur.mono;
        m.word = detail::splice(w, bad, bad + 2, mid);
        work.push_back({std::move(m), cur.coeff});
      }
      for (const auto& [cm, cc] : comm.terms()) {
        std::vector<Factor> mid;
        mid.push_back({X.gen, X.power - 1});
        mid.push_back({Y.gen, Y.power - 1});
        for (const auto& f : cm.word.factors) mid.push_back(f);
        Mono m = cur.mono;
        m.m_pow += cm.m_pow;
        m.t_pow += cm.t_pow;
        m.word = detail::splice(w, bad, bad + 2, mid);
        work.push_back({std::move(m), cur.coeff * cc * GaussianRational(Y.power)});
      }
      continue;
    }

    // Generic single-letter exchange: X Y = Y X + [X, Y].
    {
      std::vector<Factor> mid;
      mid.push_back({X.gen, X.power - 1});
      mid.push_back({Y.gen, 1});
      mid.push_back({X.gen, 1});
      mid.push_back({Y.gen, Y.power - 1});
      Mono m = cur.mono;
      m.word = detail::splice(w, bad, bad + 2, mid);
      work.push_back({std::move(m), cur.coeff});
    }
    for (const auto& [cm, cc] : comm.terms()) {
      std::vector<Factor> mid;
      mid.push_back({X.gen, X.power - 1});
      for (const auto& f : cm.word.factors) mid.push_back(f);
      mid.push_back({Y.gen, Y.power - 1});
      Mono m = cur.mono;
      m.m_pow += cm.m_pow;
      m.t_pow += cm.t_pow;
      m.word = detail::splice(w, bad, bad + 2, mid);
      work.push_back({std::move(m), cur.coeff * cc});
    }
  }

  if (rel.mode() == Mode::Massive) return detail::shell_canonicalize(out);
  return out;
}

/// [A, B] = AB - BA, brought to normal form.
inline NCPolynomial commutator(const NCPolynomial& a, const NCPolynomial& b,
                               const ModeRelations& rel, RewriteBudget budget = {}) {
  return normal_form(a * b - b * a, rel, budget);
}

/// A B + B A, brought to normal form.
inline NCPolynomial anticommutator(const NCPolynomial& a, const NCPolynomial& b,
                                   const ModeRelations& rel, RewriteBudget budget = {}) {
  return normal_form(a * b + b * a, rel, budget);
}

/// Jacobi combination [A,[B,C]] + [B,[C,A]] + [C,[A,B]], normalized.
inline NCPolynomial jacobiator(const NCPolynomial& a, const NCPolynomial& b,
                               const NCPolynomial& c, const ModeRelations& rel,
                               RewriteBudget budget = {}) {
  NCPolynomial s = commutator(a, commutator(b, c, rel, budget), rel, budget);
  s = s + commutator(b, commutator(c, a, rel, budget), rel, budget);
  s = s + commutator(c, commutator(a, b, rel, budget), rel, budget);
  return normal_form(s, rel, budget);
}

}  // namespace qloc
