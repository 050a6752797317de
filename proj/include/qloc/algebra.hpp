#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qloc/rational.hpp"

namespace qloc {

// Operator generators in canonical order. W stands for (H+m)^-1.
enum class Gen : std::uint8_t {
  H, W, P1, P2, P3, S1, S2, S3, Q1, Q2, Q3, J1, J2, J3, K1, K2, K3
};

constexpr int kGenCount = 17;

inline int order_of(Gen g) { return static_cast<int>(g); }

// Vector families carry a 0-based axis; H and W report axis -1.
inline int axis_of(Gen g) {
  int o = order_of(g);
  return o < 2 ? -1 : (o - 2) % 3;
}

enum class Family : std::uint8_t { H, W, P, S, Q, J, K };

inline Family family_of(Gen g) {
  int o = order_of(g);
  if (o == 0) return Family::H;
  if (o == 1) return Family::W;
  return static_cast<Family>(2 + (o - 2) / 3);
}

inline Gen make_gen(Family f, int axis) {
  if (f == Family::H) return Gen::H;
  if (f == Family::W) return Gen::W;
  return static_cast<Gen>(2 + 3 * (static_cast<int>(f) - 2) + axis);
}

inline const char* gen_name(Gen g) {
  static constexpr const char* names[kGenCount] = {
      "H",  "W",  "P1", "P2", "P3", "S1", "S2", "S3", "Q1",
      "Q2", "Q3", "J1", "J2", "J3", "K1", "K2", "K3"};
  return names[order_of(g)];
}

inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

struct Factor {
  Gen gen;
  int power;  // only H admits negative powers; never zero

  friend bool operator==(const Factor& a, const Factor& b) = default;
  friend auto operator<=>(const Factor& a, const Factor& b) = default;
};

/// An ordered product of generator powers. In normal form the factors are
/// sorted by the canonical generator order with distinct adjacent generators.
struct Word {
  std::vector<Factor> factors;

  bool empty() const { return factors.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& f : factors) d += std::abs(f.power);
    return d;
  }

  // Signed grade: H and P count 1 per power (H with sign), J and K count 0,
  // used to slice ideal-membership systems into homogeneous components.
  int grade() const {
    int g = 0;
    for (const auto& f : factors) {
      Family fam = family_of(f.gen);
      if (fam == Family::H || fam == Family::P) g += f.power;
      if (fam == Family::W) g -= f.power;
    }
    return g;
  }

  void push(Gen g, int power) {
    if (power == 0) return;
    if (!factors.empty() && factors.back().gen == g) {
      factors.back().power += power;
      if (factors.back().power == 0) factors.pop_back();
    } else {
      factors.push_back({g, power});
    }
  }

  Word reversed() const {
    Word r;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
      r.push(it->gen, it->power);
    return r;
  }

  friend bool operator==(const Word& a, const Word& b) = default;
  friend auto operator<=>(const Word& a, const Word& b) = default;
};

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  for (const auto& f : b.factors) r.push(f.gen, f.power);
  return r;
}

/// Term key: a word together with powers of the commuting symbols m and t.
struct Mono {
  int m_pow = 0;
  int t_pow = 0;
  Word word;

  friend bool operator==(const Mono& a, const Mono& b) = default;
  friend auto operator<=>(const Mono& a, const Mono& b) = default;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownGenerator : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownName : std::runtime_error {
  explicit UnknownName(const std::string& n)
      : std::runtime_error("unknown expression name: " + n) {}
};
struct CutoffTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact sum of scalar-weighted ordered words. Stored terms never carry a
/// zero coefficient; structural equality of normal forms is map equality.
class NCPolynomial {
 public:
  using TermMap = std::map<Mono, GaussianRational>;

  NCPolynomial() = default;

  static NCPolynomial zero() { return {}; }

  static NCPolynomial scalar(GaussianRational c, int m_pow = 0, int t_pow = 0) {
    NCPolynomial p;
    p.add_term({m_pow, t_pow, Word{}}, std::move(c));
    return p;
  }

  static NCPolynomial one() { return scalar(GaussianRational(1)); }
  static NCPolynomial imag() { return scalar(GaussianRational::i()); }

  static NCPolynomial gen(Gen g, int power = 1) {
    NCPolynomial p;
    Word w;
    w.push(g, power);
    p.add_term({0, 0, std::move(w)}, GaussianRational(1));
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int degree() const {
    int d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.word.degree());
    return d;
  }

  void add_term(Mono mono, GaussianRational c) {
    if (c.is_zero()) return;
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
      terms_.emplace(std::move(mono), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NCPolynomial& operator+=(const NCPolynomial& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }
  NCPolynomial& operator-=(const NCPolynomial& o) {
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }
  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) {
    a += b;
    return a;
  }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) {
    a -= b;
    return a;
  }
  NCPolynomial operator-() const {
    NCPolynomial r;
    for (const auto& [mono, c] : terms_) r.terms_.emplace(mono, -c);
    return r;
  }

  // Raw (unnormalized) product: concatenates words, adds m/t powers.
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
    NCPolynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        r.add_term({ma.m_pow + mb.m_pow, ma.t_pow + mb.t_pow,
                    concat(ma.word, mb.word)},
                   ca * cb);
    return r;
  }

  NCPolynomial scaled(const GaussianRational& c) const {
    NCPolynomial r;
    if (c.is_zero()) return r;
    for (const auto& [mono, v] : terms_) r.terms_.emplace(mono, v * c);
    return r;
  }

  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) = default;

 private:
  TermMap terms_;
};

/// Reverses every word and conjugates every coefficient. All generators are
/// self-adjoint, so this is the formal adjoint; the result is not normalized.
inline NCPolynomial adjoint(const NCPolynomial& p) {
  NCPolynomial r;
  for (const auto& [mono, c] : p.terms())
    r.add_term({mono.m_pow, mono.t_pow, mono.word.reversed()}, c.conj());
  return r;
}

enum class DiscreteSymmetry { Parity, TimeReversal };

/// Parity is linear (P,K,Q flip sign); time reversal is antilinear
/// (P,J,S flip sign, i -> -i, t -> -t).
inline NCPolynomial apply_discrete_symmetry(const NCPolynomial& p,
                                            DiscreteSymmetry which) {
  auto flips = [&](Gen g) {
    switch (family_of(g)) {
      case Family::P: return true;
      case Family::K: return which == DiscreteSymmetry::Parity;
      case Family::Q: return which == DiscreteSymmetry::Parity;
      case Family::J: return which == DiscreteSymmetry::TimeReversal;
      case Family::S: return which == DiscreteSymmetry::TimeReversal;
      default: return false;
    }
  };
  NCPolynomial r;
  for (const auto& [mono, c] : p.terms()) {
    int sign = 1;
    for (const auto& f : mono.word.factors)
      if (flips(f.gen) && (f.power % 2 != 0)) sign = -sign;
    GaussianRational coef = c;
    if (which == DiscreteSymmetry::TimeReversal) {
      coef = coef.conj();
      if (mono.t_pow % 2 != 0) sign = -sign;
    }
    if (sign < 0) coef = -coef;
    r.add_term(mono, std::move(coef));
  }
  return r;
}

}  // namespace qloc
