#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qloc/algebra.hpp"

namespace qloc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical text form of one term:
///   (3/2 + 1i) m^-1 t^0 : H^-3 P1 K1
/// The m/t exponents are always printed; generator powers of 1 are omitted;
/// an empty word prints as `1`.
inline std::string to_string(const Mono& mono, const GaussianRational& coeff) {
  std::ostringstream os;
  os << coeff.str() << " m^" << mono.m_pow << " t^" << mono.t_pow << " :";
  if (mono.word.empty()) {
    os << " 1";
  } else {
    for (const auto& f : mono.word.factors) {
      os << ' ' << gen_name(f.gen);
      if (f.power != 1) os << '^' << f.power;
    }
  }
  return os.str();
}

/// Terms joined with `  +  `; the zero polynomial prints as `0`.
inline std::string to_string(const NCPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [mono, coeff] : p.terms()) {
    if (!out.empty()) out += "  +  ";
    out += to_string(mono, coeff);
  }
  return out;
}

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  NCPolynomial parse() {
    NCPolynomial result;
    skip_ws();
    if (peek() == '0' && (pos_ + 1 == text_.size() || !more_after_zero())) {
      return result;  // literal "0"
    }
    while (true) {
      parse_term(result);
      skip_ws();
      if (pos_ == text_.size()) break;
      expect('+');
    }
    return result;
  }

 private:
  bool more_after_zero() {
    for (std::size_t k = pos_ + 1; k < text_.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(text_[k]))) return true;
    return false;
  }

  void parse_term(NCPolynomial& out) {
    GaussianRational coeff = parse_coeff();
    Mono mono;
    skip_ws();
    expect('m');
    expect('^');
    mono.m_pow = parse_int();
    skip_ws();
    expect('t');
    expect('^');
    mono.t_pow = parse_int();
    skip_ws();
    expect(':');
    skip_ws();
    if (peek() == '1' && !std::isalnum(next_char())) {
      ++pos_;  // empty word
    } else {
      while (true) {
        Gen g = parse_gen();
        int power = 1;
        if (pos_ < text_.size() && text_[pos_] == '^') {
          ++pos_;
          power = parse_int();
        }
        if (power < 0 && g != Gen::H)
          fail("only H admits negative powers");
        mono.word.push(g, power);
        skip_ws();
        if (pos_ == text_.size() || !std::isalpha(static_cast<unsigned char>(peek())))
          break;
      }
    }
    out.add_term(std::move(mono), std::move(coeff));
  }

  GaussianRational parse_coeff() {
    skip_ws();
    expect('(');
    Rational re = parse_rational();
    skip_ws();
    char sign = peek();
    if (sign != '+' && sign != '-') fail("expected '+' or '-' in coefficient");
    ++pos_;
    Rational im = parse_rational();
    if (sign == '-') im = -im;
    skip_ws();
    expect('i');
    skip_ws();
    expect(')');
    return {std::move(re), std::move(im)};
  }

  Rational parse_rational() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a number");
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    boost::multiprecision::cpp_int num(std::string(text_.substr(start, pos_ - start)));
    boost::multiprecision::cpp_int den = 1;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (dstart == pos_) fail("expected a denominator");
      den = boost::multiprecision::cpp_int(std::string(text_.substr(dstart, pos_ - dstart)));
      if (den == 0) fail("zero denominator");
    }
    return Rational(num, den);
  }

  int parse_int() {
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(text_[start]))))
      fail("expected an integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  Gen parse_gen() {
    skip_ws();
    char c = peek();
    ++pos_;
    auto axis = [&]() -> int {
      char d = peek();
      if (d < '1' || d > '3') fail("expected axis 1-3");
      ++pos_;
      return d - '1';
    };
    switch (c) {
      case 'H': return Gen::H;
      case 'W': return Gen::W;
      case 'P': return make_gen(Family::P, axis());
      case 'S': return make_gen(Family::S, axis());
      case 'Q': return make_gen(Family::Q, axis());
      case 'J': return make_gen(Family::J, axis());
      case 'K': return make_gen(Family::K, axis());
      default: fail(std::string("unknown generator letter '") + c + "'");
    }
    return Gen::H;  // unreachable
  }

  char peek() const {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    return text_[pos_];
  }
  char next_char() const {
    return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
  }
  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in expression");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline NCPolynomial parse_expression(std::string_view text) {
  return detail::ExprParser(text).parse();
}

}  // namespace qloc
