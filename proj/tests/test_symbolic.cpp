#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qloc/expressions.hpp"
#include "qloc/ideal.hpp"
#include "qloc/normal_form.hpp"
#include "qloc/serialize.hpp"
#include "qloc/suites.hpp"

using namespace qloc;

namespace {

NCPolynomial G(Gen g, int p = 1) { return NCPolynomial::gen(g, p); }
const GaussianRational I = GaussianRational::i();

/// Deterministic small polynomial over the primitive generators of a mode.
NCPolynomial random_poly(std::mt19937& rng, const ModeRelations& rel, int terms,
                         int max_len) {
  std::vector<Gen> prims;
  for (int g = 0; g < kGenCount; ++g)
    if (rel.primitive(static_cast<Gen>(g))) prims.push_back(static_cast<Gen>(g));
  std::uniform_int_distribution<int> coef(-3, 3), len(1, max_len),
      pick(0, static_cast<int>(prims.size()) - 1), pow_d(1, 2);
  NCPolynomial out;
  for (int t = 0; t < terms; ++t) {
    int c = coef(rng);
    if (c == 0) c = 1;
    NCPolynomial term = NCPolynomial::scalar(GaussianRational(c));
    int l = len(rng);
    for (int k = 0; k < l; ++k) term = term * G(prims[pick(rng)], pow_d(rng));
    out += term;
  }
  return out;
}

}  // namespace

TEST_CASE("boost against inverse energy picks up the second-order tail") {
  const auto& rel = ModeRelations::massless();
  // K1 H^-1 = H^-1 K1 - i P1 H^-2
  NCPolynomial lhs = normal_form(G(Gen::K1) * G(Gen::H, -1), rel);
  NCPolynomial expected =
      G(Gen::H, -1) * G(Gen::K1) - (G(Gen::H, -2) * G(Gen::P1)).scaled(I);
  CHECK((lhs - normal_form(expected, rel)).is_zero());
}

TEST_CASE("adjoint reverses words and conjugates coefficients") {
  NCPolynomial p = (G(Gen::K1) * G(Gen::P1)).scaled(I);
  NCPolynomial adj = adjoint(p);
  NCPolynomial expected = (G(Gen::P1) * G(Gen::K1)).scaled(-I);
  CHECK((adj - expected).is_zero());
}

TEST_CASE("adjoint is an antiautomorphism") {
  const auto& rel = ModeRelations::massive();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    NCPolynomial a = random_poly(rng, rel, 2, 2);
    NCPolynomial b = random_poly(rng, rel, 2, 2);
    NCPolynomial diff = adjoint(a * b) - adjoint(b) * adjoint(a);
    CHECK(normal_form(diff, rel).is_zero());
  }
}

TEST_CASE("normal form is idempotent") {
  for (const ModeRelations* rel :
       {&ModeRelations::massive(), &ModeRelations::massless()}) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 8; ++trial) {
      NCPolynomial p = random_poly(rng, *rel, 3, 3);
      NCPolynomial nf = normal_form(p, *rel);
      CHECK((normal_form(nf, *rel) - nf).is_zero());
    }
  }
}

TEST_CASE("commutator is antisymmetric and bilinear") {
  const auto& rel = ModeRelations::massless();
  std::mt19937 rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    NCPolynomial a = random_poly(rng, rel, 2, 2);
    NCPolynomial b = random_poly(rng, rel, 2, 2);
    NCPolynomial c = random_poly(rng, rel, 2, 2);
    CHECK((commutator(a, b, rel) + commutator(b, a, rel)).is_zero());
    NCPolynomial lhs = commutator(a + b.scaled(GaussianRational(3)), c, rel);
    NCPolynomial rhs =
        commutator(a, c, rel) + commutator(b, c, rel).scaled(GaussianRational(3));
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("discrete symmetries are involutions") {
  const auto& rel = ModeRelations::massive();
  std::mt19937 rng(17);
  for (auto sym : {DiscreteSymmetry::Parity, DiscreteSymmetry::TimeReversal}) {
    for (int trial = 0; trial < 6; ++trial) {
      NCPolynomial p = random_poly(rng, rel, 3, 3);
      NCPolynomial twice = apply_discrete_symmetry(apply_discrete_symmetry(p, sym), sym);
      CHECK((twice - p).is_zero());
    }
  }
}

TEST_CASE("unknown generators are rejected per mode") {
  CHECK_THROWS_AS(normal_form(G(Gen::J1), ModeRelations::massive()), UnknownGenerator);
  CHECK_THROWS_AS(normal_form(G(Gen::S1), ModeRelations::massless()), UnknownGenerator);
}

TEST_CASE("jacobi identity holds for a boost-boost-momentum triple") {
  const auto& massive = ModeRelations::massive();
  const auto& massless = ModeRelations::massless();
  NamedExpression j = build_named("FoldyJ");
  NamedExpression k = build_named("FoldyK");
  CHECK(jacobiator(G(Gen::K1), G(Gen::K2), G(Gen::P1), massless).is_zero());
  CHECK(jacobiator(k[0], k[1], G(Gen::P1), massive).is_zero());
  CHECK(jacobiator(j[2], k[0], G(Gen::H), massive).is_zero());
}

TEST_CASE("serialization round-trips the documented grammar") {
  std::string text = "(3/2 + 1i) m^-1 t^0 : H^-3 P1 K1";
  NCPolynomial p = parse_expression(text);
  NCPolynomial again = parse_expression(to_string(p));
  CHECK((p - again).is_zero());
  std::mt19937 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    NCPolynomial q = normal_form(random_poly(rng, ModeRelations::massless(), 3, 3),
                                 ModeRelations::massless());
    CHECK((parse_expression(to_string(q)) - q).is_zero());
  }
}

TEST_CASE("only H admits negative powers in serialized words") {
  CHECK_THROWS_AS(parse_expression("(1 + 0i) m^0 t^0 : P1^-1"), ParseError);
  CHECK_NOTHROW(parse_expression("(1 + 0i) m^0 t^0 : H^-2 P1"));
}

TEST_CASE("ideal membership matches the documented examples") {
  const auto& rel = ModeRelations::massless();
  NCPolynomial h3 = G(Gen::H, 3) - G(Gen::H) * G(Gen::P1, 2) -
                    G(Gen::H) * G(Gen::P2, 2) - G(Gen::H) * G(Gen::P3, 2);
  CHECK(ideal_reduce(h3, rel, 10).status == IdealStatus::Member);
  NCPolynomial c1 = G(Gen::H, 2) - G(Gen::P1, 2) - G(Gen::P2, 2) - G(Gen::P3, 2);
  CHECK(ideal_reduce(c1, rel, 10).status == IdealStatus::Member);
  CHECK(ideal_reduce(G(Gen::J1), rel, 10).status == IdealStatus::NotMember);
}

TEST_CASE("ideal reduction refuses a cutoff below the expression degree") {
  NamedExpression q = build_named("Q_MASSLESS");
  NCPolynomial vel = commutator(G(Gen::H), q[0], ModeRelations::massless());
  CHECK_THROWS_AS(ideal_reduce(vel, ModeRelations::massless(), 2), CutoffTooSmall);
}

TEST_CASE("massive suite passes every check") {
  VerificationReport r = run_massive_suite();
  for (const auto& c : r.checks) {
    INFO(c.check_id << ": " << c.note << " residual " << to_string(c.residual));
    CHECK(c.status == CheckStatus::Pass);
  }
  CHECK_FALSE(r.implication_violation);
}

TEST_CASE("massless suite passes every check") {
  VerificationReport r = run_massless_suite();
  for (const auto& c : r.checks) {
    INFO(c.check_id << ": " << c.note << " residual " << to_string(c.residual));
    CHECK(c.status == CheckStatus::Pass);
  }
}

TEST_CASE("small cutoff degrades high-degree checks to inconclusive") {
  VerificationReport r = run_massless_suite(2);
  CHECK(r.worst() == CheckStatus::Inconclusive);
  for (const auto& c : r.checks) CHECK(c.status != CheckStatus::Fail);
}
