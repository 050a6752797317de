#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qloc/kinematics.hpp"

using namespace qloc;

TEST_CASE("classical velocity has unit speed for massless dynamics") {
  Vec3d u = classical_velocity({0.3, -1.2, 0.7});
  CHECK(std::abs(norm3(u) - 1.0) < 1e-12);
  CHECK_THROWS_AS(classical_velocity({0, 0, 0}), SingularMomentum);
}

TEST_CASE("translation experiment reproduces the closed form") {
  TranslationExperiment ex = dynamic_translation_experiment({0.6, 0.8, 0.0}, 1.0);
  CHECK(ex.epsilon == Catch::Approx(0.6).margin(1e-15));
  CHECK(std::abs(ex.delta_q[1] - (-0.288)) < 1e-12);
  CHECK(std::abs(ex.bracket_estimate[1] - (-0.48)) < 1e-12);
  // Light along the boost axis: no transverse displacement at all.
  TranslationExperiment axis = dynamic_translation_experiment({1.0, 0.0, 0.0}, 1.0);
  CHECK(axis.delta_q[1] == 0.0);
  CHECK_THROWS_AS(dynamic_translation_experiment({1.5, 0.0, 0.0}, 1.0), InvalidBoost);
  CHECK_THROWS_AS(dynamic_translation_experiment({1.0, 0.2, 0.0}, 1.0), InvalidBoost);
}

TEST_CASE("experiment matches -u1 u2 epsilon across unit velocities") {
  for (int a = 1; a < 10; ++a)
    for (int b = 0; b < 10; ++b) {
      double theta = a * M_PI / 10.0, phi = b * 2.0 * M_PI / 10.0;
      Vec3d u{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta)};
      if (std::abs(u[0]) < 1e-6 || std::abs(u[0]) > 1.0 - 1e-6) continue;
      TranslationExperiment ex = dynamic_translation_experiment(u, 1.0);
      CHECK(std::abs(ex.delta_q[1] - (-u[0] * u[1] * ex.epsilon)) < 1e-12);
    }
}

TEST_CASE("bivector block of the modified bracket is the momentum projector") {
  Vec3d q{0.2, -1.0, 0.4}, p{0.6, 0.8, 0.0};
  CHECK(modified_bracket(coordinate_q(0), coordinate_p(1), q, p) ==
        Catch::Approx(0.48).margin(1e-12));
  // {q_i, p_j} assembles Pi = phat phat^T; verify Pi^2 = Pi through it.
  double pi[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      pi[i][j] = modified_bracket(coordinate_q(i), coordinate_p(j), q, p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double sq = 0;
      for (int l = 0; l < 3; ++l) sq += pi[i][l] * pi[l][j];
      CHECK(sq == Catch::Approx(pi[i][j]).margin(1e-12));
      CHECK(pi[i][j] == Catch::Approx(pi[j][i]).margin(1e-12));
    }
  CHECK(modified_bracket(coordinate_p(0), coordinate_p(2), q, p) ==
        Catch::Approx(0.0).margin(1e-12));
  CHECK_THROWS_AS(modified_bracket(coordinate_q(0), coordinate_p(1), q, {0, 0, 0}),
                  SingularMomentum);
}

TEST_CASE("hamiltonian velocity survives the modified bracket") {
  Vec3d q{1.0, -0.5, 2.0}, p{0.6, 0.8, 0.0};
  for (int i = 0; i < 3; ++i) {
    double u = p[i] / norm3(p);
    CHECK(std::abs(modified_bracket(coordinate_q(i), hamiltonian(), q, p) - u) <
          1e-10);
  }
}

TEST_CASE("modified bracket is antisymmetric on smooth test functions") {
  Observable f, g;
  f.value = [](const Vec3d& q, const Vec3d& p) {
    return std::sin(q[0]) * p[1] + q[2] * q[2] * p[0];
  };
  g.value = [](const Vec3d& q, const Vec3d& p) {
    return std::cos(p[2]) + q[1] * p[0] * p[0];
  };
  Vec3d q{0.3, 0.9, -0.7}, p{1.1, -0.4, 0.8};
  double fg = modified_bracket(f, g, q, p);
  double gf = modified_bracket(g, f, q, p);
  CHECK(fg == Catch::Approx(-gf).margin(1e-9));
}

TEST_CASE("jacobiator vanishes at seeded random phase-space points") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), radius(0.5, 5.0);
  for (int s = 0; s < 100; ++s) {
    Vec3d q{unit(rng), unit(rng), unit(rng)};
    Vec3d p{unit(rng), unit(rng), unit(rng)};
    double r = norm3(p);
    if (r < 1e-3) {
      p = {1, 0, 0};
      r = 1;
    }
    double want = radius(rng);
    for (auto& c : p) c *= want / r;
    int i = s % 3, j = (s + 1) % 3, k = (s + 2) % 3;
    CHECK(std::abs(jacobiator(coordinate_q(i), coordinate_q(j), coordinate_p(k), q,
                              p)) <= 1e-6);
    CHECK(std::abs(jacobiator(coordinate_q(i), coordinate_p(j), hamiltonian(), q,
                              p)) <= 1e-6);
  }
  // Pure momentum triples vanish exactly.
  CHECK(jacobiator(coordinate_p(0), coordinate_p(1), coordinate_p(2), {0, 0, 0},
                   {0.6, 0.8, 0.0}) == 0.0);
}

TEST_CASE("axis permutation of the velocity permutes the shift") {
  TranslationExperiment a = dynamic_translation_experiment({0.6, 0.8, 0.0}, 1.0);
  TranslationExperiment b = dynamic_translation_experiment({0.6, 0.0, 0.8}, 1.0);
  CHECK(a.delta_q[1] == Catch::Approx(b.delta_q[2]).margin(1e-15));
}
