#include <random>

#include "doctest.h"
#include "qsp/uq.hpp"

using namespace qsp;

namespace {

Scalar V(long k) { return Scalar::v_power(k); }
Scalar Q(long k) { return Scalar::q_power(k); }

UElement rand_element(UAlgebra& u, std::mt19937& rng, int max_letters) {
  std::uniform_int_distribution<int> letter(0, u.cartan().rank() - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> count(1, max_letters);
  std::uniform_int_distribution<int> kw(-1, 1);
  UElement x = u.one();
  int m = count(rng);
  for (int t = 0; t < m; ++t) {
    switch (kind(rng)) {
      case 0: x = u.multiply(x, u.F(letter(rng))); break;
      case 1: x = u.multiply(x, u.E(letter(rng))); break;
      default: {
        Weight mu(u.cartan().rank(), 0);
        for (auto& c : mu) c = kw(rng);
        x = u.multiply(x, u.K(mu));
      }
    }
  }
  return x;
}

}  // namespace

TEST_CASE("rank 1 relations") {
  UAlgebra u(CartanData::simple('A', 1));
  Weight a0 = weight_alpha(1, 0);
  // [E, F] = (q - q^{-1})(K^{-1} - K).
  UElement lhs = u.multiply(u.E(0), u.F(0)) - u.multiply(u.F(0), u.E(0));
  UElement rhs = (u.K(-a0) - u.K(a0)) * (Q(1) - Q(-1));
  CHECK(lhs == rhs);
  // K F = q^{-2} F K, K E = q^2 E K.
  CHECK(u.multiply(u.K(a0), u.F(0)) == u.multiply(u.F(0), u.K(a0)) * Q(-2));
  CHECK(u.multiply(u.K(a0), u.E(0)) == u.multiply(u.E(0), u.K(a0)) * Q(2));
  CHECK(u.multiply(u.K(a0), u.K(-a0)) == u.one());
}

TEST_CASE("torus commutation uses the symmetrized form") {
  UAlgebra u(CartanData::simple('B', 2));
  Weight a1 = weight_alpha(2, 0), a2 = weight_alpha(2, 1);
  // K_1 F_2 = q_1^{-a_12} F_2 K_1 = q^{2} F_2 K_1 (eps_1 = 2, a_12 = -1).
  CHECK(u.multiply(u.K(a1), u.F(1)) == u.multiply(u.F(1), u.K(a1)) * Q(2));
  // K_2 F_1 = q_2^{-a_21} F_1 K_2 = q^{2} F_1 K_2 (eps_2 = 1, a_21 = -2).
  CHECK(u.multiply(u.K(a2), u.F(0)) == u.multiply(u.F(0), u.K(a2)) * Q(2));
  // K_2 E_2 = q_2^2 E_2 K_2.
  CHECK(u.multiply(u.K(a2), u.E(1)) == u.multiply(u.E(1), u.K(a2)) * Q(2));
}

TEST_CASE("serre standard words in A2") {
  UAlgebra u(CartanData::simple('A', 2));
  // Content 2 alpha_1 + alpha_2: dimension 2, standard words {(1,2,1),(2,1,1)}
  // with lead (1,1,2) rewritten.
  auto words = u.standard_words({2, 1});
  REQUIRE(words.size() == 2);
  CHECK(words[0] == Word{0, 1, 0});
  CHECK(words[1] == Word{1, 0, 0});
  // The Serre relation itself: F1^2 F2 - [2] F1 F2 F1 + F2 F1^2 = 0.
  UElement s = u.multiply(u.power(u.F(0), 2), u.F(1)) -
               u.multiply(u.multiply(u.F(0), u.F(1)), u.F(0)) *
                   quantum_integer(2) +
               u.multiply(u.F(1), u.power(u.F(0), 2));
  CHECK(s.is_zero());
  // Same on the E side.
  UElement se = u.multiply(u.power(u.E(0), 2), u.E(1)) -
                u.multiply(u.multiply(u.E(0), u.E(1)), u.E(0)) *
                    quantum_integer(2) +
                u.multiply(u.E(1), u.power(u.E(0), 2));
  CHECK(se.is_zero());
}

TEST_CASE("standard word counts match kostant counts") {
  auto check_all = [](char type, int rank, int maxht) {
    UAlgebra u(CartanData::simple(type, rank));
    CAPTURE(type);
    // All contents of height <= maxht.
    std::vector<Weight> todo{weight_zero(rank)};
    for (int h = 0; h < maxht; ++h) {
      std::vector<Weight> next;
      for (const Weight& w : todo)
        for (int i = 0; i < rank; ++i) next.push_back(w + weight_alpha(rank, i));
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (const Weight& w : next) {
        CAPTURE(weight_to_string(w));
        CHECK(static_cast<long>(u.standard_words(w).size()) ==
              kostant_partition_count(u.cartan(), w));
      }
      todo = next;
    }
  };
  check_all('A', 2, 6);
  check_all('A', 3, 5);
  check_all('B', 2, 6);
  check_all('G', 2, 6);
}

TEST_CASE("associativity (randomized)") {
  std::mt19937 rng(7);
  for (char type : {'A', 'B'}) {
    UAlgebra u(CartanData::simple(type, 2));
    for (int t = 0; t < 8; ++t) {
      UElement a = rand_element(u, rng, 2);
      UElement b = rand_element(u, rng, 2);
      UElement c = rand_element(u, rng, 2);
      CHECK(u.multiply(u.multiply(a, b), c) == u.multiply(a, u.multiply(b, c)));
    }
  }
}

TEST_CASE("q-commutators") {
  UAlgebra u(CartanData::simple('A', 2));
  UElement ab = u.multiply(u.F(0), u.F(1));
  UElement ba = u.multiply(u.F(1), u.F(0));
  CHECK(u.q_commutator(u.F(0), u.F(1), 1) == ab - ba * Q(1));
  // {a,b}_{q^c} = [a,b]_{q^c}/(q-1).
  CHECK(u.rescaled_q_commutator(u.F(0), u.F(1), 1) * (Q(1) - 1) ==
        u.q_commutator(u.F(0), u.F(1), 1));
}

TEST_CASE("integrality checks") {
  UAlgebra u(CartanData::simple('A', 2));
  IntegralityProfile p({1, 1}, false);
  CHECK(UAlgebra::is_integral(u.F(0) * (Q(1) + 1).inverse(), p));
  CHECK(!UAlgebra::is_integral(u.F(0) * (Q(1) - 1).inverse(), p));
}

TEST_CASE("pbw basis for A2 with the natural root vectors") {
  UAlgebra u(CartanData::simple('A', 2));
  // Reduced word s1 s2 s1: roots a1, a1+a2, a2.  Use hand-built root vectors:
  // F_{a1+a2} = (F2 F1 - q F1 F2) / (q^{1/2}(q - q^{-1})) (the T_1 image).
  UElement f12 = (u.multiply(u.F(1), u.F(0)) - u.multiply(u.F(0), u.F(1)) * Q(1)) *
                 (V(1) * (Q(1) - Q(-1))).inverse();
  UElement e12 = (u.multiply(u.E(1), u.E(0)) - u.multiply(u.E(0), u.E(1)) * Q(-1)) *
                 (V(-1) * (Q(-1) - Q(1))).inverse();
  PBWData data;
  data.roots = {{1, 0}, {1, 1}, {0, 1}};
  data.f_root_vectors = {u.F(0), f12, u.F(1)};
  data.e_root_vectors = {u.E(0), e12, u.E(1)};
  PBWBasis pbw(u, data);

  // Round trips on random elements.
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    UElement x = rand_element(u, rng, 3);
    auto coords = pbw.coordinates(x);
    UElement back;
    for (const auto& [m, c] : coords) back += pbw.expand(m) * c;
    CHECK(back == x);
  }

  // F2 F1 = q^{1/2}(q - q^{-1}) F_{a1+a2} + q F1 F2.
  auto coords = pbw.coordinates(u.multiply(u.F(1), u.F(0)));
  REQUIRE(coords.size() == 2);
  PBWMonomial m1{{0, 1, 0}, weight_zero(2), {0, 0, 0}};
  PBWMonomial m2{{1, 0, 1}, weight_zero(2), {0, 0, 0}};
  CHECK(coords.at(m1) == V(1) * (Q(1) - Q(-1)));
  CHECK(coords.at(m2) == Q(1));
}

TEST_CASE("exponent vectors") {
  std::vector<Weight> roots = {{1, 0}, {1, 1}, {0, 1}};
  auto exps = exponent_vectors(roots, {1, 1});
  REQUIRE(exps.size() == 2);  // kostant(1,1) = 2
  CHECK(exps[0] == std::vector<long>{0, 1, 0});
  CHECK(exps[1] == std::vector<long>{1, 0, 1});
}

TEST_CASE("component word limit raises a structured error") {
  UAlgebra u(CartanData::simple('A', 3));
  u.set_component_word_limit(10);
  CHECK_THROWS_AS(u.standard_words({2, 2, 2}), error);
}
