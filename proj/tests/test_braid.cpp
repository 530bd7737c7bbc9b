#include "doctest.h"
#include "qsp/braid.hpp"

using namespace qsp;

namespace {
Scalar V(long k) { return Scalar::v_power(k); }
Scalar Q(long k) { return Scalar::q_power(k); }
}  // namespace

TEST_CASE("generator images in A2") {
  UAlgebra u(CartanData::simple('A', 2));
  BraidOperators T(u);
  Weight a1 = weight_alpha(2, 0);
  // T_1(F_1) = q K_1^{-1} E_1, T_1(E_1) = q^{-1} F_1 K_1.
  CHECK(T.apply_T(0, 1, u.F(0)) ==
        u.multiply(u.K(-a1), u.E(0)) * Q(1));
  CHECK(T.apply_T(0, 1, u.E(0)) ==
        u.multiply(u.F(0), u.K(a1)) * Q(-1));
  // T_1(K_mu) = K_{s_1 mu}.
  Weight mu = {2, -1};
  CHECK(T.apply_T(0, 1, u.K(mu)) == u.K(u.cartan().reflect(0, mu)));
  // T_1(F_2) = (F_2 F_1 - q F_1 F_2) / (q^{1/2}(q - q^{-1})).
  UElement expected =
      (u.multiply(u.F(1), u.F(0)) - u.multiply(u.F(0), u.F(1)) * Q(1)) *
      (V(1) * (Q(1) - Q(-1))).inverse();
  CHECK(T.apply_T(0, 1, u.F(1)) == expected);
  // F_2 F_1 = q^{1/2}(q - q^{-1}) T_1(F_2) + q F_1 F_2.
  CHECK(u.multiply(u.F(1), u.F(0)) ==
        T.apply_T(0, 1, u.F(1)) * (V(1) * (Q(1) - Q(-1))) +
            u.multiply(u.F(0), u.F(1)) * Q(1));
}

TEST_CASE("defining relations are preserved") {
  // G2 is covered by the expensive tier of the acceptance suite.
  for (char type : {'A', 'B'}) {
    UAlgebra u(CartanData::simple(type, 2));
    BraidOperators T(u);
    for (int i = 0; i < 2; ++i) {
      CAPTURE(type);
      CHECK(T.verify_defining_relations(i, 1));
      CHECK(T.verify_defining_relations(i, -1));
    }
  }
}

TEST_CASE("homomorphism property on products") {
  UAlgebra u(CartanData::simple('A', 2));
  BraidOperators T(u);
  UElement x = u.multiply(u.F(0), u.E(1));
  UElement y = u.multiply(u.K(weight_alpha(2, 1)), u.F(1));
  CHECK(T.apply_T(0, 1, u.multiply(x, y)) ==
        u.multiply(T.apply_T(0, 1, x), T.apply_T(0, 1, y)));
  CHECK(T.apply_T(1, -1, u.multiply(x, y)) ==
        u.multiply(T.apply_T(1, -1, x), T.apply_T(1, -1, y)));
}

TEST_CASE("sigma is an involutive anti-automorphism") {
  UAlgebra u(CartanData::simple('A', 2));
  BraidOperators T(u);
  UElement x = u.multiply(u.F(0), u.multiply(u.E(1), u.K(weight_alpha(2, 0))));
  UElement y = u.multiply(u.E(0), u.F(1));
  CHECK(T.sigma(T.sigma(x)) == x);
  CHECK(T.sigma(u.multiply(x, y)) == u.multiply(T.sigma(y), T.sigma(x)));
  CHECK(T.sigma(u.F(0)) == u.F(0));
  CHECK(T.sigma(u.E(1)) == u.E(1));
  CHECK(T.sigma(u.K(weight_alpha(2, 0))) == u.K(-weight_alpha(2, 0)));
}

TEST_CASE("braid relations") {
  {
    UAlgebra u(CartanData::simple('A', 2));
    BraidOperators T(u);
    CHECK(T.verify_braid_relation(0, 1));
    // Negative control: the length-2 alternating products differ.
    CHECK(T.apply_word({0, 1}, 1, u.F(0)) != T.apply_word({1, 0}, 1, u.F(0)));
  }
  {
    UAlgebra u(CartanData::simple('B', 2));
    BraidOperators T(u);
    CHECK(T.verify_braid_relation(0, 1));
  }
  {
    UAlgebra u(CartanData::direct_sum(CartanData::simple('A', 1),
                                      CartanData::simple('A', 1)));
    BraidOperators T(u);
    CHECK(T.verify_braid_relation(0, 1));  // commuting case
  }
}

TEST_CASE("root vectors along a reduced word") {
  UAlgebra u(CartanData::simple('A', 2));
  BraidOperators T(u);
  PBWData data = T.root_vectors({0, 1, 0});
  REQUIRE(data.roots.size() == 3);
  CHECK(data.roots[0] == Weight{1, 0});
  CHECK(data.roots[1] == Weight{1, 1});
  CHECK(data.roots[2] == Weight{0, 1});
  CHECK(data.f_root_vectors[0] == u.F(0));
  CHECK(data.f_root_vectors[2] == u.F(1));
  // The middle vector is T_1(F_2) and has pure f-content alpha1 + alpha2.
  for (const auto& [m, c] : data.f_root_vectors[1].terms()) {
    CHECK(word_content(2, m.f) == Weight{1, 1});
    CHECK(m.e.empty());
    CHECK(is_zero(m.mu));
  }
  // PBW round trip with braid-generated root vectors.
  PBWBasis pbw(u, data);
  UElement x = u.multiply(u.power(u.F(1), 2), u.power(u.F(0), 2));
  auto coords = pbw.coordinates(x);
  UElement back;
  for (const auto& [m, c] : coords) back += pbw.expand(m) * c;
  CHECK(back == x);
}

TEST_CASE("root vectors have the expected degrees") {
  UAlgebra u(CartanData::simple('B', 2));
  BraidOperators T(u);
  PBWData data = T.root_vectors({0, 1, 0, 1});
  REQUIRE(data.roots.size() == 4);
  for (size_t k = 0; k < data.roots.size(); ++k) {
    CHECK(!data.f_root_vectors[k].is_zero());
    for (const auto& [m, c] : data.f_root_vectors[k].terms()) {
      CHECK(word_content(2, m.f) == data.roots[k]);
      CHECK(m.e.empty());
      CHECK(is_zero(m.mu));
    }
    for (const auto& [m, c] : data.e_root_vectors[k].terms()) {
      CHECK(word_content(2, m.e) == data.roots[k]);
      CHECK(m.f.empty());
      CHECK(is_zero(m.mu));
    }
  }
}
