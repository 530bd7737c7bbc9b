#include <random>

#include "doctest.h"
#include "qsp/scalar.hpp"

using namespace qsp;

namespace {

Scalar V(long k) { return Scalar::v_power(k); }
Scalar Q(long k) { return Scalar::q_power(k); }

std::mt19937 rng(20240817);

GQ random_gq() {
  std::uniform_int_distribution<int> d(-4, 4);
  return GQ(mpq_class(d(rng)), mpq_class(d(rng)));
}

Poly random_poly(int maxdeg) {
  std::uniform_int_distribution<int> d(0, maxdeg);
  int deg = d(rng);
  std::vector<GQ> c(deg + 1);
  for (auto& x : c) x = random_gq();
  return Poly(std::move(c));
}

Scalar random_scalar() {
  Poly den = random_poly(3);
  while (den.is_zero()) den = random_poly(3);
  return Scalar(random_poly(3), den);
}

}  // namespace

TEST_CASE("gaussian rationals") {
  CHECK(GQ::i() * GQ::i() == GQ(-1));
  GQ z(mpq_class(3), mpq_class(-2));
  CHECK(z * z.conj() == GQ(z.norm()));
  CHECK(z + (-z) == GQ(0));
  CHECK(z * z.inverse() == GQ(1));
  CHECK(GQ(mpq_class(2), mpq_class(5)).is_gaussian_integer());
  CHECK(!GQ(mpq_class(1, 2)).is_gaussian_integer());
}

TEST_CASE("polynomial arithmetic and gcd") {
  Poly v = Poly::monomial(GQ(1), 1);
  Poly one(GQ(1));
  Poly p = v * v - one;          // v^2 - 1
  Poly f = v - one;              // v - 1
  CHECK(p.divisible_by(f));
  CHECK(p.divide_exact(f) == v + one);
  CHECK(Poly::gcd(p, f) == f);   // gcd is monic
  CHECK(Poly::gcd(p * Poly(GQ(3)), f * Poly(GQ(7))) == f);
  CHECK_THROWS_AS((v * v).divide_exact(v + one), error);
  CHECK(p.evaluate(GQ(3)) == GQ(8));
}

TEST_CASE("cyclotomic polynomials") {
  Poly v = Poly::monomial(GQ(1), 1);
  Poly one(GQ(1));
  CHECK(cyclotomic(1) == v - one);
  CHECK(cyclotomic(2) == v + one);
  CHECK(cyclotomic(3) == v * v + v + one);
  CHECK(cyclotomic(4) == v * v + one);
  CHECK(cyclotomic(6) == v * v - v + one);
  CHECK(cyclotomic(8) == v * v * v * v + one);
  CHECK(cyclotomic(12) == v * v * v * v - v * v + one);
  // v^12 - 1 = prod over divisors.
  Poly prod = cyclotomic(1) * cyclotomic(2) * cyclotomic(3) * cyclotomic(4) *
              cyclotomic(6) * cyclotomic(12);
  CHECK(prod == Poly::monomial(GQ(1), 12) - one);
}

TEST_CASE("scalar field axioms (randomized)") {
  for (int trial = 0; trial < 50; ++trial) {
    Scalar a = random_scalar(), b = random_scalar(), c = random_scalar();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Scalar::zero());
    CHECK((a - b) + b == a);
    if (!a.is_zero()) {
      CHECK(a / a == Scalar::one());
      CHECK(a * a.inverse() == Scalar::one());
      CHECK(a.pow(-2) == (a * a).inverse());
    }
    CHECK(a.pow(3) == a * a * a);
  }
}

TEST_CASE("scalar normalization") {
  // (v^2 - 1)/(v - 1) reduces to v + 1.
  Scalar s = (V(2) - 1) / (V(1) - 1);
  CHECK(s == V(1) + 1);
  // Denominator is kept monic: 1/(2v - 2) has den v - 1.
  Scalar t = Scalar::one() / (Scalar(2) * V(1) - 2);
  Poly v = Poly::monomial(GQ(1), 1);
  CHECK(t.den() == v - Poly(GQ(1)));
  CHECK(t.num() == Poly(GQ(mpq_class(1, 2))));
  CHECK(Q(1) == V(2));
  CHECK(V(-3) * V(3) == Scalar::one());
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
}

TEST_CASE("canonical order is a strict total order on samples") {
  std::vector<Scalar> xs;
  for (int k = 0; k < 20; ++k) xs.push_back(random_scalar());
  for (const auto& a : xs) CHECK(!(a < a));
  for (const auto& a : xs)
    for (const auto& b : xs) {
      if (a == b) continue;
      CHECK((a < b) != (b < a));
    }
}

TEST_CASE("specialization at v = 1") {
  Scalar s = (V(2) - 1) / (V(1) - 1);  // v + 1
  CHECK(s.specialize_at_one() == GQ(2));
  CHECK(!s.has_pole_at_one());
  Scalar pole = Scalar::one() / (V(1) - 1);
  CHECK(pole.has_pole_at_one());
  CHECK_THROWS_AS(pole.specialize_at_one(), error);
  // (q - 1)/(2(v - 1)) = (v + 1)/2 specializes to 1.
  Scalar half = divide_exact(Q(1) - 1, Scalar(2) * (V(1) - 1));
  CHECK(half == (V(1) + 1) / 2);
  CHECK(half.specialize_at_one() == GQ(1));
}

TEST_CASE("quantum integers, factorials, binomials") {
  CHECK(quantum_integer(0) == Scalar::zero());
  CHECK(quantum_integer(1) == Scalar::one());
  CHECK(quantum_integer(2) == Q(1) + Q(-1));
  CHECK(quantum_integer(2) == (V(4) + 1) / V(2));
  CHECK(quantum_integer(3) == Q(2) + 1 + Q(-2));
  CHECK(quantum_integer(-2) == -quantum_integer(2));
  CHECK(quantum_integer(2, 2) == Q(2) + Q(-2));
  CHECK(quantum_factorial(3) == quantum_integer(2) * quantum_integer(3));
  CHECK(quantum_binomial(3, 1) == (V(8) + V(4) + 1) / V(4));
  CHECK(quantum_binomial(3, 1) == quantum_integer(3));
  CHECK(quantum_binomial(4, 2) ==
        quantum_factorial(4) / (quantum_factorial(2) * quantum_factorial(2)));
  // Pascal-type identity: [m k] = q^k [m-1 k] + q^{k-m} [m-1 k-1].
  for (long m = 1; m <= 5; ++m)
    for (long k = 1; k <= m; ++k)
      CHECK(quantum_binomial(m, k) ==
            Q(k) * quantum_binomial(m - 1, k) +
                Q(k - m) * quantum_binomial(m - 1, k - 1));
  // Negative upper index: [-1 k] = (-1)^k q^{-k(...)}: check via product formula.
  CHECK(quantum_binomial(-1, 1) == -quantum_integer(1));
  CHECK(quantum_binomial(-2, 1, 2) == -quantum_integer(2, 2));
}

TEST_CASE("integrality profile membership") {
  IntegralityProfile p1({1, 1}, false);  // simply laced, constants Z
  CHECK(p1.is_in_A_prime(Scalar::one() / (Q(1) + 1)));     // 1/(1+q)
  CHECK(p1.is_in_A_prime(V(-7)));                          // v-powers allowed
  CHECK(p1.is_in_A_prime(Q(3) - Scalar(5)));
  CHECK(!p1.is_in_A_prime(Scalar::one() / (Q(1) - 1)));    // 1/(q-1)
  CHECK(!p1.is_in_A_prime(V(1) / 2));                      // constant 1/2
  CHECK(!p1.is_in_A_prime(Scalar::i()));                   // needs Z[i]
  CHECK(!p1.is_in_A_prime(Scalar::one() / (V(4) + 1)));    // Phi_8 needs eps 2

  IntegralityProfile p2({2, 1}, false);  // doubly laced: [2]_q! inverted
  CHECK(p2.is_in_A_prime(Scalar::one() / (V(4) + 1)));
  CHECK(p2.is_in_A_prime(Scalar::one() / quantum_integer(2)));  // 1/[2]_q
  CHECK(!p2.is_in_A_prime(Scalar::one() / (V(2) + V(1) + 1)));  // Phi_3

  IntegralityProfile p3({1, 3}, false);  // G2: [3]_q! inverted
  CHECK(p3.is_in_A_prime(Scalar::one() / quantum_factorial(3)));
  CHECK(p3.is_in_A_prime(Scalar::one() / (V(2) + V(1) + 1)));   // Phi_3
  CHECK(p3.is_in_A_prime(Scalar::one() / (V(4) - V(2) + 1)));   // Phi_12

  IntegralityProfile pg({1, 1}, true);  // Gaussian constants
  CHECK(pg.is_in_A_prime(Scalar::i()));
  CHECK(!pg.is_in_A_prime(Scalar::i() / 2));

  // Products of allowed factors and v-powers stay allowed.
  CHECK(p1.is_in_A_prime(quantum_integer(2) / ((Q(1) + 1) * (Q(1) + 1))));
}

TEST_CASE("ring homomorphism properties of specialization (randomized)") {
  for (int trial = 0; trial < 30; ++trial) {
    Scalar a = random_scalar(), b = random_scalar();
    if (a.has_pole_at_one() || b.has_pole_at_one()) continue;
    CHECK((a + b).specialize_at_one() ==
          a.specialize_at_one() + b.specialize_at_one());
    CHECK((a * b).specialize_at_one() ==
          a.specialize_at_one() * b.specialize_at_one());
  }
}
