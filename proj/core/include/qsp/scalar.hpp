// The exact scalar field Q(i)(v) of rational functions in v = q^{1/2} over
// the Gaussian rationals, together with quantum combinatorics ([n], [n]!,
// binomials in a base q^eps) and the integrality profile describing the
// localized base ring A' = A[(1+q)^{-1}, [eps_i]!^{-1}].
#ifndef QSP_SCALAR_HPP
#define QSP_SCALAR_HPP

#include <set>
#include <string>
#include <vector>

#include "qsp/gaussian.hpp"

namespace qsp {

// Dense polynomial in v with Gaussian rational coefficients.
// Invariant: no trailing zero coefficients (zero polynomial has empty c).
class Poly {
 public:
  Poly() = default;
  explicit Poly(GQ constant);
  explicit Poly(std::vector<GQ> coeffs);

  // Monomial c * v^k, k >= 0.
  static Poly monomial(GQ c, int k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  // Lowest power of v with a nonzero coefficient (0 for the zero polynomial).
  int low_degree() const;
  const GQ& coeff(int k) const;        // 0 outside range
  GQ leading() const;                  // 0 if zero polynomial
  const std::vector<GQ>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const GQ& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Polynomial division over the field Q(i); throws unless remainder is zero
  // when exact = true.
  static void divmod(const Poly& a, const Poly& b, Poly* quot, Poly* rem);
  Poly divide_exact(const Poly& b) const;
  bool divisible_by(const Poly& b) const;

  // Monic gcd over Q(i).
  static Poly gcd(Poly a, Poly b);

  GQ evaluate(const GQ& x) const;
  // True if every coefficient lies in Z[i].
  bool has_gaussian_integer_coeffs() const;
  // True if every coefficient is real.
  bool has_real_coeffs() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<GQ> c_;
};

// The d-th cyclotomic polynomial, computed exactly by the recursive
// division formula v^d - 1 = prod_{e | d} Phi_e(v).
Poly cyclotomic(int d);

// A reduced fraction num/den of polynomials in v.
// Invariants: den is monic, gcd(num, den) = 1, zero is 0/1.
class Scalar {
 public:
  Scalar() : num_(), den_(Poly(GQ(1))) {}
  Scalar(long n);  // NOLINT: implicit by design
  explicit Scalar(GQ c);
  Scalar(Poly num, Poly den);

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar i() { return Scalar(GQ::i()); }
  // v^k for any integer k (negative gives a v-power denominator).
  static Scalar v_power(long k);
  // q^k = v^{2k}.
  static Scalar q_power(long k) { return v_power(2 * k); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;
  Scalar pow(long k) const;
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  bool operator==(const Scalar& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Total order for canonical term ordering (lexicographic on the
  // coefficient data); not an algebraic order.
  bool operator<(const Scalar& o) const;

  // Value at v = 1; throws if the reduced denominator vanishes there.
  GQ specialize_at_one() const;
  bool has_pole_at_one() const;

  std::string to_string() const;

 private:
  void reduce();
  Poly num_;
  Poly den_;
};

// Exact division helper mandated by the module contract: a / b, throwing on
// division by zero.  (Division in the fraction field is always exact; the
// name records the intent that callers expect exactness at the ring level,
// which is enforced downstream by integrality checks.)
Scalar divide_exact(const Scalar& a, const Scalar& b);

// [n] in base q_i = q^{eps}: (q_i^n - q_i^{-n}) / (q_i - q_i^{-1}).
Scalar quantum_integer(long n, long eps = 1);
Scalar quantum_factorial(long n, long eps = 1);
// Quantum binomial [m choose k] in base q^eps (m may be negative:
// the usual expansion [m][m-1]...[m-k+1]/[k]!).
Scalar quantum_binomial(long m, long k, long eps = 1);

// Membership test data for A' = A[(1+q)^{-1}, [eps_i]!^{-1}] (optionally with
// sqrt((-1)^n) adjoined, making the constant ring Z[i]).
class IntegralityProfile {
 public:
  // eps: multiset of node symmetrizers eps_i occurring in the diagram.
  // gaussian: true if the constant ring is Z[i] rather than Z.
  IntegralityProfile(const std::vector<long>& eps, bool gaussian);

  bool gaussian() const { return gaussian_; }
  const std::vector<Poly>& allowed_factors() const { return factors_; }

  // True if s lies in A': the reduced denominator is a product of v-powers
  // and allowed irreducible factors, and the numerator has coefficients in
  // the constant ring.
  bool is_in_A_prime(const Scalar& s) const;

  std::string describe() const;

 private:
  bool gaussian_;
  std::vector<Poly> factors_;  // monic irreducible integer polynomials
};

}  // namespace qsp

#endif  // QSP_SCALAR_HPP
