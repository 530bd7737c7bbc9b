#include "qsp/scalar.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qsp {

std::string GQ::to_string() const {
  if (im == 0) return re.get_str();
  std::ostringstream os;
  if (re != 0) os << re.get_str() << (im > 0 ? "+" : "");
  if (im == 1) {
    os << "i";
  } else if (im == -1) {
    os << "-i";
  } else {
    os << im.get_str() << "*i";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(GQ constant) {
  if (!constant.is_zero()) c_.push_back(std::move(constant));
}

Poly::Poly(std::vector<GQ> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(GQ c, int k) {
  if (c.is_zero()) return Poly();
  std::vector<GQ> v(static_cast<size_t>(k) + 1);
  v[static_cast<size_t>(k)] = std::move(c);
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int Poly::low_degree() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return static_cast<int>(k);
  return 0;
}

const GQ& Poly::coeff(int k) const {
  static const GQ kZero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<size_t>(k)];
}

GQ Poly::leading() const { return c_.empty() ? GQ() : c_.back(); }

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<GQ> r(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < r.size(); ++k) {
    r[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  }
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<GQ> r(c_.size() + o.c_.size() - 1);
  for (size_t a = 0; a < c_.size(); ++a) {
    if (c_[a].is_zero()) continue;
    for (size_t b = 0; b < o.c_.size(); ++b) {
      if (o.c_[b].is_zero()) continue;
      r[a + b] += c_[a] * o.c_[b];
    }
  }
  return Poly(std::move(r));
}

Poly Poly::operator*(const GQ& s) const {
  if (s.is_zero()) return Poly();
  Poly r(*this);
  for (auto& x : r.c_) x *= s;
  return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly* quot, Poly* rem) {
  if (b.is_zero()) throw error("Poly: division by zero");
  std::vector<GQ> r = a.c_;
  std::vector<GQ> q;
  int db = b.degree();
  GQ lead_inv = b.leading().inverse();
  if (static_cast<int>(r.size()) - 1 >= db) {
    q.assign(r.size() - static_cast<size_t>(db), GQ());
  }
  for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
    if (r[static_cast<size_t>(k)].is_zero()) continue;
    GQ f = r[static_cast<size_t>(k)] * lead_inv;
    q[static_cast<size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) {
      r[static_cast<size_t>(k - db + j)] -= f * b.coeff(j);
    }
  }
  if (quot) *quot = Poly(std::move(q));
  if (rem) *rem = Poly(std::move(r));
}

Poly Poly::divide_exact(const Poly& b) const {
  Poly q, r;
  divmod(*this, b, &q, &r);
  if (!r.is_zero()) throw error("Poly: non-exact division");
  return q;
}

bool Poly::divisible_by(const Poly& b) const {
  Poly q, r;
  divmod(*this, b, &q, &r);
  return r.is_zero();
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r;
    divmod(a, b, nullptr, &r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // Normalize monic.
  return a * a.leading().inverse();
}

GQ Poly::evaluate(const GQ& x) const {
  GQ r;
  for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
  return r;
}

bool Poly::has_gaussian_integer_coeffs() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const GQ& x) { return x.is_gaussian_integer(); });
}

bool Poly::has_real_coeffs() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const GQ& x) { return x.is_real(); });
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const GQ& a = coeff(k);
    if (a.is_zero()) continue;
    std::string cs = a.to_string();
    bool negated = false;
    if (!first && a.is_real() && a.re < 0) {
      os << "-";
      cs = (-a).to_string();
      negated = true;
    } else if (!first) {
      os << "+";
    }
    (void)negated;
    bool coeff_is_one = (cs == "1");
    if (k == 0) {
      os << cs;
    } else {
      if (!coeff_is_one) {
        if (!a.is_real()) {
          os << "(" << cs << ")*";
        } else {
          os << cs << "*";
        }
      }
      os << "v";
      if (k != 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

Poly cyclotomic(int d) {
  if (d <= 0) throw error("cyclotomic: d must be positive");
  // v^d - 1
  std::vector<GQ> c(static_cast<size_t>(d) + 1);
  c[0] = GQ(-1);
  c[static_cast<size_t>(d)] = GQ(1);
  Poly r{std::vector<GQ>(c)};
  for (int e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    r = r.divide_exact(cyclotomic(e));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(long n) : num_(Poly(GQ(n))), den_(Poly(GQ(1))) {}
Scalar::Scalar(GQ c) : num_(Poly(std::move(c))), den_(Poly(GQ(1))) {}

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw error("Scalar: zero denominator");
  reduce();
}

void Scalar::reduce() {
  if (num_.is_zero()) {
    den_ = Poly(GQ(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  GQ lead = den_.leading();
  if (!(lead == GQ(1))) {
    GQ inv = lead.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

Scalar Scalar::v_power(long k) {
  if (k >= 0) return Scalar(Poly::monomial(GQ(1), static_cast<int>(k)), Poly(GQ(1)));
  return Scalar(Poly(GQ(1)), Poly::monomial(GQ(1), static_cast<int>(-k)));
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw error("Scalar: division by zero");
  return Scalar(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long k) const {
  if (k == 0) return Scalar::one();
  Scalar base = k > 0 ? *this : inverse();
  long n = k > 0 ? k : -k;
  Scalar r = Scalar::one();
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

bool Scalar::operator<(const Scalar& o) const {
  auto key = [](const Scalar& s) {
    std::ostringstream os;
    os << s.num_.to_string() << "/" << s.den_.to_string();
    return os.str();
  };
  return key(*this) < key(o);
}

bool Scalar::has_pole_at_one() const {
  return den_.evaluate(GQ(1)).is_zero();
}

GQ Scalar::specialize_at_one() const {
  GQ d = den_.evaluate(GQ(1));
  if (d.is_zero()) throw error("Scalar: pole at v = 1 in " + to_string());
  return num_.evaluate(GQ(1)) / d;
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  std::string n = num_.to_string();
  if (den_ == Poly(GQ(1))) return n;
  std::string d = den_.to_string();
  std::ostringstream os;
  os << "(" << n << ")/(" << d << ")";
  return os.str();
}

Scalar divide_exact(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw error("divide_exact: division by zero");
  return a / b;
}

Scalar quantum_integer(long n, long eps) {
  // [n]_{q_i} with q_i = q^{eps} = v^{2 eps}.
  // (q_i^n - q_i^{-n}) / (q_i - q_i^{-1})
  if (n == 0) return Scalar::zero();
  Scalar qi = Scalar::v_power(2 * eps);
  return (qi.pow(n) - qi.pow(-n)) / (qi - qi.pow(-1));
}

Scalar quantum_factorial(long n, long eps) {
  if (n < 0) throw error("quantum_factorial: negative argument");
  Scalar r = Scalar::one();
  for (long k = 2; k <= n; ++k) r *= quantum_integer(k, eps);
  return r;
}

Scalar quantum_binomial(long m, long k, long eps) {
  if (k < 0) throw error("quantum_binomial: negative k");
  Scalar r = Scalar::one();
  for (long j = 0; j < k; ++j) r *= quantum_integer(m - j, eps);
  return r / quantum_factorial(k, eps);
}

// ---------------------------------------------------------------------------
// IntegralityProfile

IntegralityProfile::IntegralityProfile(const std::vector<long>& eps,
                                       bool gaussian)
    : gaussian_(gaussian) {
  // Product (1+q) * prod_i N_i(v) where N_i is the v-power cleared numerator
  // of [eps_i]_q!.  All quantum integer numerators are products of cyclotomic
  // polynomials, so trial division by Phi_d suffices and each factor is
  // provably irreducible over Q.
  Scalar prod = Scalar::q_power(1) + Scalar::one();  // 1 + q
  long max_eps = 1;
  for (long e : eps) {
    if (e < 1 || e > 3) throw error("IntegralityProfile: eps out of range");
    max_eps = std::max(max_eps, e);
    prod *= quantum_factorial(e, 1);
  }
  Poly p = prod.num();  // v-power cleared numerator
  std::map<int, Poly> found;
  for (int d = 1; d <= 4 * static_cast<int>(max_eps) + 4; ++d) {
    Poly phi = cyclotomic(d);
    if (phi.degree() == 0) continue;
    bool divides = p.divisible_by(phi);
    while (p.divisible_by(phi)) p = p.divide_exact(phi);
    if (divides && !(phi == Poly::monomial(GQ(1), 1))) found.emplace(d, phi);
  }
  // Phi_1 = v - 1 and Phi_2 = v + 1 never divide quantum integer numerators
  // of the localized ring; the residual must be a v-power.
  if (p.degree() != p.low_degree())
    throw error("IntegralityProfile: unexpected non-cyclotomic factor");
  for (auto& [d, phi] : found) {
    if (d == 1 || d == 2) continue;  // v^{+-1} shifts only
    factors_.push_back(phi);
  }
}

bool IntegralityProfile::is_in_A_prime(const Scalar& s) const {
  if (s.is_zero()) return true;
  // Denominator: strip allowed factors, remainder must be a pure v-power.
  Poly d = s.den();
  for (const Poly& f : factors_) {
    while (d.degree() >= f.degree() && d.divisible_by(f)) d = d.divide_exact(f);
  }
  if (d.degree() != d.low_degree()) return false;  // not a monomial
  if (!(d.coeff(d.degree()) == GQ(1))) return false;
  // Numerator: coefficients must lie in the constant ring.
  if (!s.num().has_gaussian_integer_coeffs()) return false;
  if (!gaussian_ && !s.num().has_real_coeffs()) return false;
  return true;
}

std::string IntegralityProfile::describe() const {
  std::ostringstream os;
  os << "constants: " << (gaussian_ ? "Z[i]" : "Z") << "; allowed factors:";
  for (const Poly& f : factors_) os << " (" << f.to_string() << ")";
  return os.str();
}

}  // namespace qsp
