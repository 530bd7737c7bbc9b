// Exact Gaussian rational arithmetic: elements a + b*i with a, b arbitrary
// precision rationals.  This is the coefficient field for all polynomial
// arithmetic in the engine; no floating point is used anywhere.
#ifndef QSP_GAUSSIAN_HPP
#define QSP_GAUSSIAN_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qsp {

// Thrown on any domain violation (non-exact division, invalid diagram, ...).
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A Gaussian rational a + b*i.
struct GQ {
  mpq_class re;
  mpq_class im;

  GQ() : re(0), im(0) {}
  GQ(long a) : re(a), im(0) {}  // NOLINT: implicit by design
  GQ(const mpq_class& a) : re(a), im(0) {}
  GQ(mpq_class a, mpq_class b) : re(std::move(a)), im(std::move(b)) {}

  static GQ i() { return GQ(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GQ conj() const { return GQ(re, -im); }

  // |z|^2 = z * conj(z), a nonnegative rational.
  mpq_class norm() const { return re * re + im * im; }

  GQ operator-() const { return GQ(-re, -im); }
  GQ operator+(const GQ& o) const { return GQ(re + o.re, im + o.im); }
  GQ operator-(const GQ& o) const { return GQ(re - o.re, im - o.im); }
  GQ operator*(const GQ& o) const {
    return GQ(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GQ inverse() const {
    if (is_zero()) throw error("GQ: division by zero");
    mpq_class n = norm();
    return GQ(re / n, -im / n);
  }
  GQ operator/(const GQ& o) const { return *this * o.inverse(); }

  GQ& operator+=(const GQ& o) { re += o.re; im += o.im; return *this; }
  GQ& operator-=(const GQ& o) { re -= o.re; im -= o.im; return *this; }
  GQ& operator*=(const GQ& o) { *this = *this * o; return *this; }

  bool operator==(const GQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GQ& o) const { return !(*this == o); }

  // True if both components are integers (element of Z[i]).
  bool is_gaussian_integer() const {
    return re.get_den() == 1 && im.get_den() == 1;
  }

  std::string to_string() const;
};

}  // namespace qsp

#endif  // QSP_GAUSSIAN_HPP
