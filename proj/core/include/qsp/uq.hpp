// The quantized enveloping algebra in triangular normal form: elements are
// exact linear combinations of monomials F_w K_mu E_u with w, u standard
// (Serre-irreducible) words.  Standard words are determined by an exact,
// lazily completed rewriting system whose correctness is certified per
// multidegree by comparing with the Kostant partition count.
#ifndef QSP_UQ_HPP
#define QSP_UQ_HPP

#include <map>
#include <string>
#include <vector>

#include "qsp/rootdata.hpp"
#include "qsp/scalar.hpp"

namespace qsp {

using Word = std::vector<int>;  // word in node letters

// F_{w_1}..F_{w_k} K_mu E_{u_1}..E_{u_l}, with w and u standard words.
struct UMonomial {
  Word f;
  Weight mu;
  Word e;

  bool operator<(const UMonomial& o) const;
  bool operator==(const UMonomial& o) const {
    return f == o.f && mu == o.mu && e == o.e;
  }
};

// A finite linear combination of normal monomials with nonzero coefficients.
class UElement {
 public:
  using Terms = std::map<UMonomial, Scalar>;

  UElement() = default;

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

  void add(const UMonomial& m, const Scalar& c);
  UElement operator+(const UElement& o) const;
  UElement operator-(const UElement& o) const;
  UElement operator-() const;
  UElement operator*(const Scalar& c) const;
  UElement& operator+=(const UElement& o);
  UElement& operator-=(const UElement& o);
  bool operator==(const UElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const UElement& o) const { return !(*this == o); }

  // Deterministic rendering (term order follows the monomial order).
  std::string to_string() const;

 private:
  Terms terms_;
};

// The word content as an element of the root lattice.
Weight word_content(int rank, const Word& w);

// All words with the given content, in lexicographic order.
std::vector<Word> words_of_content(const Weight& content);

class UAlgebra {
 public:
  explicit UAlgebra(CartanData cartan);

  const CartanData& cartan() const { return cartan_; }
  // q_i = q^{eps_i}.
  Scalar qi(int i) const { return Scalar::q_power(cartan_.eps(i)); }

  // Ceiling on the number of words in a Serre component; exceeding it
  // raises a structured error instead of thrashing.
  void set_component_word_limit(long limit) { word_limit_ = limit; }
  // Components at most this large are resolved by full row reduction; larger
  // ones rely on rules harvested from smaller components, certified by the
  // Kostant count.
  void set_row_reduction_threshold(long limit) { rref_threshold_ = limit; }

  // Generators.
  UElement one() const;
  UElement F(int i) const;
  UElement E(int i) const;
  UElement K(const Weight& mu) const;
  UElement scalar(const Scalar& c) const;

  // Normalized elements from arbitrary letter words.
  UElement from_f_word(const Word& w);
  UElement from_e_word(const Word& w);

  UElement multiply(const UElement& a, const UElement& b);
  UElement power(const UElement& a, long n);
  // [a, b]_{q^c} = ab - q^c ba.
  UElement q_commutator(const UElement& a, const UElement& b, long c);
  // {a, b}_{q^c} = [a, b]_{q^c} / (q - 1).
  UElement rescaled_q_commutator(const UElement& a, const UElement& b, long c);

  // Standard words of the given content (their span has dimension equal to
  // the Kostant partition count, which is asserted).
  const std::vector<Word>& standard_words(const Weight& content);

  // True if every coefficient lies in the localized integral form.
  static bool is_integral(const UElement& x, const IntegralityProfile& profile);

 private:
  struct Rule {
    // lead (the lexicographically least word of its relation) rewrites to
    // the combination of strictly lex-greater words.
    std::vector<std::pair<Scalar, Word>> rhs;
  };
  struct Component {
    std::vector<Word> standard;  // sorted
  };

  void ensure_component(const Weight& content);
  void harvest_by_row_reduction(const Weight& content);
  void certify_by_counting(const Weight& content);
  bool reducible(const Word& w, size_t* pos, const Word** lead) const;
  // Serre normal form of a pure f/e word combination.
  std::map<Word, Scalar> word_normal_form(std::map<Word, Scalar> elem);
  UElement normalize_tokens(std::vector<std::pair<Scalar, std::vector<int>>>
                                worklist,
                            const std::vector<Weight>& kweights);

  CartanData cartan_;
  long word_limit_ = 2000000;
  long rref_threshold_ = 3000;
  std::map<Word, Rule> rules_;
  size_t max_lead_len_ = 0;
  std::map<Weight, Component> components_;
};

// A PBW datum: the positive roots in the inversion order of a reduced word
// for w_0 together with the corresponding root vectors (as elements of U).
struct PBWData {
  std::vector<Weight> roots;
  std::vector<UElement> f_root_vectors;  // F_{beta_k}
  std::vector<UElement> e_root_vectors;  // E_{beta_k}
};

// PBW monomial exponents: prod_k F_{beta_k}^{a_k} K_mu prod_k E_{beta_k}^{c_k}
// (the F product in increasing k, the E product in decreasing k).
struct PBWMonomial {
  std::vector<long> f_exp;
  Weight mu;
  std::vector<long> e_exp;
  bool operator<(const PBWMonomial& o) const;
};

class PBWBasis {
 public:
  PBWBasis(UAlgebra& algebra, PBWData data);

  const PBWData& data() const { return data_; }

  UElement expand(const PBWMonomial& m);
  // Exact coordinates in the PBW basis; total on all of U.
  std::map<PBWMonomial, Scalar> coordinates(const UElement& x);

 private:
  struct Block {
    std::vector<std::vector<long>> exps;  // exponent vectors with content nu
    std::vector<Word> standard;           // standard words of content nu
    // inverse of the (standard-word x exponent-vector) expansion matrix
    std::vector<std::vector<Scalar>> inverse;
  };
  const Block& f_block(const Weight& content);
  const Block& e_block(const Weight& content);
  Block build_block(const Weight& content, bool e_side);
  UElement f_power_product(const std::vector<long>& exp);
  UElement e_power_product(const std::vector<long>& exp);

  UAlgebra& algebra_;
  PBWData data_;
  std::map<Weight, Block> f_blocks_;
  std::map<Weight, Block> e_blocks_;
  std::map<std::vector<long>, UElement> f_cache_;
  std::map<std::vector<long>, UElement> e_cache_;
};

// All exponent vectors a >= 0 on the given roots with sum_k a_k roots[k] =
// content, in lexicographic order.
std::vector<std::vector<long>> exponent_vectors(const std::vector<Weight>& roots,
                                                const Weight& content);

}  // namespace qsp

#endif  // QSP_UQ_HPP
