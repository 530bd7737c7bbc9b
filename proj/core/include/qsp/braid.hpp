// Lusztig braid group operators T_i (the T''_{i,+1} convention) acting on
// the quantized enveloping algebra, their inverses via the bar-type
// anti-automorphism transport, and PBW root vectors attached to reduced
// words.
#ifndef QSP_BRAID_HPP
#define QSP_BRAID_HPP

#include <map>

#include "qsp/uq.hpp"

namespace qsp {

class BraidOperators {
 public:
  // Verifies T_i T_i^{-1} = id on all generators at construction.
  explicit BraidOperators(UAlgebra& algebra);

  UAlgebra& algebra() const { return algebra_; }

  // T_i^{dir} with dir in {+1, -1}.
  UElement apply_T(int i, int dir, const UElement& x);
  // T_{w_1}^{dir} ... T_{w_k}^{dir} (x), leftmost operator applied last.
  UElement apply_word(const WeylWord& w, int dir, const UElement& x);

  // The anti-automorphism with E_i -> E_i, F_i -> F_i, K_mu -> K_{-mu}
  // (transports T_i to its inverse).
  UElement sigma(const UElement& x);

  // Root vectors F_{beta_k} = T_{i_1}...T_{i_{k-1}}(F_{i_k}) and the E-side
  // analogues along a reduced word; roots in inversion order.
  PBWData root_vectors(const WeylWord& w);

  // Checks the braid relation on all generators: both alternating products
  // of length braid_order(i, j) agree.
  bool verify_braid_relation(int i, int j);
  // Checks that T_i^{dir} preserves the defining relations.
  bool verify_defining_relations(int i, int dir);

 private:
  UElement generator_image(int i, int dir, int kind, int j);  // kind 0=F, 2=E
  UElement forward_F(int i, int j);
  UElement forward_E(int i, int j);

  UAlgebra& algebra_;
  std::map<std::tuple<int, int, int, int>, UElement> gen_cache_;
};

}  // namespace qsp

#endif  // QSP_BRAID_HPP
