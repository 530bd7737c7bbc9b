#include "qsp/braid.hpp"

#include <algorithm>

namespace qsp {

BraidOperators::BraidOperators(UAlgebra& algebra) : algebra_(algebra) {
  const int n = algebra_.cartan().rank();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Weight aj = weight_alpha(n, j);
      for (const UElement& g :
           {algebra_.F(j), algebra_.E(j), algebra_.K(aj)}) {
        if (apply_T(i, -1, apply_T(i, 1, g)) != g ||
            apply_T(i, 1, apply_T(i, -1, g)) != g)
          throw error("BraidOperators: T_i inverse check failed at node " +
                      std::to_string(i + 1));
      }
    }
  }
}

UElement BraidOperators::forward_F(int i, int j) {
  const CartanData& c = algebra_.cartan();
  if (i == j) {
    // T_i(F_i) = q_i K_i^{-1} E_i.
    UElement x = algebra_.multiply(algebra_.K(-weight_alpha(c.rank(), i)),
                                   algebra_.E(i));
    return x * algebra_.qi(i);
  }
  long m = -c.a(i, j);
  long eps = c.eps(i);
  UElement sum;
  for (long r = 0; r <= m; ++r) {
    UElement t = algebra_.multiply(
        algebra_.power(algebra_.F(i), r),
        algebra_.multiply(algebra_.F(j), algebra_.power(algebra_.F(i), m - r)));
    Scalar coef = quantum_binomial(m, r, eps) * Scalar::q_power(eps * r);
    if (r % 2) coef = -coef;
    sum += t * coef;
  }
  Scalar qq = Scalar::q_power(eps) - Scalar::q_power(-eps);
  Scalar pre = Scalar::v_power(-eps * m) *
               (qq.pow(m) * quantum_factorial(m, eps)).inverse();
  return sum * pre;
}

UElement BraidOperators::forward_E(int i, int j) {
  const CartanData& c = algebra_.cartan();
  if (i == j) {
    // T_i(E_i) = q_i^{-1} F_i K_i.
    UElement x = algebra_.multiply(algebra_.F(i),
                                   algebra_.K(weight_alpha(c.rank(), i)));
    return x * algebra_.qi(i).inverse();
  }
  long m = -c.a(i, j);
  long eps = c.eps(i);
  UElement sum;
  for (long r = 0; r <= m; ++r) {
    UElement t = algebra_.multiply(
        algebra_.power(algebra_.E(i), m - r),
        algebra_.multiply(algebra_.E(j), algebra_.power(algebra_.E(i), r)));
    Scalar coef = quantum_binomial(m, r, eps) * Scalar::q_power(-eps * r);
    if (r % 2) coef = -coef;
    sum += t * coef;
  }
  Scalar qq = Scalar::q_power(-eps) - Scalar::q_power(eps);
  Scalar pre = Scalar::v_power(eps * m) *
               (qq.pow(m) * quantum_factorial(m, eps)).inverse();
  return sum * pre;
}

UElement BraidOperators::generator_image(int i, int dir, int kind, int j) {
  auto key = std::make_tuple(i, dir, kind, j);
  auto it = gen_cache_.find(key);
  if (it != gen_cache_.end()) return it->second;
  UElement img;
  if (dir > 0) {
    img = kind == 0 ? forward_F(i, j) : forward_E(i, j);
  } else {
    UElement g = kind == 0 ? algebra_.F(j) : algebra_.E(j);
    img = sigma(apply_T(i, 1, sigma(g)));
  }
  gen_cache_.emplace(key, img);
  return img;
}

UElement BraidOperators::apply_T(int i, int dir, const UElement& x) {
  const CartanData& c = algebra_.cartan();
  UElement result;
  for (const auto& [m, coef] : x.terms()) {
    UElement acc = algebra_.scalar(coef);
    for (int j : m.f) acc = algebra_.multiply(acc, generator_image(i, dir, 0, j));
    if (!is_zero(m.mu))
      acc = algebra_.multiply(acc, algebra_.K(c.reflect(i, m.mu)));
    for (int j : m.e) acc = algebra_.multiply(acc, generator_image(i, dir, 2, j));
    result += acc;
  }
  return result;
}

UElement BraidOperators::apply_word(const WeylWord& w, int dir, const UElement& x) {
  UElement r = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = apply_T(*it, dir, r);
  return r;
}

UElement BraidOperators::sigma(const UElement& x) {
  UElement result;
  for (const auto& [m, coef] : x.terms()) {
    Word fr(m.f.rbegin(), m.f.rend());
    Word er(m.e.rbegin(), m.e.rend());
    UElement acc = algebra_.from_e_word(er);
    acc = algebra_.multiply(acc, algebra_.K(-m.mu));
    acc = algebra_.multiply(acc, algebra_.from_f_word(fr));
    result += acc * coef;
  }
  return result;
}

PBWData BraidOperators::root_vectors(const WeylWord& w) {
  PBWData data;
  data.roots = inversion_set(algebra_.cartan(), w);
  for (size_t k = 0; k < w.size(); ++k) {
    WeylWord prefix(w.begin(), w.begin() + k);
    data.f_root_vectors.push_back(apply_word(prefix, 1, algebra_.F(w[k])));
    data.e_root_vectors.push_back(apply_word(prefix, 1, algebra_.E(w[k])));
  }
  return data;
}

bool BraidOperators::verify_braid_relation(int i, int j) {
  int m = braid_order(algebra_.cartan(), {i}, {j});
  WeylWord left, right;
  for (int k = 0; k < m; ++k) {
    left.push_back(k % 2 == 0 ? i : j);
    right.push_back(k % 2 == 0 ? j : i);
  }
  const int n = algebra_.cartan().rank();
  for (int g = 0; g < n; ++g) {
    Weight ag = weight_alpha(n, g);
    for (const UElement& x : {algebra_.F(g), algebra_.E(g), algebra_.K(ag)}) {
      if (apply_word(left, 1, x) != apply_word(right, 1, x)) return false;
    }
  }
  return true;
}

bool BraidOperators::verify_defining_relations(int i, int dir) {
  const CartanData& c = algebra_.cartan();
  const int n = c.rank();
  auto TF = [&](int j) { return generator_image(i, dir, 0, j); };
  auto TE = [&](int j) { return generator_image(i, dir, 2, j); };
  auto TK = [&](const Weight& mu) {
    Weight img = dir > 0 ? c.reflect(i, mu) : c.reflect(i, mu);
    return algebra_.K(img);
  };
  for (int j = 0; j < n; ++j) {
    Weight aj = weight_alpha(n, j);
    // K_j K_j^{-1} = 1.
    if (algebra_.multiply(TK(aj), TK(-aj)) != algebra_.one()) return false;
    for (int k = 0; k < n; ++k) {
      Weight ak = weight_alpha(n, k);
      // [E_j, F_k] = delta_{jk} (q_j - q_j^{-1})(K_j^{-1} - K_j).
      UElement lhs = algebra_.multiply(TE(j), TF(k)) -
                     algebra_.multiply(TF(k), TE(j));
      UElement rhs;
      if (j == k)
        rhs = (TK(-aj) - TK(aj)) * (algebra_.qi(j) - algebra_.qi(j).inverse());
      if (lhs != rhs) return false;
      // K_j E_k K_j^{-1} = q_j^{a_jk} E_k and the F version.
      UElement ke = algebra_.multiply(TK(aj), algebra_.multiply(TE(k), TK(-aj)));
      if (ke != TE(k) * Scalar::q_power(c.eps(j) * c.a(j, k))) return false;
      UElement kf = algebra_.multiply(TK(aj), algebra_.multiply(TF(k), TK(-aj)));
      if (kf != TF(k) * Scalar::q_power(-c.eps(j) * c.a(j, k))) return false;
      if (j == k) continue;
      // Quantum Serre relations in the images.
      long m = 1 - c.a(j, k);
      UElement serre_f, serre_e;
      for (long r = 0; r <= m; ++r) {
        Scalar coef = quantum_binomial(m, r, c.eps(j));
        if (r % 2) coef = -coef;
        serre_f += algebra_.multiply(
                       algebra_.power(TF(j), r),
                       algebra_.multiply(TF(k), algebra_.power(TF(j), m - r))) *
                   coef;
        serre_e += algebra_.multiply(
                       algebra_.power(TE(j), r),
                       algebra_.multiply(TE(k), algebra_.power(TE(j), m - r))) *
                   coef;
      }
      if (!serre_f.is_zero() || !serre_e.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace qsp
