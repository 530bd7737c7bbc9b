#include "qsp/iqg.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace qsp {

namespace {

Scalar half_sum() {  // q^{1/2} + q^{-1/2}
  return Scalar::v_power(1) + Scalar::v_power(-1);
}

}  // namespace

// ---------------------------------------------------------------------------
// IExpr
// ---------------------------------------------------------------------------

IExpr IExpr::scalar(Scalar c) {
  IExpr x;
  x.kind_ = Kind::Scalar;
  x.coef_ = std::move(c);
  return x;
}

IExpr IExpr::B(int i) {
  IExpr x;
  x.kind_ = Kind::B;
  x.node_ = i;
  return x;
}

IExpr IExpr::Fb(int j) {
  IExpr x;
  x.kind_ = Kind::Fb;
  x.node_ = j;
  return x;
}

IExpr IExpr::Eb(int j) {
  IExpr x;
  x.kind_ = Kind::Eb;
  x.node_ = j;
  return x;
}

IExpr IExpr::Kmu(Weight mu) {
  IExpr x;
  x.kind_ = Kind::Kmu;
  x.mu_ = std::move(mu);
  return x;
}

IExpr IExpr::sum(std::vector<IExpr> args) {
  IExpr x;
  x.kind_ = Kind::Sum;
  x.args_ = std::move(args);
  return x;
}

IExpr IExpr::product(std::vector<IExpr> args) {
  IExpr x;
  x.kind_ = Kind::Product;
  x.args_ = std::move(args);
  return x;
}

IExpr IExpr::smul(Scalar c, IExpr arg) {
  IExpr x;
  x.kind_ = Kind::ScalarMul;
  x.coef_ = std::move(c);
  x.args_.push_back(std::move(arg));
  return x;
}

IExpr IExpr::black_twist(WeylWord w, int dir, IExpr arg) {
  if (dir != 1 && dir != -1) throw error("IExpr: twist direction must be +-1");
  if (w.empty()) return arg;
  IExpr x;
  x.kind_ = Kind::BlackTwist;
  x.word_ = std::move(w);
  x.dir_ = dir;
  x.args_.push_back(std::move(arg));
  return x;
}

IExpr IExpr::qcomm(IExpr a, IExpr b, long qpow) {
  IExpr x;
  x.kind_ = Kind::QComm;
  x.qpow_ = qpow;
  x.args_.push_back(std::move(a));
  x.args_.push_back(std::move(b));
  return x;
}

std::string IExpr::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Scalar:
      os << "(" << coef_.to_string() << ")";
      break;
    case Kind::B:
      os << "B" << node_ + 1;
      break;
    case Kind::Fb:
      os << "F" << node_ + 1;
      break;
    case Kind::Eb:
      os << "E" << node_ + 1;
      break;
    case Kind::Kmu:
      os << "K" << weight_to_string(mu_);
      break;
    case Kind::Sum:
      for (size_t k = 0; k < args_.size(); ++k)
        os << (k ? " + " : "") << args_[k].to_string();
      break;
    case Kind::Product:
      for (const auto& a : args_) os << "(" << a.to_string() << ")";
      break;
    case Kind::ScalarMul:
      os << "(" << coef_.to_string() << ")*(" << args_[0].to_string() << ")";
      break;
    case Kind::BlackTwist:
      os << "T";
      if (dir_ < 0) os << "inv";
      os << "_{";
      for (size_t k = 0; k < word_.size(); ++k)
        os << (k ? "," : "") << word_[k] + 1;
      os << "}(" << args_[0].to_string() << ")";
      break;
    case Kind::QComm:
      os << "{" << args_[0].to_string() << ", " << args_[1].to_string()
         << "}_q^" << qpow_;
      break;
  }
  return os.str();
}

bool IPBWMonomial::operator<(const IPBWMonomial& o) const {
  if (b_exp != o.b_exp) return b_exp < o.b_exp;
  if (f_exp != o.f_exp) return f_exp < o.f_exp;
  if (k_exp != o.k_exp) return k_exp < o.k_exp;
  return e_exp < o.e_exp;
}

// ---------------------------------------------------------------------------
// IQG basics
// ---------------------------------------------------------------------------

IQG::IQG(SatakeDiagram diagram)
    : diagram_(std::move(diagram)),
      algebra_(diagram_.cartan()),
      braid_(algebra_) {
  pbw_ = std::make_unique<PBWBasis>(algebra_,
                                    braid_.root_vectors(diagram_.w0_word()));
  black_offset_ = diagram_.w0_block_offsets().back();
  validate_twist_rule();
}

void IQG::validate_twist_rule() {
  // sigma_tau . T_j = T_{tau j}^{-1} . sigma_tau for black j, certified on
  // every generator before any black-twist node is ever rewritten.
  const int n = diagram_.rank();
  std::vector<UElement> gens;
  for (int k = 0; k < n; ++k) {
    gens.push_back(algebra_.F(k));
    gens.push_back(algebra_.E(k));
    gens.push_back(algebra_.K(weight_alpha(n, k)));
  }
  for (int j : diagram_.black_nodes()) {
    for (const auto& g : gens) {
      UElement lhs = sigma_tau_U(braid_.apply_T(j, 1, g));
      UElement rhs = braid_.apply_T(diagram_.tau(j), -1, sigma_tau_U(g));
      if (lhs != rhs)
        throw error("IQG: the sigma_tau twist rule fails on a generator");
    }
  }
}

const UElement& IQG::B_elem(int i) {
  auto it = b_cache_.find(i);
  if (it != b_cache_.end()) return it->second;
  const int n = diagram_.rank();
  UElement val;
  if (diagram_.is_black(i)) {
    val = algebra_.F(i);
  } else {
    int ti = diagram_.tau(i);
    Weight wa = diagram_.weyl().act(
        diagram_.weyl().from_word(diagram_.w_black_word()),
        weight_alpha(n, ti));
    long pairing = diagram_.cartan().coroot_pairing(i, wa);
    Scalar c = Scalar(diagram_.c_sign(i)) *
               Scalar::v_power(-diagram_.cartan().eps(i) * pairing);
    UElement twist =
        braid_.apply_word(diagram_.w_black_word(), 1, algebra_.E(ti));
    UElement tail = algebra_.multiply(
        twist, algebra_.K(-weight_alpha(n, i)));
    val = algebra_.F(i) - tail * c;
  }
  return b_cache_.emplace(i, std::move(val)).first->second;
}

UElement IQG::k_elem(int i, int sign) {
  const int n = diagram_.rank();
  Weight mu = weight_alpha(n, i) - weight_alpha(n, diagram_.tau(i));
  if (sign < 0) mu = -mu;
  return algebra_.K(mu);
}

UElement IQG::eval(const IExpr& x) {
  switch (x.kind()) {
    case IExpr::Kind::Scalar:
      return algebra_.scalar(x.coef());
    case IExpr::Kind::B:
      return B_elem(x.node());
    case IExpr::Kind::Fb:
      if (!diagram_.is_black(x.node()))
        throw error("IExpr: F-leaf on a white node");
      return algebra_.F(x.node());
    case IExpr::Kind::Eb:
      if (!diagram_.is_black(x.node()))
        throw error("IExpr: E-leaf on a white node");
      return algebra_.E(x.node());
    case IExpr::Kind::Kmu:
      return algebra_.K(x.mu());
    case IExpr::Kind::Sum: {
      UElement acc;
      for (const auto& a : x.args()) acc += eval(a);
      return acc;
    }
    case IExpr::Kind::Product: {
      UElement acc = algebra_.one();
      for (const auto& a : x.args()) acc = algebra_.multiply(acc, eval(a));
      return acc;
    }
    case IExpr::Kind::ScalarMul:
      return eval(x.args()[0]) * x.coef();
    case IExpr::Kind::BlackTwist: {
      for (int letter : x.word())
        if (!diagram_.is_black(letter))
          throw error("IExpr: black twist with a white letter");
      return braid_.apply_word(x.word(), x.dir(), eval(x.args()[0]));
    }
    case IExpr::Kind::QComm:
      return algebra_.rescaled_q_commutator(eval(x.args()[0]),
                                            eval(x.args()[1]), x.qpow());
  }
  throw error("IExpr: unknown node kind");
}

// ---------------------------------------------------------------------------
// Projection and filtration
// ---------------------------------------------------------------------------

UElement IQG::project_P(const UElement& x) {
  const int off = black_offset_;
  const auto& roots = pbw_->data().roots;
  UElement out;
  for (const auto& [m, c] : x.terms()) {
    Weight mu_iota;
    if (!diagram_.decompose_torus_weight(m.mu, &mu_iota))
      throw error("project_P: torus weight outside Y^i + Z<reps>");
    auto it = eproj_cache_.find(m.e);
    if (it == eproj_cache_.end()) {
      UElement proj;
      if (m.e.empty()) {
        proj = algebra_.one();
      } else {
        UElement eu;
        eu.add(UMonomial{{}, weight_zero(diagram_.rank()), m.e}, Scalar::one());
        for (const auto& [pm, pc] : pbw_->coordinates(eu)) {
          bool black_supported = true;
          for (int k = 0; k < off; ++k)
            if (pm.e_exp[static_cast<size_t>(k)] != 0) black_supported = false;
          (void)roots;
          if (black_supported) proj += pbw_->expand(pm) * pc;
        }
      }
      it = eproj_cache_.emplace(m.e, std::move(proj)).first;
    }
    for (const auto& [em, ec] : it->second.terms()) {
      // em is a pure E-monomial; juxtaposition is already normal form.
      out.add(UMonomial{m.f, mu_iota, em.e}, c * ec);
    }
  }
  return out;
}

long IQG::filtration_degree(const UElement& x) const {
  long best = -1;
  for (const auto& [m, c] : x.terms()) {
    (void)c;
    long d = 0;
    for (int a : m.f)
      if (diagram_.is_white(a)) ++d;
    for (int a : m.e)
      if (diagram_.is_white(a)) ++d;
    best = std::max(best, d);
  }
  return best;
}

// ---------------------------------------------------------------------------
// sigma_tau
// ---------------------------------------------------------------------------

UElement IQG::sigma_tau_U(const UElement& x) {
  const int n = diagram_.rank();
  UElement out;
  for (const auto& [m, c] : x.terms()) {
    Word ew(m.e.rbegin(), m.e.rend());
    Word fw(m.f.rbegin(), m.f.rend());
    for (int& a : ew) a = diagram_.tau(a);
    for (int& a : fw) a = diagram_.tau(a);
    Weight mu(n, 0);
    for (int k = 0; k < n; ++k) mu[static_cast<size_t>(diagram_.tau(k))] -= m.mu[static_cast<size_t>(k)];
    UElement term = algebra_.from_e_word(ew);
    term = algebra_.multiply(term, algebra_.K(mu));
    term = algebra_.multiply(term, algebra_.from_f_word(fw));
    out += term * c;
  }
  return out;
}

IExpr IQG::sigma_tau(const IExpr& x) const {
  const int n = diagram_.rank();
  switch (x.kind()) {
    case IExpr::Kind::Scalar:
      return x;
    case IExpr::Kind::B:
      return IExpr::B(diagram_.tau(x.node()));
    case IExpr::Kind::Fb:
      return IExpr::Fb(diagram_.tau(x.node()));
    case IExpr::Kind::Eb:
      return IExpr::Eb(diagram_.tau(x.node()));
    case IExpr::Kind::Kmu: {
      Weight mu(n, 0);
      for (int k = 0; k < n; ++k)
        mu[static_cast<size_t>(diagram_.tau(k))] -= x.mu()[static_cast<size_t>(k)];
      return IExpr::Kmu(mu);
    }
    case IExpr::Kind::Sum: {
      std::vector<IExpr> args;
      for (const auto& a : x.args()) args.push_back(sigma_tau(a));
      return IExpr::sum(std::move(args));
    }
    case IExpr::Kind::Product: {
      std::vector<IExpr> args;
      for (auto it = x.args().rbegin(); it != x.args().rend(); ++it)
        args.push_back(sigma_tau(*it));
      return IExpr::product(std::move(args));
    }
    case IExpr::Kind::ScalarMul:
      return IExpr::smul(x.coef(), sigma_tau(x.args()[0]));
    case IExpr::Kind::BlackTwist: {
      WeylWord w = x.word();
      for (int& a : w) a = diagram_.tau(a);
      return IExpr::black_twist(w, -x.dir(), sigma_tau(x.args()[0]));
    }
    case IExpr::Kind::QComm: {
      // sigma({a,b}_{q^c}) = -q^c {sigma(a), sigma(b)}_{q^{-c}}.
      IExpr inner = IExpr::qcomm(sigma_tau(x.args()[0]),
                                 sigma_tau(x.args()[1]), -x.qpow());
      return IExpr::smul(-Scalar::q_power(x.qpow()), std::move(inner));
    }
  }
  throw error("IExpr: unknown node kind");
}

// ---------------------------------------------------------------------------
// Relative braid symmetries
// ---------------------------------------------------------------------------

IExpr IQG::relative_T(int rep, int dir, const IExpr& x) {
  if (diagram_.rep_of(rep) != rep)
    throw error("relative_T: index is not an orbit representative");
  if (dir == -1) return sigma_tau(relative_T(rep, 1, sigma_tau(x)));
  if (dir != 1) throw error("relative_T: direction must be +-1");
  const auto& rd = diagram_.relative(rep);
  switch (x.kind()) {
    case IExpr::Kind::Scalar:
      return x;
    case IExpr::Kind::B: {
      int j = x.node();
      if (diagram_.is_black(j))
        return IExpr::B(rd.tautau_i[static_cast<size_t>(j)]);
      if (j == rep || j == diagram_.tau(rep)) {
        // The closed formulas for the images of B_i and B_{tau i}.
        const int n = diagram_.rank();
        int i = rep, ti = diagram_.tau(rep);
        bool first = (j == i) || (ti == i);
        int ci = diagram_.c_sign(i), ct = diagram_.c_sign(ti);
        Scalar branch = Scalar::one();
        if (ci != ct) {
          // principal values: (-1)^{1/2} = i, (-1)^{-1/2} = -i
          bool neg_inside_first = first ? (ci == -1) : (ct == -1);
          branch = neg_inside_first ? -Scalar::i() : Scalar::i();
        }
        int wb = diagram_.weyl().from_word(diagram_.w_black_word());
        // No q-power on the diagonal image: transporting the coideal Serre
        // relation through a multiplicative map forces the scalar on B_i to
        // square to one (the relation is quadratic or cubic in B_i while its
        // right-hand side is linear), so any q_i-power would break the
        // relations after the central reduction that fixes the k-generators
        // to numbers.  Verified against the defining relations in the tests.
        int target = first ? rd.tautau_i[static_cast<size_t>(i)]
                           : rd.tau_i[static_cast<size_t>(i)];
        Weight kw =
            first ? weight_alpha(n, rd.tautau_i[static_cast<size_t>(i)]) -
                        diagram_.weyl().act(
                            wb, weight_alpha(n, rd.tau_i[static_cast<size_t>(i)]))
                  : weight_alpha(n, rd.tau_i[static_cast<size_t>(i)]) -
                        diagram_.weyl().act(
                            wb,
                            weight_alpha(n, rd.tautau_i[static_cast<size_t>(i)]));
        WeylWord twice = diagram_.w_black_word();
        twice.insert(twice.end(), diagram_.w_black_word().begin(),
                     diagram_.w_black_word().end());
        IExpr core =
            IExpr::black_twist(twice, -1, IExpr::B(target));
        return IExpr::smul(branch,
                           IExpr::product({std::move(core), IExpr::Kmu(kw)}));
      }
      return relative_T_generator(rep, j);
    }
    case IExpr::Kind::Fb:
      return IExpr::Fb(rd.tautau_i[static_cast<size_t>(x.node())]);
    case IExpr::Kind::Eb:
      return IExpr::Eb(rd.tautau_i[static_cast<size_t>(x.node())]);
    case IExpr::Kind::Kmu:
      return IExpr::Kmu(diagram_.bs_act(rep, x.mu()));
    case IExpr::Kind::Sum: {
      std::vector<IExpr> args;
      for (const auto& a : x.args()) args.push_back(relative_T(rep, 1, a));
      return IExpr::sum(std::move(args));
    }
    case IExpr::Kind::Product: {
      std::vector<IExpr> args;
      for (const auto& a : x.args()) args.push_back(relative_T(rep, 1, a));
      return IExpr::product(std::move(args));
    }
    case IExpr::Kind::ScalarMul:
      return IExpr::smul(x.coef(), relative_T(rep, 1, x.args()[0]));
    case IExpr::Kind::BlackTwist: {
      // bT_i T_j = T_{tau tau_i j} bT_i on black letters (and the inverse
      // version by conjugation).
      WeylWord w = x.word();
      for (int& a : w) a = rd.tautau_i[static_cast<size_t>(a)];
      return IExpr::black_twist(w, x.dir(), relative_T(rep, 1, x.args()[0]));
    }
    case IExpr::Kind::QComm:
      return IExpr::qcomm(relative_T(rep, 1, x.args()[0]),
                          relative_T(rep, 1, x.args()[1]), x.qpow());
  }
  throw error("IExpr: unknown node kind");
}

IExpr IQG::relative_T_word(const std::vector<int>& reps, int dir,
                           const IExpr& x) {
  IExpr acc = x;
  for (auto it = reps.rbegin(); it != reps.rend(); ++it)
    acc = relative_T(*it, dir, acc);
  return acc;
}

IExpr IQG::relative_T_generator(int rep, int j) {
  auto key = std::make_pair(rep, j);
  auto it = gen_image_cache_.find(key);
  if (it != gen_image_cache_.end()) return it->second;
  IExpr img = catalog_has(rep, j) ? catalog_entry(rep, j)
                                  : relative_T_fallback(rep, 1, j);
  return gen_image_cache_.emplace(key, std::move(img)).first->second;
}

bool IQG::catalog_has(int rep, int j) const {
  const auto& c = diagram_.cartan();
  int i = rep, ti = diagram_.tau(rep);
  // Orthogonal: alpha_j is orthogonal to the whole local subdiagram of i.
  bool orth = c.a(j, i) == 0 && c.a(j, ti) == 0;
  for (int b : diagram_.black_nodes())
    if (c.a(j, b) != 0) orth = false;
  if (orth) return true;
  if (diagram_.tau(j) != j) return false;
  for (int b : diagram_.black_nodes())
    if (c.a(j, b) != 0) return false;
  if (ti == i) {
    // Local type of i must be the plain one-node diagram.
    if (diagram_.relative(rep).local.type != Rank1Type::AI1) return false;
    if (c.a(j, i) != -1) return false;
    if (c.a(i, j) == -1 && c.eps(i) == c.eps(j)) return true;
    if (c.a(i, j) == -2 && c.eps(i) == 1) return true;
    if (c.a(i, j) == -3 && c.eps(i) == 1) return true;
    return false;
  }
  // tau-swapped pair acting on a fixed neighbor of both nodes.
  if (diagram_.relative(rep).local.type != Rank1Type::AIII11) return false;
  return c.a(i, j) == -1 && c.a(ti, j) == -1;
}

IExpr IQG::catalog_entry(int rep, int j) {
  const auto& c = diagram_.cartan();
  int i = rep, ti = diagram_.tau(rep);
  bool orth = c.a(j, i) == 0 && c.a(j, ti) == 0;
  for (int b : diagram_.black_nodes())
    if (c.a(j, b) != 0) orth = false;
  if (orth) return IExpr::B(j);
  Scalar h = half_sum();
  if (ti != i) {
    // {{B_j, B_i}_q, B_{tau i}}_q / (q^{1/2}+q^{-1/2})^2 + B_j
    IExpr inner = IExpr::qcomm(IExpr::qcomm(IExpr::B(j), IExpr::B(i), 1),
                               IExpr::B(ti), 1);
    return IExpr::sum(
        {IExpr::smul((h * h).inverse(), std::move(inner)), IExpr::B(j)});
  }
  if (c.a(i, j) == -1) {
    // {B_j, B_i}_q / (q^{1/2}+q^{-1/2})
    return IExpr::smul(h.inverse(),
                       IExpr::qcomm(IExpr::B(j), IExpr::B(i), 1));
  }
  if (c.a(i, j) == -2) {
    // {{B_j, B_i}_{q^2}, B_i} / ([2](q^{1/2}+q^{-1/2})^2) + B_j
    IExpr inner = IExpr::qcomm(IExpr::qcomm(IExpr::B(j), IExpr::B(i), 2),
                               IExpr::B(i), 0);
    Scalar den = quantum_integer(2) * h * h;
    return IExpr::sum(
        {IExpr::smul(den.inverse(), std::move(inner)), IExpr::B(j)});
  }
  if (c.a(i, j) == -3) {
    // {{{B_j,B_i}_{q^3},B_i}_q,B_i}_{q^{-1}} / ([3]!(q^{1/2}+q^{-1/2})^3)
    //   - (q[2]^2 {B_j,B_i}_{q^3} + q^3[3] {B_j,B_i}_{q^{-1}})
    //     / ([3]!(q^{1/2}+q^{-1/2}))
    IExpr top = IExpr::qcomm(IExpr::B(j), IExpr::B(i), 3);
    IExpr nest = IExpr::qcomm(
        IExpr::qcomm(top, IExpr::B(i), 1), IExpr::B(i), -1);
    Scalar f3 = quantum_factorial(3);
    IExpr term1 = IExpr::smul((f3 * h * h * h).inverse(), std::move(nest));
    // The lower-order coefficients are certified against the projection-lift
    // construction of the same image.
    Scalar c1 = Scalar::q_power(-1) * quantum_integer(2) * quantum_integer(2);
    Scalar c2 = Scalar::q_power(1) * quantum_integer(3);
    IExpr low = IExpr::sum(
        {IExpr::smul(c1, IExpr::qcomm(IExpr::B(j), IExpr::B(i), 3)),
         IExpr::smul(c2, IExpr::qcomm(IExpr::B(j), IExpr::B(i), -1))});
    IExpr term2 = IExpr::smul((f3 * h).inverse(), std::move(low));
    return IExpr::sum({std::move(term1), std::move(term2)});
  }
  throw error("relative_T: no catalog entry for this direction");
}

IExpr IQG::relative_T_fallback(int rep, int dir, int j) {
  if (dir == -1)
    return sigma_tau(relative_T_fallback(rep, 1, diagram_.tau(j)));
  UElement y = project_P(
      braid_.apply_word(diagram_.relative(rep).bs_word, 1, B_elem(j)));
  return letzter_lift(std::move(y));
}

// ---------------------------------------------------------------------------
// The Letzter lift
// ---------------------------------------------------------------------------

IExpr IQG::letzter_lift(UElement y) {
  std::vector<IExpr> parts;
  while (!y.is_zero()) {
    long d = filtration_degree(y);
    std::vector<std::pair<UMonomial, Scalar>> tops;
    for (const auto& [m, c] : y.terms()) {
      long md = 0;
      for (int a : m.f)
        if (diagram_.is_white(a)) ++md;
      for (int a : m.e)
        if (diagram_.is_white(a))
          throw error("letzter_lift: white E-letter survives the projection");
      if (md == d) tops.emplace_back(m, c);
    }
    UElement layer;
    for (const auto& [m, c] : tops) {
      if (!diagram_.in_y_iota(m.mu))
        throw error("letzter_lift: torus weight outside Y^i");
      std::vector<IExpr> factors;
      for (int a : m.f) factors.push_back(IExpr::B(a));
      if (!is_zero(m.mu)) factors.push_back(IExpr::Kmu(m.mu));
      for (int a : m.e) factors.push_back(IExpr::Eb(a));
      IExpr word = factors.empty() ? IExpr::scalar(Scalar::one())
                                   : IExpr::product(std::move(factors));
      parts.push_back(IExpr::smul(c, word));
      layer += project_P(eval(parts.back()));
    }
    y -= layer;
    if (!y.is_zero() && filtration_degree(y) >= d)
      throw error("letzter_lift: filtration peel failed to descend");
  }
  if (parts.size() == 1) return parts[0];
  return IExpr::sum(std::move(parts));
}

// ---------------------------------------------------------------------------
// Rank-1 root vectors
// ---------------------------------------------------------------------------

std::vector<IExpr> IQG::rank1_root_vectors(int rep) {
  const auto& rd = diagram_.relative(rep);
  const auto& nodes = rd.local.nodes;
  const int ln = static_cast<int>(nodes.size());
  // Helpers working with 1-based local labels.
  auto B = [&](int a) { return IExpr::B(nodes[static_cast<size_t>(a - 1)]); };
  auto F = [&](int a) { return IExpr::Fb(nodes[static_cast<size_t>(a - 1)]); };
  auto Tinv = [&](const std::vector<int>& local_word, IExpr arg) {
    WeylWord w;
    for (int a : local_word) w.push_back(nodes[static_cast<size_t>(a - 1)]);
    return IExpr::black_twist(std::move(w), -1, std::move(arg));
  };
  auto range_up = [](int from, int to) {  // from..to ascending (may be empty)
    std::vector<int> w;
    for (int a = from; a <= to; ++a) w.push_back(a);
    return w;
  };
  auto range_down = [](int from, int to) {  // from..to descending
    std::vector<int> w;
    for (int a = from; a >= to; --a) w.push_back(a);
    return w;
  };
  auto concat = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  Scalar h = half_sum();
  Scalar two_norm = (quantum_integer(2) * h * h).inverse();
  // {x, y}_{q^2}-then-{., y} ladder used by several families.
  auto doubly = [&](IExpr x, const IExpr& y) {
    return IExpr::smul(two_norm,
                       IExpr::qcomm(IExpr::qcomm(std::move(x), y, 2), y, 0));
  };
  std::vector<IExpr> out;
  switch (rd.local.type) {
    case Rank1Type::AI1:
      out = {B(1)};
      break;
    case Rank1Type::AIII11:
      out = {B(1), B(2)};
      break;
    case Rank1Type::AII3:
      out = {B(2), Tinv({1}, B(2)), Tinv({3}, B(2)), Tinv({1, 3}, B(2))};
      break;
    case Rank1Type::AIVn: {
      int n = ln;  // ambient A_n, white ends 1 and n
      for (int i = 1; i <= n - 1; ++i)
        out.push_back(Tinv(range_up(2, i), B(1)));
      out.push_back(IExpr::smul(
          h.inverse(),
          IExpr::qcomm(B(n), Tinv(range_up(2, n - 1), B(1)), 1)));
      for (int i = 1; i <= n - 1; ++i)
        out.push_back(Tinv(range_down(n - 1, n - i + 1), B(n)));
      break;
    }
    case Rank1Type::BII: {
      int n = ln;  // ambient B_n, white node 1
      for (int i = 1; i <= n - 1; ++i)
        out.push_back(Tinv(range_up(2, i), B(1)));
      // {F_n, B_{beta_{n-1}}}_{q^2} / (q + q^{-1})
      out.push_back(IExpr::smul(
          quantum_integer(2).inverse(),
          IExpr::qcomm(F(n), out[static_cast<size_t>(n - 2)], 2)));
      for (int i = 1; i <= n - 1; ++i)
        out.push_back(Tinv(
            concat(range_up(2, n), range_down(n - 1, n - i + 1)), B(1)));
      break;
    }
    case Rank1Type::DII: {
      int n = ln;  // ambient D_n, white node 1, fork at n-2 with ends n-1, n
      for (int i = 1; i <= n - 1; ++i)
        out.push_back(Tinv(range_up(2, i), B(1)));
      out.push_back(Tinv(concat(range_up(2, n - 2), {n}), B(1)));
      out.push_back(Tinv(range_up(2, n), B(1)));
      for (int i = 2; i <= n - 2; ++i)
        out.push_back(
            Tinv(concat(range_up(2, n), range_down(n - 2, n - i)), B(1)));
      break;
    }
    case Rank1Type::CII: {
      int n = ln;  // ambient C_n, white node 2
      out.resize(static_cast<size_t>(4 * n - 5), IExpr::scalar(Scalar::zero()));
      auto at = [&](int idx) -> IExpr& {
        return out[static_cast<size_t>(idx - 1)];
      };
      for (int i = 1; i <= n - 2; ++i) at(i) = Tinv(range_up(3, i + 1), B(2));
      at(n - 1) = doubly(F(n), at(n - 2));
      for (int i = 0; i <= n - 3; ++i)
        at(n + i) =
            Tinv(concat(range_up(3, n), range_down(n - 1, n - i)), B(2));
      at(2 * n - 2) = IExpr::smul(
          h.inverse(),
          IExpr::qcomm(Tinv({1}, B(2)),
                       Tinv(concat(range_up(3, n), range_down(n - 1, 3)),
                            B(2)),
                       1));
      for (int i = 0; i <= n - 3; ++i)
        at(i + 2 * n - 1) = Tinv(concat({1}, range_up(3, i + 2)), B(2));
      for (int i = 0; i <= n - 3; ++i)
        at(i + 3 * n - 2) = Tinv(
            concat({1}, concat(range_up(3, n), range_down(n - 1, n - i))),
            B(2));
      at(3 * n - 3) = doubly(F(n), at(3 * n - 2));
      break;
    }
    case Rank1Type::FII: {
      // Ambient F_4, white node 4.
      out.resize(15, IExpr::scalar(Scalar::zero()));
      auto at = [&](int idx) -> IExpr& {
        return out[static_cast<size_t>(idx - 1)];
      };
      at(1) = B(4);
      at(2) = Tinv({3}, B(4));
      at(3) = doubly(F(2), at(2));
      at(4) = Tinv({3, 2}, B(4));
      at(5) = Tinv({1}, at(3));
      at(6) = IExpr::smul((h * h).inverse(), IExpr::qcomm(F(2), at(5), 2));
      at(7) = Tinv({3, 2, 1}, B(4));
      at(8) = IExpr::smul(h.inverse(),
                          IExpr::qcomm(Tinv({3, 2, 3}, B(4)), at(7), 1));
      at(9) = Tinv({3, 2, 3}, B(4));
      at(10) = doubly(F(1), at(9));
      at(11) = Tinv({3, 2, 1, 3}, B(4));
      at(12) = IExpr::smul(quantum_integer(2).inverse(),
                           IExpr::qcomm(F(2), at(10), 2));
      at(13) = IExpr::smul(quantum_integer(2).inverse(),
                           IExpr::qcomm(F(1), at(12), 2));
      at(14) = Tinv({3, 2, 3, 1, 2}, B(4));
      at(15) = Tinv({3, 2, 3, 1, 2, 3}, B(4));
      break;
    }
  }
  const auto roots = inversion_set(diagram_.cartan(), rd.bs_word);
  if (out.size() != roots.size())
    throw error("rank1_root_vectors: catalog size mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Transported root vectors
// ---------------------------------------------------------------------------

IQG::IRootVectors IQG::root_vectors_iqg(const std::vector<int>& w0circ_word) {
  IRootVectors rv;
  WeylWord concat;
  std::vector<int> prefix;
  for (int rep : w0circ_word) {
    const auto& rd = diagram_.relative(rep);
    auto locals = rank1_root_vectors(rep);
    auto local_roots = inversion_set(diagram_.cartan(), rd.bs_word);
    for (size_t m = 0; m < locals.size(); ++m) {
      rv.roots.push_back(diagram_.cartan().act(concat, local_roots[m]));
      rv.exprs.push_back(relative_T_word(prefix, 1, locals[m]));
      rv.elems.push_back(eval(rv.exprs.back()));
    }
    prefix.push_back(rep);
    concat.insert(concat.end(), rd.bs_word.begin(), rd.bs_word.end());
  }
  if (rv.roots != inversion_set(diagram_.cartan(), concat))
    throw error("root_vectors_iqg: root order mismatch");
  // The associated graded image of each vector must be a single pure
  // F-monomial of weight beta (for the canonical word, the ambient PBW root
  // vector itself); this is exactly what the coordinate peel relies on.
  for (size_t k = 0; k < rv.elems.size(); ++k) {
    UElement proj = project_P(rv.elems[k]);
    long d = filtration_degree(proj);
    UElement top;
    for (const auto& [m, c] : proj.terms()) {
      long md = 0;
      for (int a : m.f)
        if (diagram_.is_white(a)) ++md;
      if (md == d) top.add(m, c);
    }
    Weight content = weight_zero(diagram_.rank());
    for (const auto& [m, c] : top.terms()) {
      (void)c;
      if (!m.e.empty() || !is_zero(m.mu))
        throw error("root_vectors_iqg: leading term is not in U^-");
      content = weight_zero(diagram_.rank());
      for (int a : m.f) content[static_cast<size_t>(a)] += 1;
      if (content != rv.roots[k])
        throw error("root_vectors_iqg: leading term has wrong weight");
    }
  }
  return rv;
}

const IQG::IRootVectors& IQG::root_vectors_iqg() {
  if (!root_vectors_) {
    root_vectors_ = std::make_unique<IRootVectors>(
        root_vectors_iqg(diagram_.w0_circ_bs_word()));
    for (size_t k = 0; k < root_vectors_->elems.size(); ++k) {
      UElement proj = project_P(root_vectors_->elems[k]);
      long d = filtration_degree(proj);
      UElement top;
      for (const auto& [m, c] : proj.terms()) {
        long md = 0;
        for (int a : m.f)
          if (diagram_.is_white(a)) ++md;
        if (md == d) top.add(m, c);
      }
      if (top != pbw_->data().f_root_vectors[k])
        throw error("root_vectors_iqg: leading term is not F_beta");
    }
  }
  return *root_vectors_;
}

IPBWBasis& IQG::standard_ipbw() {
  if (!ipbw_)
    ipbw_ = std::make_unique<IPBWBasis>(*this, root_vectors_iqg().elems);
  return *ipbw_;
}

bool IQG::integrality_certificate(const IExpr& x) {
  return integrality_certificate(eval(x));
}

bool IQG::integrality_certificate(const UElement& x) const {
  return UAlgebra::is_integral(x, diagram_.profile());
}

// ---------------------------------------------------------------------------
// IPBWBasis
// ---------------------------------------------------------------------------

IPBWBasis::IPBWBasis(IQG& iqg, std::vector<UElement> b_vectors)
    : iqg_(iqg), b_vectors_(std::move(b_vectors)) {
  if (static_cast<int>(b_vectors_.size()) != iqg_.black_offset())
    throw error("IPBWBasis: wrong number of root vectors");
}

UElement IPBWBasis::expand(const IPBWMonomial& m) {
  auto& alg = iqg_.algebra();
  const auto& data = iqg_.ambient_pbw().data();
  const int off = iqg_.black_offset();
  auto power_product =
      [&](std::map<std::vector<long>, UElement>& cache,
          const std::vector<long>& exp, bool descending,
          const std::function<UElement(size_t)>& vector_at) -> UElement {
    std::function<UElement(const std::vector<long>&)> go =
        [&](const std::vector<long>& e) -> UElement {
      auto it = cache.find(e);
      if (it != cache.end()) return it->second;
      bool zero =
          std::all_of(e.begin(), e.end(), [](long a) { return a == 0; });
      UElement val;
      if (zero) {
        val = alg.one();
      } else {
        size_t k;
        if (descending) {
          k = 0;
          while (e[k] == 0) ++k;
        } else {
          k = e.size() - 1;
          while (e[k] == 0) --k;
        }
        auto prev = e;
        --prev[k];
        val = alg.multiply(go(prev), vector_at(k));
      }
      return cache.emplace(e, std::move(val)).first->second;
    };
    return go(exp);
  };
  UElement acc = power_product(
      b_cache_, m.b_exp, false,
      [&](size_t k) { return b_vectors_[k]; });
  acc = alg.multiply(
      acc, power_product(fb_cache_, m.f_exp, false, [&](size_t k) {
        return data.f_root_vectors[static_cast<size_t>(off) + k];
      }));
  Weight mu = weight_zero(iqg_.diagram().rank());
  const auto& ybasis = iqg_.diagram().y_iota_basis();
  for (size_t r = 0; r < m.k_exp.size(); ++r) mu = mu + m.k_exp[r] * ybasis[r];
  if (!is_zero(mu)) acc = alg.multiply(acc, alg.K(mu));
  acc = alg.multiply(
      acc, power_product(eb_cache_, m.e_exp, true, [&](size_t k) {
        return data.e_root_vectors[static_cast<size_t>(off) + k];
      }));
  return acc;
}

std::map<IPBWMonomial, Scalar> IPBWBasis::coordinates(const UElement& x,
                                                      bool verify) {
  const auto& sd = iqg_.diagram();
  const int off = iqg_.black_offset();
  const int nroots =
      static_cast<int>(iqg_.ambient_pbw().data().roots.size());
  std::map<IPBWMonomial, Scalar> result;
  UElement y = iqg_.project_P(x);
  while (!y.is_zero()) {
    long d = iqg_.filtration_degree(y);
    UElement top;
    for (const auto& [m, c] : y.terms()) {
      long md = 0;
      for (int a : m.f)
        if (sd.is_white(a)) ++md;
      if (md == d) top.add(m, c);
    }
    std::vector<std::pair<IPBWMonomial, Scalar>> found;
    for (const auto& [pm, c] : iqg_.ambient_pbw().coordinates(top)) {
      IPBWMonomial im;
      im.b_exp.assign(pm.f_exp.begin(), pm.f_exp.begin() + off);
      im.f_exp.assign(pm.f_exp.begin() + off, pm.f_exp.end());
      for (int k = 0; k < off; ++k)
        if (pm.e_exp[static_cast<size_t>(k)] != 0)
          throw error(
              "ipbw: not in the coideal span (E-part leaves the black "
              "subalgebra)");
      im.e_exp.assign(pm.e_exp.begin() + off, pm.e_exp.end());
      if (!sd.in_y_iota(pm.mu))
        throw error("ipbw: not in the coideal span (torus weight)");
      im.k_exp = sd.y_iota_coordinates(pm.mu);
      (void)nroots;
      found.emplace_back(std::move(im), c);
    }
    for (auto& [im, c] : found) {
      result[im] += c;
      if (result[im].is_zero()) result.erase(im);
      y -= iqg_.project_P(expand(im)) * c;
    }
    if (!y.is_zero() && iqg_.filtration_degree(y) >= d)
      throw error("ipbw: filtration peel failed to descend");
  }
  if (verify) {
    UElement recon;
    for (const auto& [im, c] : result) recon += expand(im) * c;
    if (recon != x) throw error("ipbw: expansion does not reproduce input");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Relation catalog for the worked example diagrams
// ---------------------------------------------------------------------------

std::vector<std::string> iserre_relation_ids(const std::string& preset) {
  if (preset == "AI2") return {"AI2:serre:12", "AI2:serre:21"};
  if (preset == "AIV2")
    return {"AIV2:serre", "AIV2:k-inverse", "AIV2:k-commutation"};
  if (preset == "AIII3") return {"AIII3:serre:2j", "AIII3:serre:j2"};
  if (preset == "CI2") return {"CI2:serre:21", "CI2:serre:12"};
  return {};
}

bool verify_iserre(IQG& iqg, const std::string& id) {
  auto& alg = iqg.algebra();
  Scalar h = half_sum();
  auto serre_lhs = [&](int i, int j, long a) {
    return alg.rescaled_q_commutator(
        iqg.B_elem(i),
        alg.rescaled_q_commutator(iqg.B_elem(i), iqg.B_elem(j), a), -a);
  };
  if (id == "AI2:serre:12" || id == "AI2:serre:21") {
    int i = id == "AI2:serre:12" ? 0 : 1, j = 1 - i;
    return serre_lhs(i, j, 1) ==
           iqg.B_elem(j) * (-Scalar::q_power(-1) * h * h);
  }
  if (id == "AIV2:serre") {
    Scalar c = h * h * (Scalar(1) + Scalar::q_power(-2)) * Scalar::v_power(3);
    for (int i = 0; i < 2; ++i) {
      int j = 1 - i;
      UElement rhs =
          (alg.multiply(iqg.B_elem(i), iqg.k_elem(i, -1)) +
           alg.multiply(iqg.k_elem(i), iqg.B_elem(i))) *
          c;
      if (serre_lhs(i, j, 1) != rhs) return false;
    }
    return true;
  }
  if (id == "AIV2:k-inverse")
    return alg.multiply(iqg.k_elem(0), iqg.k_elem(1)) == alg.one();
  if (id == "AIV2:k-commutation") {
    for (int i = 0; i < 2; ++i) {
      if (alg.multiply(iqg.k_elem(i), iqg.B_elem(i)) !=
          alg.multiply(iqg.B_elem(i), iqg.k_elem(i)) * Scalar::q_power(-3))
        return false;
    }
    return true;
  }
  if (id == "AIII3:serre:2j") {
    for (int j : {0, 2})
      if (serre_lhs(1, j, 1) != iqg.B_elem(j) * (-Scalar::q_power(-1) * h * h))
        return false;
    return true;
  }
  if (id == "AIII3:serre:j2") {
    for (int j : {0, 2})
      if (!serre_lhs(j, 1, 1).is_zero()) return false;
    return true;
  }
  if (id == "CI2:serre:21") {
    // Constant certified against the 4-dimensional vector representation of
    // U_q(sp4): in rescaled form it reads -q^{-4} (q+1)^2 (q^2+1)^2.  Written
    // here with plain q-commutators and the equivalent exact constant.
    Scalar q2 = quantum_integer(2);
    Scalar qi_m1 = Scalar::q_power(2) - Scalar::one();
    UElement lhs = alg.q_commutator(
        iqg.B_elem(1), alg.q_commutator(iqg.B_elem(1), iqg.B_elem(0), 2), -2);
    return lhs ==
           iqg.B_elem(0) * (-Scalar::q_power(-2) * q2 * q2 * qi_m1 * qi_m1);
  }
  if (id == "CI2:serre:12") {
    UElement inner =
        alg.rescaled_q_commutator(iqg.B_elem(0), iqg.B_elem(1), 2);
    UElement lhs = alg.rescaled_q_commutator(
        iqg.B_elem(0),
        alg.rescaled_q_commutator(iqg.B_elem(0), inner, 0), -2);
    Scalar q2 = quantum_integer(2);
    UElement rhs =
        alg.rescaled_q_commutator(iqg.B_elem(0), iqg.B_elem(1), 0) *
        (-Scalar::q_power(-1) * half_sum() * half_sum() * q2 * q2);
    return lhs == rhs;
  }
  throw error("verify_iserre: unknown relation id " + id);
}

}  // namespace qsp
